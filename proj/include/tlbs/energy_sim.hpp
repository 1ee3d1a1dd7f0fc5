#pragma once

#include <string>
#include <vector>

#include "tlbs/scenario.hpp"
#include "tlbs/solution.hpp"

namespace tlbs {

class EnergyDepletedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class UavMode { kFlying, kRecharging };

struct UavState {
  Point position_m;
  double energy = 0.0;
  UavMode mode = UavMode::kFlying;
};

/// One slot of battery bookkeeping. Flying drains fly_cost_per_m per meter
/// (plus an optional per-slot hover drain); a landed slot swaps the battery
/// and returns max_energy(). Throws EnergyDepletedError when the result is
/// not strictly positive and DomainError on out-of-range inputs.
double step_energy(double prev_energy, bool flying, double dist_this_slot_m,
                   const UavConfig& cfg, double hover_drain = 0.0);

enum class Constraint { kC3, kC4, kC5, kC6, kC7, kC8 };

std::string to_string(Constraint c);
Constraint constraint_from_string(const std::string& text);

struct Violation {
  Constraint constraint = Constraint::kC3;
  int uav = -1;  // -1 when the violation is not tied to one UAV
  long slot = 0;
  std::string message;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;
  long t_finish_slots = 0;
};

struct SimulationOptions {
  double hover_drain_per_slot = 0.0;
};

/// Replays every path slot by slot at v_max and checks the formal model:
///  - C3 each slot maps to exactly one in-grid cell,
///  - C4 every ROI is overflown (slot-end position at its center),
///  - C5 0 < energy <= max at every slot,
///  - C6 per-slot displacement <= slot_len * v_max,
///  - C7 landings happen only on station cells,
///  - C8 the battery trace obeys the flying/landed update and the declared
///       metrics match the geometry.
/// A slot is attributed to the cell holding the UAV at the slot's end.
/// Throws DomainError for malformed input (off-grid waypoints, paths that do
/// not begin with START at the scenario start, ROI_VISIT on a non-ROI cell).
ValidationReport simulate(const Scenario& scenario, const Solution& solution,
                          const SimulationOptions& options = {});

}  // namespace tlbs
