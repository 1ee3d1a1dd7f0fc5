#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tlbs/hull.hpp"
#include "tlbs/kernels.hpp"
#include "tlbs/pheromone.hpp"
#include "tlbs/scenario.hpp"
#include "tlbs/solution.hpp"

namespace tlbs {

enum class SelectionRule { kRoulette, kArgmax };

/// How the best solution is chosen. Lexicographic compares max path length
/// and then NC. Weighted compares L / q1 + NC / q2 (the NC term is dropped
/// when q2 is 0), so with tuned weights one station trades against the
/// length share it represents.
enum class Ranking { kLexicographic, kWeighted };

struct SolverParams {
  double alpha = 2.0;
  double beta = 2.0;
  double rho = 0.3;
  double tau0 = 1.0;
  double q1 = 1.0;
  double q2 = 1.0;
  int max_iterations = 30000;
  std::uint64_t seed = 1;
  double e_threshold = 1.0;  // energy units held back on every leg
  bool use_hull_reduction = true;
  bool use_two_opt = true;
  bool polish_stations = true;  // optimal stop placement on the final best
  SelectionRule selection = SelectionRule::kRoulette;
  double station_reuse_bonus = 1.5;
  double detour_slack_m = 500.0;
  Ranking ranking = Ranking::kWeighted;

  /// Throws DomainError on out-of-range fields.
  void check() const;
  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

/// Weighted cost used by Ranking::kWeighted.
double weighted_cost(const Solution& s, const SolverParams& params);

/// True when `a` ranks strictly ahead of `b` under params.ranking. Exact
/// weighted ties fall back to the lexicographic order.
bool ranks_before(const Solution& a, const Solution& b, const SolverParams& params);

struct UavProgress {
  CellIndex cell;
  double energy = 0.0;
  Path path;
  int pending_target = -1;  // ROI index re-targeted after a battery swap
};

/// Mutable state of one construction pass.
struct ColonyState {
  std::vector<int> r_visit;  // indices into Scenario::rois, insertion order
  std::vector<UavProgress> uavs;
  std::vector<CellIndex> stations;  // placement order
  int nc = 0;

  bool unvisited(int roi) const;
};

/// tau^alpha * dist^-beta weights over the unvisited ROIs, normalized to sum to one.
/// The returned vector is aligned with `r_visit`. Throws DomainError when
/// r_visit is empty or contains `current`.
std::vector<double> roi_selection_probs(const Scenario& scenario, CellIndex current,
                                        std::span<const int> r_visit,
                                        const PheromoneMatrix& tau, double alpha, double beta);

/// Probability of moving from `current` to `candidate`; 0 when `candidate`
/// is not an unvisited ROI.
double roi_selection_prob(const Scenario& scenario, CellIndex current, CellIndex candidate,
                          std::span<const int> r_visit, const PheromoneMatrix& tau,
                          double alpha, double beta);

/// Next ROI index for `uav`: highest-probability ROI (ties to insertion
/// order) under kArgmax, a roulette draw under kRoulette.
int select_next_roi(const Scenario& scenario, const ColonyState& state, int uav,
                    const PheromoneMatrix& tau, const SolverParams& params, Rng& rng);

/// Cells a at fly_cost * dist(current, a) <= residual, optionally restricted
/// to the hull, plus every placed station within range. Row-major order.
/// Throws InfeasibleError when the set is empty.
std::vector<CellIndex> reachable_cells(const Scenario& scenario, CellIndex current,
                                       double residual, const HullFilter* hull,
                                       std::span<const CellIndex> stations);

/// Charging-mode choice: argmax of tau^alpha * dist^beta, existing stations
/// scaled by the reuse bonus, ties to the lowest row-major cell.
CellIndex select_charging_cell(const Grid& grid, CellIndex current,
                               std::span<const CellIndex> candidates,
                               const PheromoneMatrix& tau, const SolverParams& params,
                               std::span<const CellIndex> stations = {});

/// Candidate-cell bookkeeping shared by construction and path repair:
/// SoA cell tables for the full grid and the hull, plus the per-cell reuse
/// bonus that marks existing stations.
class ChargingPlanner {
 public:
  ChargingPlanner(const Scenario& scenario, const SolverParams& params);

  /// Best charging cell on the way from `current` towards `target` within
  /// `reach_m`; nullopt when no candidate makes progress.
  std::optional<CellIndex> pick(CellIndex current, CellIndex target, double reach_m,
                                const double* tau_row);
  /// Same scan with uniform trails (distance and reuse only).
  std::optional<CellIndex> pick_tau_free(CellIndex current, CellIndex target, double reach_m);

  void clear_stations();
  void mark_station(CellIndex c);
  bool is_station(CellIndex c) const;

  std::uint64_t candidates_scanned() const { return scanned_; }
  const HullFilter* hull() const { return hull_ ? &*hull_ : nullptr; }

 private:
  const Scenario& scenario_;
  SolverParams params_;
  kernels::CandidateSoA all_cells_;
  kernels::CandidateSoA hull_cells_;
  std::optional<HullFilter> hull_;
  std::vector<double> bonus_;
  std::vector<double> uniform_tau_;
  std::vector<std::uint8_t> station_mask_;
  std::vector<int> stations_outside_hull_;
  std::uint64_t scanned_ = 0;
};

struct ConstructResult {
  Solution solution;
  ColonyState state;
};

/// One pass of the colony: UAVs take turns choosing ROIs until none remain,
/// detouring to charging cells when the chosen ROI is out of range.
ConstructResult construct_iteration(const Scenario& scenario, const PheromoneMatrix& tau,
                                    const SolverParams& params, Rng& rng,
                                    ChargingPlanner& planner);
ConstructResult construct_iteration(const Scenario& scenario, const PheromoneMatrix& tau,
                                    const SolverParams& params, Rng& rng);

/// Edges (as linear cell ids) flown by any UAV; zero-length hops excluded.
EdgeSet used_edges(const Grid& grid, const Solution& solution);

struct IterationInfo {
  int iteration = 0;  // 1-based
  const Solution* current = nullptr;
  const Solution* best = nullptr;
  std::uint64_t candidates_scanned = 0;  // this iteration
  int two_opt_nc_before = 0;
  int two_opt_nc_after = 0;
};

using IterationObserver = std::function<void(const IterationInfo&)>;

struct SolveResult {
  Solution best;
  int iterations = 0;
  std::uint64_t candidates_scanned = 0;
  int two_opt_nc_increases = 0;  // must stay 0
};

SolveResult solve(const Scenario& scenario, const SolverParams& params,
                  const IterationObserver& observer = {});

}  // namespace tlbs
