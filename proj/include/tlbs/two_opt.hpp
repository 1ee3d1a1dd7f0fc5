#pragma once

#include <set>
#include <vector>

#include "tlbs/aco.hpp"

namespace tlbs {

/// Constrained 2-OPT over each UAV's ROI visit order. A move reverses a
/// stretch of the order, re-places that UAV's charging stops greedily
/// (farthest reachable progress cell, existing stations of the other UAVs
/// preferred), and is kept only when that UAV's path gets strictly shorter
/// and the total station count does not grow. Moves are scanned in
/// lexicographic (i, j) order and the first improving one is applied, until
/// none is left. Other UAVs' paths are never touched.
Solution two_opt(const Solution& solution, const Scenario& scenario, const SolverParams& params,
                 ChargingPlanner& planner);
Solution two_opt(const Solution& solution, const Scenario& scenario, const SolverParams& params);

/// Rebuilds a path through `order` (order[0] is the start) with greedy
/// charging stops. `planner` must already carry the stations to reuse; new
/// stops are marked on it. Returns an empty path when some leg cannot be
/// completed.
Path place_stations_greedy(const Scenario& scenario, const SolverParams& params,
                           ChargingPlanner& planner, const std::vector<CellIndex>& order);

/// Charging stops along a fixed visit order with the fewest new stations
/// among placements whose length stays within `max_len_m`, shortest among
/// those. Found by a shortest-path search over (new stations, last visited
/// ROI, station cell) states. Cells in `free_stations` add no station.
/// A negative `max_new_stations` derives a bound from the order length.
/// Returns an empty path when no placement fits.
Path place_stations_optimal(const Scenario& scenario, const SolverParams& params,
                            const std::vector<CellIndex>& order,
                            const std::set<CellIndex>& free_stations, double max_len_m,
                            int max_new_stations = -1);

/// The same search, returning for every t in [0, max new stations] the
/// shortest placement that adds exactly t new stations within `max_len_m`
/// (empty where none exists).
std::vector<Path> station_frontier(const Scenario& scenario, const SolverParams& params,
                                   const std::vector<CellIndex>& order,
                                   const std::set<CellIndex>& free_stations, double max_len_m,
                                   int max_new_stations = -1);

/// Re-places every UAV's charging stops along its fixed ROI order, never
/// adding stations beyond the ones it already owns. Under lexicographic
/// ranking it uses place_stations_optimal within the current maximum path
/// length and keeps a replacement only when neither metric gets worse and
/// one improves. Under weighted ranking it keeps the frontier entry with the
/// lowest weighted cost.
Solution polish_stations(const Solution& solution, const Scenario& scenario,
                         const SolverParams& params);

struct TuneResult {
  double q1 = 1.0;
  double q2 = 1.0;
  /// (max_path_len_m, nc) read after each warm-up round.
  std::vector<std::pair<double, int>> rounds;
};

/// Iterative Q1/Q2 tuning: each round runs the solver for `warmup_iters`
/// and takes the best (max path length, station count) as the next
/// (Q1, Q2). A zero station count gives Q2 = 0.
TuneResult tune_parameters(const Scenario& scenario, const SolverParams& params,
                           double initial_q1, double initial_q2, int warmup_iters = 1000,
                           int rounds = 2);

}  // namespace tlbs
