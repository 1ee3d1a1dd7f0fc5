#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "tlbs/scenario.hpp"

namespace tlbs {

/// The instance is too large to solve exactly.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TspOptions {
  int max_rois = 12;
  bool closed_tour = false;
  /// Cap on the number of ROI-to-UAV assignments enumerated for fleets.
  long long max_assignments = 1LL << 24;
};

struct TspResult {
  std::vector<CellIndex> order;  // begins with the start cell
  double length_m = 0.0;
};

/// Exact shortest path from `start` through every cell of `rois` by
/// enumerating all orders of the non-start ROIs. `start` may or may not be
/// among `rois`. Ties resolve to the lexicographically first order over the
/// input positions. Throws OracleRefusal when more than max_rois ROIs remain
/// to be ordered.
TspResult tsp_brute_force(std::span<const CellIndex> rois, CellIndex start, const Grid& grid,
                          const TspOptions& options = {});

/// Shortest path from `start` through every subset of `rois` (start
/// excluded), by dynamic programming over subsets. Entry `mask` holds the
/// optimum for the ROIs whose bits are set; index i of the result's order
/// refers to rois[i].
struct SubsetPaths {
  std::vector<CellIndex> rois;  // non-start ROIs, bit i = rois[i]
  std::vector<double> length_m;
  std::vector<std::vector<int>> order;
};
SubsetPaths tsp_all_subsets(std::span<const CellIndex> rois, CellIndex start, const Grid& grid,
                            const TspOptions& options = {});

struct OracleRoute {
  std::vector<CellIndex> visit_order;  // starts at the scenario start
  std::vector<Point> station_points;
  double path_len_m = 0.0;
  int nc = 0;
};

/// Walks a polyline from its first vertex on a full battery and drops a
/// station at the farthest reachable point each time the remaining range
/// runs out. Arcs between consecutive stations equal range_m exactly, except
/// possibly the last.
OracleRoute greedy_station_placement(std::span<const Point> polyline, double range_m);
OracleRoute greedy_station_placement(std::span<const CellIndex> order, const Grid& grid,
                                     double range_m);

struct OracleSolution {
  std::vector<OracleRoute> routes;  // one per UAV
  double max_path_len_m = 0.0;
  int nc = 0;
};

/// Ground truth for small instances. One UAV: the brute-force shortest path
/// with greedy stations. Several UAVs, all leaving the shared start: every
/// assignment of ROIs to UAVs is scored with the shortest path of each
/// group, and the assignment with the smallest maximum length wins, fewest
/// stations breaking ties. Throws OracleRefusal when the ROI count or the
/// assignment count exceeds its cap.
OracleSolution oracle_solve(const Scenario& scenario, const TspOptions& options = {});

}  // namespace tlbs
