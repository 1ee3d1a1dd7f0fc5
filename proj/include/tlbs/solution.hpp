#pragma once

#include <string>
#include <vector>

#include "tlbs/scenario.hpp"

namespace tlbs {

enum class WaypointKind { kRoiVisit, kRecharge, kStart };

std::string to_string(WaypointKind kind);
WaypointKind waypoint_kind_from_string(const std::string& text);

struct Waypoint {
  CellIndex cell;
  WaypointKind kind = WaypointKind::kRoiVisit;
  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

using Path = std::vector<Waypoint>;

/// Per-UAV trajectories plus the shared station set.
struct Solution {
  std::vector<Path> paths;
  std::vector<CellIndex> stations;  // sorted row-major, unique
  double max_path_len_m = 0.0;
  int nc = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Polyline length through the waypoint cell centers.
double path_length(const Grid& grid, const Path& path);

/// Rebuilds `stations` from the RECHARGE waypoints and recomputes
/// max_path_len_m and nc.
void refresh_metrics(const Grid& grid, Solution& solution);

/// Strict lexicographic ranking on (max_path_len_m, nc).
bool better_than(const Solution& a, const Solution& b);

}  // namespace tlbs
