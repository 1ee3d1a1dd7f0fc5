#include "tlbs/solution.hpp"

#include <algorithm>

namespace tlbs {

std::string to_string(WaypointKind kind) {
  switch (kind) {
    case WaypointKind::kRoiVisit: return "ROI_VISIT";
    case WaypointKind::kRecharge: return "RECHARGE";
    case WaypointKind::kStart: return "START";
  }
  return "?";
}

WaypointKind waypoint_kind_from_string(const std::string& text) {
  if (text == "ROI_VISIT") return WaypointKind::kRoiVisit;
  if (text == "RECHARGE") return WaypointKind::kRecharge;
  if (text == "START") return WaypointKind::kStart;
  throw DomainError("unknown waypoint kind '" + text + "'");
}

double path_length(const Grid& grid, const Path& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    total += dist(grid.center(path[i - 1].cell), grid.center(path[i].cell));
  }
  return total;
}

void refresh_metrics(const Grid& grid, Solution& solution) {
  solution.stations.clear();
  solution.max_path_len_m = 0.0;
  for (const auto& path : solution.paths) {
    solution.max_path_len_m = std::max(solution.max_path_len_m, path_length(grid, path));
    for (const auto& wp : path) {
      if (wp.kind == WaypointKind::kRecharge) solution.stations.push_back(wp.cell);
    }
  }
  std::sort(solution.stations.begin(), solution.stations.end());
  solution.stations.erase(std::unique(solution.stations.begin(), solution.stations.end()),
                          solution.stations.end());
  solution.nc = static_cast<int>(solution.stations.size());
}

bool better_than(const Solution& a, const Solution& b) {
  if (a.max_path_len_m != b.max_path_len_m) return a.max_path_len_m < b.max_path_len_m;
  return a.nc < b.nc;
}

}  // namespace tlbs
