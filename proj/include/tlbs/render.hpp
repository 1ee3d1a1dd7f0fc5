#pragma once

#include <string>
#include <vector>

#include "tlbs/scenario.hpp"
#include "tlbs/solution.hpp"

namespace tlbs {

struct RenderSpec {
  int width_px = 800;
  int height_px = 800;
  bool show_hull = false;
  bool show_stations = true;
  /// UAV u is drawn in palette[u % palette.size()].
  std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                      "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

  void check() const;
};

/// Standalone SVG: grid lines, ROI squares, one polyline per UAV through its
/// waypoint cell centers, station markers and optionally the ROI hull.
std::string render_svg(const Scenario& scenario, const Solution& solution,
                       const RenderSpec& spec = {});

}  // namespace tlbs
