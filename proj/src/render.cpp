#include "tlbs/render.hpp"

#include <sstream>

#include "tlbs/hull.hpp"

namespace tlbs {

void RenderSpec::check() const {
  if (width_px <= 0 || height_px <= 0) throw DomainError("render size must be positive");
  if (palette.empty()) throw DomainError("render palette is empty");
}

std::string render_svg(const Scenario& scenario, const Solution& solution,
                       const RenderSpec& spec) {
  spec.check();
  const Grid& grid = scenario.grid;
  const double field_w = grid.cols() * grid.cell_size_m();
  const double field_h = grid.rows() * grid.cell_size_m();
  const double sx = spec.width_px / field_w;
  const double sy = spec.height_px / field_h;
  auto px = [&](Point p) {
    std::ostringstream ss;
    ss << p.x * sx << ',' << p.y * sy;
    return ss.str();
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- Frame: meters scaled linearly to pixels (x by " << sx << ", y by " << sy
      << " px/m). Origin is the top-left field corner, x grows right, y grows down;"
         " row r spans y in [r, r + 1) cells. -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width_px
      << "\" height=\"" << spec.height_px << "\" viewBox=\"0 0 " << spec.width_px << ' '
      << spec.height_px << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << spec.width_px << "\" height=\"" << spec.height_px
      << "\" fill=\"white\"/>\n<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int c = 0; c <= grid.cols(); ++c) {
    const double x = c * grid.cell_size_m() * sx;
    out << "<line x1=\"" << x << "\" y1=\"0\" x2=\"" << x << "\" y2=\"" << spec.height_px
        << "\"/>\n";
  }
  for (int r = 0; r <= grid.rows(); ++r) {
    const double y = r * grid.cell_size_m() * sy;
    out << "<line x1=\"0\" y1=\"" << y << "\" x2=\"" << spec.width_px << "\" y2=\"" << y
        << "\"/>\n";
  }
  out << "</g>\n";

  if (spec.show_hull) {
    std::vector<Point> pts;
    for (const auto& r : scenario.rois) pts.push_back(grid.center(r));
    out << "<polygon class=\"hull\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"6,4\" "
           "points=\"";
    for (const auto& p : convex_hull(pts)) out << px(p) << ' ';
    out << "\"/>\n";
  }

  out << "<g class=\"rois\" fill=\"#ffd54f\" stroke=\"#8d6e00\">\n";
  for (const auto& r : scenario.rois) {
    out << "<rect x=\"" << r.col * grid.cell_size_m() * sx << "\" y=\""
        << r.row * grid.cell_size_m() * sy << "\" width=\"" << grid.cell_size_m() * sx
        << "\" height=\"" << grid.cell_size_m() * sy << "\"/>\n";
  }
  out << "</g>\n";

  for (std::size_t u = 0; u < solution.paths.size(); ++u) {
    const std::string& color = spec.palette[u % spec.palette.size()];
    out << "<polyline class=\"uav\" data-uav=\"" << u << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const auto& wp : solution.paths[u]) out << px(grid.center(wp.cell)) << ' ';
    out << "\"/>\n";
  }

  if (spec.show_stations) {
    const double r = 0.3 * grid.cell_size_m() * std::min(sx, sy);
    out << "<g class=\"stations\" fill=\"black\">\n";
    for (const auto& c : solution.stations) {
      const Point p = grid.center(c);
      out << "<circle cx=\"" << p.x * sx << "\" cy=\"" << p.y * sy << "\" r=\"" << r << "\"/>\n";
    }
    out << "</g>\n";
  }
  const Point s = grid.center(scenario.start);
  out << "<circle class=\"start\" cx=\"" << s.x * sx << "\" cy=\"" << s.y * sy << "\" r=\""
      << 0.4 * grid.cell_size_m() * std::min(sx, sy)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n</svg>\n";
  return out.str();
}

}  // namespace tlbs
