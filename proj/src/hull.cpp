#include "tlbs/hull.hpp"

#include <algorithm>
#include <cmath>

namespace tlbs {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point a, Point b, Point p, double tol) {
  const double len = dist(a, b);
  if (len == 0.0) return dist(a, p) <= tol;
  if (std::abs(cross(a, b, p)) / len > tol) return false;
  const double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len);
  return t >= -tol / len && t <= 1.0 + tol / len;
}

}  // namespace

std::vector<Point> convex_hull(std::span<const Point> points) {
  if (points.empty()) throw DomainError("convex hull of an empty point set");
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool hull_contains(std::span<const Point> hull, Point p, double tol) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return dist(hull[0], p) <= tol;
  if (hull.size() == 2) return on_segment(hull[0], hull[1], p, tol);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point a = hull[i];
    const Point b = hull[(i + 1) % hull.size()];
    const double len = dist(a, b);
    if (cross(a, b, p) / len < -tol) return false;
  }
  return true;
}

HullFilter HullFilter::build(const Grid& grid, std::span<const CellIndex> rois) {
  std::vector<Point> centers;
  centers.reserve(rois.size());
  for (const auto& r : rois) centers.push_back(grid.center(r));
  HullFilter f;
  f.vertices = convex_hull(centers);
  f.mask.assign(grid.cell_count(), 0);
  for (int id = 0; id < grid.cell_count(); ++id) {
    if (hull_contains(f.vertices, grid.center(id))) {
      f.mask[id] = 1;
      f.members.push_back(grid.from_linear(id));
    }
  }
  return f;
}

}  // namespace tlbs
