#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tlbs/scenario.hpp"

namespace tlbs {

/// Convex hull by monotone chain: counter-clockwise in the (x, y) frame,
/// no collinear vertices, no repeated start vertex. One distinct input point
/// yields one vertex; collinear input yields the two segment endpoints.
/// Throws DomainError on empty input.
std::vector<Point> convex_hull(std::span<const Point> points);

/// Inclusive point-in-convex-polygon test (boundary counts as inside), with
/// the degenerate point and segment hulls handled.
bool hull_contains(std::span<const Point> hull, Point p, double tol = 1e-6);

/// Restriction of charging candidates to cells whose centers lie in the hull
/// of the ROI centers.
struct HullFilter {
  std::vector<Point> vertices;
  std::vector<CellIndex> members;  // row-major
  std::vector<std::uint8_t> mask;  // by linear cell id

  bool contains(const Grid& grid, CellIndex c) const { return mask[grid.linear(c)] != 0; }

  static HullFilter build(const Grid& grid, std::span<const CellIndex> rois);
};

}  // namespace tlbs
