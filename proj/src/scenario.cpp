#include "tlbs/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace tlbs {

Grid::Grid(int rows, int cols, double cell_size_m)
    : rows_(rows), cols_(cols), cell_size_m_(cell_size_m) {
  if (rows <= 0 || cols <= 0) throw DomainError("grid needs rows > 0 and cols > 0");
  if (!(cell_size_m > 0.0)) throw DomainError("grid cell_size_m must be > 0");
}

double Grid::cell_diagonal_m() const { return cell_size_m_ * std::numbers::sqrt2; }

void Grid::check(CellIndex c) const {
  if (!contains(c)) {
    throw DomainError("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                      ") lies outside the " + std::to_string(rows_) + "x" +
                      std::to_string(cols_) + " grid");
  }
}

Point Grid::center(CellIndex c) const {
  return {(c.col + 0.5) * cell_size_m_, (c.row + 0.5) * cell_size_m_};
}

CellIndex Grid::cell_at(Point p) const {
  return {static_cast<int>(std::floor(p.y / cell_size_m_)),
          static_cast<int>(std::floor(p.x / cell_size_m_))};
}

void UavConfig::check() const {
  if (!(range_m > 0.0)) throw DomainError("uav.range_m must be > 0");
  if (!(v_max_mps > 0.0)) throw DomainError("uav.v_max_mps must be > 0");
  if (!(slot_len_s > 0.0)) throw DomainError("uav.slot_len_s must be > 0");
  if (!(altitude_m >= 0.0)) throw DomainError("uav.altitude_m must be >= 0");
  if (!(cone_angle_rad > 0.0 && cone_angle_rad < std::numbers::pi)) {
    throw DomainError("uav.cone_angle_rad must lie in (0, pi)");
  }
  if (!(fly_cost_per_m > 0.0)) throw DomainError("uav.fly_cost_per_m must be > 0");
}

void Scenario::check() const {
  uav.check();
  if (num_uavs < 1) throw DomainError("num_uavs must be >= 1");
  if (rois.empty()) throw DomainError("scenario needs at least one ROI");
  for (const auto& r : rois) grid.check(r);
  grid.check(start);
  std::vector<CellIndex> sorted = rois;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("ROIs must be distinct");
  }
  if (std::find(rois.begin(), rois.end(), start) == rois.end()) {
    throw DomainError("start cell must be one of the ROIs");
  }
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kRandom1Uav: return "random1";
    case ScenarioKind::kSemi2Uav: return "semi2";
    case ScenarioKind::kSemi4Uav: return "semi4";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& text) {
  if (text == "random1") return ScenarioKind::kRandom1Uav;
  if (text == "semi2") return ScenarioKind::kSemi2Uav;
  if (text == "semi4") return ScenarioKind::kSemi4Uav;
  throw DomainError("unknown scenario kind '" + text + "' (expected random1, semi2 or semi4)");
}

double dist(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double dist(const Grid& grid, CellIndex a, CellIndex b) {
  grid.check(a);
  grid.check(b);
  return dist(grid.center(a), grid.center(b));
}

double sensing_coverage(const UavConfig& cfg) {
  if (!(cfg.cone_angle_rad > 0.0 && cfg.cone_angle_rad < std::numbers::pi)) {
    throw DomainError("cone angle must lie in (0, pi)");
  }
  const double radius = cfg.altitude_m * std::tan(cfg.cone_angle_rad / 2.0);
  return std::numbers::pi * radius * radius;
}

bool covers_full_cell(const Grid& grid, const UavConfig& cfg) {
  const double radius = cfg.altitude_m * std::tan(cfg.cone_angle_rad / 2.0);
  return radius >= grid.cell_diagonal_m() / 2.0;
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_below needs n > 0");
  const std::uint64_t limit = Rng::max() - (Rng::max() % n + 1) % n;
  for (;;) {
    const std::uint64_t draw = rng();
    if (draw <= limit) return draw % n;
  }
}

namespace {

// Draws `count` distinct cells from `pool` (partial Fisher-Yates) and appends
// them to `out` in draw order.
void sample_cells(Rng& rng, std::vector<CellIndex> pool, int count,
                  std::vector<CellIndex>& out) {
  if (count > static_cast<int>(pool.size())) {
    throw DomainError("cannot sample " + std::to_string(count) + " distinct cells from " +
                      std::to_string(pool.size()));
  }
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
}

std::vector<CellIndex> cells_in(int row_lo, int row_hi, int col_lo,
                                int col_hi) {
  std::vector<CellIndex> cells;
  for (int r = row_lo; r < row_hi; ++r) {
    for (int c = col_lo; c < col_hi; ++c) cells.push_back({r, c});
  }
  return cells;
}

Scenario make_scenario(const Grid& grid, std::vector<CellIndex> rois, int num_uavs,
                       const UavConfig& uav) {
  Scenario s;
  s.grid = grid;
  s.start = rois.front();
  s.rois = std::move(rois);
  s.num_uavs = num_uavs;
  s.uav = uav;
  s.check();
  return s;
}

}  // namespace

Scenario generate_random(std::uint64_t seed, const Grid& grid, int nr, const UavConfig& uav) {
  if (nr < 1) throw DomainError("nr must be >= 1");
  if (nr > grid.cell_count()) {
    throw DomainError("nr = " + std::to_string(nr) + " exceeds the grid's " +
                      std::to_string(grid.cell_count()) + " cells");
  }
  Rng rng(seed);
  std::vector<CellIndex> rois;
  sample_cells(rng, cells_in(0, grid.rows(), 0, grid.cols()), nr, rois);
  return make_scenario(grid, std::move(rois), 1, uav);
}

Scenario generate_semi_random(std::uint64_t seed, const Grid& grid, int num_uavs,
                              const UavConfig& uav) {
  if (num_uavs != 2 && num_uavs != 4) {
    throw DomainError("semi-random scenarios support 2 or 4 UAVs, got " +
                      std::to_string(num_uavs));
  }
  const int half_r = grid.rows() / 2;
  const int half_c = grid.cols() / 2;
  if (half_r < 1 || (num_uavs == 4 && half_c < 1)) {
    throw DomainError("grid too small to split into regions");
  }
  Rng rng(seed);
  std::vector<CellIndex> rois;
  if (num_uavs == 2) {
    sample_cells(rng, cells_in(0, half_r, 0, grid.cols()), 5, rois);
    sample_cells(rng, cells_in(half_r, grid.rows(), 0, grid.cols()), 5, rois);
  } else {
    // Quadrants NW, NE, SW, SE visited in a seeded order; the first two get
    // three ROIs and the last two get two.
    std::array<int, 4> order{0, 1, 2, 3};
    for (int i = 3; i > 0; --i) {
      std::swap(order[i], order[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    }
    constexpr std::array<int, 4> counts{3, 3, 2, 2};
    for (int k = 0; k < 4; ++k) {
      const int q = order[k];
      const bool south = q >= 2;
      const bool east = q % 2 == 1;
      auto pool = cells_in(south ? half_r : 0, south ? grid.rows() : half_r,
                           east ? half_c : 0, east ? grid.cols() : half_c);
      sample_cells(rng, std::move(pool), counts[k], rois);
    }
  }
  return make_scenario(grid, std::move(rois), num_uavs, uav);
}

Scenario generate(ScenarioKind kind, std::uint64_t seed, const Grid& grid,
                  const UavConfig& uav) {
  switch (kind) {
    case ScenarioKind::kRandom1Uav: return generate_random(seed, grid, 10, uav);
    case ScenarioKind::kSemi2Uav: return generate_semi_random(seed, grid, 2, uav);
    case ScenarioKind::kSemi4Uav: return generate_semi_random(seed, grid, 4, uav);
  }
  throw DomainError("unknown scenario kind");
}

}  // namespace tlbs
