#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlbs {

/// Raised when an argument falls outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an instance admits no feasible construction.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct CellIndex {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Square-cell discretization of the field. Cell (r, c) has its center at
/// x = (c + 0.5) * size, y = (r + 0.5) * size; rows grow downward.
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, double cell_size_m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double cell_size_m() const { return cell_size_m_; }
  int cell_count() const { return rows_ * cols_; }
  double cell_diagonal_m() const;

  bool contains(CellIndex c) const {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }
  /// Throws DomainError when `c` is outside the grid.
  void check(CellIndex c) const;

  int linear(CellIndex c) const { return c.row * cols_ + c.col; }
  CellIndex from_linear(int id) const { return {id / cols_, id % cols_}; }
  Point center(CellIndex c) const;
  Point center(int id) const { return center(from_linear(id)); }
  /// Cell whose closed square contains `p`; points on shared edges go to the
  /// higher index. Result may lie outside the grid.
  CellIndex cell_at(Point p) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_ = 20;
  int cols_ = 20;
  double cell_size_m_ = 1000.0;
};

struct UavConfig {
  double range_m = 5000.0;
  double v_max_mps = 10.0;
  double slot_len_s = 10.0;
  double altitude_m = 500.0;
  double cone_angle_rad = 2.0;
  double fly_cost_per_m = 1.0;

  /// Full-battery energy in the same units as fly_cost_per_m * meters.
  double max_energy() const { return range_m * fly_cost_per_m; }
  double slot_distance_m() const { return v_max_mps * slot_len_s; }
  void check() const;

  friend bool operator==(const UavConfig&, const UavConfig&) = default;
};

struct Scenario {
  Grid grid;
  std::vector<CellIndex> rois;  // insertion order drives tie-breaking
  CellIndex start;
  int num_uavs = 1;
  UavConfig uav;
  bool return_to_start = false;

  int roi_count() const { return static_cast<int>(rois.size()); }
  /// Throws DomainError on any broken instance invariant.
  void check() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class ScenarioKind { kRandom1Uav, kSemi2Uav, kSemi4Uav };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& text);

double dist(const Grid& grid, CellIndex a, CellIndex b);
double dist(Point a, Point b);

/// Area of the sensing footprint, pi * (H * tan(theta / 2))^2.
double sensing_coverage(const UavConfig& cfg);
/// True when the footprint radius reaches the far corners of a cell.
bool covers_full_cell(const Grid& grid, const UavConfig& cfg);

Scenario generate_random(std::uint64_t seed, const Grid& grid, int nr,
                         const UavConfig& uav = {});
Scenario generate_semi_random(std::uint64_t seed, const Grid& grid,
                              int num_uavs, const UavConfig& uav = {});
Scenario generate(ScenarioKind kind, std::uint64_t seed, const Grid& grid = {},
                  const UavConfig& uav = {});

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng);
/// Unbiased integer in [0, n).
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

}  // namespace tlbs
