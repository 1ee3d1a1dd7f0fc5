#include "tlbs/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tlbs {

TspResult tsp_brute_force(std::span<const CellIndex> rois, CellIndex start, const Grid& grid,
                          const TspOptions& options) {
  grid.check(start);
  std::vector<CellIndex> rest;
  for (const auto& r : rois) {
    grid.check(r);
    if (r != start) rest.push_back(r);
  }
  if (static_cast<int>(rest.size()) > options.max_rois) {
    throw OracleRefusal("brute-force TSP refused: " + std::to_string(rest.size()) +
                        " ROIs to order exceeds the cap of " + std::to_string(options.max_rois));
  }
  const std::size_t n = rest.size();
  // Node 0 is the start, nodes 1..n the remaining ROIs.
  std::vector<Point> pts{grid.center(start)};
  for (const auto& r : rest) pts.push_back(grid.center(r));
  std::vector<double> d((n + 1) * (n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) d[i * (n + 1) + j] = dist(pts[i], pts[j]);
  }
  auto at = [&](std::size_t i, std::size_t j) { return d[i * (n + 1) + j]; };

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::size_t> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    std::size_t prev = 0;
    for (std::size_t k = 0; k < n && len < best; ++k) {
      len += at(prev, perm[k]);
      prev = perm[k];
    }
    if (options.closed_tour) len += at(prev, 0);
    if (len < best) {
      best = len;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  TspResult out;
  out.order.push_back(start);
  for (std::size_t k : best_perm) out.order.push_back(rest[k - 1]);
  if (options.closed_tour && n > 0) out.order.push_back(start);
  out.length_m = n == 0 ? 0.0 : best;
  return out;
}

SubsetPaths tsp_all_subsets(std::span<const CellIndex> rois, CellIndex start, const Grid& grid,
                            const TspOptions& options) {
  grid.check(start);
  SubsetPaths out;
  for (const auto& r : rois) {
    grid.check(r);
    if (r != start) out.rois.push_back(r);
  }
  const int n = static_cast<int>(out.rois.size());
  if (n > options.max_rois) {
    throw OracleRefusal("subset TSP refused: " + std::to_string(n) +
                        " ROIs exceeds the cap of " + std::to_string(options.max_rois));
  }
  const std::size_t masks = std::size_t{1} << n;
  const Point origin = grid.center(start);
  std::vector<Point> pts;
  for (const auto& r : out.rois) pts.push_back(grid.center(r));
  const double inf = std::numeric_limits<double>::infinity();
  // dp[mask * n + last]: shortest path from the start covering mask, ending
  // at `last`.
  std::vector<double> dp(masks * n, inf);
  std::vector<int> parent(masks * n, -1);
  for (int i = 0; i < n; ++i) dp[(std::size_t{1} << i) * n + i] = dist(origin, pts[i]);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    for (int last = 0; last < n; ++last) {
      const double here = dp[mask * n + last];
      if (!(mask >> last & 1) || here == inf) continue;
      for (int next = 0; next < n; ++next) {
        if (mask >> next & 1) continue;
        const std::size_t to = (mask | std::size_t{1} << next) * n + next;
        const double cand = here + dist(pts[last], pts[next]);
        if (cand < dp[to]) {
          dp[to] = cand;
          parent[to] = last;
        }
      }
    }
  }
  out.length_m.assign(masks, 0.0);
  out.order.assign(masks, {});
  for (std::size_t mask = 1; mask < masks; ++mask) {
    double best = inf;
    int best_last = -1;
    for (int last = 0; last < n; ++last) {
      if (!(mask >> last & 1)) continue;
      double len = dp[mask * n + last];
      if (options.closed_tour) len += dist(pts[last], origin);
      if (len < best) {
        best = len;
        best_last = last;
      }
    }
    out.length_m[mask] = best;
    std::vector<int>& ord = out.order[mask];
    std::size_t m = mask;
    for (int cur = best_last; cur >= 0;) {
      ord.push_back(cur);
      const int prev = parent[m * n + cur];
      m &= ~(std::size_t{1} << cur);
      cur = prev;
    }
    std::reverse(ord.begin(), ord.end());
  }
  return out;
}

OracleRoute greedy_station_placement(std::span<const Point> polyline, double range_m) {
  if (!(range_m > 0.0)) throw DomainError("range_m must be > 0");
  OracleRoute out;
  double remaining = range_m;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Point a = polyline[i - 1];
    const Point b = polyline[i];
    const double seg = dist(a, b);
    out.path_len_m += seg;
    double used = 0.0;  // arc consumed along this segment
    while (seg - used > remaining + 1e-9 * range_m) {
      used += remaining;
      const double f = used / seg;
      out.station_points.push_back({a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f});
      remaining = range_m;
    }
    remaining -= seg - used;
  }
  out.nc = static_cast<int>(out.station_points.size());
  return out;
}

OracleRoute greedy_station_placement(std::span<const CellIndex> order, const Grid& grid,
                                      double range_m) {
  std::vector<Point> pts;
  pts.reserve(order.size());
  for (const auto& c : order) pts.push_back(grid.center(c));
  OracleRoute out = greedy_station_placement(pts, range_m);
  out.visit_order.assign(order.begin(), order.end());
  return out;
}

namespace {

OracleRoute route_of(const TspResult& tsp, const Scenario& scenario) {
  return greedy_station_placement(tsp.order, scenario.grid, scenario.uav.range_m);
}

}  // namespace

OracleSolution oracle_solve(const Scenario& scenario, const TspOptions& options) {
  scenario.check();
  OracleSolution out;
  if (scenario.num_uavs == 1) {
    out.routes.push_back(
        route_of(tsp_brute_force(scenario.rois, scenario.start, scenario.grid, options), scenario));
    out.max_path_len_m = out.routes[0].path_len_m;
    out.nc = out.routes[0].nc;
    return out;
  }

  const SubsetPaths sub = tsp_all_subsets(scenario.rois, scenario.start, scenario.grid, options);
  const int n = static_cast<int>(sub.rois.size());
  const int k = scenario.num_uavs;
  long double count = 1.0L;
  for (int i = 0; i < n; ++i) count *= k;
  if (count > static_cast<long double>(options.max_assignments)) {
    throw OracleRefusal("exact fleet oracle refused: " + std::to_string(k) + "^" +
                        std::to_string(n) + " ROI assignments exceeds the cap of " +
                        std::to_string(options.max_assignments));
  }

  // Routes (and their greedy station counts) for every subset.
  const std::size_t masks = std::size_t{1} << n;
  std::vector<TspResult> paths(masks);
  std::vector<int> nc(masks, 0);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    paths[mask].order.push_back(scenario.start);
    for (int i : sub.order[mask]) paths[mask].order.push_back(sub.rois[i]);
    if (options.closed_tour && mask) paths[mask].order.push_back(scenario.start);
    paths[mask].length_m = sub.length_m[mask];
    nc[mask] = route_of(paths[mask], scenario).nc;
  }

  // UAVs are interchangeable, so ROI i only opens UAV `used` (the next
  // empty one) or joins an already opened one.
  std::vector<std::size_t> group(static_cast<std::size_t>(k), 0);
  std::vector<std::size_t> best_group;
  double best_len = std::numeric_limits<double>::infinity();
  int best_nc = 0;
  auto rec = [&](auto&& self, int i, int used, double cur_max) -> void {
    if (cur_max > best_len) return;
    if (i == n) {
      int total = 0;
      for (std::size_t g : group) total += nc[g];
      if (cur_max < best_len || (cur_max == best_len && total < best_nc)) {
        best_len = cur_max;
        best_nc = total;
        best_group = group;
      }
      return;
    }
    for (int u = 0; u < std::min(used + 1, k); ++u) {
      const std::size_t before = group[u];
      group[u] |= std::size_t{1} << i;
      self(self, i + 1, std::max(used, u + 1), std::max(cur_max, sub.length_m[group[u]]));
      group[u] = before;
    }
  };
  rec(rec, 0, 0, 0.0);

  for (std::size_t g : best_group) {
    out.routes.push_back(route_of(paths[g], scenario));
    out.max_path_len_m = std::max(out.max_path_len_m, out.routes.back().path_len_m);
    out.nc += out.routes.back().nc;
  }
  return out;
}

}  // namespace tlbs
