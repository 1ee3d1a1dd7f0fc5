#include "tlbs/two_opt.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace tlbs {

Path place_stations_greedy(const Scenario& scenario, const SolverParams& params,
                           ChargingPlanner& planner, const std::vector<CellIndex>& order) {
  const Grid& grid = scenario.grid;
  const double gamma = scenario.uav.fly_cost_per_m;
  const double e_max = scenario.uav.max_energy();
  Path path{{order.front(), WaypointKind::kStart}};
  CellIndex cur = order.front();
  double energy = e_max;
  for (std::size_t k = 1; k < order.size(); ++k) {
    const CellIndex target = order[k];
    for (;;) {
      const double d = dist(grid.center(cur), grid.center(target));
      const double usable = energy - params.e_threshold;
      if (gamma * d <= usable) {
        energy -= gamma * d;
        cur = target;
        path.push_back({target, WaypointKind::kRoiVisit});
        break;
      }
      const auto picked = planner.pick_tau_free(cur, target, std::max(0.0, usable) / gamma);
      const CellIndex cell = picked ? *picked : cur;
      if (cell == cur && energy == e_max) return {};
      cur = cell;
      energy = e_max;
      path.push_back({cell, WaypointKind::kRecharge});
      planner.mark_station(cell);
      if (cell == target) break;
    }
  }
  return path;
}

namespace {

std::set<CellIndex> stations_of_others(const Solution& sol, std::size_t skip) {
  std::set<CellIndex> out;
  for (std::size_t u = 0; u < sol.paths.size(); ++u) {
    if (u == skip) continue;
    for (const auto& wp : sol.paths[u]) {
      if (wp.kind == WaypointKind::kRecharge) out.insert(wp.cell);
    }
  }
  return out;
}

// Start cell followed by the ROIs this UAV is responsible for, in visit
// order. ROIs covered by landing count unless another UAV visits them.
std::vector<CellIndex> visit_order(const Scenario& scenario, const Solution& sol,
                                   std::size_t u) {
  std::set<CellIndex> rois(scenario.rois.begin(), scenario.rois.end());
  std::set<CellIndex> visited_elsewhere;
  for (std::size_t v = 0; v < sol.paths.size(); ++v) {
    if (v == u) continue;
    for (const auto& wp : sol.paths[v]) {
      if (wp.kind == WaypointKind::kRoiVisit) visited_elsewhere.insert(wp.cell);
    }
  }
  std::vector<CellIndex> order{scenario.start};
  std::set<CellIndex> seen{scenario.start};
  const Path& path = sol.paths[u];
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto& wp = path[i];
    const bool take = wp.kind == WaypointKind::kRoiVisit ||
                      (wp.kind == WaypointKind::kRecharge && rois.count(wp.cell) &&
                       !visited_elsewhere.count(wp.cell));
    if (!take || seen.count(wp.cell)) continue;
    if (wp.cell == scenario.start) continue;
    seen.insert(wp.cell);
    order.push_back(wp.cell);
  }
  if (scenario.return_to_start && order.size() > 1) order.push_back(scenario.start);
  return order;
}

int total_nc(const std::set<CellIndex>& others, const Path& path) {
  std::set<CellIndex> all = others;
  for (const auto& wp : path) {
    if (wp.kind == WaypointKind::kRecharge) all.insert(wp.cell);
  }
  return static_cast<int>(all.size());
}

}  // namespace

Solution two_opt(const Solution& solution, const Scenario& scenario, const SolverParams& params,
                 ChargingPlanner& planner) {
  const Grid& grid = scenario.grid;
  Solution sol = solution;
  auto d = [&](CellIndex a, CellIndex b) { return dist(grid.center(a), grid.center(b)); };

  for (std::size_t u = 0; u < sol.paths.size(); ++u) {
    bool improved = true;
    while (improved) {
      improved = false;
      const std::vector<CellIndex> order = visit_order(scenario, sol, u);
      const std::size_t m = order.size();
      if (m < 3) continue;
      const std::size_t last_movable = scenario.return_to_start ? m - 2 : m - 1;
      if (last_movable < 2) continue;
      const std::set<CellIndex> others = stations_of_others(sol, u);
      const double base_len = path_length(grid, sol.paths[u]);

      for (std::size_t i = 0; i + 2 <= last_movable && !improved; ++i) {
        for (std::size_t j = i + 2; j <= last_movable && !improved; ++j) {
          const CellIndex a = order[i], b = order[i + 1], c = order[j];
          double delta = d(a, c) - d(a, b);
          if (j + 1 < m) delta += d(b, order[j + 1]) - d(c, order[j + 1]);
          if (delta >= -1e-9) continue;

          std::vector<CellIndex> cand = order;
          std::reverse(cand.begin() + static_cast<long>(i) + 1,
                       cand.begin() + static_cast<long>(j) + 1);
          planner.clear_stations();
          for (const auto& s : others) planner.mark_station(s);
          Path path = place_stations_greedy(scenario, params, planner, cand);
          if (path.empty()) continue;
          if (path_length(grid, path) < base_len - 1e-9 &&
              total_nc(others, path) <= sol.nc) {
            sol.paths[u] = std::move(path);
            refresh_metrics(grid, sol);
            improved = true;
          }
        }
      }
    }
  }
  return sol;
}

Solution two_opt(const Solution& solution, const Scenario& scenario, const SolverParams& params) {
  ChargingPlanner planner(scenario, params);
  return two_opt(solution, scenario, params, planner);
}

std::vector<Path> station_frontier(const Scenario& scenario, const SolverParams& params,
                                   const std::vector<CellIndex>& order,
                                   const std::set<CellIndex>& free_stations, double max_len_m,
                                   int max_new_stations) {
  if (order.empty()) return {};
  const Grid& grid = scenario.grid;
  const int n = grid.cell_count();
  const int m = static_cast<int>(order.size());
  if (m == 1) return {Path{{order.front(), WaypointKind::kStart}}};
  const double budget = (scenario.uav.max_energy() - params.e_threshold) /
                        scenario.uav.fly_cost_per_m;
  std::vector<Point> centers(static_cast<std::size_t>(n));
  std::vector<char> free(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) centers[c] = grid.center(grid.from_linear(c));
  for (const auto& c : free_stations) free[grid.linear(c)] = 1;
  std::vector<int> ord(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) ord[i] = grid.linear(order[i]);

  int max_nc = max_new_stations;
  if (max_nc < 0) {
    double total = 0.0;
    for (int i = 1; i < m; ++i) total += dist(centers[ord[i - 1]], centers[ord[i]]);
    max_nc = static_cast<int>(2.0 * total / budget) + m + 1;
  }

  // State (t * m + k) * n + c: t new stations so far, order[0..k] done,
  // full battery at cell c. parent_j is the last ROI flown through before
  // landing at c.
  const std::size_t layer = static_cast<std::size_t>(m) * n;
  const std::size_t states = layer * static_cast<std::size_t>(max_nc + 1);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(states, inf);
  std::vector<int> parent(states, -1), parent_j(states, -1);
  std::vector<char> done(states, 0);
  std::vector<double> finish(static_cast<std::size_t>(max_nc + 1), inf);
  std::vector<int> finish_from(static_cast<std::size_t>(max_nc + 1), -1);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  best[ord[0]] = 0.0;
  heap.push({0.0, static_cast<std::size_t>(ord[0])});

  while (!heap.empty()) {
    const auto [len, state] = heap.top();
    heap.pop();
    if (done[state] || len > max_len_m) continue;
    done[state] = 1;
    const int t = static_cast<int>(state / layer);
    const int k = static_cast<int>(state % layer) / n;
    const int at = static_cast<int>(state % n);
    Point pos = centers[at];
    int pos_cell = at;
    double used = 0.0;
    int j = k;
    while (j < m - 1) {
      for (int c = 0; c < n; ++c) {
        if (c == pos_cell) continue;
        const double dd = dist(pos, centers[c]);
        if (used + dd > budget) continue;
        const int nt = t + (free[c] ? 0 : 1);
        if (nt > max_nc) continue;
        const int nk = c == ord[j + 1] ? j + 1 : j;
        const std::size_t ns = (static_cast<std::size_t>(nt) * m + nk) * n + c;
        const double cand = len + used + dd;
        if (cand < best[ns] && cand <= max_len_m) {
          best[ns] = cand;
          parent[ns] = static_cast<int>(state);
          parent_j[ns] = j;
          heap.push({cand, ns});
        }
      }
      used += dist(pos, centers[ord[j + 1]]);
      if (used > budget) break;
      pos = centers[ord[j + 1]];
      pos_cell = ord[j + 1];
      ++j;
    }
    if (j == m - 1 && used <= budget && len + used < finish[t]) {
      finish[t] = len + used;
      finish_from[t] = static_cast<int>(state);
    }
  }

  auto roi_index = [&](int s) { return static_cast<int>(static_cast<std::size_t>(s) % layer) / n; };
  auto rebuild = [&](int last) {
    std::vector<int> chain;
    for (int s = last; s >= 0; s = parent[s]) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());
    Path path{{order.front(), WaypointKind::kStart}};
    for (std::size_t i = 1; i < chain.size(); ++i) {
      for (int r = roi_index(chain[i - 1]) + 1; r <= parent_j[chain[i]]; ++r) {
        path.push_back({order[r], WaypointKind::kRoiVisit});
      }
      path.push_back({grid.from_linear(chain[i] % n), WaypointKind::kRecharge});
    }
    for (int r = roi_index(chain.back()) + 1; r < m; ++r) {
      path.push_back({order[r], WaypointKind::kRoiVisit});
    }
    return path;
  };
  std::vector<Path> out(static_cast<std::size_t>(max_nc + 1));
  for (int t = 0; t <= max_nc; ++t) {
    if (finish_from[t] >= 0 && finish[t] <= max_len_m) out[t] = rebuild(finish_from[t]);
  }
  return out;
}

Path place_stations_optimal(const Scenario& scenario, const SolverParams& params,
                            const std::vector<CellIndex>& order,
                            const std::set<CellIndex>& free_stations, double max_len_m,
                            int max_new_stations) {
  for (auto& path : station_frontier(scenario, params, order, free_stations, max_len_m,
                                     max_new_stations)) {
    if (!path.empty()) return std::move(path);
  }
  return {};
}

Solution polish_stations(const Solution& solution, const Scenario& scenario,
                         const SolverParams& params) {
  const Grid& grid = scenario.grid;
  const bool weighted = params.ranking == Ranking::kWeighted;
  Solution sol = solution;
  for (std::size_t u = 0; u < sol.paths.size(); ++u) {
    const std::vector<CellIndex> order = visit_order(scenario, sol, u);
    const std::set<CellIndex> others = stations_of_others(sol, u);
    std::set<CellIndex> own;
    for (const auto& wp : sol.paths[u]) {
      if (wp.kind == WaypointKind::kRecharge && !others.count(wp.cell)) own.insert(wp.cell);
    }
    // Weighted ranking may trade length for stations, so the search runs
    // without a length bound and every station count is a candidate.
    const double bound =
        weighted ? std::numeric_limits<double>::infinity() : sol.max_path_len_m;
    std::vector<Path> options =
        station_frontier(scenario, params, order, others, bound, static_cast<int>(own.size()));
    if (!weighted) {
      auto first = std::find_if(options.begin(), options.end(),
                                [](const Path& p) { return !p.empty(); });
      if (first == options.end()) continue;
      options = {std::move(*first)};
    }
    // Search lengths are summed in a different order than path_length, so
    // allow rounding noise on the bound.
    const double tol = 1e-9 * std::max(1.0, sol.max_path_len_m);
    Solution pick = sol;
    for (auto& path : options) {
      if (path.empty()) continue;
      Solution cand = sol;
      cand.paths[u] = std::move(path);
      refresh_metrics(grid, cand);
      if (weighted) {
        if (ranks_before(cand, pick, params)) pick = std::move(cand);
        continue;
      }
      const bool no_longer = cand.max_path_len_m <= sol.max_path_len_m + tol;
      const bool shorter = cand.max_path_len_m < sol.max_path_len_m - tol;
      if (no_longer && cand.nc <= sol.nc && (cand.nc < sol.nc || shorter)) pick = std::move(cand);
    }
    sol = std::move(pick);
  }
  return sol;
}

TuneResult tune_parameters(const Scenario& scenario, const SolverParams& params,
                           double initial_q1, double initial_q2, int warmup_iters, int rounds) {
  if (warmup_iters < 1) throw DomainError("warmup_iters must be >= 1");
  if (rounds < 1) throw DomainError("rounds must be >= 1");
  TuneResult out;
  out.q1 = initial_q1;
  out.q2 = initial_q2;
  for (int r = 0; r < rounds; ++r) {
    SolverParams p = params;
    p.q1 = out.q1;
    p.q2 = out.q2;
    p.max_iterations = warmup_iters;
    const Solution best = solve(scenario, p).best;
    out.rounds.emplace_back(best.max_path_len_m, best.nc);
    if (best.max_path_len_m > 0.0) out.q1 = best.max_path_len_m;
    out.q2 = static_cast<double>(best.nc);
  }
  return out;
}

}  // namespace tlbs
