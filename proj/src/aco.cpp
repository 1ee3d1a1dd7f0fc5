#include "tlbs/aco.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tlbs/two_opt.hpp"

namespace tlbs {

void SolverParams::check() const {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0, 1)");
  if (!(tau0 > 0.0)) throw DomainError("tau0 must be > 0");
  if (!(q1 > 0.0)) throw DomainError("q1 must be > 0");
  if (!(q2 >= 0.0)) throw DomainError("q2 must be >= 0");
  if (max_iterations <= 0) throw DomainError("max_iterations must be > 0");
  if (!(e_threshold >= 0.0)) throw DomainError("e_threshold must be >= 0");
  if (!(station_reuse_bonus > 0.0)) throw DomainError("station_reuse_bonus must be > 0");
  if (!(detour_slack_m >= 0.0)) throw DomainError("detour_slack_m must be >= 0");
}

double weighted_cost(const Solution& s, const SolverParams& params) {
  const double nc_term = params.q2 > 0.0 ? s.nc / params.q2 : 0.0;
  return s.max_path_len_m / params.q1 + nc_term;
}

bool ranks_before(const Solution& a, const Solution& b, const SolverParams& params) {
  if (params.ranking == Ranking::kWeighted) {
    const double ca = weighted_cost(a, params);
    const double cb = weighted_cost(b, params);
    if (ca != cb) return ca < cb;
  }
  return better_than(a, b);
}

bool ColonyState::unvisited(int roi) const {
  return std::find(r_visit.begin(), r_visit.end(), roi) != r_visit.end();
}

namespace {

// Unnormalized selection weights aligned with r_visit.
std::vector<double> roi_weights(const Scenario& scenario, CellIndex current,
                                std::span<const int> r_visit, const PheromoneMatrix& tau,
                                double alpha, double beta) {
  if (r_visit.empty()) throw DomainError("no unvisited ROI left to select");
  const Grid& grid = scenario.grid;
  const int cur = grid.linear(current);
  const double* row = tau.row(cur);
  const Point p = grid.center(current);
  std::vector<double> w(r_visit.size());
  for (std::size_t k = 0; k < r_visit.size(); ++k) {
    const CellIndex cand = scenario.rois.at(static_cast<std::size_t>(r_visit[k]));
    const double d = dist(p, grid.center(cand));
    if (d == 0.0) throw DomainError("current cell is itself an unvisited ROI");
    w[k] = kernels::weight_pow(row[grid.linear(cand)], alpha) *
           kernels::weight_pow(1.0 / d, beta);
  }
  return w;
}

}  // namespace

std::vector<double> roi_selection_probs(const Scenario& scenario, CellIndex current,
                                        std::span<const int> r_visit,
                                        const PheromoneMatrix& tau, double alpha, double beta) {
  std::vector<double> w = roi_weights(scenario, current, r_visit, tau, alpha, beta);
  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

double roi_selection_prob(const Scenario& scenario, CellIndex current, CellIndex candidate,
                          std::span<const int> r_visit, const PheromoneMatrix& tau,
                          double alpha, double beta) {
  const auto probs = roi_selection_probs(scenario, current, r_visit, tau, alpha, beta);
  for (std::size_t k = 0; k < r_visit.size(); ++k) {
    if (scenario.rois[static_cast<std::size_t>(r_visit[k])] == candidate) return probs[k];
  }
  return 0.0;
}

int select_next_roi(const Scenario& scenario, const ColonyState& state, int uav,
                    const PheromoneMatrix& tau, const SolverParams& params, Rng& rng) {
  const auto w = roi_weights(scenario, state.uavs.at(static_cast<std::size_t>(uav)).cell,
                             state.r_visit, tau, params.alpha, params.beta);
  std::size_t pick = 0;
  if (params.selection == SelectionRule::kArgmax) {
    for (std::size_t k = 1; k < w.size(); ++k) {
      if (w[k] > w[pick]) pick = k;
    }
  } else {
    double total = 0.0;
    for (double v : w) total += v;
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    pick = w.size() - 1;
    for (std::size_t k = 0; k < w.size(); ++k) {
      acc += w[k];
      if (u < acc) {
        pick = k;
        break;
      }
    }
  }
  return state.r_visit[pick];
}

std::vector<CellIndex> reachable_cells(const Scenario& scenario, CellIndex current,
                                       double residual, const HullFilter* hull,
                                       std::span<const CellIndex> stations) {
  if (!(residual > 0.0)) throw DomainError("residual energy must be > 0");
  const Grid& grid = scenario.grid;
  grid.check(current);
  kernels::CandidateSoA cells;
  for (int id = 0; id < grid.cell_count(); ++id) {
    const Point c = grid.center(id);
    cells.push_back(c.x, c.y, id);
  }
  std::vector<std::uint8_t> in_range(cells.size());
  const Point p = grid.center(current);
  kernels::within_range(p.x, p.y, residual / scenario.uav.fly_cost_per_m, cells, in_range);

  std::vector<std::uint8_t> is_station(cells.size(), 0);
  for (const auto& s : stations) is_station[grid.linear(s)] = 1;

  std::vector<CellIndex> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!in_range[i]) continue;
    if (hull && !hull->mask[i] && !is_station[i]) continue;
    out.push_back(grid.from_linear(static_cast<int>(i)));
  }
  if (out.empty()) throw InfeasibleError("no cell reachable with the residual energy");
  return out;
}

CellIndex select_charging_cell(const Grid& grid, CellIndex current,
                               std::span<const CellIndex> candidates,
                               const PheromoneMatrix& tau, const SolverParams& params,
                               std::span<const CellIndex> stations) {
  if (candidates.empty()) throw DomainError("no charging candidates");
  const int cur = grid.linear(current);
  const Point p = grid.center(current);
  std::vector<CellIndex> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  CellIndex best = sorted.front();
  double best_score = -1.0;
  for (const auto& c : sorted) {
    const bool station = std::find(stations.begin(), stations.end(), c) != stations.end();
    const double s = kernels::charging_score(tau.at(cur, grid.linear(c)),
                                             dist(p, grid.center(c)),
                                             station ? params.station_reuse_bonus : 1.0,
                                             params.alpha, params.beta);
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  return best;
}

ChargingPlanner::ChargingPlanner(const Scenario& scenario, const SolverParams& params)
    : scenario_(scenario),
      params_(params),
      bonus_(scenario.grid.cell_count(), 1.0),
      uniform_tau_(scenario.grid.cell_count(), 1.0),
      station_mask_(scenario.grid.cell_count(), 0) {
  const Grid& grid = scenario.grid;
  for (int id = 0; id < grid.cell_count(); ++id) {
    const Point c = grid.center(id);
    all_cells_.push_back(c.x, c.y, id);
  }
  if (params.use_hull_reduction) {
    hull_ = HullFilter::build(grid, scenario.rois);
    for (const auto& m : hull_->members) {
      const Point c = grid.center(m);
      hull_cells_.push_back(c.x, c.y, grid.linear(m));
    }
  }
}

std::optional<CellIndex> ChargingPlanner::pick(CellIndex current, CellIndex target,
                                               double reach_m, const double* tau_row) {
  const Grid& grid = scenario_.grid;
  const Point cur = grid.center(current);
  const Point tgt = grid.center(target);
  kernels::ChargingQuery q;
  q.cur_x = cur.x;
  q.cur_y = cur.y;
  q.target_x = tgt.x;
  q.target_y = tgt.y;
  q.target_dist_m = dist(cur, tgt);
  q.reach_m = reach_m;
  q.detour_slack_m = params_.detour_slack_m;
  q.tau_row = tau_row;
  q.bonus = bonus_.data();
  q.alpha = params_.alpha;
  q.beta = params_.beta;

  auto scan = [&](const kernels::CandidateSoA& cells, bool add_outside) {
    kernels::ScanResult best = kernels::scan_charging(q, cells);
    scanned_ += cells.size();
    if (!add_outside) return best;
    for (int id : stations_outside_hull_) {
      const Point c = grid.center(id);
      const double d = dist(cur, c);
      const double dt = dist(c, tgt);
      if (!(d <= q.reach_m) || !(dt < q.target_dist_m) ||
          !(d + dt <= q.target_dist_m + q.detour_slack_m)) {
        continue;
      }
      const double s = kernels::charging_score(tau_row[id], d, bonus_[id], q.alpha, q.beta);
      if (s > best.score || (s == best.score && id < best.id)) {
        best.score = s;
        best.id = id;
      }
    }
    return best;
  };

  kernels::ScanResult best = hull_ ? scan(hull_cells_, true) : scan(all_cells_, false);
  // On coarse grids the detour ellipse can miss every cell center, and the
  // hull can hold no cell in range; widen both before giving up.
  if (best.id < 0) {
    q.detour_slack_m = std::numeric_limits<double>::infinity();
    best = scan(all_cells_, false);
  }
  if (best.id < 0) return std::nullopt;
  return grid.from_linear(best.id);
}

std::optional<CellIndex> ChargingPlanner::pick_tau_free(CellIndex current, CellIndex target,
                                                        double reach_m) {
  return pick(current, target, reach_m, uniform_tau_.data());
}

void ChargingPlanner::clear_stations() {
  std::fill(bonus_.begin(), bonus_.end(), 1.0);
  std::fill(station_mask_.begin(), station_mask_.end(), 0);
  stations_outside_hull_.clear();
}

void ChargingPlanner::mark_station(CellIndex c) {
  const int id = scenario_.grid.linear(c);
  if (station_mask_[id]) return;
  station_mask_[id] = 1;
  bonus_[id] = params_.station_reuse_bonus;
  if (hull_ && !hull_->mask[id]) stations_outside_hull_.push_back(id);
}

bool ChargingPlanner::is_station(CellIndex c) const {
  return station_mask_[scenario_.grid.linear(c)] != 0;
}

namespace {

class Constructor {
 public:
  Constructor(const Scenario& scenario, const PheromoneMatrix& tau, const SolverParams& params,
              Rng& rng, ChargingPlanner& planner)
      : s_(scenario), tau_(tau), params_(params), rng_(rng), planner_(planner),
        station_(scenario.grid.cell_count(), 0) {}

  ConstructResult run() {
    const Grid& grid = s_.grid;
    const double e_max = s_.uav.max_energy();
    ColonyState& st = state_;
    for (int i = 0; i < s_.roi_count(); ++i) {
      if (s_.rois[i] != s_.start) st.r_visit.push_back(i);
    }
    st.uavs.resize(static_cast<std::size_t>(s_.num_uavs));
    for (auto& u : st.uavs) {
      u.cell = s_.start;
      u.energy = e_max;
      u.path = {{s_.start, WaypointKind::kStart}};
    }
    planner_.clear_stations();
    roi_of_cell_.assign(grid.cell_count(), -1);
    for (int i = 0; i < s_.roi_count(); ++i) roi_of_cell_[grid.linear(s_.rois[i])] = i;

    const long limit = 1000L * (s_.roi_count() + 1) * s_.num_uavs + 4L * grid.cell_count();
    long steps = 0;
    while (!st.r_visit.empty()) {
      for (int u = 0; u < s_.num_uavs && !st.r_visit.empty(); ++u) {
        if (++steps > limit) throw InfeasibleError("construction exceeded its step cap");
        UavProgress& uav = st.uavs[static_cast<std::size_t>(u)];
        int target = uav.pending_target;
        if (target < 0 || !st.unvisited(target)) {
          target = select_next_roi(s_, st, u, tau_, params_, rng_);
        }
        if (step_towards(uav, s_.rois[static_cast<std::size_t>(target)], target)) {
          visit(target);
        }
      }
    }
    if (s_.return_to_start) {
      for (auto& uav : st.uavs) {
        while (uav.cell != s_.start) {
          if (++steps > limit) throw InfeasibleError("construction exceeded its step cap");
          step_towards(uav, s_.start, -1);
        }
      }
    }

    ConstructResult out;
    for (auto& u : st.uavs) out.solution.paths.push_back(u.path);
    refresh_metrics(grid, out.solution);
    out.state = std::move(state_);
    return out;
  }

 private:
  void visit(int roi) {
    auto& rv = state_.r_visit;
    auto it = std::find(rv.begin(), rv.end(), roi);
    if (it != rv.end()) rv.erase(it);
  }

  // Flies to `target` when the leg fits the battery, else detours to a
  // charging cell. Returns true once the UAV is at the target.
  bool step_towards(UavProgress& uav, CellIndex target, int roi) {
    const Grid& grid = s_.grid;
    const double gamma = s_.uav.fly_cost_per_m;
    const double e_max = s_.uav.max_energy();
    const double d = dist(grid.center(uav.cell), grid.center(target));
    const double usable = uav.energy - params_.e_threshold;
    if (gamma * d <= usable) {
      uav.energy -= gamma * d;
      uav.cell = target;
      uav.path.push_back({target, WaypointKind::kRoiVisit});
      uav.pending_target = -1;
      return true;
    }
    uav.pending_target = roi;
    const double reach = std::max(0.0, usable) / gamma;
    const auto picked = planner_.pick(uav.cell, target, reach, tau_.row(grid.linear(uav.cell)));
    const CellIndex cell = picked ? *picked : uav.cell;
    if (cell == uav.cell && uav.energy == e_max) {
      throw InfeasibleError("target out of range even with a full battery");
    }
    uav.energy -= gamma * dist(grid.center(uav.cell), grid.center(cell));
    uav.cell = cell;
    uav.path.push_back({cell, WaypointKind::kRecharge});
    uav.energy = e_max;
    const int id = grid.linear(cell);
    if (!station_[id]) {
      station_[id] = 1;
      planner_.mark_station(cell);
      state_.stations.push_back(cell);
      ++state_.nc;
    }
    // Landing over an uncovered ROI covers it.
    if (roi_of_cell_[id] >= 0) visit(roi_of_cell_[id]);
    return cell == target;
  }

  const Scenario& s_;
  const PheromoneMatrix& tau_;
  const SolverParams& params_;
  Rng& rng_;
  ChargingPlanner& planner_;
  std::vector<char> station_;
  std::vector<int> roi_of_cell_;
  ColonyState state_;
};

}  // namespace

ConstructResult construct_iteration(const Scenario& scenario, const PheromoneMatrix& tau,
                                    const SolverParams& params, Rng& rng,
                                    ChargingPlanner& planner) {
  return Constructor(scenario, tau, params, rng, planner).run();
}

ConstructResult construct_iteration(const Scenario& scenario, const PheromoneMatrix& tau,
                                    const SolverParams& params, Rng& rng) {
  ChargingPlanner planner(scenario, params);
  return construct_iteration(scenario, tau, params, rng, planner);
}

EdgeSet used_edges(const Grid& grid, const Solution& solution) {
  EdgeSet edges;
  for (const auto& path : solution.paths) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      const int a = grid.linear(path[i - 1].cell);
      const int b = grid.linear(path[i].cell);
      if (a != b) edges.insert(a, b);
    }
  }
  edges.finalize();
  return edges;
}

SolveResult solve(const Scenario& scenario, const SolverParams& params,
                  const IterationObserver& observer) {
  scenario.check();
  params.check();
  const Grid& grid = scenario.grid;
  PheromoneMatrix tau(grid.cell_count(), params.tau0);
  ChargingPlanner planner(scenario, params);
  Rng rng(params.seed);

  SolveResult result;
  bool have_best = false;
  for (int it = 1; it <= params.max_iterations; ++it) {
    const std::uint64_t scanned_before = planner.candidates_scanned();
    Solution sol = construct_iteration(scenario, tau, params, rng, planner).solution;
    const int nc_before = sol.nc;
    if (params.use_two_opt) {
      sol = two_opt(sol, scenario, params, planner);
      if (sol.nc > nc_before) ++result.two_opt_nc_increases;
    }

    const EdgeSet edges = used_edges(grid, sol);
    tau.evaporate(edges, params.rho);
    if (!edges.empty()) {
      tau.reinforce(edges, params.rho,
                    reinforcement_deposit(params.q1, params.q2, sol.max_path_len_m, sol.nc));
    }

    if (!have_best || ranks_before(sol, result.best, params)) {
      result.best = sol;
      have_best = true;
    }
    result.iterations = it;
    if (observer) {
      IterationInfo info;
      info.iteration = it;
      info.current = &sol;
      info.best = &result.best;
      info.candidates_scanned = planner.candidates_scanned() - scanned_before;
      info.two_opt_nc_before = nc_before;
      info.two_opt_nc_after = sol.nc;
      observer(info);
    }
  }
  if (params.polish_stations) result.best = polish_stations(result.best, scenario, params);
  result.candidates_scanned = planner.candidates_scanned();
  return result;
}

}  // namespace tlbs
