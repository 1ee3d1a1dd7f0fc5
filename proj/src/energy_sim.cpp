#include "tlbs/energy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tlbs {

double step_energy(double prev_energy, bool flying, double dist_this_slot_m,
                   const UavConfig& cfg, double hover_drain) {
  const double e_max = cfg.max_energy();
  if (!(prev_energy > 0.0) || prev_energy > e_max) {
    throw DomainError("previous energy must lie in (0, E_MAX]");
  }
  if (!(dist_this_slot_m >= 0.0)) throw DomainError("slot distance must be >= 0");
  if (!flying) return e_max;
  const double next = prev_energy - cfg.fly_cost_per_m * dist_this_slot_m - hover_drain;
  if (!(next > 0.0)) {
    std::ostringstream msg;
    msg << "battery depleted: " << prev_energy << " -> " << next;
    throw EnergyDepletedError(msg.str());
  }
  return next;
}

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::kC3: return "C3";
    case Constraint::kC4: return "C4";
    case Constraint::kC5: return "C5";
    case Constraint::kC6: return "C6";
    case Constraint::kC7: return "C7";
    case Constraint::kC8: return "C8";
  }
  return "?";
}

Constraint constraint_from_string(const std::string& text) {
  for (auto c : {Constraint::kC3, Constraint::kC4, Constraint::kC5, Constraint::kC6,
                 Constraint::kC7, Constraint::kC8}) {
    if (to_string(c) == text) return c;
  }
  throw DomainError("unknown constraint id '" + text + "'");
}

namespace {

constexpr double kCenterTolM = 1e-6;

class Replay {
 public:
  Replay(const Scenario& scenario, const Solution& solution, const SimulationOptions& options)
      : scenario_(scenario),
        grid_(scenario.grid),
        options_(options),
        roi_of_cell_(grid_.cell_count(), -1),
        first_cover_(scenario.rois.size(), std::numeric_limits<long>::max()),
        station_(grid_.cell_count(), 0) {
    for (std::size_t i = 0; i < scenario.rois.size(); ++i) {
      roi_of_cell_[grid_.linear(scenario.rois[i])] = static_cast<int>(i);
    }
    for (const auto& s : solution.stations) {
      grid_.check(s);
      station_[grid_.linear(s)] = 1;
    }
  }

  void run_uav(int uav, const Path& raw_path) {
    Path path = raw_path;
    if (path.empty()) path.push_back({scenario_.start, WaypointKind::kStart});
    if (path.front().kind != WaypointKind::kStart || path.front().cell != scenario_.start) {
      throw DomainError("path of UAV " + std::to_string(uav) +
                        " must begin with a START waypoint at the scenario start");
    }
    for (const auto& wp : path) {
      grid_.check(wp.cell);
      if (wp.kind == WaypointKind::kRoiVisit && roi_of_cell_[grid_.linear(wp.cell)] < 0) {
        throw DomainError("ROI_VISIT waypoint on a non-ROI cell");
      }
    }

    const UavConfig& cfg = scenario_.uav;
    const double e_max = cfg.max_energy();
    const double step = cfg.slot_distance_m();
    long slot = 0;
    double energy = e_max;
    Point pos = grid_.center(scenario_.start);
    observe(uav, slot, pos);

    for (std::size_t w = 1; w < path.size(); ++w) {
      const Point target = grid_.center(path[w].cell);
      const double len = dist(pos, target);
      const long n = len > 0.0 ? static_cast<long>(std::ceil(len / step - 1e-12)) : 0;
      for (long k = 1; k <= n; ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(n);
        const Point next = k == n ? target
                                  : Point{pos.x + (target.x - pos.x) * f,
                                          pos.y + (target.y - pos.y) * f};
        const Point prev_pt = k == 1 ? pos
                                     : Point{pos.x + (target.x - pos.x) * (k - 1) / n,
                                             pos.y + (target.y - pos.y) * (k - 1) / n};
        const double moved = dist(prev_pt, next);
        ++slot;
        if (moved > step * (1.0 + 1e-12)) {
          add(Constraint::kC6, uav, slot, "moved " + fmt(moved) + " m > " + fmt(step) + " m");
        }
        if (!advance_energy(uav, slot, energy, true, moved)) return;
        observe(uav, slot, next);
      }
      pos = target;
      if (path[w].kind == WaypointKind::kRecharge) {
        ++slot;
        if (!station_[grid_.linear(path[w].cell)]) {
          add(Constraint::kC7, uav, slot, "landed on a cell without a station");
        }
        if (!advance_energy(uav, slot, energy, false, 0.0)) return;
        observe(uav, slot, pos);
      }
    }
  }

  ValidationReport finish(const Solution& solution) {
    long t_finish = 0;
    for (std::size_t i = 0; i < first_cover_.size(); ++i) {
      if (first_cover_[i] == std::numeric_limits<long>::max()) {
        const auto& r = scenario_.rois[i];
        add(Constraint::kC4, -1, last_slot_,
            "ROI (" + std::to_string(r.row) + "," + std::to_string(r.col) + ") never covered");
      } else {
        t_finish = std::max(t_finish, first_cover_[i]);
      }
    }
    check_metrics(solution);
    report_.t_finish_slots = t_finish;
    report_.passed = report_.violations.empty();
    return std::move(report_);
  }

 private:
  static std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  }

  void add(Constraint c, int uav, long slot, std::string message) {
    report_.violations.push_back({c, uav, slot, std::move(message)});
  }

  bool advance_energy(int uav, long slot, double& energy, bool flying, double moved) {
    const UavConfig& cfg = scenario_.uav;
    const double e_max = cfg.max_energy();
    const double hover = options_.hover_drain_per_slot;
    const double f_fly = flying ? 1.0 : 0.0;
    // Battery update written in its raw flying/landed mixture form.
    const double mixed =
        energy - (cfg.fly_cost_per_m * moved + hover) * f_fly + (e_max - energy) * (1.0 - f_fly);
    double next = 0.0;
    try {
      next = step_energy(energy, flying, moved, cfg, hover);
    } catch (const EnergyDepletedError& e) {
      add(Constraint::kC5, uav, slot, e.what());
      last_slot_ = std::max(last_slot_, slot);
      return false;
    }
    if (std::abs(next - mixed) > 1e-9 * e_max) {
      add(Constraint::kC8, uav, slot, "battery trace disagrees with the update rule");
    }
    if (!(next > 0.0) || next > e_max) {
      add(Constraint::kC5, uav, slot, "energy " + fmt(next) + " outside (0, E_MAX]");
    }
    energy = next;
    return true;
  }

  void observe(int uav, long slot, Point p) {
    last_slot_ = std::max(last_slot_, slot);
    const CellIndex cell = grid_.cell_at(p);
    if (!grid_.contains(cell)) {
      add(Constraint::kC3, uav, slot, "position outside the grid");
      return;
    }
    if (dist(p, grid_.center(cell)) > kCenterTolM) return;
    const int roi = roi_of_cell_[grid_.linear(cell)];
    if (roi >= 0) first_cover_[roi] = std::min(first_cover_[roi], slot);
  }

  void check_metrics(const Solution& solution) {
    Solution recomputed = solution;
    refresh_metrics(grid_, recomputed);
    const double tol = 1e-9 * std::max(1.0, recomputed.max_path_len_m);
    if (std::abs(recomputed.max_path_len_m - solution.max_path_len_m) > tol) {
      add(Constraint::kC8, -1, 0,
          "declared max_path_len_m " + fmt(solution.max_path_len_m) + " != " +
              fmt(recomputed.max_path_len_m));
    }
    if (solution.nc != static_cast<int>(solution.stations.size())) {
      add(Constraint::kC8, -1, 0, "declared nc differs from the station count");
    }
  }

  const Scenario& scenario_;
  const Grid& grid_;
  SimulationOptions options_;
  std::vector<int> roi_of_cell_;
  std::vector<long> first_cover_;
  std::vector<char> station_;
  ValidationReport report_;
  long last_slot_ = 0;
};

}  // namespace

ValidationReport simulate(const Scenario& scenario, const Solution& solution,
                          const SimulationOptions& options) {
  scenario.check();
  if (static_cast<int>(solution.paths.size()) > scenario.num_uavs) {
    throw DomainError("solution has more paths than the scenario has UAVs");
  }
  Replay replay(scenario, solution, options);
  for (int u = 0; u < scenario.num_uavs; ++u) {
    static const Path kIdle;
    replay.run_uav(u, u < static_cast<int>(solution.paths.size()) ? solution.paths[u] : kIdle);
  }
  return replay.finish(solution);
}

}  // namespace tlbs
