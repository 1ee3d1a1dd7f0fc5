#include "tlbs/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

namespace tlbs::io {

namespace {

json cell_json(CellIndex c) { return json::array({c.row, c.col}); }

CellIndex cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("cell must be a [row, col] pair");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw DomainError(std::string("unknown ") + what + " field '" + it.key() + "'");
    }
  }
}

}  // namespace

json to_json(const Scenario& s) {
  json rois = json::array();
  for (const auto& r : s.rois) rois.push_back(cell_json(r));
  json j = {
      {"grid", {{"rows", s.grid.rows()}, {"cols", s.grid.cols()},
                {"cell_size_m", s.grid.cell_size_m()}}},
      {"rois", rois},
      {"start", cell_json(s.start)},
      {"num_uavs", s.num_uavs},
      {"uav", {{"range_m", s.uav.range_m}, {"v_max_mps", s.uav.v_max_mps},
               {"slot_len_s", s.uav.slot_len_s}, {"altitude_m", s.uav.altitude_m},
               {"cone_angle_rad", s.uav.cone_angle_rad},
               {"fly_cost_per_m", s.uav.fly_cost_per_m}}},
  };
  if (s.return_to_start) j["return_to_start"] = true;
  return j;
}

Scenario scenario_from_json(const json& j) {
  try {
    Scenario s;
    const auto& g = j.at("grid");
    s.grid = Grid(g.at("rows").get<int>(), g.at("cols").get<int>(),
                  g.at("cell_size_m").get<double>());
    for (const auto& r : j.at("rois")) s.rois.push_back(cell_from(r));
    s.start = cell_from(j.at("start"));
    s.num_uavs = j.at("num_uavs").get<int>();
    const auto& u = j.at("uav");
    s.uav.range_m = u.at("range_m").get<double>();
    s.uav.v_max_mps = u.at("v_max_mps").get<double>();
    s.uav.slot_len_s = u.at("slot_len_s").get<double>();
    s.uav.altitude_m = u.at("altitude_m").get<double>();
    s.uav.cone_angle_rad = u.at("cone_angle_rad").get<double>();
    s.uav.fly_cost_per_m = u.at("fly_cost_per_m").get<double>();
    s.return_to_start = j.value("return_to_start", false);
    s.check();
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed scenario JSON: ") + e.what());
  }
}

json to_json(const Solution& s) {
  json paths = json::array();
  for (const auto& path : s.paths) {
    json p = json::array();
    for (const auto& wp : path) p.push_back({{"cell", cell_json(wp.cell)}, {"kind", to_string(wp.kind)}});
    paths.push_back(p);
  }
  json stations = json::array();
  for (const auto& c : s.stations) stations.push_back(cell_json(c));
  return {{"paths", paths}, {"stations", stations}, {"max_path_len_m", s.max_path_len_m},
          {"nc", s.nc}};
}

Solution solution_from_json(const json& j) {
  try {
    Solution s;
    for (const auto& p : j.at("paths")) {
      Path path;
      for (const auto& wp : p) {
        path.push_back({cell_from(wp.at("cell")),
                        waypoint_kind_from_string(wp.at("kind").get<std::string>())});
      }
      s.paths.push_back(std::move(path));
    }
    for (const auto& c : j.at("stations")) s.stations.push_back(cell_from(c));
    s.max_path_len_m = j.at("max_path_len_m").get<double>();
    s.nc = j.at("nc").get<int>();
    return s;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed solution JSON: ") + e.what());
  }
}

json to_json(const SolverParams& p) {
  return {{"alpha", p.alpha},
          {"beta", p.beta},
          {"rho", p.rho},
          {"tau0", p.tau0},
          {"q1", p.q1},
          {"q2", p.q2},
          {"max_iterations", p.max_iterations},
          {"seed", p.seed},
          {"e_threshold", p.e_threshold},
          {"use_hull_reduction", p.use_hull_reduction},
          {"use_two_opt", p.use_two_opt},
          {"polish_stations", p.polish_stations},
          {"selection", p.selection == SelectionRule::kArgmax ? "argmax" : "roulette"},
          {"station_reuse_bonus", p.station_reuse_bonus},
          {"detour_slack_m", p.detour_slack_m},
          {"ranking", p.ranking == Ranking::kWeighted ? "weighted" : "lexicographic"}};
}

SolverParams params_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("solver params must be a JSON object");
  reject_unknown(j,
                 {"alpha", "beta", "rho", "tau0", "q1", "q2", "max_iterations", "seed",
                  "e_threshold", "use_hull_reduction", "use_two_opt", "polish_stations", "selection",
                  "station_reuse_bonus", "detour_slack_m", "ranking"},
                 "solver params");
  try {
    SolverParams p;
    p.alpha = j.value("alpha", p.alpha);
    p.beta = j.value("beta", p.beta);
    p.rho = j.value("rho", p.rho);
    p.tau0 = j.value("tau0", p.tau0);
    p.q1 = j.value("q1", p.q1);
    p.q2 = j.value("q2", p.q2);
    p.max_iterations = j.value("max_iterations", p.max_iterations);
    p.seed = j.value("seed", p.seed);
    p.e_threshold = j.value("e_threshold", p.e_threshold);
    p.use_hull_reduction = j.value("use_hull_reduction", p.use_hull_reduction);
    p.use_two_opt = j.value("use_two_opt", p.use_two_opt);
    p.polish_stations = j.value("polish_stations", p.polish_stations);
    const std::string sel = j.value("selection", std::string("roulette"));
    if (sel == "argmax") {
      p.selection = SelectionRule::kArgmax;
    } else if (sel == "roulette") {
      p.selection = SelectionRule::kRoulette;
    } else {
      throw DomainError("selection must be 'roulette' or 'argmax'");
    }
    p.station_reuse_bonus = j.value("station_reuse_bonus", p.station_reuse_bonus);
    p.detour_slack_m = j.value("detour_slack_m", p.detour_slack_m);
    if (j.contains("ranking")) {
      const std::string r = j.at("ranking").get<std::string>();
      if (r == "weighted") {
        p.ranking = Ranking::kWeighted;
      } else if (r == "lexicographic") {
        p.ranking = Ranking::kLexicographic;
      } else {
        throw DomainError("ranking must be 'lexicographic' or 'weighted'");
      }
    }
    p.check();
    return p;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed solver params: ") + e.what());
  }
}

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"constraint", to_string(x.constraint)},
                 {"uav", x.uav},
                 {"slot", x.slot},
                 {"message", x.message}});
  }
  return {{"passed", r.passed}, {"violations", v}, {"t_finish_slots", r.t_finish_slots}};
}

ValidationReport report_from_json(const json& j) {
  ValidationReport r;
  r.passed = j.at("passed").get<bool>();
  r.t_finish_slots = j.at("t_finish_slots").get<long>();
  for (const auto& v : j.at("violations")) {
    r.violations.push_back({constraint_from_string(v.at("constraint").get<std::string>()),
                            v.at("uav").get<int>(), v.at("slot").get<long>(),
                            v.at("message").get<std::string>()});
  }
  return r;
}

json to_json(const OracleSolution& o, const Scenario& s) {
  json paths = json::array();
  json routes = json::array();
  json points = json::array();
  std::set<CellIndex> cells;
  for (const auto& reg : o.routes) {
    json p = json::array();
    for (std::size_t i = 0; i < reg.visit_order.size(); ++i) {
      p.push_back({{"cell", cell_json(reg.visit_order[i])},
                   {"kind", i == 0 ? "START" : "ROI_VISIT"}});
    }
    paths.push_back(p);
    json rp = json::array();
    for (const auto& pt : reg.station_points) {
      rp.push_back({pt.x, pt.y});
      points.push_back({pt.x, pt.y});
      const CellIndex c = s.grid.cell_at(pt);
      cells.insert({std::clamp(c.row, 0, s.grid.rows() - 1),
                    std::clamp(c.col, 0, s.grid.cols() - 1)});
    }
    routes.push_back({{"path_len_m", reg.path_len_m}, {"nc", reg.nc}, {"station_points", rp}});
  }
  json stations = json::array();
  for (const auto& c : cells) stations.push_back(cell_json(c));
  return {{"paths", paths},
          {"stations", stations},
          {"max_path_len_m", o.max_path_len_m},
          {"nc", o.nc},
          {"station_points", points},
          {"routes", routes}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace tlbs::io
