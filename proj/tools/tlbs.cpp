// Command-line front end: gen, solve, oracle, validate, bench.
//
// Exit codes: 0 success, 1 I/O error, malformed input or infeasibility
// (including a failed validation), 2 usage error, 3 oracle refusal.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tlbs/aco.hpp"
#include "tlbs/bench.hpp"
#include "tlbs/energy_sim.hpp"
#include "tlbs/io.hpp"
#include "tlbs/oracle.hpp"
#include "tlbs/render.hpp"
#include "tlbs/two_opt.hpp"

namespace {

using namespace tlbs;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;

const std::vector<std::string> kKinds = {"random1", "semi2", "semi4"};

SolverParams load_params(const std::string& path) {
  if (path.empty()) return {};
  return io::params_from_json(io::read_json_file(path));
}

Scenario load_scenario(const std::string& path) {
  return io::scenario_from_json(io::read_json_file(path));
}

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 1;
  std::string out;
  bool return_to_start = false;
};

int cmd_gen(const GenArgs& a) {
  Scenario s = generate(scenario_kind_from_string(a.kind), a.seed, Grid(), UavConfig());
  s.return_to_start = a.return_to_start;
  io::write_json_file(a.out, io::to_json(s));
  return kExitOk;
}

struct SolveArgs {
  std::string scenario;
  std::string params;
  std::string out;
  std::string svg;
  std::optional<int> iters;
  std::optional<std::uint64_t> seed;
  bool no_tune = false;
  bool svg_hull = false;
};

int cmd_solve(const SolveArgs& a) {
  const Scenario s = load_scenario(a.scenario);
  SolverParams p = load_params(a.params);
  if (a.iters) p.max_iterations = *a.iters;
  if (a.seed) p.seed = *a.seed;
  p.check();
  if (!a.no_tune) {
    const TuneResult t = tune_parameters(s, p, p.q1, p.q2);
    p.q1 = t.q1;
    p.q2 = t.q2;
  }
  const SolveResult r = solve(s, p);
  io::write_json_file(a.out, io::to_json(r.best));
  if (!a.svg.empty()) {
    RenderSpec spec;
    spec.show_hull = a.svg_hull;
    io::write_file_atomic(a.svg, render_svg(s, r.best, spec));
  }
  std::printf("max_len_m=%.3f nc=%d iters=%d\n", r.best.max_path_len_m, r.best.nc, r.iterations);
  return kExitOk;
}

struct OracleArgs {
  std::string scenario;
  std::string out;
  bool closed_tour = false;
  int max_rois = 12;
};

int cmd_oracle(const OracleArgs& a) {
  const Scenario s = load_scenario(a.scenario);
  TspOptions opt;
  opt.closed_tour = a.closed_tour;
  opt.max_rois = a.max_rois;
  const OracleSolution o = oracle_solve(s, opt);
  io::write_json_file(a.out, io::to_json(o, s));
  std::printf("max_len_m=%.3f nc=%d\n", o.max_path_len_m, o.nc);
  return kExitOk;
}

struct ValidateArgs {
  std::string scenario;
  std::string solution;
  std::string out;
};

int cmd_validate(const ValidateArgs& a) {
  const Scenario s = load_scenario(a.scenario);
  const Solution sol = io::solution_from_json(io::read_json_file(a.solution));
  const ValidationReport rep = simulate(s, sol);
  const auto j = io::to_json(rep);
  if (!a.out.empty()) io::write_json_file(a.out, j);
  std::cout << j.dump(2) << '\n';
  return rep.passed ? kExitOk : kExitFailure;
}

struct BenchArgs {
  std::string mode = "gap";
  std::string kind = "random1";
  int seeds = 20;
  std::uint64_t first_seed = 1;
  std::string params;
  std::optional<int> iters;
  std::string out_csv;
  std::string out_stats;
  bool no_hull = false;
  bool no_tuning = false;
  bool no_two_opt = false;
  int threads = 0;
  std::vector<int> checkpoints = {1, 750, 1000, 10000, 30000};
  int timing_iters = 200;
};

int cmd_bench(const BenchArgs& a) {
  bench::ExperimentConfig cfg;
  cfg.kind = scenario_kind_from_string(a.kind);
  cfg.num_seeds = a.seeds;
  cfg.first_seed = a.first_seed;
  cfg.params = load_params(a.params);
  if (a.iters) cfg.params.max_iterations = *a.iters;
  cfg.ablations = {!a.no_hull, !a.no_tuning, !a.no_two_opt};
  cfg.initial_q1 = cfg.params.q1;
  cfg.initial_q2 = cfg.params.q2;
  cfg.threads = a.threads;
  cfg.check();

  if (a.mode == "gap") {
    const bench::GapExperiment ex = bench::run_gap_experiment(cfg);
    if (!a.out_csv.empty()) io::write_file_atomic(a.out_csv, bench::gap_csv(ex.rows));
    const auto stats = bench::to_json(ex.stats);
    if (!a.out_stats.empty()) io::write_json_file(a.out_stats, stats);
    std::cout << stats.dump(2) << '\n';
    return kExitOk;
  }

  const Scenario s = generate(cfg.kind, cfg.first_seed, cfg.grid, cfg.uav);
  SolverParams p = cfg.params;
  p.seed = cfg.first_seed;
  p.use_hull_reduction = cfg.ablations.hull;
  p.use_two_opt = cfg.ablations.two_opt;
  if (cfg.ablations.tuning) {
    const TuneResult t = tune_parameters(s, p, p.q1, p.q2, cfg.tune_warmup, cfg.tune_rounds);
    p.q1 = t.q1;
    p.q2 = t.q2;
  }
  if (a.mode == "sweep") {
    const auto curve = bench::run_iteration_sweep(s, p, a.checkpoints);
    if (!a.out_csv.empty()) io::write_file_atomic(a.out_csv, bench::sweep_csv(curve));
    for (const auto& pt : curve) {
      std::printf("iteration=%d best_len_m=%.3f best_nc=%d\n", pt.iteration, pt.best_len_m,
                  pt.best_nc);
    }
    return kExitOk;
  }
  const auto on = bench::run_timing_cdf(s, p, a.timing_iters, true);
  const auto off = bench::run_timing_cdf(s, p, a.timing_iters, false);
  if (!a.out_csv.empty()) io::write_file_atomic(a.out_csv, bench::timing_csv(on, off));
  const nlohmann::json stats = {{"iters", a.timing_iters},
                                {"mean_s_hull_on", on.mean_s},
                                {"mean_s_hull_off", off.mean_s},
                                {"reduction_pct", (1.0 - on.mean_s / off.mean_s) * 100.0}};
  if (!a.out_stats.empty()) io::write_json_file(a.out_stats, stats);
  std::cout << stats.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint UAV trajectory and battery-swap station planner"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a scenario JSON");
  g->add_option("--kind", gen.kind, "random1 | semi2 | semi4")
      ->required()
      ->check(CLI::IsMember(kKinds));
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--out", gen.out, "Output scenario JSON")->required();
  g->add_flag("--return-to-start", gen.return_to_start, "Require UAVs to end at the start");

  SolveArgs sv;
  auto* s = app.add_subcommand("solve", "Run the ant-colony solver");
  s->add_option("--scenario", sv.scenario, "Scenario JSON")->required();
  s->add_option("--params", sv.params, "Solver params JSON (defaults when omitted)");
  s->add_option("--out", sv.out, "Output solution JSON")->required();
  s->add_option("--svg", sv.svg, "Also render the solution to this SVG file");
  s->add_option("--iters", sv.iters, "Override max_iterations")->check(CLI::PositiveNumber);
  s->add_option("--seed", sv.seed, "Override the solver seed");
  s->add_flag("--no-tune", sv.no_tune, "Use Q1/Q2 as given instead of tuning them");
  s->add_flag("--svg-hull", sv.svg_hull, "Draw the ROI hull in the SVG");

  OracleArgs oa;
  auto* o = app.add_subcommand("oracle", "Exact solution for small instances");
  o->add_option("--scenario", oa.scenario, "Scenario JSON")->required();
  o->add_option("--out", oa.out, "Output oracle JSON")->required();
  o->add_flag("--closed-tour", oa.closed_tour, "Paths return to the start");
  o->add_option("--max-rois", oa.max_rois, "Refuse above this many ROIs")
      ->check(CLI::Range(1, 20));

  ValidateArgs va;
  auto* v = app.add_subcommand("validate", "Check a solution against every constraint");
  v->add_option("--scenario", va.scenario, "Scenario JSON")->required();
  v->add_option("--solution", va.solution, "Solution JSON")->required();
  v->add_option("--out", va.out, "Also write the report JSON here");

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "Gap, iteration-sweep and timing experiments");
  b->add_option("--mode", ba.mode, "gap | sweep | timing")
      ->check(CLI::IsMember({"gap", "sweep", "timing"}));
  b->add_option("--kind", ba.kind, "random1 | semi2 | semi4")->check(CLI::IsMember(kKinds));
  b->add_option("--seeds", ba.seeds, "Number of seeds (gap mode)")->check(CLI::PositiveNumber);
  b->add_option("--first-seed", ba.first_seed, "First seed; sweep and timing use only this one");
  b->add_option("--params", ba.params, "Solver params JSON");
  b->add_option("--iters", ba.iters, "Override max_iterations")->check(CLI::PositiveNumber);
  b->add_option("--out-csv", ba.out_csv, "Per-seed rows, curve or timing samples");
  b->add_option("--out-stats", ba.out_stats, "Summary JSON");
  b->add_flag("--no-hull", ba.no_hull, "Disable hull candidate reduction");
  b->add_flag("--no-tuning", ba.no_tuning, "Disable Q1/Q2 tuning");
  b->add_flag("--no-two-opt", ba.no_two_opt, "Disable 2-OPT");
  b->add_option("--threads", ba.threads, "Worker count (capped by TLBS_THREADS)");
  b->add_option("--checkpoints", ba.checkpoints, "Sweep checkpoints, ascending");
  b->add_option("--timing-iters", ba.timing_iters, "Timed iterations per side")
      ->check(CLI::Range(30, 10000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(sv);
    if (*o) return cmd_oracle(oa);
    if (*v) return cmd_validate(va);
    if (*b) return cmd_bench(ba);
  } catch (const OracleRefusal& e) {
    std::fprintf(stderr, "tlbs: oracle refused: %s\n", e.what());
    return kExitRefused;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tlbs: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
