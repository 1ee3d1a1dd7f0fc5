#include "tlbs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "tlbs/two_opt.hpp"

namespace tlbs::bench {

using Clock = std::chrono::steady_clock;

void ExperimentConfig::check() const {
  if (num_seeds < 1) throw DomainError("num_seeds must be >= 1");
  if (tune_warmup < 1) throw DomainError("tune_warmup must be >= 1");
  if (tune_rounds < 1) throw DomainError("tune_rounds must be >= 1");
  if (!(initial_q1 > 0.0) || !(initial_q2 >= 0.0)) throw DomainError("bad initial Q1/Q2");
  params.check();
  uav.check();
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TLBS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  const int workers = std::min(std::max(threads, 1), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; !failed && (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed) {
  SeedRun run;
  run.seed = seed;
  run.scenario = generate(config.kind, seed, config.grid, config.uav);
  run.params = config.params;
  run.params.seed = seed;
  run.params.use_hull_reduction = config.ablations.hull;
  run.params.use_two_opt = config.ablations.two_opt;
  run.params.q1 = config.initial_q1;
  run.params.q2 = config.initial_q2;
  if (config.ablations.tuning) {
    const TuneResult t = tune_parameters(run.scenario, run.params, config.initial_q1,
                                         config.initial_q2, config.tune_warmup,
                                         config.tune_rounds);
    run.params.q1 = t.q1;
    run.params.q2 = t.q2;
  }
  const auto t0 = Clock::now();
  run.result = solve(run.scenario, run.params);
  run.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return run;
}

GapRow compare(double ubat_len_m, int ubat_nc, double oracle_len_m, int oracle_nc) {
  GapRow row;
  row.ubat_len_m = ubat_len_m;
  row.oracle_len_m = oracle_len_m;
  row.ubat_nc = ubat_nc;
  row.oracle_nc = oracle_nc;
  if (oracle_len_m > 0.0) {
    row.len_gap_pct = (ubat_len_m - oracle_len_m) / oracle_len_m * 100.0;
  } else if (ubat_len_m == 0.0) {
    row.len_gap_pct = 0.0;
  } else {
    row.len_gap_pct = std::numeric_limits<double>::infinity();
  }
  row.nc_gap_pct = oracle_nc > 0
                       ? static_cast<double>(ubat_nc - oracle_nc) / oracle_nc * 100.0
                       : std::numeric_limits<double>::quiet_NaN();
  return row;
}

double sample_stdev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

GapStats summarize(const std::vector<GapRow>& rows) {
  std::vector<double> len_gap, nc_gap, extra_len, extra_nc;
  for (const auto& r : rows) {
    len_gap.push_back(r.len_gap_pct);
    if (!std::isnan(r.nc_gap_pct)) nc_gap.push_back(r.nc_gap_pct);
    extra_len.push_back(r.ubat_len_m - r.oracle_len_m);
    extra_nc.push_back(r.ubat_nc - r.oracle_nc);
  }
  GapStats s;
  s.seeds = static_cast<int>(rows.size());
  s.mean_len_gap_pct = mean_of(len_gap);
  s.stdev_len_gap_pct = sample_stdev(len_gap);
  s.mean_nc_gap_pct = mean_of(nc_gap);
  s.stdev_nc_gap_pct = sample_stdev(nc_gap);
  s.nc_gap_samples = static_cast<int>(nc_gap.size());
  s.mean_extra_len_m = mean_of(extra_len);
  s.mean_extra_nc = mean_of(extra_nc);
  return s;
}

GapExperiment run_gap_experiment(const ExperimentConfig& config) {
  config.check();
  GapExperiment out;
  out.rows.resize(static_cast<std::size_t>(config.num_seeds));
  parallel_for(config.num_seeds, worker_count(config.threads), [&](int i) {
    const std::uint64_t seed = config.first_seed + static_cast<std::uint64_t>(i);
    const Scenario scenario = generate(config.kind, seed, config.grid, config.uav);
    const OracleSolution oracle = oracle_solve(scenario);
    const SeedRun run = run_seed(config, seed);
    GapRow row = compare(run.result.best.max_path_len_m, run.result.best.nc,
                         oracle.max_path_len_m, oracle.nc);
    row.seed = seed;
    row.kind = config.kind;
    row.iters = run.result.iterations;
    row.wall_s = run.wall_s;
    out.rows[static_cast<std::size_t>(i)] = row;
  });
  out.stats = summarize(out.rows);
  return out;
}

std::vector<SweepPoint> run_iteration_sweep(const Scenario& scenario, const SolverParams& params,
                                            const std::vector<int>& checkpoints) {
  if (checkpoints.empty()) throw DomainError("no checkpoints");
  if (checkpoints.front() < 1) throw DomainError("checkpoints must be positive");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw DomainError("checkpoints must be ascending");
  }
  SolverParams p = params;
  p.max_iterations = checkpoints.back();
  std::vector<SweepPoint> out;
  std::size_t next = 0;
  solve(scenario, p, [&](const IterationInfo& info) {
    while (next < checkpoints.size() && checkpoints[next] == info.iteration) {
      out.push_back({info.iteration, info.best->max_path_len_m, info.best->nc});
      ++next;
    }
  });
  return out;
}

std::vector<std::pair<double, double>> TimingResult::cdf() const {
  std::vector<double> s = samples_s;
  std::sort(s.begin(), s.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.emplace_back(s[i], static_cast<double>(i + 1) / static_cast<double>(s.size()));
  }
  return out;
}

TimingResult run_timing_cdf(const Scenario& scenario, const SolverParams& params, int iters,
                            bool hull_on) {
  if (iters < 30) throw DomainError("timing needs at least 30 iterations");
  SolverParams p = params;
  p.use_hull_reduction = hull_on;
  p.polish_stations = false;
  p.max_iterations = iters + kTimingWarmup;
  TimingResult out;
  auto last = Clock::now();
  solve(scenario, p, [&](const IterationInfo& info) {
    const auto now = Clock::now();
    if (info.iteration > kTimingWarmup) {
      out.samples_s.push_back(std::chrono::duration<double>(now - last).count());
      out.candidates.push_back(info.candidates_scanned);
    }
    last = Clock::now();
  });
  out.mean_s = mean_of(out.samples_s);
  return out;
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

}  // namespace

std::string gap_csv(const std::vector<GapRow>& rows) {
  std::ostringstream ss;
  ss << "seed,scenario_kind,ubat_len_m,oracle_len_m,len_gap_pct,ubat_nc,oracle_nc,nc_gap_pct,"
        "iters,wall_s\n";
  for (const auto& r : rows) {
    ss << r.seed << ',' << to_string(r.kind) << ',' << num(r.ubat_len_m) << ','
       << num(r.oracle_len_m) << ',' << num(r.len_gap_pct) << ',' << r.ubat_nc << ','
       << r.oracle_nc << ',' << num(r.nc_gap_pct) << ',' << r.iters << ',' << num(r.wall_s)
       << '\n';
  }
  return ss.str();
}

nlohmann::json to_json(const GapStats& s) {
  return {{"seeds", s.seeds},
          {"mean_len_gap_pct", s.mean_len_gap_pct},
          {"stdev_len_gap_pct", s.stdev_len_gap_pct},
          {"mean_nc_gap_pct", s.mean_nc_gap_pct},
          {"stdev_nc_gap_pct", s.stdev_nc_gap_pct},
          {"nc_gap_samples", s.nc_gap_samples},
          {"mean_extra_len_m", s.mean_extra_len_m},
          {"mean_extra_nc", s.mean_extra_nc}};
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream ss;
  ss << "iteration,best_len_m,best_nc\n";
  for (const auto& p : points) ss << p.iteration << ',' << num(p.best_len_m) << ',' << p.best_nc << '\n';
  return ss.str();
}

std::string timing_csv(const TimingResult& on, const TimingResult& off) {
  std::ostringstream ss;
  ss << "hull,iteration,wall_s,candidates\n";
  for (const auto* t : {&on, &off}) {
    const char* tag = t == &on ? "on" : "off";
    for (std::size_t i = 0; i < t->samples_s.size(); ++i) {
      ss << tag << ',' << i + 1 << ',' << num(t->samples_s[i]) << ',' << t->candidates[i] << '\n';
    }
  }
  return ss.str();
}

}  // namespace tlbs::bench
