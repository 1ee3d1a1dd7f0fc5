#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlbs/aco.hpp"
#include "tlbs/oracle.hpp"
#include "tlbs/scenario.hpp"

namespace tlbs::bench {

struct Ablations {
  bool hull = true;
  bool tuning = true;
  bool two_opt = true;
};

struct ExperimentConfig {
  ScenarioKind kind = ScenarioKind::kRandom1Uav;
  int num_seeds = 20;
  std::uint64_t first_seed = 1;
  SolverParams params;
  Ablations ablations;
  Grid grid;
  UavConfig uav;
  double initial_q1 = 1.0;  // starting point of tuning, or the fixed values without it
  double initial_q2 = 1.0;
  int tune_warmup = 1000;
  int tune_rounds = 2;
  int threads = 0;  // 0: TLBS_THREADS, else hardware concurrency

  void check() const;
};

/// Number of workers: `requested` if positive, else hardware concurrency,
/// capped by TLBS_THREADS when set. Always at least 1.
int worker_count(int requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// One solver run with the config's ablations applied.
struct SeedRun {
  std::uint64_t seed = 0;
  Scenario scenario;
  SolverParams params;  // as used, Q1/Q2 after tuning
  SolveResult result;
  double wall_s = 0.0;  // solve only, tuning excluded
};
SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed);

struct GapRow {
  std::uint64_t seed = 0;
  ScenarioKind kind = ScenarioKind::kRandom1Uav;
  double ubat_len_m = 0.0;
  double oracle_len_m = 0.0;
  double len_gap_pct = 0.0;
  int ubat_nc = 0;
  int oracle_nc = 0;
  double nc_gap_pct = 0.0;  // NaN when the oracle places no station
  int iters = 0;
  double wall_s = 0.0;
};

/// Gap of one (solver, oracle) pair. Lengths must be positive for the
/// percentage; a zero oracle length gives a zero gap only when both are 0.
GapRow compare(double ubat_len_m, int ubat_nc, double oracle_len_m, int oracle_nc);

struct GapStats {
  int seeds = 0;
  double mean_len_gap_pct = 0.0;
  double stdev_len_gap_pct = 0.0;
  double mean_nc_gap_pct = 0.0;  // over rows with oracle NC > 0
  double stdev_nc_gap_pct = 0.0;
  int nc_gap_samples = 0;
  double mean_extra_len_m = 0.0;
  double mean_extra_nc = 0.0;
};

/// Sample standard deviation (n - 1); 0 for fewer than two samples.
double sample_stdev(const std::vector<double>& xs);
GapStats summarize(const std::vector<GapRow>& rows);

struct GapExperiment {
  std::vector<GapRow> rows;  // ascending seed
  GapStats stats;
};

/// For each seed: generate, solve exactly, run the solver, compare. Oracle
/// refusals propagate.
GapExperiment run_gap_experiment(const ExperimentConfig& config);

struct SweepPoint {
  int iteration = 0;
  double best_len_m = 0.0;
  int best_nc = 0;
};

/// Best-so-far metrics of one solver run at each checkpoint (ascending,
/// positive). The run lasts until the last checkpoint.
std::vector<SweepPoint> run_iteration_sweep(const Scenario& scenario, const SolverParams& params,
                                            const std::vector<int>& checkpoints);

struct TimingResult {
  std::vector<double> samples_s;  // per iteration, warm-up dropped
  std::vector<std::uint64_t> candidates;  // charging candidates scanned per iteration
  double mean_s = 0.0;
  /// Sorted samples with their empirical CDF values i / n.
  std::vector<std::pair<double, double>> cdf() const;
};

/// Times `iters` solver iterations (plus 5 discarded warm-up iterations)
/// with hull reduction forced on or off. Requires iters >= 30.
TimingResult run_timing_cdf(const Scenario& scenario, const SolverParams& params, int iters,
                            bool hull_on);

inline constexpr int kTimingWarmup = 5;

std::string gap_csv(const std::vector<GapRow>& rows);
nlohmann::json to_json(const GapStats& stats);
std::string sweep_csv(const std::vector<SweepPoint>& points);
std::string timing_csv(const TimingResult& on, const TimingResult& off);

}  // namespace tlbs::bench
