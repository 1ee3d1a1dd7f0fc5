#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tlbs/bench.hpp"

using namespace tlbs;

TEST_CASE("gap of a solution against itself is zero") {
  const bench::GapRow r = bench::compare(31000.0, 4, 31000.0, 4);
  CHECK(r.len_gap_pct == 0.0);
  CHECK(r.nc_gap_pct == 0.0);
  const bench::GapRow g = bench::compare(33000.0, 5, 30000.0, 4);
  CHECK(g.len_gap_pct == doctest::Approx(10.0));
  CHECK(g.nc_gap_pct == doctest::Approx(25.0));
  CHECK(std::isnan(bench::compare(100.0, 1, 100.0, 0).nc_gap_pct));
  CHECK(bench::compare(0.0, 0, 0.0, 0).len_gap_pct == 0.0);
}

TEST_CASE("summary statistics") {
  CHECK(bench::sample_stdev({}) == 0.0);
  CHECK(bench::sample_stdev({3.0}) == 0.0);
  // Deviations -3, -1, 1, 3 around 5: squares sum to 20, / 3.
  CHECK(bench::sample_stdev({2.0, 4.0, 6.0, 8.0}) == doctest::Approx(std::sqrt(20.0 / 3.0)));

  std::vector<bench::GapRow> rows = {bench::compare(110.0, 2, 100.0, 1),
                                     bench::compare(100.0, 1, 100.0, 0)};
  const bench::GapStats s = bench::summarize(rows);
  CHECK(s.seeds == 2);
  CHECK(s.mean_len_gap_pct == doctest::Approx(5.0));
  CHECK(s.nc_gap_samples == 1);
  CHECK(s.mean_nc_gap_pct == doctest::Approx(100.0));
  CHECK(s.mean_extra_len_m == doctest::Approx(5.0));
  CHECK(s.mean_extra_nc == doctest::Approx(1.0));
}

TEST_CASE("gap experiment rows and CSV") {
  bench::ExperimentConfig cfg;
  cfg.num_seeds = 3;
  cfg.first_seed = 5;
  cfg.params.max_iterations = 60;
  cfg.tune_warmup = 20;
  cfg.threads = 2;
  const bench::GapExperiment ex = bench::run_gap_experiment(cfg);
  REQUIRE(ex.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(ex.rows[i].seed == 5 + i);
    CHECK(ex.rows[i].iters == 60);
    CHECK(ex.rows[i].ubat_len_m >= ex.rows[i].oracle_len_m - Grid().cell_diagonal_m());
  }
  const std::string csv = bench::gap_csv(ex.rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "seed,scenario_kind,ubat_len_m,oracle_len_m,len_gap_pct,ubat_nc,oracle_nc,nc_gap_pct,"
        "iters,wall_s");
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(lines == 3);

  // Threading does not change the results.
  cfg.threads = 1;
  const bench::GapExperiment serial = bench::run_gap_experiment(cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial.rows[i].ubat_len_m == ex.rows[i].ubat_len_m);
    CHECK(serial.rows[i].ubat_nc == ex.rows[i].ubat_nc);
  }
}

TEST_CASE("iteration sweep is monotone") {
  const Scenario s = generate_semi_random(1, Grid(), 2);
  SolverParams p;
  p.ranking = Ranking::kLexicographic;
  const auto pts = bench::run_iteration_sweep(s, p, {1, 10, 50, 200});
  REQUIRE(pts.size() == 4);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].best_len_m <= pts[i - 1].best_len_m);
  }
  // Under weighted ranking the best can give up length for stations, so
  // only its weighted cost is monotone.
  p.ranking = Ranking::kWeighted;
  p.q1 = 20000.0;
  p.q2 = 8.0;
  const auto w = bench::run_iteration_sweep(s, p, {1, 10, 50, 200});
  for (std::size_t i = 1; i < w.size(); ++i) {
    CHECK(w[i].best_len_m / p.q1 + w[i].best_nc / p.q2 <=
          w[i - 1].best_len_m / p.q1 + w[i - 1].best_nc / p.q2);
  }
  CHECK(bench::sweep_csv(pts).rfind("iteration,best_len_m,best_nc\n", 0) == 0);
  CHECK_THROWS_AS(bench::run_iteration_sweep(s, p, {10, 5}), DomainError);
  CHECK_THROWS_AS(bench::run_iteration_sweep(s, p, {}), DomainError);
}

TEST_CASE("timing samples") {
  const Scenario s = generate_semi_random(1, Grid(), 2);
  SolverParams p;
  const bench::TimingResult a = bench::run_timing_cdf(s, p, 30, true);
  CHECK(a.samples_s.size() == 30);
  CHECK(a.candidates.size() == 30);
  const bench::TimingResult b = bench::run_timing_cdf(s, p, 30, true);
  CHECK(a.candidates == b.candidates);
  const auto cdf = a.cdf();
  CHECK(cdf.back().second == 1.0);
  for (std::size_t i = 1; i < cdf.size(); ++i) CHECK(cdf[i].first >= cdf[i - 1].first);
  const bench::TimingResult off = bench::run_timing_cdf(s, p, 30, false);
  std::uint64_t on_total = 0, off_total = 0;
  for (auto c : a.candidates) on_total += c;
  for (auto c : off.candidates) off_total += c;
  CHECK(on_total < off_total);
  CHECK_THROWS_AS(bench::run_timing_cdf(s, p, 29, true), DomainError);
}

TEST_CASE("parallel_for rethrows") {
  CHECK_THROWS_AS(bench::parallel_for(8, 3,
                                      [](int i) {
                                        if (i == 5) throw DomainError("boom");
                                      }),
                  DomainError);
  std::vector<int> hit(100, 0);
  bench::parallel_for(100, 4, [&](int i) { hit[i]++; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 100);
  CHECK(bench::worker_count(3) >= 1);
}
