#include <doctest.h>

#include <cmath>
#include <cstring>

#include "tlbs/kernels.hpp"
#include "tlbs/scenario.hpp"

using namespace tlbs;
using namespace tlbs::kernels;

namespace {

CandidateSoA grid_cells(const Grid& g) {
  CandidateSoA soa;
  for (int id = 0; id < g.cell_count(); ++id) {
    const Point p = g.center(id);
    soa.push_back(p.x, p.y, id);
  }
  return soa;
}

// Random subset keeps the tail lengths (size % 4) varied.
CandidateSoA subset(const CandidateSoA& all, Rng& rng) {
  CandidateSoA out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (uniform01(rng) < 0.6) out.push_back(all.x[i], all.y[i], all.id[i]);
  }
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("integer exponents and weight_pow") {
  CHECK(integer_exponent(2.0) == 2);
  CHECK(integer_exponent(16.0) == 16);
  CHECK(integer_exponent(17.0) == 0);
  CHECK(integer_exponent(0.5) == 0);
  CHECK(integer_exponent(0.0) == 0);
  CHECK(weight_pow(3.0, 2.0) == 9.0);
  CHECK(weight_pow(2.0, 10.0) == 1024.0);
  CHECK(weight_pow(4.0, 0.5) == doctest::Approx(2.0));
  CHECK(charging_score(2.0, 3.0, 1.5, 2.0, 2.0) == 4.0 * 9.0 * 1.5);
}

TEST_CASE("scalar charging scan matches a direct evaluation") {
  const Grid g;
  const CandidateSoA cells = grid_cells(g);
  Rng rng(11);
  std::vector<double> tau(g.cell_count()), bonus(g.cell_count());
  for (int trial = 0; trial < 200; ++trial) {
    for (auto& t : tau) t = 0.1 + uniform01(rng) * 5.0;
    for (auto& b : bonus) b = uniform01(rng) < 0.1 ? 1.5 : 1.0;
    const Point cur = g.center(static_cast<int>(uniform_below(rng, 400)));
    const Point tgt = g.center(static_cast<int>(uniform_below(rng, 400)));
    ChargingQuery q;
    q.cur_x = cur.x;
    q.cur_y = cur.y;
    q.target_x = tgt.x;
    q.target_y = tgt.y;
    q.target_dist_m = dist(cur, tgt);
    q.reach_m = 1000.0 + uniform01(rng) * 4000.0;
    q.detour_slack_m = uniform01(rng) * 1000.0;
    q.tau_row = tau.data();
    q.bonus = bonus.data();

    int best = -1;
    double best_score = -1.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Point a{cells.x[i], cells.y[i]};
      const double d = dist(cur, a), rest = dist(a, tgt);
      if (d > q.reach_m || !(rest < q.target_dist_m) || d + rest > q.target_dist_m + q.detour_slack_m) {
        continue;
      }
      const double sc = std::pow(tau[cells.id[i]], 2) * std::pow(d, 2) * bonus[cells.id[i]];
      if (sc > best_score * (1 + 1e-12)) {
        best_score = sc;
        best = cells.id[i];
      }
    }
    const ScanResult r = scan_charging_scalar(q, cells);
    CHECK(r.id == best);
    if (best >= 0) CHECK(r.score == doctest::Approx(best_score).epsilon(1e-12));
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  const Grid g;
  const CandidateSoA all = grid_cells(g);
  Rng rng(12);
  std::vector<double> tau(g.cell_count()), bonus(g.cell_count());
  for (int trial = 0; trial < 2000; ++trial) {
    const CandidateSoA cells = subset(all, rng);
    // Coarse trail values create exact score ties between candidates.
    for (auto& t : tau) t = trial % 2 ? 1.0 + static_cast<double>(uniform_below(rng, 3)) : uniform01(rng) * 4.0;
    for (auto& b : bonus) b = uniform01(rng) < 0.2 ? 1.5 : 1.0;
    const Point cur = g.center(static_cast<int>(uniform_below(rng, 400)));
    const Point tgt = g.center(static_cast<int>(uniform_below(rng, 400)));
    ChargingQuery q;
    q.cur_x = cur.x;
    q.cur_y = cur.y;
    q.target_x = tgt.x;
    q.target_y = tgt.y;
    q.target_dist_m = dist(cur, tgt);
    q.reach_m = uniform01(rng) * 6000.0;
    q.detour_slack_m = uniform01(rng) * 2000.0;
    q.tau_row = tau.data();
    q.bonus = bonus.data();
    q.alpha = static_cast<double>(1 + uniform_below(rng, 4));
    q.beta = static_cast<double>(1 + uniform_below(rng, 4));
    const ScanResult a = scan_charging_scalar(q, cells);
    const ScanResult b = scan_charging_avx2(q, cells);
    CHECK(a.id == b.id);
    CHECK(same_bits(a.score, b.score));

    std::vector<std::uint8_t> ra(cells.size()), rb(cells.size());
    const double radius = uniform01(rng) * 8000.0;
    within_range_scalar(cur.x, cur.y, radius, cells, ra);
    within_range_avx2(cur.x, cur.y, radius, cells, rb);
    CHECK(ra == rb);
  }
}
#endif

TEST_CASE("dispatch can be pinned to the scalar path") {
  force_isa(Isa::kScalar);
  CHECK(active_isa() == Isa::kScalar);
  reset_isa();
  if (!avx2_available()) CHECK_THROWS_AS(force_isa(Isa::kAvx2), DomainError);
  reset_isa();
}

TEST_CASE("empty candidate set") {
  const CandidateSoA none;
  ChargingQuery q;
  std::vector<double> ones(1, 1.0);
  q.tau_row = ones.data();
  q.bonus = ones.data();
  const ScanResult r = scan_charging(q, none);
  CHECK(r.id == -1);
}
