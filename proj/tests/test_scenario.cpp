#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tlbs/scenario.hpp"

using namespace tlbs;

TEST_CASE("dist on the default grid") {
  const Grid g;
  CHECK(dist(g, {0, 0}, {0, 0}) == 0.0);
  CHECK(dist(g, {0, 0}, {0, 1}) == 1000.0);
  CHECK(dist(g, {0, 0}, {1, 1}) == doctest::Approx(1414.2135623730951).epsilon(1e-15));
  CHECK_THROWS_AS(dist(g, {0, 0}, {20, 0}), DomainError);
  CHECK_THROWS_AS(dist(g, {-1, 0}, {0, 0}), DomainError);
}

TEST_CASE("dist is a metric on random triples") {
  const Grid g;
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto cell = [&] {
      return CellIndex{static_cast<int>(uniform_below(rng, 20)),
                       static_cast<int>(uniform_below(rng, 20))};
    };
    const CellIndex a = cell(), b = cell(), c = cell();
    CHECK(dist(g, a, b) == dist(g, b, a));
    CHECK(dist(g, a, c) <= dist(g, a, b) + dist(g, b, c) + 1e-9);
    CHECK((dist(g, a, b) == 0.0) == (a == b));
  }
}

TEST_CASE("cell centers and cell_at") {
  const Grid g(4, 6, 250.0);
  CHECK(g.center(CellIndex{0, 0}) == Point{125.0, 125.0});
  CHECK(g.center(CellIndex{3, 5}) == Point{1375.0, 875.0});
  for (int id = 0; id < g.cell_count(); ++id) {
    CHECK(g.linear(g.from_linear(id)) == id);
    CHECK(g.cell_at(g.center(id)) == g.from_linear(id));
  }
  // Shared edges go to the higher index.
  CHECK(g.cell_at({250.0, 0.0}) == CellIndex{0, 1});
  CHECK_THROWS_AS(Grid(0, 5, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(5, 5, 0.0), DomainError);
}

TEST_CASE("sensing coverage") {
  UavConfig c;
  c.altitude_m = 1.0;
  c.cone_angle_rad = std::numbers::pi / 2;
  CHECK(sensing_coverage(c) == doctest::Approx(std::numbers::pi).epsilon(1e-15));

  c.altitude_m = 0.0;
  CHECK(sensing_coverage(c) == 0.0);

  // tan(pi/6) = 1/sqrt(3), so the area is pi * 10^4 / 3; evaluated in long double.
  c.altitude_m = 100.0;
  c.cone_angle_rad = std::numbers::pi / 3;
  const long double expected = std::numbers::pi_v<long double> * 10000.0L / 3.0L;
  CHECK(sensing_coverage(c) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));

  c.cone_angle_rad = std::numbers::pi;
  CHECK_THROWS_AS(sensing_coverage(c), DomainError);
}

TEST_CASE("default footprint covers a whole cell") {
  CHECK(covers_full_cell(Grid(), UavConfig()));
  UavConfig low;
  low.altitude_m = 100.0;
  CHECK_FALSE(covers_full_cell(Grid(), low));
}

TEST_CASE("random generator") {
  const Grid g;
  const Scenario a = generate_random(42, g, 10);
  CHECK(a.roi_count() == 10);
  CHECK(std::set<CellIndex>(a.rois.begin(), a.rois.end()).size() == 10);
  CHECK(a.start == a.rois.front());
  CHECK(a.num_uavs == 1);
  CHECK_NOTHROW(a.check());
  CHECK(generate_random(42, g, 10) == a);
  CHECK_FALSE(generate_random(43, g, 10) == a);

  const Scenario one = generate_random(5, g, 1);
  REQUIRE(one.roi_count() == 1);
  CHECK(one.start == one.rois[0]);

  const Scenario full = generate_random(5, g, 400);
  CHECK(std::set<CellIndex>(full.rois.begin(), full.rois.end()).size() == 400);
  CHECK_THROWS_AS(generate_random(5, g, 401), DomainError);
  CHECK_THROWS_AS(generate_random(5, g, 0), DomainError);
}

TEST_CASE("semi-random generator, two UAVs") {
  const Grid g;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scenario s = generate_semi_random(seed, g, 2);
    REQUIRE(s.roi_count() == 10);
    CHECK(s.num_uavs == 2);
    int north = 0;
    for (const auto& r : s.rois) north += r.row < g.rows() / 2;
    CHECK(north == 5);
    CHECK(std::set<CellIndex>(s.rois.begin(), s.rois.end()).size() == 10);
    CHECK(generate_semi_random(seed, g, 2) == s);
  }
}

TEST_CASE("semi-random generator, four UAVs") {
  const Grid g;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scenario s = generate_semi_random(seed, g, 4);
    REQUIRE(s.roi_count() == 10);
    int quad[4] = {0, 0, 0, 0};
    for (const auto& r : s.rois) {
      quad[(r.row >= g.rows() / 2) * 2 + (r.col >= g.cols() / 2)]++;
    }
    for (int q : quad) CHECK(q >= 1);
    CHECK(quad[0] + quad[1] + quad[2] + quad[3] == 10);
    CHECK(generate_semi_random(seed, g, 4) == s);
  }
  CHECK_THROWS_AS(generate_semi_random(1, g, 3), DomainError);
}

TEST_CASE("scenario kind names") {
  for (auto k : {ScenarioKind::kRandom1Uav, ScenarioKind::kSemi2Uav, ScenarioKind::kSemi4Uav}) {
    CHECK(scenario_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(scenario_kind_from_string("semi3"), DomainError);
}

TEST_CASE("uniform_below stays in range and hits every value") {
  Rng rng(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const auto v = uniform_below(rng, 7);
    CHECK(v < 7);
    seen.insert(v);
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("scenario check rejects broken instances") {
  Scenario s = generate_random(1, Grid(), 5);
  for (int id = 0; id < s.grid.cell_count(); ++id) {
    const CellIndex c = s.grid.from_linear(id);
    if (std::find(s.rois.begin(), s.rois.end(), c) == s.rois.end()) {
      s.start = c;
      break;
    }
  }
  CHECK_THROWS_AS(s.check(), DomainError);
  s = generate_random(1, Grid(), 5);
  s.rois.push_back(s.rois[1]);
  CHECK_THROWS_AS(s.check(), DomainError);
  s = generate_random(1, Grid(), 5);
  s.num_uavs = 0;
  CHECK_THROWS_AS(s.check(), DomainError);
}
