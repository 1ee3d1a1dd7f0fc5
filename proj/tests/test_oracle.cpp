#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "tlbs/oracle.hpp"

using namespace tlbs;

namespace {

double open_length(const Grid& g, const std::vector<CellIndex>& order) {
  double len = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i) len += dist(g, order[i - 1], order[i]);
  return len;
}

// Shortest open path from `start` via Heap's algorithm.
double heap_best(const Grid& g, CellIndex start, std::vector<CellIndex> rest) {
  const std::size_t n = rest.size();
  auto eval = [&] {
    double len = 0.0;
    CellIndex prev = start;
    for (const auto& c : rest) {
      len += dist(g, prev, c);
      prev = c;
    }
    return len;
  };
  double best = eval();
  std::vector<std::size_t> c(n, 0);
  for (std::size_t i = 1; i < n;) {
    if (c[i] < i) {
      std::swap(rest[i % 2 == 0 ? 0 : c[i]], rest[i]);
      best = std::min(best, eval());
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  return best;
}

// Station count from walking the polyline in 1 m steps.
int walk_stations(const std::vector<Point>& pts, double range_m) {
  double battery = range_m;
  int stations = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double left = dist(pts[i - 1], pts[i]);
    while (left > 0.0) {
      const double step = std::min(1.0, left);
      if (battery < step - 1e-9) {
        battery = range_m;
        ++stations;
      }
      battery -= step;
      left -= step;
    }
  }
  return stations;
}

std::vector<CellIndex> without_start(const Scenario& s) {
  std::vector<CellIndex> out;
  for (const auto& r : s.rois) {
    if (r != s.start) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("two ROIs") {
  const Grid g;
  const std::vector<CellIndex> rois = {{2, 2}, {5, 6}};
  const TspResult r = tsp_brute_force(rois, {2, 2}, g);
  CHECK(r.order == std::vector<CellIndex>{{2, 2}, {5, 6}});
  CHECK(r.length_m == 5000.0);
  TspOptions closed;
  closed.closed_tour = true;
  CHECK(tsp_brute_force(rois, {2, 2}, g, closed).length_m == 10000.0);
}

TEST_CASE("collinear ROIs are swept in order") {
  const Grid g;
  const std::vector<CellIndex> rois = {{4, 0}, {4, 7}, {4, 2}, {4, 11}};
  const TspResult r = tsp_brute_force(rois, {4, 0}, g);
  CHECK(r.order == std::vector<CellIndex>{{4, 0}, {4, 2}, {4, 7}, {4, 11}});
  CHECK(r.length_m == 11000.0);
}

TEST_CASE("brute force agrees with an independent enumerator") {
  const Grid g;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Scenario s = generate_random(seed, g, 10);
    const TspResult r = tsp_brute_force(s.rois, s.start, g);
    CHECK(r.length_m == doctest::Approx(heap_best(g, s.start, without_start(s))).epsilon(1e-12));
    CHECK(r.length_m == doctest::Approx(open_length(g, r.order)).epsilon(1e-12));
    CHECK(r.order.front() == s.start);

    Rng rng(seed);
    std::vector<CellIndex> order = s.rois;
    for (int k = 0; k < 1000; ++k) {
      std::shuffle(order.begin() + 1, order.end(), rng);
      CHECK(open_length(g, order) >= r.length_m - 1e-9);
    }
  }
}

TEST_CASE("subset dynamic program matches brute force") {
  const Grid g;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Scenario s = generate_random(seed, g, 9);
    for (bool closed : {false, true}) {
      TspOptions opt;
      opt.closed_tour = closed;
      const SubsetPaths sub = tsp_all_subsets(s.rois, s.start, g, opt);
      REQUIRE(sub.rois.size() == 8);
      for (std::size_t mask = 1; mask < sub.length_m.size(); mask += 7) {
        std::vector<CellIndex> group;
        for (std::size_t i = 0; i < sub.rois.size(); ++i) {
          if (mask >> i & 1) group.push_back(sub.rois[i]);
        }
        const TspResult bf = tsp_brute_force(group, s.start, g, opt);
        CHECK(sub.length_m[mask] == doctest::Approx(bf.length_m).epsilon(1e-12));
        std::vector<CellIndex> walk{s.start};
        for (int i : sub.order[mask]) walk.push_back(sub.rois[i]);
        if (closed) walk.push_back(s.start);
        CHECK(open_length(g, walk) == doctest::Approx(bf.length_m).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("refusals") {
  const Grid g;
  const Scenario s = generate_random(1, g, 14);
  CHECK_THROWS_AS(tsp_brute_force(s.rois, s.start, g), OracleRefusal);
  CHECK_THROWS_AS(oracle_solve(s), OracleRefusal);
  Scenario fleet = generate_semi_random(1, g, 4);
  TspOptions tight;
  tight.max_assignments = 1000;
  CHECK_THROWS_AS(oracle_solve(fleet, tight), OracleRefusal);
}

TEST_CASE("greedy station placement") {
  const std::vector<Point> short_line = {{0, 0}, {3000, 0}, {3000, 1500}};
  CHECK(greedy_station_placement(short_line, 5000.0).nc == 0);

  const std::vector<Point> line = {{0, 0}, {12000, 0}};
  const OracleRoute r = greedy_station_placement(line, 5000.0);
  REQUIRE(r.nc == 2);
  CHECK(r.station_points[0].x == doctest::Approx(5000.0));
  CHECK(r.station_points[1].x == doctest::Approx(10000.0));
  CHECK(r.path_len_m == 12000.0);

  const std::vector<Point> exact = {{0, 0}, {10000, 0}};
  CHECK(greedy_station_placement(exact, 5000.0).nc == 1);

  // A stop lands inside the second segment after carrying over the remainder.
  const std::vector<Point> bend = {{0, 0}, {3000, 0}, {3000, 4000}};
  const OracleRoute b = greedy_station_placement(bend, 5000.0);
  REQUIRE(b.nc == 1);
  CHECK(b.station_points[0].x == doctest::Approx(3000.0));
  CHECK(b.station_points[0].y == doctest::Approx(2000.0));

  CHECK_THROWS_AS(greedy_station_placement(line, 0.0), DomainError);
}

TEST_CASE("greedy count matches a step walk") {
  const Grid g;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = generate_random(seed, g, 10);
    std::vector<CellIndex> order = s.rois;
    Rng rng(seed);
    std::shuffle(order.begin() + 1, order.end(), rng);
    std::vector<Point> pts;
    for (const auto& c : order) pts.push_back(g.center(c));
    const OracleRoute r = greedy_station_placement(order, g, 5000.0);
    CHECK(r.nc == walk_stations(pts, 5000.0));
    CHECK(r.nc == static_cast<int>(std::ceil(r.path_len_m / 5000.0 - 1e-9)) - 1);
  }
}

TEST_CASE("single-UAV oracle composes the shortest path with greedy stations") {
  const Scenario s = generate_random(7, Grid(), 9);
  const OracleSolution o = oracle_solve(s);
  REQUIRE(o.routes.size() == 1);
  const TspResult t = tsp_brute_force(s.rois, s.start, s.grid);
  CHECK(o.max_path_len_m == t.length_m);
  CHECK(o.routes[0].visit_order == t.order);
  CHECK(o.nc == greedy_station_placement(t.order, s.grid, s.uav.range_m).nc);

  Scenario single;
  single.rois = {{3, 3}};
  single.start = {3, 3};
  const OracleSolution z = oracle_solve(single);
  CHECK(z.max_path_len_m == 0.0);
  CHECK(z.nc == 0);
}

TEST_CASE("fleet oracle matches plain assignment enumeration") {
  const Grid g;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Scenario s = generate_random(seed, g, 7);
    s.num_uavs = seed % 2 ? 2 : 3;
    const OracleSolution o = oracle_solve(s);
    const auto rest = without_start(s);
    const int n = static_cast<int>(rest.size());

    // Every labelling, no symmetry reduction; each group solved by Heap's
    // enumerator with ceil(L / range) - 1 stations.
    double best_len = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> all;
    std::vector<int> label(n, 0);
    for (;;) {
      double worst = 0.0;
      int stations = 0;
      for (int u = 0; u < s.num_uavs; ++u) {
        std::vector<CellIndex> group;
        for (int i = 0; i < n; ++i) {
          if (label[i] == u) group.push_back(rest[i]);
        }
        const double len = group.empty() ? 0.0 : heap_best(g, s.start, group);
        worst = std::max(worst, len);
        if (len > 0.0) stations += static_cast<int>(std::ceil(len / s.uav.range_m - 1e-9)) - 1;
      }
      all.emplace_back(worst, stations);
      best_len = std::min(best_len, worst);
      int i = 0;
      while (i < n && ++label[i] == s.num_uavs) label[i++] = 0;
      if (i == n) break;
    }
    int best_nc = std::numeric_limits<int>::max();
    for (const auto& [len, nc] : all) {
      if (len <= best_len + 1e-6) best_nc = std::min(best_nc, nc);
    }
    CHECK(o.max_path_len_m == doctest::Approx(best_len).epsilon(1e-12));
    CHECK(o.nc == best_nc);
    CHECK(static_cast<int>(o.routes.size()) == s.num_uavs);
    std::vector<CellIndex> covered;
    for (const auto& r : o.routes) {
      CHECK(r.visit_order.front() == s.start);
      covered.insert(covered.end(), r.visit_order.begin() + 1, r.visit_order.end());
    }
    std::sort(covered.begin(), covered.end());
    auto expect = rest;
    std::sort(expect.begin(), expect.end());
    CHECK(covered == expect);
  }
}

TEST_CASE("ten-ROI oracle runs quickly") {
  const Scenario s = generate_random(1, Grid(), 10);
  const auto t0 = std::chrono::steady_clock::now();
  oracle_solve(s);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("10-ROI oracle: " << secs << " s");
  CHECK(secs <= 10.0);
}
