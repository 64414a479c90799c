#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "geocycle/mz.hpp"
#include "geocycle/polynomials.hpp"
#include "support/oracles.hpp"

using namespace geocycle;

namespace {

double geometric_area(const Patch& p) {
  return (std::cos(p.theta0) - std::cos(p.theta1)) / 2.0 * (p.phi1 - p.phi0) / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("n=2 gives two hemispheres, a doubled edge, and a 4-arc cycle") {
  Partition part = equal_area_partition(2);
  REQUIRE(part.patches.size() == 2);
  for (const Patch& p : part.patches) CHECK(geometric_area(p) == doctest::Approx(0.5).epsilon(1e-14));

  PatchGraph graph = build_graph(part);
  CHECK(graph.multi_edges.size() == 2);
  CHECK(graph.kissing == std::vector<int>{1, 1});

  EulerTour tour = euler_cycle(graph);
  CHECK(tour.edge_order.size() == 2);

  PointPairs pairs = select_pairs(part);
  GeodesicCycle cycle = assemble_cycle(part, tour, pairs);
  CHECK(cycle.arc_count() == 4);  // 2 inner + 2 connecting
}

TEST_CASE("partition areas are exactly 1/n and cover the sphere") {
  for (int n : {10, 100, 1000}) {
    Partition part = equal_area_partition(n);
    REQUIRE(static_cast<int>(part.patches.size()) == n);
    double total = 0.0;
    for (const Patch& p : part.patches) {
      double area = geometric_area(p);
      CHECK(std::abs(area - 1.0 / n) <= 1e-12);
      total += area;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(equal_area_partition(1), std::invalid_argument);
}

TEST_CASE("partition diameters scale as n^{-1/2} with constant below 7") {
  for (int n : {100, 400}) {
    Partition part = equal_area_partition(n);
    CHECK(part.size * std::sqrt(static_cast<double>(n)) <= 7.0);
  }
}

TEST_CASE("inner caps are positive and sit inside their patches") {
  Partition part = equal_area_partition(57);
  for (const Patch& p : part.patches) {
    CHECK(p.inner_cap_radius > 0.0);
    // sample the cap boundary; every sample must stay in the patch
    Eigen::Vector3d u = p.center.unitOrthogonal();
    Eigen::Vector3d w = p.center.cross(u);
    for (int k = 0; k < 32; ++k) {
      double ang = 2.0 * M_PI * k / 32;
      double r = p.inner_cap_radius * (1.0 - 1e-9);
      Eigen::Vector3d q = std::cos(r) * p.center + std::sin(r) * (std::cos(ang) * u + std::sin(ang) * w);
      CHECK(p.contains(q));
    }
  }
}

TEST_CASE("graph degrees are even and kissing numbers stay bounded") {
  int worst = 0;
  for (int n : {10, 50, 200, 800}) {
    Partition part = equal_area_partition(n);
    PatchGraph graph = build_graph(part);
    std::vector<int> degree(n, 0);
    for (auto [i, j] : graph.multi_edges) {
      ++degree[i];
      ++degree[j];
    }
    for (int v = 0; v < n; ++v) {
      CHECK(degree[v] % 2 == 0);
      CHECK(degree[v] == 2 * graph.kissing[v]);
    }
    worst = std::max(worst, graph.max_kissing);
  }
  CHECK(worst <= 10);
}

TEST_CASE("euler tour traverses the multigraph exactly once and visits every patch") {
  for (int n : {10, 64, 200}) {
    Partition part = equal_area_partition(n);
    PatchGraph graph = build_graph(part);
    EulerTour tour = euler_cycle(graph);
    CHECK(tour.vertex_walk.front() == 0);
    CHECK(tour.vertex_walk.back() == 0);
    CHECK(tour.edge_order.size() == graph.multi_edges.size());

    std::set<int> used(tour.edge_order.begin(), tour.edge_order.end());
    CHECK(used.size() == graph.multi_edges.size());  // each edge id exactly once
    for (std::size_t k = 0; k < tour.edge_order.size(); ++k) {
      auto [a, b] = graph.multi_edges[tour.edge_order[k]];
      int from = tour.vertex_walk[k], to = tour.vertex_walk[k + 1];
      CHECK(((a == from && b == to) || (a == to && b == from)));
    }
    std::set<int> visited(tour.vertex_walk.begin(), tour.vertex_walk.end());
    CHECK(static_cast<int>(visited.size()) == n);

    EulerTour again = euler_cycle(graph);
    CHECK(again.vertex_walk == tour.vertex_walk);  // deterministic tie-breaking
  }
}

TEST_CASE("select_pairs: one global spacing, points inside their patches") {
  Partition part = equal_area_partition(64);
  PointPairs pairs = select_pairs(part);
  for (int j = 0; j < 64; ++j) {
    const auto& [first, second] = pairs.pairs[j];
    CHECK(distance(first, second) == doctest::Approx(pairs.spacing).epsilon(1e-12));
    CHECK(part.patches[j].contains(first.coords()));
    CHECK(part.patches[j].contains(second.coords()));
  }
  // pole cap: the pair straddles the center symmetrically
  const Patch& north = part.patches[0];
  double d1 = std::acos(std::clamp(pairs.pairs[0].first.coords().dot(north.center), -1.0, 1.0));
  double d2 = std::acos(std::clamp(pairs.pairs[0].second.coords().dot(north.center), -1.0, 1.0));
  CHECK(d1 == doctest::Approx(pairs.spacing / 2).epsilon(1e-12));
  CHECK(d2 == doctest::Approx(pairs.spacing / 2).epsilon(1e-12));
}

TEST_CASE("assemble_cycle: arc count, inner arcs inside patches, length sandwich") {
  for (int n : {50, 200, 800}) {
    Partition part = equal_area_partition(n);
    PatchGraph graph = build_graph(part);
    EulerTour tour = euler_cycle(graph);
    PointPairs pairs = select_pairs(part);
    GeodesicCycle cycle = assemble_cycle(part, tour, pairs);
    CHECK(cycle.arc_count() == static_cast<std::size_t>(n) + graph.multi_edges.size());

    // inner arcs stay inside their patch (first visit of each patch)
    std::set<int> seen;
    std::size_t arc_idx = 0;
    std::vector<int> order{0};
    for (std::size_t k = 1; k + 1 < tour.vertex_walk.size(); ++k) order.push_back(tour.vertex_walk[k]);
    for (int v : order) {
      if (seen.count(v)) {
        ++arc_idx;  // connecting arc only
        continue;
      }
      seen.insert(v);
      const GeodesicArc& inner = cycle.arc(arc_idx);
      for (int s = 0; s <= 8; ++s)
        CHECK(part.patches[v].contains(inner.eval(s / 8.0), 1e-9));
      arc_idx += 2;  // inner arc plus the next connecting arc
    }

    // sandwich with the partition's own measured constants
    double lower = n * pairs.spacing;
    double upper = n * pairs.spacing +
                   static_cast<double>(graph.multi_edges.size()) * 2.0 * part.size;
    CHECK(cycle.length() >= lower - 1e-9);
    CHECK(cycle.length() <= upper + 1e-9);
  }
}

TEST_CASE("curve length scales linearly in t for n = 4t^2") {
  std::vector<double> ratios;
  for (int t : {4, 8, 16, 32}) ratios.push_back(build_mz_cycle(t).length() / t);
  double lo = *std::min_element(ratios.begin(), ratios.end());
  double hi = *std::max_element(ratios.begin(), ratios.end());
  CHECK(hi / lo < 2.0);
}

TEST_CASE("mz_test: determinism, sup bound, p=2 band sanity") {
  GeodesicCycle cycle = build_mz_cycle(4);
  MzReport a = mz_test(cycle, 4, 2.0, 40, 11);
  MzReport b = mz_test(cycle, 4, 2.0, 40, 11);
  CHECK(a.ratio_min == b.ratio_min);
  CHECK(a.ratio_max == b.ratio_max);
  CHECK(a.ratio_min > 0.05);
  CHECK(a.ratio_min <= a.ratio_max);
  CHECK(a.curve_length == doctest::Approx(cycle.length()));

  MzReport sup = mz_test(cycle, 4, std::numeric_limits<double>::infinity(), 40, 11);
  CHECK(sup.ratio_max <= 1.0 + 1e-9);
  CHECK(sup.ratio_min > 0.05);

  MzReport p1 = mz_test(cycle, 4, 1.0, 40, 11);
  CHECK(p1.ratio_min > 0.05);

  CHECK_THROWS_AS(mz_test(cycle, 4, 0.5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(mz_test(cycle, 0, 2.0, 10, 1), std::invalid_argument);
}

TEST_CASE("mz ratio bands stay within a factor 2 across degrees (light check)") {
  std::vector<double> mins, maxs;
  for (int t : {2, 4}) {
    MzReport report = mz_test(build_mz_cycle(t), t, 2.0, 30, 17);
    mins.push_back(report.ratio_min);
    maxs.push_back(report.ratio_max);
  }
  CHECK(*std::max_element(mins.begin(), mins.end()) /
            *std::min_element(mins.begin(), mins.end()) <
        2.0);
  CHECK(*std::max_element(maxs.begin(), maxs.end()) /
            *std::min_element(maxs.begin(), maxs.end()) <
        2.0);
}

TEST_CASE("normalization identity: constant functions give ratio one") {
  GeodesicCycle cycle = build_mz_cycle(3);
  double c = -3.25;
  double path = integrate_cycle(cycle, [&](const Eigen::VectorXd&) { return std::abs(c); });
  CHECK(path / cycle.length() == doctest::Approx(std::abs(c)).epsilon(1e-12));
  double sphere = sphere_lp_norm([&](const Eigen::Vector3d&) { return c; }, 1.0, 12);
  CHECK(path / cycle.length() / sphere == doctest::Approx(1.0).epsilon(1e-12));
}
