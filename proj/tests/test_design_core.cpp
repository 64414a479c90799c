#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geocycle/beautify.hpp"
#include "geocycle/design.hpp"
#include "geocycle/families.hpp"
#include "support/oracles.hpp"

using namespace geocycle;

TEST_CASE("great circles are 1-design curves") {
  GeodesicCycle square({SpherePoint(Eigen::Vector3d(1, 0, 0)), SpherePoint(Eigen::Vector3d(0, 1, 0)),
                        SpherePoint(Eigen::Vector3d(-1, 0, 0)),
                        SpherePoint(Eigen::Vector3d(0, -1, 0))});
  DesignReport report = verify_design(square, 1);
  CHECK(report.is_design);
  CHECK(report.max_abs_residual < 1e-12);
}

TEST_CASE("tetrahedron Hamiltonian cycle: 1-design (equal arcs, zero vertex sum), not 2-design") {
  // Per-arc integral of the coordinate functions is tan(l/2)(u+v); equal arc
  // lengths and a vanishing vertex sum make every degree-1 residual zero.
  GeodesicCycle tetra = platonic_cycle(Solid::Tetrahedron);
  CHECK(verify_design(tetra, 1).is_design);
  DesignReport at2 = verify_design(tetra, 2);
  CHECK_FALSE(at2.is_design);
  CHECK(at2.max_abs_residual > 1e-4);
}

TEST_CASE("constant-residual normalization: zero multi-index residual vanishes") {
  auto& g = oracles::rng(41);
  GeodesicCycle cycle(oracles::random_cycle_points(5, g));
  DesignReport report = verify_design(cycle, 2);
  for (const auto& [alpha, r] : report.residuals)
    if (alpha.degree() == 0) CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("odd-sphere curve m=3 is a 3-design in S^5") {
  DesignReport report = verify_design(odd_sphere(3, 3), 3, 1e-9);
  CHECK(report.is_design);
  CHECK(report.max_abs_residual < 1e-9);
}

TEST_CASE("wce_moments anchors") {
  GeodesicCycle square({SpherePoint(Eigen::Vector3d(1, 0, 0)), SpherePoint(Eigen::Vector3d(0, 1, 0)),
                        SpherePoint(Eigen::Vector3d(-1, 0, 0)),
                        SpherePoint(Eigen::Vector3d(0, -1, 0))});
  CHECK(wce_moments(square, 1) < 1e-10);

  double a2 = solve_geo(2).value[0];
  CHECK(wce_moments(geo_tetra(a2), 2) <= 1e-8);
  CHECK(wce_moments(geo_tetra(0.3), 2) > 1e-3);
}

TEST_CASE("wce monotone in degree; design property is inherited downward") {
  auto& g = oracles::rng(43);
  GeodesicCycle cycle(oracles::random_cycle_points(6, g));
  for (int t = 1; t < 4; ++t)
    CHECK(wce_moments(cycle, t) <= wce_moments(cycle, t + 1) + 1e-12);

  double a3 = solve_geo(3).value[0];
  GeodesicCycle design = geo_octa(a3);
  for (int t = 3; t >= 0; --t) CHECK(verify_design(design, t, 1e-9).is_design);
}

TEST_CASE("wce_double_integral: oracle equivalence, nonnegative terms, arc guard") {
  auto& g = oracles::rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    GeodesicCycle cycle(oracles::random_cycle_points(6, g));
    int t = 1 + trial % 4;
    CHECK(wce_moments(cycle, t) == doctest::Approx(wce_double_integral(cycle, t)).epsilon(1e-8));
    for (double term : wce_double_integral_terms(cycle, t)) CHECK(term >= -1e-10);
  }
  CHECK(wce_double_integral(platonic_cycle(Solid::Tetrahedron), 1) < 1e-9);

  std::vector<SpherePoint> many;
  for (int i = 0; i < 61; ++i) many.push_back(SpherePoint(oracles::random_unit(3, g)));
  GeodesicCycle big(many);
  CHECK_THROWS_AS(wce_double_integral(big, 2), std::invalid_argument);
}

TEST_CASE("rotation invariance of verify_design") {
  auto& g = oracles::rng(53);
  double a2 = solve_geo(2).value[0];
  GeodesicCycle cycle = geo_tetra(a2);
  double base = verify_design(cycle, 2).max_abs_residual;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::Matrix3d rot = oracles::random_rotation(g);
    std::vector<SpherePoint> rotated;
    for (const SpherePoint& p : cycle.control_points())
      rotated.emplace_back(Eigen::VectorXd(rot * Eigen::Vector3d(p.coords())));
    double moved = verify_design(GeodesicCycle(rotated), 2).max_abs_residual;
    CHECK(std::abs(moved - base) < 1e-9);
  }
}

TEST_CASE("design_mz_identity on the 2-design tetra family") {
  double a2 = solve_geo(2).value[0];
  MzIdentityResult result = design_mz_identity(geo_tetra(a2), 1, 100, 321);
  CHECK(result.requirement_met);
  CHECK(result.max_rel_error <= 1e-8);
}

TEST_CASE("design_mz_identity reports the 2t-requirement violation") {
  RootResult cube = solve_cube();
  GeodesicCycle cycle = geo_cube(cube.value[0], cube.value[1]);  // 3-design, not a 4-design
  MzIdentityResult result = design_mz_identity(cycle, 2, 10, 99);
  CHECK_FALSE(result.requirement_met);
  CHECK(std::isnan(result.max_rel_error));
}

TEST_CASE("norm identity is exact for constant polynomials") {
  auto& g = oracles::rng(59);
  GeodesicCycle cycle(oracles::random_cycle_points(5, g));
  double c = 1.7;
  double path = integrate_cycle(cycle, [&](const Eigen::VectorXd&) { return c * c; });
  CHECK(path / cycle.length() == doctest::Approx(c * c).epsilon(1e-13));
}
