#pragma once

#include <array>
#include <vector>

#include "geocycle/design.hpp"
#include "geocycle/quadrature.hpp"

namespace geocycle {

/// Certified root of a parameter equation (or 2x2 system): the value(s), the
/// residual of the defining function(s) at the value, the bracket (interval or
/// box) that contains it, and the iteration count spent.
struct RootResult {
  std::vector<double> value;
  double residual = 0.0;
  std::vector<std::array<double, 2>> bracket;
  int iterations = 0;
};

/// h2(alpha) = (2a^2-1) arccos(a^2-1) - 3a sqrt(2-a^2) (a^2-1); its unique root
/// alpha_2 in (0,1] gives the tetrahedral design parameter a_2 = arcsin(alpha_2).
double h2(double alpha);

/// h3(alpha) = (3a^2-2) arccos(3a^2/2-1) - 3a sqrt(12-9a^2) (a^2-1); unique root
/// alpha_3 in (0,1] gives a_3 = arcsin(alpha_3).
double h3(double alpha);

/// First cube parameter identity, as left minus right side:
/// (alpha-beta)(1-beta^2)^{3/2} sqrt(2-(alpha+beta)^2) - beta^3 + beta^5
///   - alpha^2 beta (beta^2 - 3).
double cube_u(double alpha, double beta);

/// Second cube parameter identity, as right minus left side.
double cube_v(double alpha, double beta);

/// Bracketing bisection on h_t over (0,1) followed by Newton polishing;
/// returns a_t = arcsin(alpha_t).
RootResult solve_geo(int t);

/// Damped Newton on (u,v) from (0.33, 0.70) inside [1/4,2/5] x [1/2,9/10],
/// after certifying the Poincare-Miranda sign conditions on 1000 samples per
/// box edge. Returns (alpha_0, beta_0).
RootResult solve_cube();

/// Bisection root of a -> (1/l) int_{gamma^{(t,a)}} (x^2 - z^2) over (1/2, 1);
/// the other design conditions hold by symmetry for every a. The design
/// property at the root is re-verified through verify_design; the report is
/// written to *verification when given.
RootResult solve_smooth(int t, const QuadratureSpec& quad = {},
                        DesignReport* verification = nullptr);

}  // namespace geocycle
