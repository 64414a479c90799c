#pragma once

#include <cstdint>
#include <vector>

#include "geocycle/polynomials.hpp"
#include "geocycle/sphere.hpp"

namespace geocycle {

/// Per-monomial integration residuals (1/l) int_gamma x^alpha - int_{S^d} x^alpha
/// for all |alpha| <= degree, and the design verdict at `tolerance`.
struct DesignReport {
  int degree = 0;
  double tolerance = 0.0;
  std::vector<std::pair<MultiIndex, double>> residuals;
  double max_abs_residual = 0.0;
  bool is_design = false;
};

DesignReport verify_design(const GeodesicCycle& cycle, int t, double tol = 1e-9,
                           const QuadratureSpec& quad = {});
DesignReport verify_design(const ParametricCurve& curve, int t, double tol = 1e-9,
                           const QuadratureSpec& quad = {});

/// Worst-case integration error ||L||_t on the unit ball of Pi_t in L^2(S^2):
/// sqrt of the sum of squared normalized harmonic moments |(1/l) int_gamma Y_{l,m}|^2
/// over l = 1..t. Ambient dimension 3 only.
double wce_moments(const GeodesicCycle& cycle, int t, const QuadratureSpec& quad = {});
double wce_moments(const ParametricCurve& curve, int t, const QuadratureSpec& quad = {});

/// Independent route to ||L||_t^2 through the Legendre-kernel double integral
///   sum_l (2l+1)/l(gamma)^2 int int P_l(<gamma(r),gamma(s)>) |dr| |ds|,
/// evaluated by arc-pair tensor quadrature. O(n^2); guarded to <= 60 arcs.
/// Kept as the test oracle for wce_moments.
double wce_double_integral(const GeodesicCycle& cycle, int t, const QuadratureSpec& quad = {});

/// The per-l terms of the double integral (each must be nonnegative up to rounding).
std::vector<double> wce_double_integral_terms(const GeodesicCycle& cycle, int t,
                                              const QuadratureSpec& quad = {});

struct MzIdentityResult {
  bool requirement_met = false;   // curve verified as a 2t-design
  double max_rel_error = 0.0;     // max over samples of |(1/l) int |f|^2 / ||f||^2 - 1|
};

/// Empirical check of the norm identity (1/l) int_gamma |f|^2 = ||f||_{L^2}^2 for
/// random f in Pi_t, valid exactly when the curve is a 2t-design. The 2t-design
/// requirement is verified first and reported; samples are only drawn if it holds.
MzIdentityResult design_mz_identity(const GeodesicCycle& cycle, int t, int num_samples,
                                    std::uint64_t seed, double design_tol = 1e-9,
                                    const QuadratureSpec& quad = {});

}  // namespace geocycle
