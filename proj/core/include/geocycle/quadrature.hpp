#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <string>

namespace geocycle {

struct QuadratureSpec {
  int nodes_per_segment = 32;
  double tolerance = 1e-12;
  int max_refinements = 6;
};

/// Raised when two successive dyadic refinements fail to agree within the
/// requested tolerance; both estimates are carried for diagnostics.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double coarse, double fine);
  double coarse_estimate() const { return coarse_; }
  double fine_estimate() const { return fine_; }

 private:
  double coarse_, fine_;
};

/// Gauss-Legendre rule with n nodes mapped to [0,1]. Rules are computed once
/// and cached; the returned reference stays valid for the process lifetime.
struct GaussLegendreRule {
  Eigen::ArrayXd nodes;    // in (0,1)
  Eigen::ArrayXd weights;  // sum to 1
};
const GaussLegendreRule& gauss_legendre(int n);

/// Integrate g over [0,1]: composite Gauss-Legendre over 2^r equal panels,
/// r = 0,1,..., stopping when two successive levels agree within spec.tolerance.
double adaptive_integrate(const std::function<double(double)>& g, const QuadratureSpec& spec);

/// Vector-valued variant; g writes the integrand into `out`. Convergence is
/// measured in the max norm across components.
Eigen::VectorXd adaptive_integrate_vec(
    int dim, const std::function<void(double, Eigen::Ref<Eigen::VectorXd>)>& g,
    const QuadratureSpec& spec);

}  // namespace geocycle
