#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "geocycle/quadrature.hpp"
#include "geocycle/sphere.hpp"

namespace geocycle {

struct OptimizerConfig {
  int max_iters = 100000;
  double grad_step = 1e-6;        // central finite-difference step
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double stop_objective = 1e-20;  // on ||L||_t^2
  double stop_grad_norm = 1e-12;
  std::uint64_t seed = 0;
  double init_perturbation = 0.0;  // tangent-normal noise applied to the start

  // Stall rule for the negative results: declared stalled when the objective
  // improves by less than stall_improvement over stall_window iterations while
  // still above stall_floor.
  int stall_window = 500;
  double stall_improvement = 1e-16;
  double stall_floor = 1e-8;

  QuadratureSpec quadrature{16, 1e-13, 3};
};

enum class StopReason { ObjectiveTarget, GradientNorm, Stalled, MaxIters, LineSearchFailure };

struct OptimizeTrace {
  std::vector<double> objective_history;  // non-increasing, one entry per accepted iterate
  std::vector<SpherePoint> final_points;
  bool converged = false;  // objective target reached
  int iterations = 0;
  StopReason stop_reason = StopReason::MaxIters;
};

/// ||L||_t^2 of the geodesic cycle induced by the control points, through the
/// squared harmonic moments. Ambient dimension 3.
double objective(const std::vector<SpherePoint>& points, int t,
                 const QuadratureSpec& quad = QuadratureSpec{16, 1e-13, 3});

/// Central finite differences of the objective on ambient coordinates
/// (renormalizing perturbed points onto the sphere), projected onto each
/// point's tangent plane. Deterministic for a fixed config.
std::vector<Eigen::Vector3d> gradient(const std::vector<SpherePoint>& points, int t,
                                      const OptimizerConfig& config = {});

/// Projected gradient descent with Armijo backtracking; every iterate is
/// renormalized onto the sphere. Stops on the objective target, gradient norm,
/// stall rule, iteration cap, or line-search failure (best iterate returned).
OptimizeTrace minimize(const std::vector<SpherePoint>& init, int t,
                       const OptimizerConfig& config = {});

}  // namespace geocycle
