#include <Eigen/Geometry>

#include "geocycle/optimizer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "geocycle/parallel.hpp"
#include "geocycle/polynomials.hpp"

namespace geocycle {

namespace {

struct ArcMoments {
  double length = 0.0;
  Eigen::VectorXd moments;  // l_j * int_0^1 Y(arc_j(s)) ds over all (l,m)
};

// Arc quadrature specialized to S^2 control points; keeps the optimizer loop
// free of SpherePoint/GeodesicArc construction overhead.
ArcMoments arc_moments(const HarmonicEvaluator& ev, const Eigen::Vector3d& x,
                       const Eigen::Vector3d& y, const QuadratureSpec& spec) {
  ArcMoments out;
  double ip = std::clamp(x.dot(y), -1.0, 1.0);
  if (1.0 + ip < 1e-12)
    throw std::invalid_argument("objective: antipodal consecutive control points");
  const double len = std::acos(ip);
  out.length = len;
  if (len < 1e-12) {
    out.length = 0.0;
    out.moments = Eigen::VectorXd::Zero(ev.count());
    return out;
  }
  const Eigen::Vector3d w = (y - ip * x) / std::sin(len);
  out.moments = len * adaptive_integrate_vec(
                          ev.count(),
                          [&](double s, Eigen::Ref<Eigen::VectorXd> o) {
                            Eigen::Vector3d p = std::cos(s * len) * x + std::sin(s * len) * w;
                            ev.eval(p.x(), p.y(), p.z(),
                                    std::span<double>(o.data(), static_cast<std::size_t>(o.size())));
                          },
                          spec);
  return out;
}

double value_from(const std::vector<ArcMoments>& arcs, int count) {
  double length = 0.0;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(count);
  for (const ArcMoments& a : arcs) {
    length += a.length;
    sum += a.moments;
  }
  double f = 0.0;
  for (Eigen::Index k = 1; k < sum.size(); ++k) {  // skip Y_{0,0}
    double normalized = sum[k] / length;
    f += normalized * normalized;
  }
  return f;
}

std::vector<ArcMoments> all_arcs(const HarmonicEvaluator& ev,
                                 const std::vector<Eigen::Vector3d>& pts,
                                 const QuadratureSpec& spec) {
  const std::size_t n = pts.size();
  std::vector<ArcMoments> arcs(n);
  for (std::size_t j = 0; j < n; ++j) arcs[j] = arc_moments(ev, pts[j], pts[(j + 1) % n], spec);
  return arcs;
}

std::vector<Eigen::Vector3d> to_vec3(const std::vector<SpherePoint>& points) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(points.size());
  for (const SpherePoint& p : points) {
    if (p.ambient_dim() != 3)
      throw std::invalid_argument("optimizer: ambient dimension 3 required");
    pts.emplace_back(p.coords());
  }
  if (pts.size() < 2) throw std::invalid_argument("optimizer: need at least 2 points");
  return pts;
}

// Objective after swapping the two arcs adjacent to point j for recomputed ones;
// reuses the totals of the cached base arcs.
double value_with_point(const HarmonicEvaluator& ev, const std::vector<Eigen::Vector3d>& pts,
                        const std::vector<ArcMoments>& base, double base_length,
                        const Eigen::VectorXd& base_sum, std::size_t j,
                        const Eigen::Vector3d& replacement, const QuadratureSpec& spec) {
  const std::size_t n = pts.size();
  const std::size_t prev = (j + n - 1) % n;
  ArcMoments in = arc_moments(ev, pts[prev], replacement, spec);
  ArcMoments out = arc_moments(ev, replacement, pts[(j + 1) % n], spec);
  double length = base_length - base[prev].length - base[j].length + in.length + out.length;
  double f = 0.0;
  for (Eigen::Index k = 1; k < base_sum.size(); ++k) {
    double normalized =
        (base_sum[k] - base[prev].moments[k] - base[j].moments[k] + in.moments[k] +
         out.moments[k]) /
        length;
    f += normalized * normalized;
  }
  return f;
}

std::vector<Eigen::Vector3d> fd_gradient(const HarmonicEvaluator& ev,
                                         const std::vector<Eigen::Vector3d>& pts,
                                         const std::vector<ArcMoments>& base, double grad_step,
                                         const QuadratureSpec& spec) {
  const std::size_t n = pts.size();
  double base_length = 0.0;
  Eigen::VectorXd base_sum = Eigen::VectorXd::Zero(ev.count());
  for (const ArcMoments& a : base) {
    base_length += a.length;
    base_sum += a.moments;
  }
  std::vector<Eigen::Vector3d> grad(n);
  parallel_for(n, [&](std::size_t j) {
    Eigen::Vector3d g;
    for (int c = 0; c < 3; ++c) {
      Eigen::Vector3d plus = pts[j], minus = pts[j];
      plus[c] += grad_step;
      minus[c] -= grad_step;
      double fp = value_with_point(ev, pts, base, base_length, base_sum, j, plus.normalized(), spec);
      double fm =
          value_with_point(ev, pts, base, base_length, base_sum, j, minus.normalized(), spec);
      g[c] = (fp - fm) / (2.0 * grad_step);
    }
    grad[j] = g - g.dot(pts[j]) * pts[j];
  });
  return grad;
}

}  // namespace

double objective(const std::vector<SpherePoint>& points, int t, const QuadratureSpec& quad) {
  if (t < 1) throw std::invalid_argument("objective: t >= 1 required");
  HarmonicEvaluator ev(t);
  std::vector<Eigen::Vector3d> pts = to_vec3(points);
  return value_from(all_arcs(ev, pts, quad), ev.count());
}

std::vector<Eigen::Vector3d> gradient(const std::vector<SpherePoint>& points, int t,
                                      const OptimizerConfig& config) {
  HarmonicEvaluator ev(t);
  std::vector<Eigen::Vector3d> pts = to_vec3(points);
  std::vector<ArcMoments> base = all_arcs(ev, pts, config.quadrature);
  return fd_gradient(ev, pts, base, config.grad_step, config.quadrature);
}

OptimizeTrace minimize(const std::vector<SpherePoint>& init, int t, const OptimizerConfig& config) {
  HarmonicEvaluator ev(t);
  std::vector<Eigen::Vector3d> pts = to_vec3(init);
  if (config.init_perturbation > 0.0) {
    std::mt19937_64 rng(config.seed);
    for (Eigen::Vector3d& p : pts) {
      Eigen::Vector3d noise(detail::gaussian(rng), detail::gaussian(rng), detail::gaussian(rng));
      p = (p + config.init_perturbation * noise).normalized();
    }
  }

  OptimizeTrace trace;
  std::vector<ArcMoments> arcs = all_arcs(ev, pts, config.quadrature);
  double f = value_from(arcs, ev.count());
  trace.objective_history.push_back(f);

  double step = 1.0;
  int it = 0;
  trace.stop_reason = StopReason::MaxIters;
  for (; it < config.max_iters; ++it) {
    if (f <= config.stop_objective) {
      trace.stop_reason = StopReason::ObjectiveTarget;
      break;
    }
    std::vector<Eigen::Vector3d> grad = fd_gradient(ev, pts, arcs, config.grad_step,
                                                    config.quadrature);
    double grad_norm2 = 0.0;
    for (const auto& g : grad) grad_norm2 += g.squaredNorm();
    if (std::sqrt(grad_norm2) <= config.stop_grad_norm) {
      trace.stop_reason = StopReason::GradientNorm;
      break;
    }

    step = std::min(step * 2.0, 16.0);
    bool accepted = false;
    std::vector<Eigen::Vector3d> cand(pts.size());
    while (step > 1e-18) {
      for (std::size_t j = 0; j < pts.size(); ++j)
        cand[j] = (pts[j] - step * grad[j]).normalized();
      double fc;
      try {
        std::vector<ArcMoments> cand_arcs = all_arcs(ev, cand, config.quadrature);
        fc = value_from(cand_arcs, ev.count());
        if (fc <= f - config.armijo_c * step * grad_norm2) {
          pts.swap(cand);
          arcs.swap(cand_arcs);
          f = fc;
          accepted = true;
          break;
        }
      } catch (const std::invalid_argument&) {
        // step jumped over an antipodal configuration; shrink and retry
      }
      step *= config.armijo_shrink;
    }
    if (!accepted) {
      trace.stop_reason = StopReason::LineSearchFailure;
      break;
    }
    trace.objective_history.push_back(f);

    const int w = config.stall_window;
    if (f > config.stall_floor && static_cast<int>(trace.objective_history.size()) > w) {
      double before = trace.objective_history[trace.objective_history.size() - 1 - w];
      if (before - f < config.stall_improvement) {
        ++it;
        trace.stop_reason = StopReason::Stalled;
        break;
      }
    }
  }
  if (f <= config.stop_objective && trace.stop_reason == StopReason::MaxIters)
    trace.stop_reason = StopReason::ObjectiveTarget;

  trace.iterations = it;
  trace.converged = f <= config.stop_objective;
  trace.final_points.reserve(pts.size());
  for (const auto& p : pts) trace.final_points.emplace_back(Eigen::VectorXd(p));
  return trace;
}

}  // namespace geocycle
