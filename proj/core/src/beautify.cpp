#include "geocycle/beautify.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "geocycle/families.hpp"

namespace geocycle {

double h2(double alpha) {
  const double a2 = alpha * alpha;
  return (2.0 * a2 - 1.0) * std::acos(a2 - 1.0) -
         3.0 * alpha * std::sqrt(2.0 - a2) * (a2 - 1.0);
}

double h3(double alpha) {
  const double a2 = alpha * alpha;
  return (3.0 * a2 - 2.0) * std::acos(1.5 * a2 - 1.0) -
         3.0 * alpha * std::sqrt(12.0 - 9.0 * a2) * (a2 - 1.0);
}

double cube_u(double alpha, double beta) {
  const double b2 = beta * beta;
  const double ab = alpha + beta;
  return (alpha - beta) * std::pow(1.0 - b2, 1.5) * std::sqrt(2.0 - ab * ab) -
         beta * b2 + b2 * b2 * beta - alpha * alpha * beta * (b2 - 3.0);
}

double cube_v(double alpha, double beta) {
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const double ab = alpha + beta;
  const double lhs = 2.0 * (1.0 - b2) * (1.0 - 2.0 * (a2 - alpha * beta + b2)) *
                         std::acos(ab * ab - 1.0) +
                     (1.0 - 3.0 * a2 - b2) * (2.0 - ab * ab) * std::acos(1.0 - 2.0 * b2);
  const double rhs = 6.0 * (1.0 - a2 - b2) *
                     ((1.0 - b2) * ab * std::sqrt(2.0 - ab * ab) -
                      beta * std::sqrt(1.0 - b2) * (2.0 - ab * ab));
  return rhs - lhs;
}

namespace {

struct Bisection {
  double lo, hi, root;
  int iterations;
};

Bisection bisect(const std::function<double(double)>& f, double lo, double hi, double xtol,
                 int max_iters) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, lo, lo, 0};
  if (fhi == 0.0) return {hi, hi, hi, 0};
  if ((flo < 0) == (fhi < 0))
    throw std::runtime_error("bisect: no sign change over the bracket");
  int it = 0;
  while (hi - lo > xtol && it < max_iters) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    ++it;
  }
  return {lo, hi, 0.5 * (lo + hi), it};
}

}  // namespace

RootResult solve_geo(int t) {
  if (t != 2 && t != 3) throw std::invalid_argument("solve_geo: t in {2,3}");
  auto f = [t](double alpha) { return t == 2 ? h2(alpha) : h3(alpha); };
  Bisection b = bisect(f, 1e-9, 1.0, 1e-12, 200);
  // Newton polish with a central-difference derivative.
  double alpha = b.root;
  int it = b.iterations;
  for (int k = 0; k < 8; ++k, ++it) {
    const double h = 1e-7;
    double d = (f(alpha + h) - f(alpha - h)) / (2.0 * h);
    double step = f(alpha) / d;
    alpha -= step;
    if (std::abs(step) < 1e-16) break;
  }
  RootResult result;
  result.value = {std::asin(alpha)};
  result.residual = std::abs(f(alpha));
  result.bracket = {{std::asin(b.lo) - 1e-12, std::asin(b.hi) + 1e-12}};
  result.iterations = it;
  return result;
}

RootResult solve_cube() {
  constexpr double kAlo = 0.25, kAhi = 0.4, kBlo = 0.5, kBhi = 0.9;
  // Poincare-Miranda sign certificates on the box edges.
  for (int i = 0; i < 1000; ++i) {
    double beta = kBlo + (kBhi - kBlo) * i / 999.0;
    if (!(cube_u(kAlo, beta) < 0.0) || !(cube_u(kAhi, beta) > 0.0))
      throw std::runtime_error("solve_cube: Poincare-Miranda sign condition failed for u");
    double alpha = kAlo + (kAhi - kAlo) * i / 999.0;
    if (!(cube_v(alpha, kBlo) < 0.0) || !(cube_v(alpha, kBhi) > 0.0))
      throw std::runtime_error("solve_cube: Poincare-Miranda sign condition failed for v");
  }

  Eigen::Vector2d x(0.33, 0.70);
  auto F = [](const Eigen::Vector2d& p) {
    return Eigen::Vector2d(cube_u(p[0], p[1]), cube_v(p[0], p[1]));
  };
  auto inside = [&](const Eigen::Vector2d& p) {
    return p[0] >= kAlo && p[0] <= kAhi && p[1] >= kBlo && p[1] <= kBhi;
  };
  bool restarted = false;
  int it = 0;
  for (; it < 200; ++it) {
    Eigen::Vector2d fx = F(x);
    if (fx.cwiseAbs().maxCoeff() < 1e-15) break;
    const double h = 1e-7;
    Eigen::Matrix2d J;
    for (int c = 0; c < 2; ++c) {
      Eigen::Vector2d xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      J.col(c) = (F(xp) - F(xm)) / (2.0 * h);
    }
    Eigen::Vector2d step = J.fullPivLu().solve(fx);
    double damping = 1.0;
    Eigen::Vector2d next = x - step;
    while ((!inside(next) || F(next).norm() > fx.norm()) && damping > 1e-8) {
      damping *= 0.5;
      next = x - damping * step;
    }
    if (damping <= 1e-8) {
      if (restarted) throw std::runtime_error("solve_cube: Newton iteration failed to progress");
      restarted = true;
      next = Eigen::Vector2d(0.5 * (kAlo + kAhi), 0.5 * (kBlo + kBhi));
    }
    if ((next - x).norm() < 1e-17 && inside(next)) {
      x = next;
      break;
    }
    x = next;
  }
  RootResult result;
  result.value = {x[0], x[1]};
  result.residual = F(x).cwiseAbs().maxCoeff();
  result.bracket = {{kAlo, kAhi}, {kBlo, kBhi}};
  result.iterations = it;
  return result;
}

RootResult solve_smooth(int t, const QuadratureSpec& quad, DesignReport* verification) {
  if (t != 2 && t != 3) throw std::invalid_argument("solve_smooth: t in {2,3}");
  auto residual = [&](double a) {
    ParametricCurve curve = smooth_s2(t, a);
    double length = integrate_smooth(curve, [](const Eigen::VectorXd&) { return 1.0; }, quad);
    double diff = integrate_smooth(
        curve, [](const Eigen::VectorXd& x) { return x[0] * x[0] - x[2] * x[2]; }, quad);
    return diff / length;
  };
  Bisection b = bisect(residual, 0.51, 0.999, 1e-11, 200);
  RootResult result;
  result.value = {b.root};
  result.residual = std::abs(residual(b.root));
  result.bracket = {{b.lo - 1e-11, b.hi + 1e-11}};
  result.iterations = b.iterations;
  DesignReport report = verify_design(smooth_s2(t, b.root), t, 1e-8, quad);
  if (verification) *verification = report;
  return result;
}

}  // namespace geocycle
