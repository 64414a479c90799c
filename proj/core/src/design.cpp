#include "geocycle/design.hpp"

#include <cmath>
#include <stdexcept>

namespace geocycle {

namespace {

// Monomial values for every basis element at x, through per-coordinate power tables.
struct MonomialTable {
  const std::vector<MultiIndex>& basis;
  int t;
  int vars;
  mutable std::vector<double> powers;  // (vars) x (t+1)

  MonomialTable(const std::vector<MultiIndex>& b, int t_, int vars_)
      : basis(b), t(t_), vars(vars_), powers(static_cast<std::size_t>(vars_) * (t_ + 1)) {}

  void eval(const Eigen::VectorXd& x, Eigen::Ref<Eigen::VectorXd> out) const {
    for (int i = 0; i < vars; ++i) {
      double* row = powers.data() + static_cast<std::size_t>(i) * (t + 1);
      row[0] = 1.0;
      for (int e = 1; e <= t; ++e) row[e] = row[e - 1] * x[i];
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
      double v = 1.0;
      const auto& exps = basis[k].exponents;
      for (int i = 0; i < vars; ++i)
        v *= powers[static_cast<std::size_t>(i) * (t + 1) + exps[i]];
      out[static_cast<Eigen::Index>(k)] = v;
    }
  }
};

// Path integrals of a vector field over a cycle, each arc refined adaptively.
template <typename FieldFn>
Eigen::VectorXd cycle_field_integrals(const GeodesicCycle& cycle, int dim, const FieldFn& field,
                                      const QuadratureSpec& quad) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
  for (const GeodesicArc& arc : cycle.arcs()) {
    if (arc.length() == 0.0) continue;
    total += arc.length() *
             adaptive_integrate_vec(
                 dim, [&](double s, Eigen::Ref<Eigen::VectorXd> out) { field(arc.eval(s), out); },
                 quad);
  }
  return total;
}

template <typename FieldFn>
Eigen::VectorXd smooth_field_integrals(const ParametricCurve& curve, int dim, const FieldFn& field,
                                       const QuadratureSpec& quad, double* length_out) {
  Eigen::VectorXd with_len = adaptive_integrate_vec(
      dim + 1,
      [&](double s, Eigen::Ref<Eigen::VectorXd> out) {
        double speed = curve.velocity(s).norm();
        field(curve.position(s), out.head(dim));
        out.head(dim) *= speed;
        out[dim] = speed;
      },
      quad);
  if (length_out) *length_out = with_len[dim];
  return with_len.head(dim);
}

DesignReport make_report(const std::vector<MultiIndex>& basis, const Eigen::VectorXd& integrals,
                         double length, int d, int t, double tol) {
  DesignReport report;
  report.degree = t;
  report.tolerance = tol;
  report.residuals.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    double residual = integrals[static_cast<Eigen::Index>(k)] / length - sphere_moment(basis[k], d);
    report.residuals.emplace_back(basis[k], residual);
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(residual));
  }
  report.is_design = report.max_abs_residual <= tol;
  return report;
}

}  // namespace

DesignReport verify_design(const GeodesicCycle& cycle, int t, double tol,
                           const QuadratureSpec& quad) {
  if (t < 0) throw std::invalid_argument("verify_design: t >= 0 required");
  const int d = cycle.ambient_dim() - 1;
  std::vector<MultiIndex> basis = monomial_basis(t, d);
  MonomialTable table(basis, t, d + 1);
  Eigen::VectorXd ints = cycle_field_integrals(
      cycle, static_cast<int>(basis.size()),
      [&](const Eigen::VectorXd& x, Eigen::Ref<Eigen::VectorXd> out) { table.eval(x, out); },
      quad);
  return make_report(basis, ints, cycle.length(), d, t, tol);
}

DesignReport verify_design(const ParametricCurve& curve, int t, double tol,
                           const QuadratureSpec& quad) {
  if (t < 0) throw std::invalid_argument("verify_design: t >= 0 required");
  if (!curve.closed()) throw std::invalid_argument("verify_design: curve must be closed");
  const int d = curve.ambient_dim() - 1;
  std::vector<MultiIndex> basis = monomial_basis(t, d);
  MonomialTable table(basis, t, d + 1);
  double length = 0.0;
  Eigen::VectorXd ints = smooth_field_integrals(
      curve, static_cast<int>(basis.size()),
      [&](const Eigen::VectorXd& x, Eigen::Ref<Eigen::VectorXd> out) { table.eval(x, out); },
      quad, &length);
  return make_report(basis, ints, length, d, t, tol);
}

namespace {

double wce_from_moments(const Eigen::VectorXd& moments, double length) {
  // layout l*l + l + m; drop l = 0
  double sum = 0.0;
  for (Eigen::Index k = 1; k < moments.size(); ++k) {
    double normalized = moments[k] / length;
    sum += normalized * normalized;
  }
  return std::sqrt(sum);
}

}  // namespace

double wce_moments(const GeodesicCycle& cycle, int t, const QuadratureSpec& quad) {
  if (cycle.ambient_dim() != 3)
    throw std::invalid_argument("wce_moments: ambient dimension 3 required");
  if (t < 1) throw std::invalid_argument("wce_moments: t >= 1 required");
  HarmonicEvaluator ev(t);
  Eigen::VectorXd moments = cycle_field_integrals(
      cycle, ev.count(),
      [&](const Eigen::VectorXd& x, Eigen::Ref<Eigen::VectorXd> out) {
        ev.eval(x[0], x[1], x[2], std::span<double>(out.data(), out.size()));
      },
      quad);
  return wce_from_moments(moments, cycle.length());
}

double wce_moments(const ParametricCurve& curve, int t, const QuadratureSpec& quad) {
  if (curve.ambient_dim() != 3)
    throw std::invalid_argument("wce_moments: ambient dimension 3 required");
  if (t < 1) throw std::invalid_argument("wce_moments: t >= 1 required");
  HarmonicEvaluator ev(t);
  double length = 0.0;
  Eigen::VectorXd moments = smooth_field_integrals(
      curve, ev.count(),
      [&](const Eigen::VectorXd& x, Eigen::Ref<Eigen::VectorXd> out) {
        ev.eval(x[0], x[1], x[2], std::span<double>(out.data(), out.size()));
      },
      quad, &length);
  return wce_from_moments(moments, length);
}

std::vector<double> wce_double_integral_terms(const GeodesicCycle& cycle, int t,
                                              const QuadratureSpec& quad) {
  if (cycle.ambient_dim() != 3)
    throw std::invalid_argument("wce_double_integral: ambient dimension 3 required");
  if (t < 1) throw std::invalid_argument("wce_double_integral: t >= 1 required");
  if (cycle.arc_count() > 60)
    throw std::invalid_argument("wce_double_integral: oracle guarded to <= 60 arcs");

  const GaussLegendreRule& rule = gauss_legendre(quad.nodes_per_segment);
  const int g = static_cast<int>(rule.nodes.size());

  // Flatten quadrature nodes over all arcs once.
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  for (const GeodesicArc& arc : cycle.arcs()) {
    if (arc.length() == 0.0) continue;
    for (int i = 0; i < g; ++i) {
      nodes.emplace_back(arc.eval(rule.nodes[i]));
      weights.push_back(rule.weights[i] * arc.length());
    }
  }
  std::vector<double> terms(t + 1, 0.0);
  std::vector<double> pl(t + 1);
  const double len2 = cycle.length() * cycle.length();
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      double ip = std::clamp(nodes[a].dot(nodes[b]), -1.0, 1.0);
      legendre_all(t, ip, pl);
      double w = weights[a] * weights[b];
      for (int l = 1; l <= t; ++l) terms[l] += w * pl[l];
    }
  std::vector<double> out(t);
  for (int l = 1; l <= t; ++l) out[l - 1] = (2.0 * l + 1.0) * terms[l] / len2;
  return out;
}

double wce_double_integral(const GeodesicCycle& cycle, int t, const QuadratureSpec& quad) {
  std::vector<double> terms = wce_double_integral_terms(cycle, t, quad);
  double sum = 0.0;
  for (double term : terms) sum += term;
  return std::sqrt(std::max(0.0, sum));
}

MzIdentityResult design_mz_identity(const GeodesicCycle& cycle, int t, int num_samples,
                                    std::uint64_t seed, double design_tol,
                                    const QuadratureSpec& quad) {
  if (cycle.ambient_dim() != 3)
    throw std::invalid_argument("design_mz_identity: ambient dimension 3 required");
  MzIdentityResult result;
  DesignReport report = verify_design(cycle, 2 * t, design_tol, quad);
  result.requirement_met = report.is_design;
  if (!result.requirement_met) {
    result.max_rel_error = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  const double length = cycle.length();
  for (int i = 0; i < num_samples; ++i) {
    HarmonicPolynomial f = random_harmonic(t, seed + static_cast<std::uint64_t>(i));
    double norm2 = f.coeffs.squaredNorm();
    if (norm2 < 1e-28) continue;  // rejected draw (essentially impossible)
    double path = integrate_cycle(
        cycle,
        [&](const Eigen::VectorXd& x) {
          double v = f.eval(Eigen::Vector3d(x[0], x[1], x[2]));
          return v * v;
        },
        quad);
    result.max_rel_error = std::max(result.max_rel_error, std::abs(path / length / norm2 - 1.0));
  }
  return result;
}

}  // namespace geocycle
