#include "geocycle/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace geocycle {

QuadratureError::QuadratureError(double coarse, double fine)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "quadrature did not converge: successive estimates " << coarse << " and " << fine;
        return os.str();
      }()),
      coarse_(coarse),
      fine_(fine) {}

namespace {

// Nodes of the n-point rule on [-1,1] by Newton iteration on P_n, then mapped
// to [0,1]. Symmetric counterpart filled by reflection.
GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 1; l < n; ++l) {
        double p2 = ((2 * l + 1) * x * p1 - l * p0) / (l + 1);
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = 0.5 * (1.0 - x);  // descending x -> ascending node
    rule.weights[i] = 0.5 * w;
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: need at least 2 nodes");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double adaptive_integrate(const std::function<double(double)>& g, const QuadratureSpec& spec) {
  if (spec.nodes_per_segment < 2 || spec.tolerance <= 0 || spec.max_refinements < 1)
    throw std::invalid_argument("adaptive_integrate: invalid QuadratureSpec");
  const GaussLegendreRule& rule = gauss_legendre(spec.nodes_per_segment);
  auto level = [&](int r) {
    const int panels = 1 << r;
    const double h = 1.0 / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p)
      for (int i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * g((p + rule.nodes[i]) * h);
    return sum * h;
  };
  double prev = level(0);
  for (int r = 1; r <= spec.max_refinements; ++r) {
    double cur = level(r);
    if (std::abs(cur - prev) < spec.tolerance) return cur;
    prev = cur;
  }
  throw QuadratureError(prev, level(spec.max_refinements));
}

Eigen::VectorXd adaptive_integrate_vec(
    int dim, const std::function<void(double, Eigen::Ref<Eigen::VectorXd>)>& g,
    const QuadratureSpec& spec) {
  if (spec.nodes_per_segment < 2 || spec.tolerance <= 0 || spec.max_refinements < 1)
    throw std::invalid_argument("adaptive_integrate_vec: invalid QuadratureSpec");
  const GaussLegendreRule& rule = gauss_legendre(spec.nodes_per_segment);
  Eigen::VectorXd buf(dim);
  auto level = [&](int r) {
    const int panels = 1 << r;
    const double h = 1.0 / panels;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
    for (int p = 0; p < panels; ++p)
      for (int i = 0; i < rule.nodes.size(); ++i) {
        g((p + rule.nodes[i]) * h, buf);
        sum += rule.weights[i] * buf;
      }
    return Eigen::VectorXd(sum * h);
  };
  Eigen::VectorXd prev = level(0);
  for (int r = 1; r <= spec.max_refinements; ++r) {
    Eigen::VectorXd cur = level(r);
    if ((cur - prev).cwiseAbs().maxCoeff() < spec.tolerance) return cur;
    prev = cur;
  }
  double c = prev.cwiseAbs().maxCoeff();
  throw QuadratureError(c, level(spec.max_refinements).cwiseAbs().maxCoeff());
}

}  // namespace geocycle
