#include <Eigen/Geometry>

#include "geocycle/polynomials.hpp"

#include "geocycle/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace geocycle {

int MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

bool MultiIndex::any_odd() const {
  for (int e : exponents)
    if (e % 2) return true;
  return false;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) os << ',';
    os << exponents[i];
  }
  return os.str();
}

namespace {

void enumerate_degree(int vars, int deg, std::vector<int>& prefix,
                      std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == vars - 1) {
    prefix.push_back(deg);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int e = deg; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_degree(vars, deg - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int t, int d) {
  if (t < 0 || d < 2) throw std::invalid_argument("monomial_basis: t >= 0 and d >= 2 required");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  for (int deg = 0; deg <= t; ++deg) enumerate_degree(d + 1, deg, prefix, out);
  return out;
}

double sphere_moment(const MultiIndex& alpha, int d) {
  if (d < 2) throw std::invalid_argument("sphere_moment: d >= 2 required");
  if (static_cast<int>(alpha.exponents.size()) != d + 1)
    throw std::invalid_argument("sphere_moment: exponent count must be d+1");
  if (alpha.any_odd()) return 0.0;
  const double n = d + 1;
  double log_m = std::lgamma(n / 2.0) - std::lgamma((alpha.degree() + n) / 2.0);
  for (int e : alpha.exponents)
    if (e > 0) log_m += std::lgamma((e + 1) / 2.0) - std::lgamma(0.5);
  return std::exp(log_m);
}

int MonomialPolynomial::degree() const {
  int deg = 0;
  for (const auto& [alpha, c] : terms) deg = std::max(deg, alpha.degree());
  return deg;
}

double MonomialPolynomial::eval(const Eigen::VectorXd& x) const {
  double sum = 0.0;
  for (const auto& [alpha, c] : terms) {
    double m = c;
    for (std::size_t i = 0; i < alpha.exponents.size(); ++i)
      for (int e = 0; e < alpha.exponents[i]; ++e) m *= x[static_cast<Eigen::Index>(i)];
    sum += m;
  }
  return sum;
}

double legendre_eval(int l, double x) {
  if (l < 0) throw std::invalid_argument("legendre_eval: l >= 0 required");
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < l; ++k) {
    double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_all(int lmax, double x, std::span<double> out) {
  out[0] = 1.0;
  if (lmax == 0) return;
  out[1] = x;
  for (int l = 1; l < lmax; ++l) out[l + 1] = ((2 * l + 1) * x * out[l] - l * out[l - 1]) / (l + 1);
}

// Normalized associated Legendre Q_l^m = sqrt((2l+1)(l-m)!/(l+m)!) P_l^m,
// so that Y_{l,0} = Q_l^0(cos th) and Y_{l,+-m} = sqrt(2) Q_l^m(cos th) {cos,sin}(m phi)
// are orthonormal under the normalized measure. Upward recurrence in l per m.
HarmonicEvaluator::HarmonicEvaluator(int t) : t_(t) {
  if (t < 0) throw std::invalid_argument("HarmonicEvaluator: t >= 0 required");
  diag_.resize(t + 1);
  lift_.resize(t + 1);
  rec_a_.assign((t + 1) * (t + 1), 0.0);
  for (int m = 1; m <= t; ++m) diag_[m] = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  for (int m = 0; m <= t; ++m) lift_[m] = std::sqrt(2.0 * m + 3.0);
  for (int m = 0; m <= t; ++m)
    for (int l = m + 2; l <= t; ++l)
      rec_a_[l * (t_ + 1) + m] =
          std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
}

void HarmonicEvaluator::eval(double x, double y, double z, std::span<double> out) const {
  const double rxy = std::hypot(x, y);
  const double cph = rxy > 0 ? x / rxy : 1.0;
  const double sph = rxy > 0 ? y / rxy : 0.0;
  const double st = rxy;  // sin(theta) for a unit vector
  const double root2 = std::sqrt(2.0);

  double qmm = 1.0;           // Q_m^m
  double cm = 1.0, sm = 0.0;  // cos(m phi), sin(m phi)
  for (int m = 0; m <= t_; ++m) {
    if (m > 0) {
      qmm *= diag_[m] * st;
      double cn = cm * cph - sm * sph;
      sm = sm * cph + cm * sph;
      cm = cn;
    }
    const double azc = m == 0 ? 1.0 : root2 * cm;
    const double azs = root2 * sm;
    auto emit = [&](int l, double q) {
      out[index(l, m)] = q * azc;
      if (m > 0) out[index(l, -m)] = q * azs;
    };
    emit(m, qmm);
    if (m == t_) break;
    double q2 = qmm;                    // Q_{l-2}^m
    double q1 = lift_[m] * z * qmm;     // Q_{l-1}^m, a_{m+1}^m = sqrt(2m+3)
    emit(m + 1, q1);
    double a_prev = lift_[m];
    for (int l = m + 2; l <= t_; ++l) {
      double a = rec_a_[l * (t_ + 1) + m];
      double q = a * (z * q1 - q2 / a_prev);
      emit(l, q);
      q2 = q1;
      q1 = q;
      a_prev = a;
    }
  }
}

void HarmonicEvaluator::eval(const Eigen::Vector3d& p, std::span<double> out) const {
  eval(p.x(), p.y(), p.z(), out);
}

double sh_eval(int l, int m, const Eigen::Vector3d& p) {
  if (std::abs(m) > l) throw std::invalid_argument("sh_eval: |m| <= l required");
  HarmonicEvaluator ev(l);
  std::vector<double> buf(ev.count());
  ev.eval(p, buf);
  return buf[HarmonicEvaluator::index(l, m)];
}

double HarmonicPolynomial::eval(const Eigen::Vector3d& p) const {
  HarmonicEvaluator ev(degree);
  std::vector<double> buf(ev.count());
  ev.eval(p, buf);
  double sum = 0.0;
  for (int k = 0; k < coeffs.size(); ++k) sum += coeffs[k] * buf[k];
  return sum;
}

namespace {

// Uniform double in (0,1] from the top 53 bits; portable across standard libraries.
double uniform01(std::mt19937_64& rng) { return ((rng() >> 11) + 1.0) * 0x1.0p-53; }

}  // namespace

namespace detail {

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace detail

HarmonicPolynomial random_harmonic(int t, std::uint64_t seed) {
  if (t < 0) throw std::invalid_argument("random_harmonic: t >= 0 required");
  std::mt19937_64 rng(seed);
  HarmonicPolynomial h;
  h.degree = t;
  h.coeffs.resize((t + 1) * (t + 1));
  for (int k = 0; k < h.coeffs.size(); ++k) h.coeffs[k] = detail::gaussian(rng);
  return h;
}

double sphere_lp_norm(const SphereField& f, double p, int resolution) {
  if (p < 1) throw std::invalid_argument("sphere_lp_norm: p >= 1 required");
  if (std::isinf(p)) {
    const int K = std::max(resolution, 24);
    struct Cand {
      double value;
      Eigen::Vector3d point;
    };
    std::vector<Cand> top;
    auto offer = [&](double v, const Eigen::Vector3d& pt) {
      if (top.size() < 24) {
        top.push_back({v, pt});
        return;
      }
      auto worst = std::min_element(top.begin(), top.end(),
                                    [](const Cand& a, const Cand& b) { return a.value < b.value; });
      if (v > worst->value) *worst = {v, pt};
    };
    for (int i = 0; i <= K; ++i) {
      double th = M_PI * i / K;
      double st = std::sin(th), ct = std::cos(th);
      int M = (i == 0 || i == K) ? 1 : 2 * K;
      for (int j = 0; j < M; ++j) {
        double ph = 2.0 * M_PI * j / M;
        Eigen::Vector3d pt(st * std::cos(ph), st * std::sin(ph), ct);
        offer(std::abs(f(pt)), pt);
      }
    }
    double best = 0.0;
    for (auto& cand : top) {
      Eigen::Vector3d c = cand.point;
      double v = cand.value;
      double r = M_PI / K;
      for (int lvl = 0; lvl < 6; ++lvl) {
        Eigen::Vector3d u = c.unitOrthogonal();
        Eigen::Vector3d w = c.cross(u);
        for (int a = -2; a <= 2; ++a)
          for (int b = -2; b <= 2; ++b) {
            Eigen::Vector3d q = (c + (r * a / 2.0) * u + (r * b / 2.0) * w).normalized();
            double fv = std::abs(f(q));
            if (fv > v) {
              v = fv;
              c = q;
            }
          }
        r /= 3.0;
      }
      best = std::max(best, v);
    }
    return best;
  }
  const int K = std::max(resolution, 4);
  const GaussLegendreRule& rule = gauss_legendre(K);
  const int M = 2 * K;
  double sum = 0.0;
  for (int i = 0; i < K; ++i) {
    double u = 2.0 * rule.nodes[i] - 1.0;  // cos(theta) in (-1,1)
    double st = std::sqrt(std::max(0.0, 1.0 - u * u));
    double ring = 0.0;
    for (int j = 0; j < M; ++j) {
      double ph = 2.0 * M_PI * j / M;
      ring += std::pow(std::abs(f(Eigen::Vector3d(st * std::cos(ph), st * std::sin(ph), u))), p);
    }
    sum += rule.weights[i] * ring / M;
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace geocycle
