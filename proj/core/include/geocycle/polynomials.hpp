#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace geocycle {

namespace detail {
/// Standard normal deviate with an explicit bit mapping, so that seeded draws
/// are identical across standard-library implementations.
double gaussian(std::mt19937_64& rng);
}  // namespace detail

/// Exponent vector of a monomial x^alpha in d+1 ambient variables.
struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  bool any_odd() const;
  std::string to_string() const;  // "i,j,k"
};

/// All multi-indices with |alpha| <= t in d+1 variables, ordered by total degree
/// then lexicographically. Count is binom(t+d+1, d+1).
std::vector<MultiIndex> monomial_basis(int t, int d);

/// Exact moment int_{S^d} x^alpha under the normalized measure (int 1 = 1).
/// Odd multi-indices return exactly 0 without floating computation; even ones
/// use the Gamma-product formula evaluated through log-Gamma differences.
double sphere_moment(const MultiIndex& alpha, int d);

/// Sparse polynomial in monomial form.
struct MonomialPolynomial {
  std::vector<std::pair<MultiIndex, double>> terms;

  int degree() const;
  double eval(const Eigen::VectorXd& x) const;
};

/// Legendre polynomial P_l(x), normalized by P_l(1) = 1, by the three-term
/// recurrence (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}.
double legendre_eval(int l, double x);

/// P_0(x)..P_lmax(x) in one recurrence pass.
void legendre_all(int lmax, double x, std::span<double> out);

/// Real spherical harmonics on S^2, orthonormal under the normalized measure,
/// so that the addition formula sum_m Y_{l,m}(x) Y_{l,m}(y) = (2l+1) P_l(<x,y>)
/// holds exactly as written. Values for all l <= t are produced in one pass;
/// index layout is l*l + l + m.
class HarmonicEvaluator {
 public:
  explicit HarmonicEvaluator(int t);

  int degree() const { return t_; }
  int count() const { return (t_ + 1) * (t_ + 1); }
  static int index(int l, int m) { return l * l + l + m; }

  void eval(double x, double y, double z, std::span<double> out) const;
  void eval(const Eigen::Vector3d& p, std::span<double> out) const;

 private:
  int t_;
  std::vector<double> diag_;    // Q_m^m = diag_[m] * sin(theta)^m recursive factor
  std::vector<double> lift_;    // Q_{m+1}^m = lift_[m] * x * Q_m^m
  std::vector<double> rec_a_;   // packed a_l^m = sqrt((4l^2-1)/(l^2-m^2))
};

/// Single value Y_{l,m}(p); |m| <= l, ambient dimension 3.
double sh_eval(int l, int m, const Eigen::Vector3d& p);

/// Polynomial in the real orthonormal harmonic basis up to degree t.
/// L^2(S^2) norm equals the Euclidean norm of the coefficient vector.
struct HarmonicPolynomial {
  int degree = 0;
  Eigen::VectorXd coeffs;  // size (t+1)^2, layout HarmonicEvaluator::index

  double eval(const Eigen::Vector3d& p) const;
  double l2_norm() const { return coeffs.norm(); }
};

/// I.i.d. standard normal coefficients for all (l,m) with l <= t; deterministic
/// for a fixed seed across platforms.
HarmonicPolynomial random_harmonic(int t, std::uint64_t seed);

using SphereField = std::function<double(const Eigen::Vector3d&)>;

/// L^p norm of f on S^2 under the normalized measure. For finite p a tensor rule
/// (Gauss-Legendre in cos(theta) x uniform in phi) with `resolution` nodes per
/// axis; for p = inf the maximum over a grid of that resolution, refined once
/// around the best candidates.
double sphere_lp_norm(const SphereField& f, double p, int resolution);

}  // namespace geocycle
