#include <Eigen/Geometry>

#include "geocycle/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace geocycle {

namespace {
constexpr double kAntipodalTol = 1e-12;
}

SpherePoint::SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3)
    throw std::invalid_argument("SpherePoint: ambient dimension must be at least 3 (d >= 2)");
  double norm = coords_.norm();
  if (!(norm > 1e-14) || !std::isfinite(norm))
    throw std::invalid_argument("SpherePoint: cannot normalize a (near-)zero vector");
  coords_ /= norm;
}

double distance(const SpherePoint& x, const SpherePoint& y) {
  if (x.ambient_dim() != y.ambient_dim())
    throw std::invalid_argument("distance: dimension mismatch");
  double ip = x.coords().dot(y.coords());
  return std::acos(std::clamp(ip, -1.0, 1.0));
}

GeodesicArc::GeodesicArc(SpherePoint start, SpherePoint end)
    : start_(std::move(start)), end_(std::move(end)) {
  if (start_.ambient_dim() != end_.ambient_dim())
    throw std::invalid_argument("GeodesicArc: dimension mismatch");
  double ip = std::clamp(start_.coords().dot(end_.coords()), -1.0, 1.0);
  if (1.0 + ip < kAntipodalTol)
    throw std::invalid_argument("GeodesicArc: antipodal endpoints have no canonical geodesic");
  length_ = std::acos(ip);
  if (length_ < kAntipodalTol) {
    length_ = 0.0;
    ortho_ = Eigen::VectorXd::Zero(start_.ambient_dim());
  } else {
    ortho_ = (end_.coords() - ip * start_.coords()) / std::sin(length_);
  }
}

Eigen::VectorXd GeodesicArc::eval(double s) const {
  if (length_ == 0.0) return start_.coords();
  return std::cos(s * length_) * start_.coords() + std::sin(s * length_) * ortho_;
}

Eigen::VectorXd GeodesicArc::velocity(double s) const {
  if (length_ == 0.0) return Eigen::VectorXd::Zero(start_.ambient_dim());
  return length_ * (-std::sin(s * length_) * start_.coords() + std::cos(s * length_) * ortho_);
}

GeodesicCycle::GeodesicCycle(std::vector<SpherePoint> control_points)
    : points_(std::move(control_points)) {
  if (points_.size() < 2) throw std::invalid_argument("GeodesicCycle: need at least 2 points");
  const int dim = points_.front().ambient_dim();
  for (const auto& p : points_)
    if (p.ambient_dim() != dim) throw std::invalid_argument("GeodesicCycle: mixed dimensions");
  length_ = 0.0;
  arcs_.reserve(points_.size());
  for (std::size_t j = 0; j < points_.size(); ++j) {
    arcs_.emplace_back(points_[j], points_[(j + 1) % points_.size()]);
    length_ += arcs_.back().length();
  }
  if (!(length_ > 0)) throw std::invalid_argument("GeodesicCycle: total length must be positive");
}

ParametricCurve::ParametricCurve(int ambient_dim, Map position, Map velocity, Map acceleration,
                                 bool closed)
    : ambient_dim_(ambient_dim),
      position_(std::move(position)),
      velocity_(std::move(velocity)),
      acceleration_(std::move(acceleration)),
      closed_(closed) {
  if (ambient_dim_ < 3) throw std::invalid_argument("ParametricCurve: ambient dimension < 3");
  if (!position_ || !velocity_) throw std::invalid_argument("ParametricCurve: position and velocity required");
  if (closed_ && (position_(0.0) - position_(1.0)).norm() > 1e-10)
    throw std::invalid_argument("ParametricCurve: closed curve must satisfy gamma(0) = gamma(1)");
  for (int k = 0; k <= 16; ++k) {
    double s = k / 16.0;
    if (std::abs(position_(s).norm() - 1.0) > 1e-10)
      throw std::invalid_argument("ParametricCurve: position leaves the sphere");
  }
}

Eigen::VectorXd ParametricCurve::acceleration(double s) const {
  if (!acceleration_) throw std::logic_error("ParametricCurve: acceleration map not supplied");
  return acceleration_(s);
}

double cycle_length(const GeodesicCycle& cycle) { return cycle.length(); }

double integrate_cycle(const GeodesicCycle& cycle, const ScalarField& f,
                       const QuadratureSpec& quad) {
  double total = 0.0;
  for (const GeodesicArc& arc : cycle.arcs()) {
    if (arc.length() == 0.0) continue;
    total += arc.length() * adaptive_integrate([&](double s) { return f(arc.eval(s)); }, quad);
  }
  return total;
}

double integrate_smooth(const ParametricCurve& curve, const ScalarField& f,
                        const QuadratureSpec& quad) {
  return adaptive_integrate(
      [&](double s) { return f(curve.position(s)) * curve.velocity(s).norm(); }, quad);
}

namespace {

// Control points with consecutive duplicates (and the closing duplicate) removed.
std::vector<SpherePoint> merged_points(const GeodesicCycle& cycle) {
  std::vector<SpherePoint> pts;
  for (const auto& p : cycle.control_points()) {
    if (!pts.empty() && (pts.back().coords() - p.coords()).norm() < 1e-12) continue;
    pts.push_back(p);
  }
  while (pts.size() > 1 && (pts.front().coords() - pts.back().coords()).norm() < 1e-12)
    pts.pop_back();
  return pts;
}

}  // namespace

std::vector<double> turning_angles(const GeodesicCycle& cycle) {
  if (cycle.ambient_dim() != 3)
    throw std::invalid_argument("turning_angles: defined on S^2 (ambient dimension 3)");
  std::vector<SpherePoint> pts = merged_points(cycle);
  const std::size_t n = pts.size();
  if (n < 2) throw std::invalid_argument("turning_angles: degenerate cycle");
  std::vector<double> angles(n);
  for (std::size_t j = 0; j < n; ++j) {
    GeodesicArc in(pts[(j + n - 1) % n], pts[j]);
    GeodesicArc out(pts[j], pts[(j + 1) % n]);
    if (in.length() == 0.0 || out.length() == 0.0)
      throw std::invalid_argument("turning_angles: zero-length arc after merging duplicates");
    Eigen::Vector3d tin = in.velocity(1.0).normalized();
    Eigen::Vector3d tout = out.velocity(0.0).normalized();
    Eigen::Vector3d x = pts[j].coords();
    angles[j] = std::atan2(x.dot(tin.cross(tout)), tin.dot(tout));
  }
  return angles;
}

double enclosed_area(const GeodesicCycle& cycle) {
  std::vector<double> angles = turning_angles(cycle);
  double total = 0.0;
  for (double a : angles) total += a;
  return 0.5 - total / (4.0 * M_PI);
}

double enclosed_area(const ParametricCurve& curve, const QuadratureSpec& quad) {
  if (curve.ambient_dim() != 3)
    throw std::invalid_argument("enclosed_area: defined on S^2 (ambient dimension 3)");
  if (!curve.has_acceleration())
    throw std::invalid_argument("enclosed_area: smooth curve needs an acceleration map");
  double total_kg = adaptive_integrate(
      [&](double s) {
        Eigen::Vector3d p = curve.position(s);
        Eigen::Vector3d v = curve.velocity(s);
        Eigen::Vector3d a = curve.acceleration(s);
        return a.dot(p.cross(v)) / v.squaredNorm();
      },
      quad);
  return 0.5 - total_kg / (4.0 * M_PI);
}

}  // namespace geocycle
