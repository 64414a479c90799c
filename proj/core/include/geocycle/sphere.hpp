#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "geocycle/quadrature.hpp"

namespace geocycle {

/// A point on the unit sphere S^d embedded in R^{d+1}, d >= 2.
/// Coordinates are renormalized on construction; a near-zero vector is rejected.
class SpherePoint {
 public:
  explicit SpherePoint(Eigen::VectorXd coords);

  const Eigen::VectorXd& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  int sphere_dim() const { return ambient_dim() - 1; }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Eigen::VectorXd coords_;
};

/// Geodesic distance arccos<x,y>, with the inner product clamped to [-1,1].
double distance(const SpherePoint& x, const SpherePoint& y);

/// Great-circle arc from start to end, parametrized over [0,1] with constant
/// speed equal to its length. Antipodal endpoints are rejected (no canonical
/// geodesic); coincident endpoints give a zero-length constant arc.
class GeodesicArc {
 public:
  GeodesicArc(SpherePoint start, SpherePoint end);

  const SpherePoint& start() const { return start_; }
  const SpherePoint& end() const { return end_; }
  double length() const { return length_; }

  /// gamma(s) = sin((1-s)L)/sin(L) * start + sin(sL)/sin(L) * end.
  Eigen::VectorXd eval(double s) const;
  /// d/ds of eval; norm equals length() for every s.
  Eigen::VectorXd velocity(double s) const;

 private:
  SpherePoint start_, end_;
  double length_;
  Eigen::VectorXd ortho_;  // unit vector completing {start} to a frame of the arc plane
};

/// Closed piecewise-geodesic curve through an ordered list of control points
/// (x_{n+1} = x_1). Repeated control points are allowed and contribute
/// zero-length arcs; consecutive antipodal points are rejected.
class GeodesicCycle {
 public:
  explicit GeodesicCycle(std::vector<SpherePoint> control_points);

  const std::vector<SpherePoint>& control_points() const { return points_; }
  int ambient_dim() const { return points_.front().ambient_dim(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const GeodesicArc& arc(std::size_t j) const { return arcs_[j]; }
  const std::vector<GeodesicArc>& arcs() const { return arcs_; }
  double length() const { return length_; }

 private:
  std::vector<SpherePoint> points_;
  std::vector<GeodesicArc> arcs_;
  double length_;
};

/// Smooth closed curve on S^d given by analytic position/velocity maps over
/// [0,1]; acceleration is optional and only needed for curvature (enclosed_area).
class ParametricCurve {
 public:
  using Map = std::function<Eigen::VectorXd(double)>;

  ParametricCurve(int ambient_dim, Map position, Map velocity, Map acceleration = nullptr,
                  bool closed = true);

  int ambient_dim() const { return ambient_dim_; }
  bool closed() const { return closed_; }
  bool has_acceleration() const { return static_cast<bool>(acceleration_); }
  Eigen::VectorXd position(double s) const { return position_(s); }
  Eigen::VectorXd velocity(double s) const { return velocity_(s); }
  Eigen::VectorXd acceleration(double s) const;

 private:
  int ambient_dim_;
  Map position_, velocity_, acceleration_;
  bool closed_;
};

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

double cycle_length(const GeodesicCycle& cycle);

/// Path integral sum_j l_j * int_0^1 f(arc_j(s)) ds, each arc integrated by
/// adaptive Gauss-Legendre refinement under `quad`.
double integrate_cycle(const GeodesicCycle& cycle, const ScalarField& f,
                       const QuadratureSpec& quad = {});

/// Path integral int_0^1 f(gamma(s)) ||gamma'(s)|| ds, adaptively refined.
double integrate_smooth(const ParametricCurve& curve, const ScalarField& f,
                        const QuadratureSpec& quad = {});

/// Exterior angle at each control point of a cycle on S^2 (ambient dimension 3):
/// the signed angle from the incoming to the outgoing unit tangent in the tangent
/// plane, sign taken from <x_j, t_in x t_out>. Consecutive duplicate control
/// points are merged before the angles are formed.
std::vector<double> turning_angles(const GeodesicCycle& cycle);

/// Gauss-Bonnet enclosed area (normalized measure, |S^2| = 1) of a simple closed
/// curve on S^2: 1/2 - total geodesic curvature / (4 pi). Geodesic arcs carry
/// curvature only at the corners, so the cycle overload uses turning angles.
double enclosed_area(const GeodesicCycle& cycle);
double enclosed_area(const ParametricCurve& curve, const QuadratureSpec& quad = {});

}  // namespace geocycle
