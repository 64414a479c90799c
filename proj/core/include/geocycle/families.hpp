#pragma once

#include <string>
#include <variant>
#include <vector>

#include "geocycle/sphere.hpp"

namespace geocycle {

enum class Family { SmoothS2, OddSphere2, OddSphere3, GeoTetra, GeoOcta, GeoCube, Platonic };
enum class Solid { Tetrahedron, Octahedron, Cube, Icosahedron, Dodecahedron };

/// Curve family reference, parsed from CLI strings such as
/// "smooth:t=2,a=0.7778", "odd3:m=2", "geo-tetra:a=0.47367",
/// "geo-cube:alpha=0.38,beta=0.77", "platonic:dodeca".
struct FamilySpec {
  Family family = Family::Platonic;
  std::vector<double> params;
  Solid solid = Solid::Tetrahedron;

  static FamilySpec parse(const std::string& text);
  std::string to_string() const;
};

/// gamma^{(t,a)}(s) = (a cos(2 pi s) + (1-a) cos(2 pi (2t-1) s),
///                     a sin(2 pi s) - (1-a) sin(2 pi (2t-1) s),
///                     2 sqrt(a(1-a)) sin(2 pi t s)),  t in {1,2,3}, a in [0,1].
ParametricCurve smooth_s2(int t, double a);

/// Curves in S^{2m-1} built from circle blocks c(k s)/sqrt(m): kind 2 uses
/// frequencies 1..m, kind 3 uses 1,3,...,2m-1.
ParametricCurve odd_sphere(int kind, int m);

/// Parameter s-values of the curve vertices (local extrema of geodesic
/// curvature) for smooth_s2: s_j = (2j-1)/(4t), j = 1..2t.
std::vector<double> smooth_s2_vertex_params(int t);

/// One-parameter tetrahedral family Gamma^{(2,a)}, a in (0, pi/2]:
/// x1 = (sin a, 0, cos a), x2 = (0, sin a, -cos a), x3, x4 their reflections.
GeodesicCycle geo_tetra(double a);

/// One-parameter octahedral family Gamma^{(3,a)}, a in (0, pi/2]: y1, y2, y3
/// as printed and y_{3+i} = -y_i (the cycle is antipodal).
GeodesicCycle geo_octa(double a);

/// Two-parameter cube family gamma^{(alpha,beta)}: 0 < alpha < beta,
/// alpha^2 + beta^2 < 1, q = sqrt(1 - alpha^2 - beta^2).
GeodesicCycle geo_cube(double alpha, double beta);

/// Unit-sphere vertices of a Platonic solid in the repository's fixed orientation.
std::vector<SpherePoint> platonic_vertices(Solid solid);

/// The fixed Hamiltonian vertex order used by platonic_cycle.
std::vector<int> platonic_hamiltonian_order(Solid solid);

/// Spherical Hamiltonian cycle of a Platonic solid (every vertex exactly once,
/// consecutive vertices joined by solid edges).
GeodesicCycle platonic_cycle(Solid solid);

using CurveVariant = std::variant<GeodesicCycle, ParametricCurve>;

/// Instantiate the curve a FamilySpec refers to.
CurveVariant build_curve(const FamilySpec& spec);

}  // namespace geocycle
