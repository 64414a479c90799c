#include "geocycle/families.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace geocycle {

namespace {

constexpr double kPi = M_PI;

Eigen::VectorXd vec3(double x, double y, double z) {
  Eigen::Vector3d v(x, y, z);
  return v;
}

}  // namespace

ParametricCurve smooth_s2(int t, double a) {
  if (t < 1 || t > 3) throw std::invalid_argument("smooth_s2: t in {1,2,3}");
  if (a < 0.0 || a > 1.0) throw std::invalid_argument("smooth_s2: a in [0,1]");
  const double w1 = 2.0 * kPi;
  const double w2 = 2.0 * kPi * (2 * t - 1);
  const double w3 = 2.0 * kPi * t;
  const double b = 1.0 - a;
  const double c = 2.0 * std::sqrt(a * (1.0 - a));
  auto pos = [=](double s) {
    return vec3(a * std::cos(w1 * s) + b * std::cos(w2 * s),
                a * std::sin(w1 * s) - b * std::sin(w2 * s), c * std::sin(w3 * s));
  };
  auto vel = [=](double s) {
    return vec3(-w1 * a * std::sin(w1 * s) - w2 * b * std::sin(w2 * s),
                w1 * a * std::cos(w1 * s) - w2 * b * std::cos(w2 * s),
                w3 * c * std::cos(w3 * s));
  };
  auto acc = [=](double s) {
    return vec3(-w1 * w1 * a * std::cos(w1 * s) - w2 * w2 * b * std::cos(w2 * s),
                -w1 * w1 * a * std::sin(w1 * s) + w2 * w2 * b * std::sin(w2 * s),
                -w3 * w3 * c * std::sin(w3 * s));
  };
  return ParametricCurve(3, pos, vel, acc, /*closed=*/true);
}

std::vector<double> smooth_s2_vertex_params(int t) {
  std::vector<double> out;
  for (int j = 1; j <= 2 * t; ++j) out.push_back((2.0 * j - 1.0) / (4.0 * t));
  return out;
}

ParametricCurve odd_sphere(int kind, int m) {
  if (kind != 2 && kind != 3) throw std::invalid_argument("odd_sphere: kind in {2,3}");
  if (m < 2) throw std::invalid_argument("odd_sphere: m >= 2");
  std::vector<double> freqs;
  for (int i = 0; i < m; ++i) freqs.push_back(kind == 2 ? i + 1 : 2 * i + 1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  auto pos = [=](double s) {
    Eigen::VectorXd v(2 * m);
    for (int i = 0; i < m; ++i) {
      double w = 2.0 * kPi * freqs[i] * s;
      v[2 * i] = scale * std::cos(w);
      v[2 * i + 1] = scale * std::sin(w);
    }
    return v;
  };
  auto vel = [=](double s) {
    Eigen::VectorXd v(2 * m);
    for (int i = 0; i < m; ++i) {
      double wk = 2.0 * kPi * freqs[i];
      v[2 * i] = -scale * wk * std::sin(wk * s);
      v[2 * i + 1] = scale * wk * std::cos(wk * s);
    }
    return v;
  };
  auto acc = [=](double s) {
    Eigen::VectorXd v(2 * m);
    for (int i = 0; i < m; ++i) {
      double wk = 2.0 * kPi * freqs[i];
      v[2 * i] = -scale * wk * wk * std::cos(wk * s);
      v[2 * i + 1] = -scale * wk * wk * std::sin(wk * s);
    }
    return v;
  };
  return ParametricCurve(2 * m, pos, vel, acc, /*closed=*/true);
}

GeodesicCycle geo_tetra(double a) {
  if (!(a > 0.0 && a <= kPi / 2.0)) throw std::invalid_argument("geo_tetra: a in (0, pi/2]");
  const double sa = std::sin(a), ca = std::cos(a);
  std::vector<SpherePoint> pts;
  pts.emplace_back(vec3(sa, 0, ca));
  pts.emplace_back(vec3(0, sa, -ca));
  pts.emplace_back(vec3(-sa, 0, ca));
  pts.emplace_back(vec3(0, -sa, -ca));
  return GeodesicCycle(std::move(pts));
}

GeodesicCycle geo_octa(double a) {
  if (!(a > 0.0 && a <= kPi / 2.0)) throw std::invalid_argument("geo_octa: a in (0, pi/2]");
  const double sa = std::sin(a), ca = std::cos(a);
  const double h = std::sqrt(3.0) / 2.0;
  Eigen::Vector3d y1(sa, 0, ca), y2(sa / 2.0, h * sa, -ca), y3(-sa / 2.0, h * sa, ca);
  std::vector<SpherePoint> pts;
  pts.emplace_back(y1);
  pts.emplace_back(y2);
  pts.emplace_back(y3);
  pts.emplace_back(-y1);
  pts.emplace_back(-y2);
  pts.emplace_back(-y3);
  return GeodesicCycle(std::move(pts));
}

GeodesicCycle geo_cube(double alpha, double beta) {
  // alpha == beta is admitted: it gives the Hamiltonian cube cycle itself.
  if (!(alpha > 0.0 && alpha <= beta && alpha * alpha + beta * beta < 1.0))
    throw std::invalid_argument("geo_cube: need 0 < alpha <= beta and alpha^2 + beta^2 < 1");
  const double q = std::sqrt(1.0 - alpha * alpha - beta * beta);
  std::vector<SpherePoint> pts;
  pts.emplace_back(vec3(alpha, beta, q));
  pts.emplace_back(vec3(beta, alpha, -q));
  pts.emplace_back(vec3(-beta, alpha, -q));
  pts.emplace_back(vec3(-alpha, beta, q));
  pts.emplace_back(vec3(-alpha, -beta, q));
  pts.emplace_back(vec3(-beta, -alpha, -q));
  pts.emplace_back(vec3(beta, -alpha, -q));
  pts.emplace_back(vec3(alpha, -beta, q));
  return GeodesicCycle(std::move(pts));
}

namespace {

// Fixed vertex tables (unit sphere after normalization) and Hamiltonian vertex
// orders. The orientations: tetrahedron/cube from (+-1,+-1,+-1) enumerated with
// x outermost; octahedron as the coordinate axes; icosahedron/dodecahedron from
// the usual golden-ratio coordinates.
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

std::vector<Eigen::Vector3d> raw_vertices(Solid solid) {
  std::vector<Eigen::Vector3d> v;
  switch (solid) {
    case Solid::Tetrahedron:
      v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      break;
    case Solid::Octahedron:
      v = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
      break;
    case Solid::Cube:
      for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
          for (double sz : {1.0, -1.0}) v.emplace_back(sx, sy, sz);
      break;
    case Solid::Icosahedron:
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) v.emplace_back(0.0, s1, s2 * kPhi);
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) v.emplace_back(s1, s2 * kPhi, 0.0);
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) v.emplace_back(s2 * kPhi, 0.0, s1);
      break;
    case Solid::Dodecahedron:
      for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
          for (double sz : {1.0, -1.0}) v.emplace_back(sx, sy, sz);
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) v.emplace_back(0.0, s1 / kPhi, s2 * kPhi);
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) v.emplace_back(s1 / kPhi, s2 * kPhi, 0.0);
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) v.emplace_back(s1 * kPhi, 0.0, s2 / kPhi);
      break;
  }
  return v;
}

}  // namespace

std::vector<int> platonic_hamiltonian_order(Solid solid) {
  switch (solid) {
    case Solid::Tetrahedron:
      return {0, 1, 2, 3};
    case Solid::Octahedron:
      return {0, 1, 2, 3, 4, 5};
    case Solid::Cube:
      return {0, 1, 3, 2, 6, 7, 5, 4};
    case Solid::Icosahedron:
      return {0, 2, 5, 3, 1, 10, 8, 4, 6, 11, 7, 9};
    case Solid::Dodecahedron:
      return {0, 8, 4, 14, 5, 9, 11, 3, 13, 15, 7, 19, 18, 6, 10, 2, 16, 17, 1, 12};
  }
  throw std::invalid_argument("platonic_hamiltonian_order: unknown solid");
}

std::vector<SpherePoint> platonic_vertices(Solid solid) {
  std::vector<SpherePoint> out;
  for (const Eigen::Vector3d& v : raw_vertices(solid)) out.emplace_back(Eigen::VectorXd(v));
  return out;
}

GeodesicCycle platonic_cycle(Solid solid) {
  std::vector<SpherePoint> vertices = platonic_vertices(solid);
  std::vector<SpherePoint> ordered;
  for (int idx : platonic_hamiltonian_order(solid)) ordered.push_back(vertices[idx]);
  return GeodesicCycle(std::move(ordered));
}

namespace {

const std::map<std::string, Solid>& solid_names() {
  static const std::map<std::string, Solid> names = {
      {"tetra", Solid::Tetrahedron}, {"octa", Solid::Octahedron},
      {"cube", Solid::Cube},         {"icosa", Solid::Icosahedron},
      {"dodeca", Solid::Dodecahedron}};
  return names;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      kv[item] = "";
    else
      kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double need_param(const std::map<std::string, std::string>& kv, const std::string& key,
                  const std::string& family) {
  auto it = kv.find(key);
  if (it == kv.end() || it->second.empty())
    throw std::invalid_argument("FamilySpec: " + family + " needs parameter '" + key + "'");
  return std::stod(it->second);
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  FamilySpec spec;
  if (name == "smooth") {
    spec.family = Family::SmoothS2;
    auto kv = parse_kv(rest);
    spec.params = {need_param(kv, "t", name), need_param(kv, "a", name)};
  } else if (name == "odd2" || name == "odd3") {
    spec.family = name == "odd2" ? Family::OddSphere2 : Family::OddSphere3;
    spec.params = {need_param(parse_kv(rest), "m", name)};
  } else if (name == "geo-tetra") {
    spec.family = Family::GeoTetra;
    spec.params = {need_param(parse_kv(rest), "a", name)};
  } else if (name == "geo-octa") {
    spec.family = Family::GeoOcta;
    spec.params = {need_param(parse_kv(rest), "a", name)};
  } else if (name == "geo-cube") {
    auto kv = parse_kv(rest);
    spec.family = Family::GeoCube;
    spec.params = {need_param(kv, "alpha", name), need_param(kv, "beta", name)};
  } else if (name == "platonic") {
    spec.family = Family::Platonic;
    auto it = solid_names().find(rest);
    if (it == solid_names().end())
      throw std::invalid_argument("FamilySpec: unknown solid '" + rest + "'");
    spec.solid = it->second;
  } else {
    throw std::invalid_argument("FamilySpec: unknown family '" + name + "'");
  }
  return spec;
}

std::string FamilySpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (family) {
    case Family::SmoothS2:
      os << "smooth:t=" << static_cast<int>(params.at(0)) << ",a=" << params.at(1);
      break;
    case Family::OddSphere2:
      os << "odd2:m=" << static_cast<int>(params.at(0));
      break;
    case Family::OddSphere3:
      os << "odd3:m=" << static_cast<int>(params.at(0));
      break;
    case Family::GeoTetra:
      os << "geo-tetra:a=" << params.at(0);
      break;
    case Family::GeoOcta:
      os << "geo-octa:a=" << params.at(0);
      break;
    case Family::GeoCube:
      os << "geo-cube:alpha=" << params.at(0) << ",beta=" << params.at(1);
      break;
    case Family::Platonic:
      for (const auto& [name, solid] : solid_names())
        if (solid == this->solid) {
          os << "platonic:" << name;
          return os.str();
        }
      break;
  }
  return os.str();
}

CurveVariant build_curve(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::SmoothS2:
      return smooth_s2(static_cast<int>(spec.params.at(0)), spec.params.at(1));
    case Family::OddSphere2:
      return odd_sphere(2, static_cast<int>(spec.params.at(0)));
    case Family::OddSphere3:
      return odd_sphere(3, static_cast<int>(spec.params.at(0)));
    case Family::GeoTetra:
      return geo_tetra(spec.params.at(0));
    case Family::GeoOcta:
      return geo_octa(spec.params.at(0));
    case Family::GeoCube:
      return geo_cube(spec.params.at(0), spec.params.at(1));
    case Family::Platonic:
      return platonic_cycle(spec.solid);
  }
  throw std::invalid_argument("build_curve: unknown family");
}

}  // namespace geocycle
