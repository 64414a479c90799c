#include <Eigen/Geometry>

#include "geocycle/mz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geocycle/parallel.hpp"
#include "geocycle/polynomials.hpp"
#include "geocycle/quadrature.hpp"

namespace geocycle {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

bool Patch::contains(const Eigen::Vector3d& p, double tol) const {
  double theta = std::acos(std::clamp(p.z(), -1.0, 1.0));
  if (theta < theta0 - tol || theta > theta1 + tol) return false;
  if (is_cap || phi1 - phi0 >= kTwoPi - 1e-12) return true;
  double phi = std::atan2(p.y(), p.x());
  if (phi < 0) phi += kTwoPi;
  for (double shift : {-kTwoPi, 0.0, kTwoPi})
    if (phi + shift >= phi0 - tol && phi + shift <= phi1 + tol) return true;
  return false;
}

namespace {

Eigen::Vector3d sph(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double boundary_diameter(const Patch& p) {
  std::vector<Eigen::Vector3d> pts;
  const int K = 24;
  for (double theta : {p.theta0, p.theta1}) {
    if (theta < 1e-15 || theta > M_PI - 1e-15) {
      pts.push_back(sph(theta, 0.0));
      continue;
    }
    for (int j = 0; j <= K; ++j) pts.push_back(sph(theta, p.phi0 + (p.phi1 - p.phi0) * j / K));
  }
  if (!p.is_cap && p.phi1 - p.phi0 < kTwoPi - 1e-12) {
    for (double phi : {p.phi0, p.phi1})
      for (int j = 1; j < K; ++j) pts.push_back(sph(p.theta0 + (p.theta1 - p.theta0) * j / K, phi));
  }
  double d = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      d = std::max(d, std::acos(std::clamp(pts[a].dot(pts[b]), -1.0, 1.0)));
  return d;
}

double rect_inner_radius(double theta0, double theta1, double width, int ring_count) {
  double r = (theta1 - theta0) / 2.0;
  if (ring_count > 1) {
    double theta_mid = 0.5 * (theta0 + theta1);
    double to_meridian = std::asin(std::sin(theta_mid) * std::sin(std::min(width / 2.0, M_PI / 2.0)));
    r = std::min(r, to_meridian);
  }
  return r;
}

}  // namespace

Partition equal_area_partition(int n) {
  if (n < 2) throw std::invalid_argument("equal_area_partition: n >= 2 required");
  Partition partition;
  partition.n = n;
  auto finish = [&] {
    for (auto& p : partition.patches) {
      p.diameter = boundary_diameter(p);
      partition.size = std::max(partition.size, p.diameter);
    }
    return partition;
  };

  if (n == 2) {
    for (int i = 0; i < 2; ++i) {
      Patch p;
      p.id = i;
      p.band = i;
      p.is_cap = true;
      p.theta0 = i == 0 ? 0.0 : M_PI / 2.0;
      p.theta1 = i == 0 ? M_PI / 2.0 : M_PI;
      p.phi0 = 0.0;
      p.phi1 = kTwoPi;
      p.area = 0.5;
      p.center = i == 0 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d(-Eigen::Vector3d::UnitZ());
      p.inner_cap_radius = M_PI / 2.0;
      partition.patches.push_back(p);
    }
    return finish();
  }

  const double theta_cap = std::acos(1.0 - 2.0 / n);
  const int m = n - 2;
  int rings = std::clamp(static_cast<int>(std::lround(std::sqrt(n * M_PI) / 2.0)), 1, m);

  // Ideal per-ring counts from equal colatitude splits, rounded with a running
  // remainder so the total stays n-2.
  std::vector<int> counts(rings);
  {
    std::vector<double> ideal(rings);
    for (int i = 0; i < rings; ++i) {
      double a = theta_cap + (M_PI - 2.0 * theta_cap) * i / rings;
      double b = theta_cap + (M_PI - 2.0 * theta_cap) * (i + 1) / rings;
      ideal[i] = (std::cos(a) - std::cos(b)) / 2.0 * n;
    }
    double carry = 0.0;
    int total = 0;
    for (int i = 0; i < rings; ++i) {
      int c = std::max(1L, std::lround(ideal[i] + carry));
      counts[i] = c;
      carry += ideal[i] - c;
      total += c;
    }
    counts.back() += m - total;
    while (counts.back() < 1) {  // pathological small n; borrow from the largest ring
      auto big = std::max_element(counts.begin(), counts.end());
      --*big;
      ++counts.back();
    }
  }

  // Band boundaries at exact cumulative patch counts, so every area is 1/n.
  std::vector<double> bounds{theta_cap};
  {
    long cum = 1;
    for (int c : counts) {
      cum += c;
      bounds.push_back(std::acos(std::clamp(1.0 - 2.0 * cum / n, -1.0, 1.0)));
    }
  }

  Patch north;
  north.id = 0;
  north.band = 0;
  north.is_cap = true;
  north.theta0 = 0.0;
  north.theta1 = theta_cap;
  north.phi0 = 0.0;
  north.phi1 = kTwoPi;
  north.area = 1.0 / n;
  north.center = Eigen::Vector3d::UnitZ();
  north.inner_cap_radius = theta_cap;
  partition.patches.push_back(north);

  int id = 1;
  for (int i = 0; i < rings; ++i) {
    const double t0 = bounds[i], t1 = bounds[i + 1];
    const int c = counts[i];
    const double width = kTwoPi / c;
    for (int k = 0; k < c; ++k) {
      Patch p;
      p.id = id++;
      p.band = i + 1;
      p.is_cap = false;
      p.theta0 = t0;
      p.theta1 = t1;
      p.phi0 = width * k;
      p.phi1 = width * (k + 1);
      p.area = 1.0 / n;
      p.center = sph(0.5 * (t0 + t1), 0.5 * (p.phi0 + p.phi1));
      p.inner_cap_radius = rect_inner_radius(t0, t1, width, c);
      partition.patches.push_back(p);
    }
  }

  Patch south = north;
  south.id = id;
  south.band = rings + 1;
  south.theta0 = M_PI - theta_cap;
  south.theta1 = M_PI;
  south.center = -Eigen::Vector3d::UnitZ();
  partition.patches.push_back(south);
  return finish();
}

namespace {

bool phi_overlap(const Patch& a, const Patch& b, double tol) {
  if (a.phi1 - a.phi0 >= kTwoPi - 1e-12 || b.phi1 - b.phi0 >= kTwoPi - 1e-12) return true;
  for (double shift : {-kTwoPi, 0.0, kTwoPi})
    if (a.phi0 - tol <= b.phi1 + shift && b.phi0 + shift <= a.phi1 + tol) return true;
  return false;
}

}  // namespace

PatchGraph build_graph(const Partition& partition) {
  const double tol = 1e-9;
  PatchGraph graph;
  graph.vertex_count = partition.n;

  std::vector<std::vector<int>> bands;
  for (const Patch& p : partition.patches) {
    if (p.band >= static_cast<int>(bands.size())) bands.resize(p.band + 1);
    bands[p.band].push_back(p.id);
  }

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const auto& ids = bands[b];
    const int c = static_cast<int>(ids.size());
    if (c > 1)
      for (int k = 0; k < c; ++k) {
        int i = ids[k], j = ids[(k + 1) % c];
        if (i != j) pairs.emplace_back(std::min(i, j), std::max(i, j));
      }
    if (b + 1 < bands.size())
      for (int i : ids)
        for (int j : bands[b + 1])
          if (phi_overlap(partition.patches[i], partition.patches[j], tol))
            pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  graph.kissing.assign(partition.n, 0);
  for (auto [i, j] : pairs) {
    graph.multi_edges.emplace_back(i, j);
    graph.multi_edges.emplace_back(i, j);
    ++graph.kissing[i];
    ++graph.kissing[j];
  }
  graph.max_kissing = *std::max_element(graph.kissing.begin(), graph.kissing.end());

  // Connectivity: a partition bug would silently break the Euler stage.
  std::vector<char> seen(partition.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::vector<std::vector<int>> adj(partition.n);
  for (auto [i, j] : pairs) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  if (std::count(seen.begin(), seen.end(), 1) != partition.n)
    throw std::runtime_error("build_graph: patch adjacency graph is disconnected");
  return graph;
}

EulerTour euler_cycle(const PatchGraph& graph) {
  const int n = graph.vertex_count;
  std::vector<int> degree(n, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (std::size_t e = 0; e < graph.multi_edges.size(); ++e) {
    auto [i, j] = graph.multi_edges[e];
    adj[i].emplace_back(j, static_cast<int>(e));
    adj[j].emplace_back(i, static_cast<int>(e));
    ++degree[i];
    ++degree[j];
  }
  for (int v = 0; v < n; ++v) {
    if (degree[v] % 2 != 0) throw std::invalid_argument("euler_cycle: odd vertex degree");
    std::sort(adj[v].begin(), adj[v].end());
  }

  std::vector<char> used(graph.multi_edges.size(), 0);
  std::vector<std::size_t> next(n, 0);
  std::vector<std::pair<int, int>> stack{{0, -1}};  // (vertex, incoming edge)
  std::vector<int> rev_v, rev_e;
  while (!stack.empty()) {
    auto [v, ein] = stack.back();
    while (next[v] < adj[v].size() && used[adj[v][next[v]].second]) ++next[v];
    if (next[v] == adj[v].size()) {
      rev_v.push_back(v);
      rev_e.push_back(ein);
      stack.pop_back();
    } else {
      auto [u, eid] = adj[v][next[v]];
      used[eid] = 1;
      stack.emplace_back(u, eid);
    }
  }
  EulerTour tour;
  tour.vertex_walk.assign(rev_v.rbegin(), rev_v.rend());
  std::vector<int> edges(rev_e.rbegin(), rev_e.rend());
  tour.edge_order.assign(edges.begin() + 1, edges.end());  // edge i joins walk[i] -> walk[i+1]
  if (tour.vertex_walk.front() != 0 || tour.vertex_walk.back() != 0 ||
      tour.edge_order.size() != graph.multi_edges.size())
    throw std::runtime_error("euler_cycle: traversal did not cover the multigraph");
  return tour;
}

PointPairs select_pairs(const Partition& partition) {
  PointPairs out;
  double spacing = std::numeric_limits<double>::infinity();
  for (const Patch& p : partition.patches) {
    if (!(p.inner_cap_radius > 0)) throw std::invalid_argument("select_pairs: degenerate inner cap");
    spacing = std::min(spacing, p.inner_cap_radius);
  }
  // One global spacing; the pi/4 cap keeps tiny partitions (n=2) away from
  // antipodal connecting arcs.
  spacing = std::min(spacing, M_PI / 4.0);
  out.spacing = spacing;
  out.pairs.reserve(partition.patches.size());
  for (const Patch& p : partition.patches) {
    Eigen::Vector3d east;
    if (std::abs(p.center.z()) > 1.0 - 1e-14) {
      east = Eigen::Vector3d::UnitX();
    } else {
      double phi = std::atan2(p.center.y(), p.center.x());
      east = Eigen::Vector3d(-std::sin(phi), std::cos(phi), 0.0);
    }
    const double half = spacing / 2.0;
    Eigen::Vector3d first = std::cos(half) * p.center - std::sin(half) * east;
    Eigen::Vector3d second = std::cos(half) * p.center + std::sin(half) * east;
    out.pairs.emplace_back(SpherePoint(Eigen::VectorXd(first)), SpherePoint(Eigen::VectorXd(second)));
  }
  return out;
}

GeodesicCycle assemble_cycle(const Partition& partition, const EulerTour& tour,
                             const PointPairs& pairs) {
  if (static_cast<int>(pairs.pairs.size()) != partition.n)
    throw std::invalid_argument("assemble_cycle: pairs/partition mismatch");
  if (tour.vertex_walk.front() != 0 || tour.vertex_walk.back() != 0)
    throw std::invalid_argument("assemble_cycle: tour must start and end at patch 0");

  std::vector<char> visited(partition.n, 0);
  std::vector<SpherePoint> control;
  control.push_back(pairs.pairs[0].first);
  control.push_back(pairs.pairs[0].second);
  visited[0] = 1;
  for (std::size_t i = 1; i + 1 < tour.vertex_walk.size(); ++i) {
    int v = tour.vertex_walk[i];
    control.push_back(pairs.pairs[v].first);
    if (!visited[v]) {
      control.push_back(pairs.pairs[v].second);
      visited[v] = 1;
    }
  }
  if (std::count(visited.begin(), visited.end(), 1) != partition.n)
    throw std::runtime_error("assemble_cycle: Euler tour missed a patch");
  return GeodesicCycle(std::move(control));
}

GeodesicCycle build_mz_cycle(int t, double cn) {
  if (t < 1 || cn <= 0) throw std::invalid_argument("build_mz_cycle: t >= 1, cn > 0");
  int n = static_cast<int>(std::ceil(cn * t * t));
  Partition partition = equal_area_partition(std::max(n, 2));
  PatchGraph graph = build_graph(partition);
  EulerTour tour = euler_cycle(graph);
  PointPairs pairs = select_pairs(partition);
  return assemble_cycle(partition, tour, pairs);
}

namespace {

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Sample coefficient matrix ((t+1)^2 x samples), rejecting near-zero draws.
Eigen::MatrixXd sample_coefficients(int t, int num_samples, std::uint64_t seed) {
  Eigen::MatrixXd coeffs((t + 1) * (t + 1), num_samples);
  for (int s = 0; s < num_samples; ++s) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      HarmonicPolynomial h = random_harmonic(t, mix64(mix64(seed, s), attempt));
      if (h.coeffs.norm() >= 1e-14) {
        coeffs.col(s) = h.coeffs;
        break;
      }
    }
  }
  return coeffs;
}

// Rows of the harmonic basis at the given points.
Eigen::MatrixXd basis_rows(const HarmonicEvaluator& ev,
                           const std::vector<Eigen::Vector3d>& pts, std::size_t begin,
                           std::size_t end) {
  Eigen::MatrixXd basis(end - begin, ev.count());
  std::vector<double> buf(ev.count());
  for (std::size_t i = begin; i < end; ++i) {
    ev.eval(pts[i], buf);
    for (int k = 0; k < ev.count(); ++k) basis(i - begin, k) = buf[k];
  }
  return basis;
}

std::vector<std::size_t> block_offsets(std::size_t total, std::size_t block) {
  std::vector<std::size_t> offsets{0};
  while (offsets.back() < total) offsets.push_back(std::min(offsets.back() + block, total));
  return offsets;
}

struct CurveNodes {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;  // include arc length factors
};

CurveNodes quadrature_nodes(const GeodesicCycle& cycle, int t) {
  CurveNodes out;
  for (const GeodesicArc& arc : cycle.arcs()) {
    if (arc.length() == 0.0) continue;
    int k = std::clamp(8 + static_cast<int>(std::ceil(arc.length() * t)), 8, 48);
    const GaussLegendreRule& rule = gauss_legendre(k);
    for (int i = 0; i < k; ++i) {
      out.points.emplace_back(arc.eval(rule.nodes[i]));
      out.weights.push_back(rule.weights[i] * arc.length());
    }
  }
  return out;
}

CurveNodes dense_samples(const GeodesicCycle& cycle, int t) {
  CurveNodes out;
  const double step = 0.01 / t;
  for (const GeodesicArc& arc : cycle.arcs()) {
    if (arc.length() == 0.0) continue;
    int mcount = std::max(2, static_cast<int>(std::ceil(arc.length() / step)) + 1);
    for (int i = 0; i < mcount; ++i) out.points.emplace_back(arc.eval(double(i) / (mcount - 1)));
  }
  return out;
}

// max_j |f_s(x_j)| per sample over the given points, blockwise GEMM.
Eigen::VectorXd columnwise_sup(const HarmonicEvaluator& ev,
                               const std::vector<Eigen::Vector3d>& pts,
                               const Eigen::MatrixXd& coeffs) {
  auto offsets = block_offsets(pts.size(), 4096);
  const std::size_t blocks = offsets.size() - 1;
  Eigen::MatrixXd per_block(blocks, coeffs.cols());
  parallel_for(blocks, [&](std::size_t b) {
    Eigen::MatrixXd basis = basis_rows(ev, pts, offsets[b], offsets[b + 1]);
    per_block.row(b) = (basis * coeffs).cwiseAbs().colwise().maxCoeff();
  });
  return per_block.colwise().maxCoeff();
}

double local_sup_refine(const HarmonicPolynomial& f, Eigen::Vector3d c, double v0, double radius) {
  double v = v0;
  for (int lvl = 0; lvl < 8; ++lvl) {
    Eigen::Vector3d u = c.unitOrthogonal();
    Eigen::Vector3d w = c.cross(u);
    Eigen::Vector3d best = c;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        if (a == 0 && b == 0) continue;
        Eigen::Vector3d q = (c + (radius * a / 2.0) * u + (radius * b / 2.0) * w).normalized();
        double fv = std::abs(f.eval(q));
        if (fv > v) {
          v = fv;
          best = q;
        }
      }
    c = best;
    radius /= 3.0;
  }
  return v;
}

}  // namespace

MzReport mz_test(const GeodesicCycle& cycle, int t, double p, int num_samples,
                 std::uint64_t seed) {
  if (cycle.ambient_dim() != 3) throw std::invalid_argument("mz_test: ambient dimension 3 required");
  if (t < 1) throw std::invalid_argument("mz_test: t >= 1 required");
  if (!(p >= 1.0)) throw std::invalid_argument("mz_test: p in [1, inf] required");
  if (num_samples < 1) throw std::invalid_argument("mz_test: num_samples >= 1 required");

  MzReport report;
  report.t = t;
  report.p = p;
  report.num_samples = num_samples;
  report.curve_length = cycle.length();
  report.length_over_t = cycle.length() / t;

  HarmonicEvaluator ev(t);
  Eigen::MatrixXd coeffs = sample_coefficients(t, num_samples, seed);
  Eigen::VectorXd ratios(num_samples);

  if (std::isinf(p)) {
    CurveNodes dense = dense_samples(cycle, t);
    Eigen::VectorXd curve_sup = columnwise_sup(ev, dense.points, coeffs);

    // Coarse global grid localizes the maximum basins; spacing ~ 0.3/t.
    const int K = std::max(24, 10 * t);
    std::vector<Eigen::Vector3d> grid;
    for (int i = 0; i <= K; ++i) {
      double theta = M_PI * i / K;
      int M = (i == 0 || i == K) ? 1 : 2 * K;
      for (int j = 0; j < M; ++j) grid.push_back(sph(theta, kTwoPi * j / M));
    }
    auto offsets = block_offsets(grid.size(), 4096);
    const std::size_t blocks = offsets.size() - 1;
    std::vector<Eigen::MatrixXd> values(blocks);
    parallel_for(blocks, [&](std::size_t b) {
      values[b] = (basis_rows(ev, grid, offsets[b], offsets[b + 1]) * coeffs).cwiseAbs();
    });

    parallel_for(num_samples, [&](std::size_t s) {
      // Top candidate grid points for this sample.
      struct Cand {
        double v;
        std::size_t idx;
      };
      std::vector<Cand> top;
      for (std::size_t b = 0; b < blocks; ++b) {
        const auto& col = values[b];
        for (Eigen::Index r = 0; r < col.rows(); ++r) {
          double v = col(r, static_cast<Eigen::Index>(s));
          if (top.size() < 16) {
            top.push_back({v, offsets[b] + static_cast<std::size_t>(r)});
          } else {
            auto worst = std::min_element(
                top.begin(), top.end(), [](const Cand& a, const Cand& c) { return a.v < c.v; });
            if (v > worst->v) *worst = {v, offsets[b] + static_cast<std::size_t>(r)};
          }
        }
      }
      HarmonicPolynomial f{t, coeffs.col(static_cast<Eigen::Index>(s))};
      double sup = 0.0;
      for (const Cand& cand : top)
        sup = std::max(sup, local_sup_refine(f, grid[cand.idx], cand.v, M_PI / K));
      // The sup over the sphere dominates the sup over any subset; folding the
      // curve samples in keeps the trivial bound ratio <= 1 exact.
      sup = std::max(sup, curve_sup[static_cast<Eigen::Index>(s)]);
      ratios[static_cast<Eigen::Index>(s)] = curve_sup[static_cast<Eigen::Index>(s)] / sup;
    });
  } else {
    CurveNodes nodes = quadrature_nodes(cycle, t);
    auto offsets = block_offsets(nodes.points.size(), 4096);
    const std::size_t blocks = offsets.size() - 1;
    Eigen::MatrixXd curve_partial(blocks, num_samples);
    parallel_for(blocks, [&](std::size_t b) {
      Eigen::MatrixXd vals =
          (basis_rows(ev, nodes.points, offsets[b], offsets[b + 1]) * coeffs).cwiseAbs();
      Eigen::Map<const Eigen::VectorXd> w(nodes.weights.data() + offsets[b],
                                          offsets[b + 1] - offsets[b]);
      if (p == 1.0) {
        curve_partial.row(b) = w.transpose() * vals.matrix();
      } else if (p == 2.0) {
        curve_partial.row(b) = w.transpose() * vals.array().square().matrix();
      } else {
        curve_partial.row(b) = w.transpose() * vals.array().pow(p).matrix();
      }
    });
    Eigen::VectorXd curve_lp =
        (curve_partial.colwise().sum() / cycle.length()).array().pow(1.0 / p);

    // Sphere side on the tensor rule (Gauss-Legendre in cos theta x uniform phi).
    const int K = 2 * t + 4;
    const GaussLegendreRule& rule = gauss_legendre(K);
    std::vector<Eigen::Vector3d> grid;
    std::vector<double> gw;
    const int M = 2 * K;
    for (int i = 0; i < K; ++i) {
      double u = 2.0 * rule.nodes[i] - 1.0;
      double st = std::sqrt(std::max(0.0, 1.0 - u * u));
      for (int j = 0; j < M; ++j) {
        double phi = kTwoPi * j / M;
        grid.emplace_back(st * std::cos(phi), st * std::sin(phi), u);
        gw.push_back(rule.weights[i] / M);
      }
    }
    Eigen::MatrixXd vals = (basis_rows(ev, grid, 0, grid.size()) * coeffs).cwiseAbs();
    Eigen::Map<const Eigen::VectorXd> w(gw.data(), static_cast<Eigen::Index>(gw.size()));
    Eigen::VectorXd sphere_lp;
    if (p == 1.0)
      sphere_lp = (w.transpose() * vals.matrix()).array().pow(1.0);
    else if (p == 2.0)
      sphere_lp = (w.transpose() * vals.array().square().matrix()).array().sqrt();
    else
      sphere_lp = (w.transpose() * vals.array().pow(p).matrix()).array().pow(1.0 / p);
    ratios = curve_lp.array() / sphere_lp.array();
  }

  report.ratio_min = ratios.minCoeff();
  report.ratio_max = ratios.maxCoeff();
  return report;
}

}  // namespace geocycle
