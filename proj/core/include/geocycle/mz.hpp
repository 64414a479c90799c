#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "geocycle/sphere.hpp"

namespace geocycle {

/// One cell of the zonal equal-area partition: a polar cap or a
/// colatitude/longitude rectangle. Areas are in the normalized measure.
struct Patch {
  int id = 0;
  int band = 0;  // 0 = north cap, then rings, last = south cap
  bool is_cap = false;
  double theta0 = 0, theta1 = 0;  // colatitude range
  double phi0 = 0, phi1 = 0;      // longitude range ([0, 2pi] for caps/full rings)
  double area = 0;
  Eigen::Vector3d center = Eigen::Vector3d::UnitZ();
  double inner_cap_radius = 0;  // cap(center, r) is contained in the patch
  double diameter = 0;

  bool contains(const Eigen::Vector3d& p, double tol = 1e-9) const;
};

struct Partition {
  int n = 0;
  std::vector<Patch> patches;
  double size = 0;  // max patch diameter
};

/// Zonal equal-area partition: two polar caps plus latitude rings split into
/// equal-area longitude rectangles; every patch has area exactly 1/n.
Partition equal_area_partition(int n);

/// Patch adjacency multigraph: touching closures connect, every adjacency is
/// doubled so all vertex degrees are even.
struct PatchGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> multi_edges;  // each adjacency listed twice
  std::vector<int> kissing;                      // #M_j = distinct touching patches
  int max_kissing = 0;
};

PatchGraph build_graph(const Partition& partition);

/// Closed walk traversing every multi-edge exactly once (Hierholzer), starting
/// at patch 0 with ties broken by patch id. vertex_walk has edge_order.size()+1
/// entries and begins and ends at 0.
struct EulerTour {
  std::vector<int> vertex_walk;
  std::vector<int> edge_order;  // indices into PatchGraph::multi_edges
};

EulerTour euler_cycle(const PatchGraph& graph);

/// The two in-patch points (x_{2j-1}, x_{2j}) per patch: symmetric about the
/// patch center along the local east direction, all pairs at one global
/// geodesic spacing = min_j inner_cap_radius (capped at pi/4 so that small-n
/// connecting arcs stay clear of antipodal pairs).
struct PointPairs {
  std::vector<std::pair<SpherePoint, SpherePoint>> pairs;
  double spacing = 0;
};

PointPairs select_pairs(const Partition& partition);

/// Assemble the geodesic cycle from the Euler tour: first visit of a patch
/// traverses its inner arc x_{2j-1} -> x_{2j}; later arrivals land on x_{2j-1}
/// and continue directly to the next patch's odd point.
GeodesicCycle assemble_cycle(const Partition& partition, const EulerTour& tour,
                             const PointPairs& pairs);

/// Full pipeline with n = ceil(cn * t^2) patches.
GeodesicCycle build_mz_cycle(int t, double cn = 4.0);

/// Empirical two-sided Marcinkiewicz-Zygmund ratios over random f in Pi_t:
/// ratio = ((1/l) int_gamma |f|^p)^{1/p} / ||f||_{L^p(S^2)} (sup norms for p=inf).
struct MzReport {
  int t = 0;
  double p = 2;  // std::numeric_limits<double>::infinity() for sup norm
  int num_samples = 0;
  double ratio_min = 0;
  double ratio_max = 0;
  double curve_length = 0;
  double length_over_t = 0;
};

MzReport mz_test(const GeodesicCycle& cycle, int t, double p, int num_samples,
                 std::uint64_t seed);

}  // namespace geocycle
