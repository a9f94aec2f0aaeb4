#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "reachlab/manifold.hpp"

namespace reachlab {

enum class ReachMethod { kClosedFormEllipsoid, kSampledPointwise, kNormalBundleTest };

struct ReachEstimate {
  double value = 0.0;  // > 0, +inf for flat manifolds
  ReachMethod method = ReachMethod::kSampledPointwise;
  std::size_t sample_count = 0;
  std::optional<std::pair<std::size_t, std::size_t>> attaining_pair;

  bool is_infinite() const;
};

/// Reach of an (n-1)-dimensional ellipsoid with the given principal radii:
/// r_min^2 / r_max. Radii may be passed in any order.
double ellipsoid_reach(std::vector<double> radii);

/// Largest principal curvature of the ellipsoid, r_max / r_min^2
/// (the reciprocal of ellipsoid_reach).
double ellipsoid_max_curvature(std::vector<double> radii);

/// Pointwise-quotient reach estimator: min over ordered pairs (x, y) of
/// |y - x|^2 / (2 dist(y - x, T_x)). Near-tangential pairs (distance below
/// 1e-12 |y - x|) contribute +inf, so flat samples report infinite reach.
/// Converges to the true reach from above as the sample grows.
ReachEstimate estimate_reach(const SampledManifold& m);

/// Randomized search for a self-intersection of the open normal bundle of
/// radius r: closest approach of capped normal discs at sampled base pairs
/// separated by more than 2e-3 r. Returns false when two bundle points
/// coincide within 1e-6 r (so r >= reach); true is evidence, not proof.
bool normal_bundle_embedding_test(const SampledManifold& m, double r,
                                  std::size_t probes_per_point, std::uint64_t seed);

/// Checks the curvature regularity property on a curve: the unit-speed
/// curvature at every probe must stay within (1/reach_value)(1 + 1e-3).
bool curvature_bound_check(const ParametricManifold& manifold, double reach_value,
                           std::size_t n_probes);

}  // namespace reachlab
