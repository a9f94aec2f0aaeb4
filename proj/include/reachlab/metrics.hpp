#pragma once

#include <optional>

#include "reachlab/manifold.hpp"

namespace reachlab {

/// Quadrature resolution for volume/arc-length integrals: composite
/// Gauss-Legendre, `nodes` points per cell, `cells` cells per parameter axis.
struct QuadratureSpec {
  int cells = 256;
  int nodes = 16;
};

struct MetricSummary {
  double diameter = 0.0;
  std::optional<double> volume_k;  // absent for k > 2
  int intrinsic_dim = 0;
};

/// Max pairwise Euclidean distance over the sample (an under-estimate of the
/// continuum diameter).
double diameter(const SampledManifold& m);

/// k-dimensional volume of the chart: arc length for k=1, area for k=2.
/// Throws UnsupportedDimensionError for k > 2.
double volume_k(const SampledManifold& m, const ParametricManifold& manifold,
                const QuadratureSpec& quad = {});

MetricSummary metric_summary(const SampledManifold& m, const ParametricManifold& manifold,
                             const QuadratureSpec& quad = {});

/// Arc length along a curve between two parameter values, taking the shorter
/// way around on periodic domains. Curves only (k = 1).
double geodesic_distance(const ParametricManifold& manifold, double t1, double t2,
                         const QuadratureSpec& quad = {});

/// Cosine of the largest principal angle between subspaces: the smallest
/// singular value of basis(a)^T basis(b), clamped to [0, 1]. Requires equal
/// ambient dimension and dim(a) <= dim(b).
double principal_angle_cos(const Subspace& a, const Subspace& b);

}  // namespace reachlab
