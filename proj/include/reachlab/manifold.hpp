#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reachlab/subspace.hpp"

namespace reachlab {

/// One coordinate of a chart's parameter domain. Periodic axes identify
/// lo with hi; non-periodic axes are treated as open intervals.
struct ParamAxis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double span() const { return hi - lo; }
};

/// Chart-based description of a smooth k-dimensional submanifold of R^n.
/// `jacobian` is optional; when absent, tangent computations fall back to
/// central finite differences.
struct ParametricManifold {
  int intrinsic_dim = 1;
  int ambient_dim = 1;
  std::vector<ParamAxis> domain;
  std::function<Vector(const Vector&)> embed;
  std::function<Matrix(const Vector&)> jacobian;  // may be empty
  std::string label;

  /// Closed-form reach when the construction knows it (+inf for flat pieces).
  std::optional<double> known_reach;

  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian); }
  void validate() const;
};

/// Finite point sample of a manifold with per-point tangent bases.
struct SampledManifold {
  std::vector<Vector> points;     // ambient, R^n
  std::vector<Vector> params;     // chart coordinates, R^k
  std::vector<Subspace> tangents; // dimension k each
  std::string source_label;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
  int ambient_dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
  int intrinsic_dim() const { return tangents.empty() ? 0 : tangents[0].dim(); }
  void validate() const;
};

enum class SampleStrategy { kUniformGrid, kSeededRandom };

/// Evaluates the chart Jacobian at `param_point`: analytic when supplied,
/// otherwise central differences with step 1e-6 * max(1, |coordinate|)
/// (one-sided near non-periodic boundaries, wrapped on periodic axes).
Matrix jacobian_at(const ParametricManifold& manifold, const Vector& param_point);

/// Orthonormalized column span of the Jacobian at `param_point`.
/// Throws DegenerateJacobianError when the Jacobian loses column rank
/// (smallest singular value < 1e-8 relative to the largest).
Subspace tangent_space(const ParametricManifold& manifold, const Vector& param_point);

/// Orthonormal basis of the orthogonal complement; dimension n - d.
/// Throws FullSpaceError when d = n.
Subspace normal_space(const Subspace& tangent);

/// Deterministic sample of `n_samples` points with tangent spaces attached.
/// Grid sampling on curves walks the axis uniformly (periodic axes omit the
/// duplicate endpoint, open axes inset by half a step); on k >= 2 it uses a
/// golden-ratio lattice so exactly n_samples points come out. Identical
/// inputs, including the seed, give identical output.
SampledManifold sample(const ParametricManifold& manifold, std::size_t n_samples,
                       SampleStrategy strategy, std::uint64_t seed);

}  // namespace reachlab
