#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "reachlab/manifold.hpp"

namespace reachlab {

/// Linear map with cached spectral data.
class LinearMapSpec {
 public:
  static LinearMapSpec from_matrix(Matrix matrix, std::string label = "matrix");

  const Matrix& matrix() const { return matrix_; }
  const Vector& singular_values() const { return singular_values_; }  // descending
  double sigma_min() const { return sigma_min_; }  // smallest nonzero singular value
  double sigma_max() const { return sigma_max_; }
  double spectral_norm() const { return sigma_max_; }
  int rank() const { return rank_; }
  int rows() const { return static_cast<int>(matrix_.rows()); }
  int cols() const { return static_cast<int>(matrix_.cols()); }
  const std::string& label() const { return label_; }

  /// All singular values within 1e-10 of 1 and the matrix is square.
  bool is_orthogonal(double tol = 1e-10) const;

 private:
  LinearMapSpec() = default;
  Matrix matrix_;
  Vector singular_values_;
  double sigma_min_ = 0.0;
  double sigma_max_ = 0.0;
  int rank_ = 0;
  std::string label_;
};

/// Smooth map given by evaluation and (optionally analytic) derivative.
struct NonlinearMap {
  int domain_dim = 0;
  int codomain_dim = 0;
  std::function<Vector(const Vector&)> eval;
  std::function<Matrix(const Vector&)> dphi;  // empty -> central differences
  std::string label;

  Matrix derivative_at(const Vector& x) const;
};

/// Measured bi-Lipschitz constants of a map on a sample.
struct IsometryReport {
  double l = 0.0;
  double u = 0.0;
  double delta = 0.0;  // max(1 - l^2, u^2 - 1)
  std::pair<std::size_t, std::size_t> min_pair{0, 0};
  std::pair<std::size_t, std::size_t> max_pair{0, 0};
  std::size_t sample_pair_count = 0;  // unordered pairs actually scanned
};

/// m x n matrix with i.i.d. N(0, 1/m) entries, seeded deterministically.
LinearMapSpec make_gaussian_map(int m, int n, std::uint64_t seed);

/// Seeded Haar-random n x n orthogonal matrix. Seed 0 returns the identity.
LinearMapSpec make_orthogonal_map(int n, std::uint64_t seed);

/// Leading-coordinate projection [I_m 0] from R^n to R^m.
LinearMapSpec make_projection_map(int m, int n);

/// Pairwise distance-ratio extremes of the map over the sample. Scans all
/// unordered pairs unless pair_budget > 0 caps them (budget is recorded).
/// Throws CollapseError if distinct points map to identical images.
IsometryReport isometry_constants(const LinearMapSpec& map, const SampledManifold& m,
                                  std::size_t pair_budget = 0);
IsometryReport isometry_constants(const NonlinearMap& map, const SampledManifold& m,
                                  std::size_t pair_budget = 0);

/// Image sample: points mapped by the map, tangent bases transported by its
/// derivative and re-orthonormalized. Throws RankCollapseError if a
/// transported basis drops rank.
SampledManifold pushforward(const LinearMapSpec& map, const SampledManifold& m);
SampledManifold pushforward(const NonlinearMap& map, const SampledManifold& m);

/// Image of a chart under the map, as a new chart (for volume quadrature).
ParametricManifold compose(const LinearMapSpec& map, const ParametricManifold& manifold);
ParametricManifold compose(const NonlinearMap& map, const ParametricManifold& manifold);

/// Smoothed-step derivative profile used by the cusp construction: odd,
/// compactly supported on [-delta, delta], equal to -1 on [rho, delta - rho]
/// with smooth exponential shoulders of width rho. Requires rho < delta / 2
/// and |x| < 1.
double bump_f(double x, double delta, double rho);

/// Triangle-wave height c(1 - |x|/delta)_+ (the non-smooth comparison curve).
double triangle_wave_height(double x, double delta, double c);

/// Height of the smoothed cusp: (c/delta) * integral of bump_f from -delta
/// to x, by adaptive Simpson (abs tol 1e-10). Even in x, zero for |x| >= delta.
double counterexample_height(double x, double delta, double c, double rho);

/// The cusp map (x, y) -> (x, y + height(x)): a smooth near-isometry on the
/// flat segment whose image has reach at most delta / sqrt(2).
/// Requires 0 < c < delta < 1 and 0 < rho < delta / 2.
NonlinearMap counterexample_map(double delta, double c, double rho);

/// The identity as a NonlinearMap (handy for wiring tests).
NonlinearMap identity_map(int dim);

}  // namespace reachlab
