#pragma once

#include <Eigen/Dense>

#include "reachlab/errors.hpp"

namespace reachlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Orthonormal basis of a d-dimensional linear subspace of R^n. Immutable.
class Subspace {
 public:
  /// Takes ownership of an already-orthonormal basis. Columns must be unit
  /// length and pairwise orthogonal to 1e-10.
  explicit Subspace(Matrix basis);

  /// Orthonormalizes the column span of `span` (thin QR). `span` must have
  /// full column rank.
  static Subspace orthonormalized(const Matrix& span);

  const Matrix& basis() const { return basis_; }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }

  /// Euclidean distance from v to the subspace.
  double distance(const Vector& v) const;

  /// Component of v orthogonal to the subspace.
  Vector reject(const Vector& v) const;

  /// Component of v inside the subspace (as an ambient vector).
  Vector project(const Vector& v) const;

 private:
  Matrix basis_;
};

static constexpr double kOrthonormalTol = 1e-10;

}  // namespace reachlab
