#include "reachlab/subspace.hpp"

#include <cmath>

namespace reachlab {

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  const int n = static_cast<int>(basis_.rows());
  const int d = static_cast<int>(basis_.cols());
  if (d < 1 || d > n) {
    throw DimensionMismatchError("Subspace: need 1 <= dim <= ambient_dim, got dim=" +
                                 std::to_string(d) + " ambient=" + std::to_string(n));
  }
  if (!basis_.allFinite()) throw ValidationError("Subspace: basis has non-finite entries");
  const Matrix gram = basis_.transpose() * basis_;
  const double err = (gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > kOrthonormalTol) {
    throw ValidationError("Subspace: basis not orthonormal (deviation " + std::to_string(err) +
                          ")");
  }
}

Subspace Subspace::orthonormalized(const Matrix& span) {
  const int n = static_cast<int>(span.rows());
  const int d = static_cast<int>(span.cols());
  Eigen::HouseholderQR<Matrix> qr(span);
  Matrix q = qr.householderQ() * Matrix::Identity(n, d);
  return Subspace(std::move(q));
}

double Subspace::distance(const Vector& v) const { return reject(v).norm(); }

Vector Subspace::reject(const Vector& v) const { return v - basis_ * (basis_.transpose() * v); }

Vector Subspace::project(const Vector& v) const { return basis_ * (basis_.transpose() * v); }

}  // namespace reachlab
