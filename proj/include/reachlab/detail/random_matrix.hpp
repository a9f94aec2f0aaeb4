#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace reachlab::detail {

/// Standard-normal m x n matrix, filled row-major from a seeded stream.
Eigen::MatrixXd gaussian_matrix(int m, int n, std::uint64_t seed, std::uint64_t stream);

/// Haar-distributed orthogonal n x n matrix (QR of a Gaussian matrix with
/// the sign convention that makes the factorization unique).
Eigen::MatrixXd haar_orthogonal(int n, std::uint64_t seed, std::uint64_t stream);

}  // namespace reachlab::detail
