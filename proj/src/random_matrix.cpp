#include "reachlab/detail/random_matrix.hpp"

#include "reachlab/detail/rng.hpp"

namespace reachlab::detail {

Eigen::MatrixXd gaussian_matrix(int m, int n, std::uint64_t seed, std::uint64_t stream) {
  auto eng = seeded_engine(seed, stream);
  Eigen::MatrixXd a(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = normal(eng);
  }
  return a;
}

Eigen::MatrixXd haar_orthogonal(int n, std::uint64_t seed, std::uint64_t stream) {
  const Eigen::MatrixXd g = gaussian_matrix(n, n, seed, stream);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace reachlab::detail
