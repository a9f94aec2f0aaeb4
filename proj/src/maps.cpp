#include "reachlab/maps.hpp"

#include <cmath>

#include "reachlab/detail/parallel.hpp"
#include "reachlab/detail/quadrature.hpp"
#include "reachlab/detail/random_matrix.hpp"
#include "reachlab/detail/rng.hpp"

namespace reachlab {

LinearMapSpec LinearMapSpec::from_matrix(Matrix matrix, std::string label) {
  if (matrix.rows() < 1 || matrix.cols() < 1 || !matrix.allFinite()) {
    throw ValidationError("LinearMapSpec: matrix must be nonempty and finite");
  }
  LinearMapSpec spec;
  spec.matrix_ = std::move(matrix);
  spec.label_ = std::move(label);
  Eigen::BDCSVD<Matrix> svd(spec.matrix_);
  spec.singular_values_ = svd.singularValues();
  spec.sigma_max_ = spec.singular_values_(0);
  const double rank_tol =
      spec.sigma_max_ * 1e-12 * std::max(spec.matrix_.rows(), spec.matrix_.cols());
  spec.rank_ = 0;
  spec.sigma_min_ = 0.0;
  for (int i = 0; i < spec.singular_values_.size(); ++i) {
    if (spec.singular_values_(i) > rank_tol) {
      spec.rank_ = i + 1;
      spec.sigma_min_ = spec.singular_values_(i);
    }
  }
  if (spec.rank_ == 0) throw ValidationError("LinearMapSpec: zero matrix has no nonzero spectrum");
  return spec;
}

bool LinearMapSpec::is_orthogonal(double tol) const {
  if (matrix_.rows() != matrix_.cols()) return false;
  for (int i = 0; i < singular_values_.size(); ++i) {
    if (std::abs(singular_values_(i) - 1.0) > tol) return false;
  }
  return true;
}

Matrix NonlinearMap::derivative_at(const Vector& x) const {
  if (dphi) {
    Matrix j = dphi(x);
    if (j.rows() != codomain_dim || j.cols() != domain_dim || !j.allFinite()) {
      throw ValidationError(label + ": derivative non-finite or mis-sized");
    }
    return j;
  }
  Matrix j(codomain_dim, domain_dim);
  for (int c = 0; c < domain_dim; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
    Vector xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    j.col(c) = (eval(xp) - eval(xm)) / (2.0 * h);
  }
  return j;
}

LinearMapSpec make_gaussian_map(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ParameterError("make_gaussian_map: dimensions must be >= 1");
  Matrix a = detail::gaussian_matrix(m, n, seed, 0x6a) / std::sqrt(static_cast<double>(m));
  return LinearMapSpec::from_matrix(std::move(a), "gaussian(" + std::to_string(m) + "x" +
                                                      std::to_string(n) + ",seed=" +
                                                      std::to_string(seed) + ")");
}

LinearMapSpec make_orthogonal_map(int n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("make_orthogonal_map: dimension must be >= 1");
  if (seed == 0) {
    return LinearMapSpec::from_matrix(Matrix::Identity(n, n),
                                      "identity(" + std::to_string(n) + ")");
  }
  return LinearMapSpec::from_matrix(
      detail::haar_orthogonal(n, seed, 0x0e),
      "orthogonal(" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
}

LinearMapSpec make_projection_map(int m, int n) {
  if (m < 1 || n < m) throw ParameterError("make_projection_map: need 1 <= m <= n");
  Matrix p = Matrix::Zero(m, n);
  p.topLeftCorner(m, m).setIdentity();
  return LinearMapSpec::from_matrix(std::move(p),
                                    "projection(" + std::to_string(m) + "x" + std::to_string(n) +
                                        ")");
}

namespace {

std::vector<Vector> map_points(const std::function<Vector(const Vector&)>& eval,
                               const SampledManifold& m, int codomain_dim,
                               const std::string& label) {
  std::vector<Vector> images(m.size());
  detail::parallel_blocks<int>(m.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      images[i] = eval(m.points[i]);
      if (images[i].size() != codomain_dim || !images[i].allFinite()) {
        throw ValidationError(label + ": map produced a non-finite or mis-sized point");
      }
    }
    return 0;
  });
  return images;
}

IsometryReport scan_ratios(const std::vector<Vector>& src, const std::vector<Vector>& img,
                           std::size_t pair_budget, std::uint64_t seed) {
  const std::size_t n = src.size();
  struct Extremes {
    double min_r2 = std::numeric_limits<double>::infinity();
    double max_r2 = 0.0;
    std::size_t min_i = 0, min_j = 0, max_i = 0, max_j = 0;
    std::size_t scanned = 0;
    bool collapsed = false;
    std::size_t col_i = 0, col_j = 0;
  };

  auto consider = [](Extremes& e, double r2, std::size_t i, std::size_t j) {
    if (r2 < e.min_r2) {
      e.min_r2 = r2;
      e.min_i = i;
      e.min_j = j;
    }
    if (r2 > e.max_r2) {
      e.max_r2 = r2;
      e.max_i = i;
      e.max_j = j;
    }
    ++e.scanned;
  };

  auto ratio2 = [&](Extremes& e, std::size_t i, std::size_t j) {
    const double d2 = (src[j] - src[i]).squaredNorm();
    if (d2 == 0.0) return;  // duplicate sample point, no constraint
    const double di2 = (img[j] - img[i]).squaredNorm();
    if (di2 == 0.0 && d2 > 1e-24) {
      if (!e.collapsed) {
        e.collapsed = true;
        e.col_i = i;
        e.col_j = j;
      }
      return;
    }
    consider(e, di2 / d2, i, j);
  };

  std::vector<Extremes> blocks;
  if (pair_budget == 0 || pair_budget >= n * (n - 1) / 2) {
    blocks = detail::parallel_blocks<Extremes>(
        n, [&](std::size_t begin, std::size_t end, std::size_t) {
          Extremes e;
          for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) ratio2(e, i, j);
          }
          return e;
        });
  } else {
    // seeded subsample of unordered pairs; budget recorded in the report
    auto eng = detail::seeded_engine(seed, 0x15);
    Extremes e;
    for (std::size_t p = 0; p < pair_budget; ++p) {
      std::size_t i = detail::uniform_index(eng, n);
      std::size_t j = detail::uniform_index(eng, n);
      if (i == j) continue;
      ratio2(e, std::min(i, j), std::max(i, j));
    }
    blocks.push_back(e);
  }

  Extremes total;
  for (const Extremes& e : blocks) {
    if (e.collapsed && !total.collapsed) {
      total.collapsed = true;
      total.col_i = e.col_i;
      total.col_j = e.col_j;
    }
    if (e.min_r2 < total.min_r2) {
      total.min_r2 = e.min_r2;
      total.min_i = e.min_i;
      total.min_j = e.min_j;
    }
    if (e.max_r2 > total.max_r2) {
      total.max_r2 = e.max_r2;
      total.max_i = e.max_i;
      total.max_j = e.max_j;
    }
    total.scanned += e.scanned;
  }
  if (total.collapsed) {
    throw CollapseError("isometry_constants: distinct points " + std::to_string(total.col_i) +
                        ", " + std::to_string(total.col_j) +
                        " map to identical images (l = 0, not bi-Lipschitz)");
  }
  if (total.scanned == 0) {
    throw TooFewPointsError("isometry_constants: no usable pairs in the sample");
  }

  IsometryReport report;
  report.l = std::sqrt(total.min_r2);
  report.u = std::sqrt(total.max_r2);
  report.delta = std::max(1.0 - report.l * report.l, report.u * report.u - 1.0);
  report.min_pair = {total.min_i, total.min_j};
  report.max_pair = {total.max_i, total.max_j};
  report.sample_pair_count = total.scanned;
  return report;
}

constexpr double kGramTol = 1e-13;

SampledManifold push_impl(const std::function<Vector(const Vector&)>& eval,
                          const std::function<Matrix(const Vector&)>& deriv, int domain_dim,
                          int codomain_dim, const std::string& label, const SampledManifold& m) {
  m.validate();
  if (m.ambient_dim() != domain_dim) {
    throw DimensionMismatchError(label + ": map domain dimension " + std::to_string(domain_dim) +
                                 " != sample ambient dimension " +
                                 std::to_string(m.ambient_dim()));
  }
  const std::size_t n = m.size();
  const int k = m.intrinsic_dim();
  std::vector<Vector> points = map_points(eval, m, codomain_dim, label);

  std::vector<Matrix> bases(n);
  detail::parallel_blocks<int>(n, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const Matrix transported = deriv(m.points[i]) * m.tangents[i].basis();
      Eigen::JacobiSVD<Matrix> svd(transported);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) < 1e-10 * std::max(1.0, sv(0))) {
        throw RankCollapseError(label + ": transported tangent at sample " + std::to_string(i) +
                                " dropped rank");
      }
      // already-orthonormal transports (isometries) are kept verbatim
      const Matrix gram = transported.transpose() * transported;
      if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() < kGramTol) {
        bases[i] = transported;
      } else {
        bases[i] = Subspace::orthonormalized(transported).basis();
      }
    }
    return 0;
  });

  SampledManifold out;
  out.points = std::move(points);
  out.params = m.params;
  out.tangents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.tangents.emplace_back(std::move(bases[i]));
  out.source_label = m.source_label + "|" + label;
  out.seed = m.seed;
  out.validate();
  return out;
}

}  // namespace

IsometryReport isometry_constants(const LinearMapSpec& map, const SampledManifold& m,
                                  std::size_t pair_budget) {
  m.validate();
  if (map.cols() != m.ambient_dim()) {
    throw DimensionMismatchError("isometry_constants: map takes R^" + std::to_string(map.cols()) +
                                 ", sample lives in R^" + std::to_string(m.ambient_dim()));
  }
  const auto eval = [&map](const Vector& x) { return Vector(map.matrix() * x); };
  const std::vector<Vector> img = map_points(eval, m, map.rows(), map.label());
  return scan_ratios(m.points, img, pair_budget, m.seed);
}

IsometryReport isometry_constants(const NonlinearMap& map, const SampledManifold& m,
                                  std::size_t pair_budget) {
  m.validate();
  if (map.domain_dim != m.ambient_dim()) {
    throw DimensionMismatchError("isometry_constants: map domain dimension mismatch");
  }
  const std::vector<Vector> img = map_points(map.eval, m, map.codomain_dim, map.label);
  return scan_ratios(m.points, img, pair_budget, m.seed);
}

SampledManifold pushforward(const LinearMapSpec& map, const SampledManifold& m) {
  const Matrix& a = map.matrix();
  return push_impl([&a](const Vector& x) { return Vector(a * x); },
                   [&a](const Vector&) { return a; }, map.cols(), map.rows(), map.label(), m);
}

SampledManifold pushforward(const NonlinearMap& map, const SampledManifold& m) {
  return push_impl(map.eval, [&map](const Vector& x) { return map.derivative_at(x); },
                   map.domain_dim, map.codomain_dim, map.label, m);
}

ParametricManifold compose(const LinearMapSpec& map, const ParametricManifold& manifold) {
  manifold.validate();
  if (map.cols() != manifold.ambient_dim) {
    throw DimensionMismatchError("compose: map/manifold dimension mismatch");
  }
  ParametricManifold out = manifold;
  out.ambient_dim = map.rows();
  const Matrix a = map.matrix();
  out.embed = [a, embed = manifold.embed](const Vector& t) { return Vector(a * embed(t)); };
  if (manifold.jacobian) {
    out.jacobian = [a, jac = manifold.jacobian](const Vector& t) { return Matrix(a * jac(t)); };
  } else {
    out.jacobian = nullptr;
  }
  out.label = manifold.label + "|" + map.label();
  out.known_reach.reset();
  return out;
}

ParametricManifold compose(const NonlinearMap& map, const ParametricManifold& manifold) {
  manifold.validate();
  if (map.domain_dim != manifold.ambient_dim) {
    throw DimensionMismatchError("compose: map/manifold dimension mismatch");
  }
  ParametricManifold out = manifold;
  out.ambient_dim = map.codomain_dim;
  out.embed = [map, embed = manifold.embed](const Vector& t) { return map.eval(embed(t)); };
  if (manifold.jacobian && map.dphi) {
    out.jacobian = [map, embed = manifold.embed, jac = manifold.jacobian](const Vector& t) {
      const Vector x = embed(t);
      return Matrix(map.dphi(x) * jac(t));
    };
  } else {
    out.jacobian = nullptr;
  }
  out.label = manifold.label + "|" + map.label;
  out.known_reach.reset();
  return out;
}

namespace {

void check_bump_params(double delta, double rho) {
  if (!(delta > 0.0) || !(rho > 0.0) || !(rho < delta / 2.0)) {
    throw ParameterError("bump parameters need 0 < rho < delta/2");
  }
}

// right-hand branch of the profile, x > 0
double bump_pos(double x, double delta, double rho) {
  if (x >= delta) return 0.0;
  if (x <= rho) {
    const double u = (x - rho) / rho;
    return -std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  if (x >= delta - rho) {
    const double u = (x - (delta - rho)) / rho;
    return -std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  return -1.0;
}

// integral of bump_f over [0, z] for z in [0, delta]; the flat middle piece
// contributes exactly -(length), only the two shoulders need quadrature
double bump_integral_0_to(double z, double delta, double rho, double tol) {
  double total = 0.0;
  const double z1 = std::min(z, rho);
  if (z1 > 0.0) {
    total += detail::adaptive_simpson([&](double x) { return bump_pos(x, delta, rho); }, 0.0, z1,
                                      tol);
  }
  if (z > rho) total += -(std::min(z, delta - rho) - rho);
  if (z > delta - rho) {
    total += detail::adaptive_simpson([&](double x) { return bump_pos(x, delta, rho); },
                                      delta - rho, std::min(z, delta), tol);
  }
  return total;
}

constexpr double kSimpsonTol = 1e-10;

}  // namespace

double bump_f(double x, double delta, double rho) {
  check_bump_params(delta, rho);
  if (!(std::abs(x) < 1.0)) throw ParameterError("bump_f: x must lie in (-1, 1)");
  if (x == 0.0) return 0.0;
  return x > 0.0 ? bump_pos(x, delta, rho) : -bump_pos(-x, delta, rho);
}

double triangle_wave_height(double x, double delta, double c) {
  if (!(delta > 0.0) || !(c > 0.0)) throw ParameterError("triangle wave: need delta, c > 0");
  const double a = std::abs(x);
  return a <= delta ? c * (1.0 - a / delta) : 0.0;
}

double counterexample_height(double x, double delta, double c, double rho) {
  check_bump_params(delta, rho);
  if (!(c > 0.0) || !(c < delta)) throw ParameterError("counterexample: need 0 < c < delta");
  const double a = std::abs(x);  // the height is even in x
  if (a >= delta) return 0.0;
  // integral from -delta to -|x| equals -(integral over [|x|, delta]) by oddness
  const double tail = bump_integral_0_to(delta, delta, rho, kSimpsonTol) -
                      bump_integral_0_to(a, delta, rho, kSimpsonTol);
  return (c / delta) * (-tail);
}

NonlinearMap counterexample_map(double delta, double c, double rho) {
  check_bump_params(delta, rho);
  if (!(c > 0.0) || !(c < delta) || !(delta < 1.0)) {
    throw ParameterError("counterexample_map: need 0 < c < delta < 1");
  }
  NonlinearMap map;
  map.domain_dim = 2;
  map.codomain_dim = 2;
  map.eval = [delta, c, rho](const Vector& p) {
    Vector out(2);
    out << p[0], p[1] + counterexample_height(p[0], delta, c, rho);
    return out;
  };
  map.dphi = [delta, c, rho](const Vector& p) {
    Matrix j(2, 2);
    const double slope = std::abs(p[0]) < 1.0 ? (c / delta) * bump_f(p[0], delta, rho) : 0.0;
    j << 1.0, 0.0, slope, 1.0;
    return j;
  };
  char buf[96];
  std::snprintf(buf, sizeof(buf), "counterexample(delta=%g,c=%g,rho=%g)", delta, c, rho);
  map.label = buf;
  return map;
}

NonlinearMap identity_map(int dim) {
  NonlinearMap map;
  map.domain_dim = dim;
  map.codomain_dim = dim;
  map.eval = [](const Vector& x) { return x; };
  map.dphi = [dim](const Vector&) { return Matrix(Matrix::Identity(dim, dim)); };
  map.label = "identity";
  return map;
}

}  // namespace reachlab
