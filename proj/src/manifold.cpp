#include "reachlab/manifold.hpp"

#include <cmath>

#include "reachlab/detail/parallel.hpp"
#include "reachlab/detail/rng.hpp"

namespace reachlab {

namespace {

constexpr double kRankTol = 1e-8;  // relative floor on the smallest singular value

double wrap_periodic(double t, const ParamAxis& axis) {
  const double span = axis.span();
  double u = std::fmod(t - axis.lo, span);
  if (u < 0) u += span;
  return axis.lo + u;
}

void check_in_domain(const ParametricManifold& m, const Vector& t) {
  if (t.size() != m.intrinsic_dim) {
    throw ValidationError(m.label + ": parameter point has dimension " + std::to_string(t.size()) +
                          ", expected " + std::to_string(m.intrinsic_dim));
  }
  for (int j = 0; j < m.intrinsic_dim; ++j) {
    const ParamAxis& ax = m.domain[j];
    if (ax.periodic) continue;
    const double slack = 1e-12 * std::max(1.0, std::abs(ax.span()));
    if (t[j] < ax.lo - slack || t[j] > ax.hi + slack) {
      throw ValidationError(m.label + ": parameter coordinate " + std::to_string(j) +
                            " outside domain");
    }
  }
}

Vector embed_checked(const ParametricManifold& m, const Vector& t) {
  Vector x = m.embed(t);
  if (x.size() != m.ambient_dim || !x.allFinite()) {
    throw ValidationError(m.label + ": embed produced a non-finite or mis-sized point");
  }
  return x;
}

Matrix finite_difference_jacobian(const ParametricManifold& m, const Vector& t) {
  const int k = m.intrinsic_dim;
  Matrix jac(m.ambient_dim, k);
  for (int j = 0; j < k; ++j) {
    const ParamAxis& ax = m.domain[j];
    const double h = 1e-6 * std::max(1.0, std::abs(t[j]));
    Vector tp = t, tm = t;
    if (ax.periodic) {
      tp[j] = wrap_periodic(t[j] + h, ax);
      tm[j] = wrap_periodic(t[j] - h, ax);
      jac.col(j) = (m.embed(tp) - m.embed(tm)) / (2.0 * h);
      continue;
    }
    const bool near_hi = t[j] + h > ax.hi;
    const bool near_lo = t[j] - h < ax.lo;
    if (!near_hi && !near_lo) {
      tp[j] = t[j] + h;
      tm[j] = t[j] - h;
      jac.col(j) = (m.embed(tp) - m.embed(tm)) / (2.0 * h);
    } else if (near_hi) {
      // second-order one-sided stencil into the interior
      Vector t1 = t, t2 = t;
      t1[j] = t[j] - h;
      t2[j] = t[j] - 2.0 * h;
      jac.col(j) = (3.0 * m.embed(t) - 4.0 * m.embed(t1) + m.embed(t2)) / (2.0 * h);
    } else {
      Vector t1 = t, t2 = t;
      t1[j] = t[j] + h;
      t2[j] = t[j] + 2.0 * h;
      jac.col(j) = (-3.0 * m.embed(t) + 4.0 * m.embed(t1) - m.embed(t2)) / (2.0 * h);
    }
  }
  return jac;
}

}  // namespace

void ParametricManifold::validate() const {
  if (intrinsic_dim < 1 || ambient_dim < intrinsic_dim) {
    throw ValidationError(label + ": need 1 <= k <= n");
  }
  if (static_cast<int>(domain.size()) != intrinsic_dim) {
    throw ValidationError(label + ": domain must have one axis per intrinsic dimension");
  }
  for (const ParamAxis& ax : domain) {
    if (!(ax.span() > 0.0) || !std::isfinite(ax.lo) || !std::isfinite(ax.hi)) {
      throw ValidationError(label + ": parameter axis is empty or non-finite");
    }
  }
  if (!embed) throw ValidationError(label + ": embed function missing");
}

void SampledManifold::validate() const {
  const std::size_t n = points.size();
  if (n < 2) throw TooFewPointsError(source_label + ": sample needs at least 2 points");
  if (params.size() != n || tangents.size() != n) {
    throw ValidationError(source_label + ": points/params/tangents lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i].allFinite() || !params[i].allFinite()) {
      throw ValidationError(source_label + ": non-finite coordinates at index " +
                            std::to_string(i));
    }
  }
}

Matrix jacobian_at(const ParametricManifold& manifold, const Vector& param_point) {
  check_in_domain(manifold, param_point);
  Matrix jac = manifold.has_analytic_jacobian() ? manifold.jacobian(param_point)
                                                : finite_difference_jacobian(manifold, param_point);
  if (jac.rows() != manifold.ambient_dim || jac.cols() != manifold.intrinsic_dim ||
      !jac.allFinite()) {
    throw ValidationError(manifold.label + ": Jacobian non-finite or mis-sized");
  }
  return jac;
}

Subspace tangent_space(const ParametricManifold& manifold, const Vector& param_point) {
  const Matrix jac = jacobian_at(manifold, param_point);
  Eigen::JacobiSVD<Matrix> svd(jac);
  const auto& sv = svd.singularValues();
  // Rank loss shows up two ways: a trailing singular value collapsing
  // relative to the leading one (k >= 2), or the whole Jacobian vanishing
  // (k = 1 cusp), which a relative test cannot see.
  const double scale = std::max(1.0, embed_checked(manifold, param_point).norm());
  if (sv[0] <= 1e-10 * scale || sv[sv.size() - 1] < kRankTol * sv[0]) {
    throw DegenerateJacobianError(manifold.label + ": Jacobian rank-deficient at a sample point");
  }
  return Subspace::orthonormalized(jac);
}

Subspace normal_space(const Subspace& tangent) {
  const int n = tangent.ambient_dim();
  const int d = tangent.dim();
  if (d >= n) {
    throw FullSpaceError("normal_space: tangent already spans the ambient space");
  }
  Eigen::HouseholderQR<Matrix> qr(tangent.basis());
  const Matrix full_q = qr.householderQ() * Matrix::Identity(n, n);
  return Subspace(full_q.rightCols(n - d));
}

namespace {

// Golden-ratio offsets make the k >= 2 "grid" an equidistributed rank-1
// lattice with exactly n_samples points.
Vector lattice_param(const ParametricManifold& m, std::size_t i, std::size_t n) {
  const int k = m.intrinsic_dim;
  Vector t(k);
  double alpha = 0.6180339887498949;  // 1/phi
  for (int j = 0; j < k; ++j) {
    double u;
    if (j == 0) {
      u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    } else {
      u = std::fmod((static_cast<double>(i) + 0.5) * alpha, 1.0);
      alpha = std::fmod(alpha * 0.7548776662466927, 1.0) + 0.1;  // decorrelate further axes
    }
    t[j] = m.domain[j].lo + m.domain[j].span() * u;
  }
  return t;
}

Vector grid_param_1d(const ParametricManifold& m, std::size_t i, std::size_t n) {
  const ParamAxis& ax = m.domain[0];
  Vector t(1);
  if (ax.periodic) {
    t[0] = ax.lo + ax.span() * static_cast<double>(i) / static_cast<double>(n);
  } else {
    // open interval: inset by half a step so both endpoints stay excluded
    t[0] = ax.lo + ax.span() * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  }
  return t;
}

}  // namespace

SampledManifold sample(const ParametricManifold& manifold, std::size_t n_samples,
                       SampleStrategy strategy, std::uint64_t seed) {
  manifold.validate();
  if (n_samples < 2) throw TooFewPointsError(manifold.label + ": n_samples must be >= 2");

  std::vector<Vector> params(n_samples);
  if (strategy == SampleStrategy::kSeededRandom) {
    auto eng = detail::seeded_engine(seed, 0x5a);
    for (std::size_t i = 0; i < n_samples; ++i) {
      Vector t(manifold.intrinsic_dim);
      for (int j = 0; j < manifold.intrinsic_dim; ++j) {
        t[j] = detail::uniform(eng, manifold.domain[j].lo, manifold.domain[j].hi);
      }
      params[i] = std::move(t);
    }
  } else {
    for (std::size_t i = 0; i < n_samples; ++i) {
      params[i] = manifold.intrinsic_dim == 1 ? grid_param_1d(manifold, i, n_samples)
                                              : lattice_param(manifold, i, n_samples);
    }
  }

  std::vector<Vector> points(n_samples);
  std::vector<Matrix> bases(n_samples);
  // Tangent computations at distinct parameter points are independent;
  // results are indexed by sample position, not completion order.
  detail::parallel_blocks<int>(n_samples, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      points[i] = embed_checked(manifold, params[i]);
      bases[i] = tangent_space(manifold, params[i]).basis();
    }
    return 0;
  });

  SampledManifold out;
  out.points = std::move(points);
  out.params = std::move(params);
  out.tangents.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) out.tangents.emplace_back(std::move(bases[i]));
  out.source_label = manifold.label;
  out.seed = seed;
  out.validate();
  return out;
}

}  // namespace reachlab
