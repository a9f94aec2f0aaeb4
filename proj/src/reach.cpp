#include "reachlab/reach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reachlab/detail/parallel.hpp"
#include "reachlab/detail/rng.hpp"

namespace reachlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw NonpositiveRadiusError("ellipsoid: no radii given");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw NonpositiveRadiusError("ellipsoid: radii must be positive and finite");
    }
  }
}

}  // namespace

bool ReachEstimate::is_infinite() const { return std::isinf(value); }

double ellipsoid_reach(std::vector<double> radii) {
  check_radii(radii);
  const auto [mn, mx] = std::minmax_element(radii.begin(), radii.end());
  return (*mn) * (*mn) / (*mx);
}

double ellipsoid_max_curvature(std::vector<double> radii) {
  check_radii(radii);
  const auto [mn, mx] = std::minmax_element(radii.begin(), radii.end());
  return (*mx) / ((*mn) * (*mn));
}

ReachEstimate estimate_reach(const SampledManifold& m) {
  m.validate();
  const std::size_t n = m.size();

  struct Best {
    double q2 = kInf;  // squared quotient; comparing q^2 avoids a sqrt per pair
    std::size_t i = 0, j = 0;
  };

  const auto blocks = detail::parallel_blocks<Best>(
      n, [&](std::size_t begin, std::size_t end, std::size_t) {
        Best best;
        for (std::size_t i = begin; i < end; ++i) {
          const Vector& x = m.points[i];
          const Matrix& basis = m.tangents[i].basis();
          for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vector d = m.points[j] - x;
            const double dd = d.squaredNorm();
            const double tangential = (basis.transpose() * d).squaredNorm();
            const double dist2 = dd - tangential;
            // dist <= 1e-12 |d|  <=>  dist^2 <= 1e-24 |d|^2: treat as +inf
            if (!(dist2 > 1e-24 * dd)) continue;
            const double q2 = dd * dd / (4.0 * dist2);
            if (q2 < best.q2 || (q2 == best.q2 && (i < best.i || (i == best.i && j < best.j)))) {
              best = Best{q2, i, j};
            }
          }
        }
        return best;
      });

  Best best;
  for (const Best& b : blocks) {
    if (b.q2 < best.q2 || (b.q2 == best.q2 && (b.i < best.i || (b.i == best.i && b.j < best.j)))) {
      best = b;
    }
  }

  ReachEstimate out;
  out.method = ReachMethod::kSampledPointwise;
  out.sample_count = n;
  if (std::isinf(best.q2)) {
    out.value = kInf;
  } else {
    out.value = std::sqrt(best.q2);
    out.attaining_pair = std::make_pair(best.i, best.j);
  }
  return out;
}

bool normal_bundle_embedding_test(const SampledManifold& m, double r,
                                  std::size_t probes_per_point, std::uint64_t seed) {
  m.validate();
  if (!(r > 0.0)) throw ParameterError("normal_bundle_embedding_test: r must be positive");
  const std::size_t n = m.size();
  const int ambient = m.ambient_dim();
  const int k = m.intrinsic_dim();
  if (k >= ambient) return true;  // trivial normal bundle

  std::vector<Subspace> normals;
  normals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) normals.push_back(normal_space(m.tangents[i]));

  auto eng = detail::seeded_engine(seed, 0x17);
  const double cap = r * (1.0 - 1e-9);
  const double min_sep = 2.0 * r * 1e-3;
  const double collide_tol = 1e-6 * r;
  const std::size_t total = std::min<std::size_t>(n * probes_per_point, 500000);

  for (std::size_t probe = 0; probe < total; ++probe) {
    const std::size_t i = detail::uniform_index(eng, n);
    const std::size_t j = detail::uniform_index(eng, n);
    if (i == j) continue;
    const Vector& xi = m.points[i];
    const Vector& xj = m.points[j];
    if ((xi - xj).norm() <= min_sep) continue;

    // random normal start vector at x_i with |v| < r
    Vector coeff(ambient - k);
    for (int c = 0; c < ambient - k; ++c) coeff[c] = detail::normal(eng);
    double cn = coeff.norm();
    if (cn == 0.0) continue;
    Vector v1 = normals[i].basis() * (coeff * (detail::uniform(eng, 0.0, cap) / cn));
    Vector v2 = Vector::Zero(ambient);

    // Alternating projection between the two capped normal discs; both are
    // convex, so the gap converges to the true closest approach.
    for (int iter = 0; iter < 80; ++iter) {
      Vector w = (xi + v1) - xj;
      v2 = normals[j].project(w);
      if (v2.norm() > cap) v2 *= cap / v2.norm();
      Vector w2 = (xj + v2) - xi;
      v1 = normals[i].project(w2);
      if (v1.norm() > cap) v1 *= cap / v1.norm();
    }
    const double gap = ((xi + v1) - (xj + v2)).norm();
    if (gap < collide_tol) return false;
  }
  return true;
}

bool curvature_bound_check(const ParametricManifold& manifold, double reach_value,
                           std::size_t n_probes) {
  manifold.validate();
  if (manifold.intrinsic_dim != 1) {
    throw UnsupportedDimensionError("curvature_bound_check: curves only (k = 1)");
  }
  if (!(reach_value > 0.0)) {
    throw ParameterError("curvature_bound_check: reach_value must be positive");
  }
  if (n_probes < 1) throw ParameterError("curvature_bound_check: need at least one probe");

  const ParamAxis& ax = manifold.domain[0];
  const double step = 1e-5;  // parameter step for differentiating the unit tangent

  auto unit_tangent = [&](double t) {
    Vector p(1);
    p[0] = t;
    const Vector vel = jacobian_at(manifold, p).col(0);
    return Vector(vel / vel.norm());
  };

  const double limit = (1.0 / reach_value) * (1.0 + 1e-3);
  for (std::size_t i = 0; i < n_probes; ++i) {
    double t;
    if (ax.periodic) {
      t = ax.lo + ax.span() * static_cast<double>(i) / static_cast<double>(n_probes);
    } else {
      t = ax.lo + ax.span() * (static_cast<double>(i) + 0.5) / static_cast<double>(n_probes);
      // keep the stencil inside the open domain
      t = std::clamp(t, ax.lo + 2.0 * step, ax.hi - 2.0 * step);
    }
    Vector p(1);
    p[0] = t;
    const double speed = jacobian_at(manifold, p).col(0).norm();
    const Vector dT = (unit_tangent(t + step) - unit_tangent(t - step)) / (2.0 * step);
    const double curvature = dT.norm() / speed;
    if (curvature > limit) return false;
  }
  return true;
}

}  // namespace reachlab
