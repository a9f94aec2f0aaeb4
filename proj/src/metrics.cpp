#include "reachlab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "reachlab/detail/parallel.hpp"
#include "reachlab/detail/quadrature.hpp"

namespace reachlab {

double diameter(const SampledManifold& m) {
  m.validate();
  const std::size_t n = m.size();
  const auto block_max = detail::parallel_blocks<double>(
      n, [&](std::size_t begin, std::size_t end, std::size_t) {
        double best = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            best = std::max(best, (m.points[j] - m.points[i]).squaredNorm());
          }
        }
        return best;
      });
  double best = 0.0;
  for (double b : block_max) best = std::max(best, b);
  return std::sqrt(best);
}

namespace {

double arc_length(const ParametricManifold& manifold, double lo, double hi,
                  const QuadratureSpec& quad) {
  const detail::GaussLegendre rule(quad.nodes);
  return detail::integrate_gl(
      [&](double t) {
        Vector p(1);
        p[0] = t;
        return jacobian_at(manifold, p).col(0).norm();
      },
      lo, hi, quad.cells, rule);
}

double surface_area(const ParametricManifold& manifold, const QuadratureSpec& quad) {
  const detail::GaussLegendre rule(quad.nodes);
  const ParamAxis& au = manifold.domain[0];
  const ParamAxis& av = manifold.domain[1];
  const double hu = au.span() / quad.cells;
  const double hv = av.span() / quad.cells;
  // Parallel over u-rows; per-row sums are combined serially in row order so
  // the total is independent of the worker count.
  const auto row_sums = detail::parallel_blocks<std::vector<double>>(
      static_cast<std::size_t>(quad.cells),
      [&](std::size_t begin, std::size_t end, std::size_t) {
        std::vector<double> rows;
        rows.reserve(end - begin);
        Vector p(2);
        for (std::size_t cu = begin; cu < end; ++cu) {
          double row = 0.0;
          const double mu = au.lo + (static_cast<double>(cu) + 0.5) * hu;
          for (int cv = 0; cv < quad.cells; ++cv) {
            const double mv = av.lo + (cv + 0.5) * hv;
            for (std::size_t qu = 0; qu < rule.nodes.size(); ++qu) {
              p[0] = mu + 0.5 * hu * rule.nodes[qu];
              double inner = 0.0;
              for (std::size_t qv = 0; qv < rule.nodes.size(); ++qv) {
                p[1] = mv + 0.5 * hv * rule.nodes[qv];
                const Matrix jac = jacobian_at(manifold, p);
                const double det = (jac.transpose() * jac).determinant();
                inner += rule.weights[qv] * std::sqrt(std::max(det, 0.0));
              }
              row += rule.weights[qu] * inner;
            }
          }
          rows.push_back(row * 0.25 * hu * hv);
        }
        return rows;
      });
  double total = 0.0;
  for (const auto& rows : row_sums) {
    for (double r : rows) total += r;
  }
  return total;
}

}  // namespace

double volume_k(const SampledManifold& m, const ParametricManifold& manifold,
                const QuadratureSpec& quad) {
  manifold.validate();
  const int k = manifold.intrinsic_dim;
  if (k > 2) {
    throw UnsupportedDimensionError("volume_k: only k in {1, 2} supported, got k=" +
                                    std::to_string(k));
  }
  if (m.intrinsic_dim() != k) {
    throw ValidationError("volume_k: sample and chart disagree on intrinsic dimension");
  }
  if (k == 1) return arc_length(manifold, manifold.domain[0].lo, manifold.domain[0].hi, quad);
  return surface_area(manifold, quad);
}

MetricSummary metric_summary(const SampledManifold& m, const ParametricManifold& manifold,
                             const QuadratureSpec& quad) {
  MetricSummary out;
  out.intrinsic_dim = manifold.intrinsic_dim;
  out.diameter = diameter(m);
  if (manifold.intrinsic_dim <= 2) out.volume_k = volume_k(m, manifold, quad);
  return out;
}

double geodesic_distance(const ParametricManifold& manifold, double t1, double t2,
                         const QuadratureSpec& quad) {
  manifold.validate();
  if (manifold.intrinsic_dim != 1) {
    throw UnsupportedDimensionError("geodesic_distance: curves only (k = 1)");
  }
  const ParamAxis& ax = manifold.domain[0];
  double a = std::min(t1, t2), b = std::max(t1, t2);
  if (!ax.periodic) {
    if (a == b) return 0.0;
    QuadratureSpec local = quad;
    local.cells = std::max(16, static_cast<int>(quad.cells * (b - a) / ax.span()));
    return arc_length(manifold, a, b, local);
  }
  // shorter way around: compare the forward arc with the complement
  const double span = ax.span();
  double d = std::fmod(b - a, span);
  if (d == 0.0) return 0.0;
  QuadratureSpec fwd = quad;
  fwd.cells = std::max(16, static_cast<int>(quad.cells * d / span));
  const double forward = arc_length(manifold, a, a + d, fwd);
  const double total = arc_length(manifold, ax.lo, ax.hi, quad);
  return std::min(forward, total - forward);
}

double principal_angle_cos(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatchError("principal_angle_cos: ambient dimensions differ");
  }
  if (a.dim() > b.dim()) {
    throw DimensionMismatchError("principal_angle_cos: need dim(a) <= dim(b)");
  }
  const Matrix cross = a.basis().transpose() * b.basis();
  Eigen::JacobiSVD<Matrix> svd(cross);
  const double smallest = svd.singularValues().tail(1)(0);
  return std::clamp(smallest, 0.0, 1.0);
}

}  // namespace reachlab
