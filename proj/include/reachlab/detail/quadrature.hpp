#pragma once

#include <functional>
#include <vector>

namespace reachlab::detail {

/// Gauss–Legendre nodes/weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);

  /// Shared 16-node rule (the library-wide default).
  static const GaussLegendre& order16();
};

/// Composite Gauss–Legendre integral of f over [lo, hi] with `cells` equal
/// subintervals. Cells are summed in index order, so results are bitwise
/// reproducible.
double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int cells,
                    const GaussLegendre& rule = GaussLegendre::order16());

/// Adaptive Simpson with absolute tolerance. Assumes f is smooth on [lo, hi].
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth = 40);

}  // namespace reachlab::detail
