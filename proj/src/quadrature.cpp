#include "reachlab/detail/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace reachlab::detail {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
  nodes.resize(order);
  weights.resize(order);
  // Newton iteration on P_n from the Chebyshev-like initial guess; symmetric,
  // so only half the roots are computed.
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

const GaussLegendre& GaussLegendre::order16() {
  static const GaussLegendre rule(16);
  return rule;
}

double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int cells,
                    const GaussLegendre& rule) {
  if (cells < 1) cells = 1;
  const double h = (hi - lo) / cells;
  double total = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double a = lo + c * h;
    const double mid = a + 0.5 * h;
    double cell = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      cell += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
    }
    total += 0.5 * h * cell;
  }
  return total;
}

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth) {
  if (lo == hi) return 0.0;
  const double fa = f(lo);
  const double fm = f(0.5 * (lo + hi));
  const double fb = f(hi);
  const double whole = simpson(fa, fm, fb, hi - lo);
  return adaptive_step(f, lo, hi, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace reachlab::detail
