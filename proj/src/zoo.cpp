#include "reachlab/zoo.hpp"

#include <cmath>
#include <limits>

#include "reachlab/detail/random_matrix.hpp"

namespace reachlab::zoo {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

ParamAxis periodic_circle_axis() { return ParamAxis{0.0, kTwoPi, true}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void require_positive(double r, const char* what) {
  if (!(r > 0.0)) throw ParameterError(std::string(what) + " must be positive");
}

}  // namespace

ParametricManifold circle(double radius) {
  require_positive(radius, "circle radius");
  ParametricManifold m;
  m.intrinsic_dim = 1;
  m.ambient_dim = 2;
  m.domain = {periodic_circle_axis()};
  m.embed = [radius](const Vector& t) {
    Vector x(2);
    x << radius * std::cos(t[0]), radius * std::sin(t[0]);
    return x;
  };
  m.jacobian = [radius](const Vector& t) {
    Matrix j(2, 1);
    j << -radius * std::sin(t[0]), radius * std::cos(t[0]);
    return j;
  };
  m.label = radius == 1.0 ? "circle" : "circle(" + fmt(radius) + ")";
  m.known_reach = radius;
  return m;
}

ParametricManifold ellipse(double r1, double r2) {
  require_positive(r1, "ellipse radius");
  require_positive(r2, "ellipse radius");
  ParametricManifold m;
  m.intrinsic_dim = 1;
  m.ambient_dim = 2;
  m.domain = {periodic_circle_axis()};
  m.embed = [r1, r2](const Vector& t) {
    Vector x(2);
    x << r1 * std::cos(t[0]), r2 * std::sin(t[0]);
    return x;
  };
  m.jacobian = [r1, r2](const Vector& t) {
    Matrix j(2, 1);
    j << -r1 * std::sin(t[0]), r2 * std::cos(t[0]);
    return j;
  };
  m.label = "ellipse(" + fmt(r1) + "," + fmt(r2) + ")";
  const double rmax = std::max(r1, r2);
  const double rmin = std::min(r1, r2);
  m.known_reach = rmin * rmin / rmax;
  return m;
}

ParametricManifold ellipsoid(double r1, double r2, double r3) {
  require_positive(r1, "ellipsoid radius");
  require_positive(r2, "ellipsoid radius");
  require_positive(r3, "ellipsoid radius");
  ParametricManifold m;
  m.intrinsic_dim = 2;
  m.ambient_dim = 3;
  // polar angle stays open to keep the chart nondegenerate at the poles
  m.domain = {ParamAxis{0.0, M_PI, false}, periodic_circle_axis()};
  m.embed = [r1, r2, r3](const Vector& t) {
    const double st = std::sin(t[0]), ct = std::cos(t[0]);
    const double sp = std::sin(t[1]), cp = std::cos(t[1]);
    Vector x(3);
    x << r1 * st * cp, r2 * st * sp, r3 * ct;
    return x;
  };
  m.jacobian = [r1, r2, r3](const Vector& t) {
    const double st = std::sin(t[0]), ct = std::cos(t[0]);
    const double sp = std::sin(t[1]), cp = std::cos(t[1]);
    Matrix j(3, 2);
    j << r1 * ct * cp, -r1 * st * sp,
         r2 * ct * sp,  r2 * st * cp,
        -r3 * st,       0.0;
    return j;
  };
  m.label = "ellipsoid(" + fmt(r1) + "," + fmt(r2) + "," + fmt(r3) + ")";
  const double rmax = std::max({r1, r2, r3});
  const double rmin = std::min({r1, r2, r3});
  m.known_reach = rmin * rmin / rmax;
  return m;
}

ParametricManifold sphere(double radius) {
  ParametricManifold m = ellipsoid(radius, radius, radius);
  m.label = radius == 1.0 ? "sphere" : "sphere(" + fmt(radius) + ")";
  m.known_reach = radius;
  return m;
}

ParametricManifold tilted_circle(double theta) {
  ParametricManifold m;
  m.intrinsic_dim = 1;
  m.ambient_dim = 3;
  m.domain = {periodic_circle_axis()};
  const double ct = std::cos(theta), st = std::sin(theta);
  m.embed = [ct, st](const Vector& t) {
    Vector x(3);
    x << std::cos(t[0]), std::sin(t[0]) * ct, std::sin(t[0]) * st;
    return x;
  };
  m.jacobian = [ct, st](const Vector& t) {
    Matrix j(3, 1);
    j << -std::sin(t[0]), std::cos(t[0]) * ct, std::cos(t[0]) * st;
    return j;
  };
  m.label = "tilted-circle(" + fmt(theta) + ")";
  m.known_reach = 1.0;  // a unit circle, however oriented
  return m;
}

ParametricManifold trefoil() {
  ParametricManifold m;
  m.intrinsic_dim = 1;
  m.ambient_dim = 3;
  m.domain = {periodic_circle_axis()};
  m.embed = [](const Vector& t) {
    const double u = t[0];
    Vector x(3);
    x << (2.0 + std::cos(3.0 * u)) * std::cos(2.0 * u),
         (2.0 + std::cos(3.0 * u)) * std::sin(2.0 * u),
         std::sin(3.0 * u);
    return x;
  };
  m.jacobian = [](const Vector& t) {
    const double u = t[0];
    const double r = 2.0 + std::cos(3.0 * u);
    const double dr = -3.0 * std::sin(3.0 * u);
    Matrix j(3, 1);
    j << dr * std::cos(2.0 * u) - 2.0 * r * std::sin(2.0 * u),
         dr * std::sin(2.0 * u) + 2.0 * r * std::cos(2.0 * u),
         3.0 * std::cos(3.0 * u);
    return j;
  };
  m.label = "trefoil";
  return m;
}

ParametricManifold segment() {
  ParametricManifold m;
  m.intrinsic_dim = 1;
  m.ambient_dim = 2;
  m.domain = {ParamAxis{-1.0, 1.0, false}};
  m.embed = [](const Vector& t) {
    Vector x(2);
    x << t[0], 0.0;
    return x;
  };
  m.jacobian = [](const Vector&) {
    Matrix j(2, 1);
    j << 1.0, 0.0;
    return j;
  };
  m.label = "segment";
  m.known_reach = std::numeric_limits<double>::infinity();
  return m;
}

ParametricManifold pad_with_rotation(const ParametricManifold& m, int n_target,
                                     std::uint64_t seed) {
  if (n_target < m.ambient_dim) {
    throw ParameterError("pad_with_rotation: target dimension below ambient dimension");
  }
  const Matrix q = detail::haar_orthogonal(n_target, seed, 0x9a);
  const int n0 = m.ambient_dim;
  ParametricManifold out = m;
  out.ambient_dim = n_target;
  out.embed = [embed = m.embed, q, n0, n_target](const Vector& t) {
    Vector padded = Vector::Zero(n_target);
    padded.head(n0) = embed(t);
    return Vector(q * padded);
  };
  if (m.jacobian) {
    out.jacobian = [jac = m.jacobian, q, n0, n_target](const Vector& t) {
      const Matrix j0 = jac(t);
      Matrix padded = Matrix::Zero(n_target, j0.cols());
      padded.topRows(n0) = j0;
      return Matrix(q * padded);
    };
  }
  out.label = m.label + "+pad(" + std::to_string(n_target) + ",seed=" + std::to_string(seed) + ")";
  // rigid motion: reach carries over
  out.known_reach = m.known_reach;
  return out;
}

std::vector<std::string> describe_entries() {
  return {
      "circle [radius > 0, default 1]           unit circle in R^2, reach = radius",
      "ellipse <r1> <r2>                        axis-aligned ellipse in R^2, reach = min^2/max",
      "ellipsoid <r1> <r2> <r3>                 ellipsoid surface in R^3 (k=2)",
      "sphere [radius > 0, default 1]           sphere in R^3 (k=2), reach = radius",
      "tilted-circle <theta>                    unit circle in R^3 through e1, plane at angle "
      "theta to e2",
      "trefoil                                  trefoil knot in R^3",
      "segment                                  open flat segment {(x,0) : |x|<1}, reach = +inf",
      "  optional: pad_to <n>, pad_seed <s>     zero-pad then rotate into R^n",
  };
}

}  // namespace reachlab::zoo
