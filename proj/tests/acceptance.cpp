// Acceptance suite: runs every end-to-end criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "reachlab/verify.hpp"
#include "reachlab/zoo.hpp"

using namespace reachlab;

namespace {

int g_failures = 0;

void criterion(int id, const char* description, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, description,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

LinearMapSpec diag_padded(int n) {
  Matrix m = Matrix::Identity(n, n);
  m(0, 0) = 3.0;
  m(1, 1) = 0.5;
  return LinearMapSpec::from_matrix(std::move(m), "diag(3,0.5,1...)");
}

LinearMapSpec matrix2x3(double a, double b) {
  Matrix m(2, 3);
  m << a, 0, 0, 0, b, 0;
  return LinearMapSpec::from_matrix(std::move(m), "rows2x3");
}

// FD second-fundamental-form oracle for surface principal curvature.
double numeric_max_principal_curvature(const ParametricManifold& m, const Vector& t) {
  const double h = 1e-5;
  auto at = [&](double du, double dv) {
    Vector p = t;
    p[0] += du;
    p[1] += dv;
    return m.embed(p);
  };
  const Vector ru = (at(h, 0) - at(-h, 0)) / (2 * h);
  const Vector rv = (at(0, h) - at(0, -h)) / (2 * h);
  const Vector ruu = (at(h, 0) - 2 * at(0, 0) + at(-h, 0)) / (h * h);
  const Vector rvv = (at(0, h) - 2 * at(0, 0) + at(0, -h)) / (h * h);
  const Vector ruv = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
  Eigen::Vector3d n = Eigen::Vector3d(ru).cross(Eigen::Vector3d(rv));
  n /= n.norm();
  Matrix first(2, 2), second(2, 2);
  first << ru.dot(ru), ru.dot(rv), ru.dot(rv), rv.dot(rv);
  second << ruu.dot(n), ruv.dot(n), ruv.dot(n), rvv.dot(n);
  const Eigen::EigenSolver<Matrix> eig(first.inverse() * second);
  return std::max(std::abs(eig.eigenvalues()(0).real()),
                  std::abs(eig.eigenvalues()(1).real()));
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double closed = ellipsoid_reach({3.0, 0.5});
  const bool closed_ok = closed == 1.0 / 12.0;
  const auto s = sample(zoo::ellipse(3.0, 0.5), 8192, SampleStrategy::kUniformGrid, 1);
  const double est = estimate_reach(s).value;
  const double elapsed = seconds_since(t0);
  const bool est_ok = std::abs(est - 1.0 / 12.0) <= 0.02 / 12.0;
  criterion(1, "ellipse (3, 1/2): closed-form reach 1/12, estimate within 2% at N=8192",
            closed_ok && est_ok && elapsed < 10.0,
            fmt("estimate=%.6f, elapsed=%.2fs", est, elapsed));
}

void criterion_2() {
  const auto s = sample(zoo::circle(), 4096, SampleStrategy::kUniformGrid, 1);
  const double est = estimate_reach(s).value;
  criterion(2, "unit circle: reach estimate 1 within 0.5% at N=4096",
            std::abs(est - 1.0) <= 0.005, fmt("estimate=%.8f", est));
}

void criterion_3() {
  Matrix d(2, 2);
  d << 3.0, 0.0, 0.0, 0.5;
  const auto ex1 = check_reach_lower_bound(zoo::circle(),
                                           LinearMapSpec::from_matrix(d, "diag(3,0.5)"), 8192, 1);
  const double theta = M_PI / 6.0;
  const auto ex2 =
      check_reach_lower_bound(zoo::tilted_circle(theta), make_projection_map(2, 3), 8192, 1);
  const auto ex3 =
      check_reach_lower_bound(zoo::tilted_circle(theta), matrix2x3(2.0, 1.0), 8192, 1);
  const double r1 = ex1.measured.at("ratio");
  const double r2 = ex2.measured.at("ratio");
  const double r3 = ex3.measured.at("ratio");
  const bool ok = ex1.passed && ex2.passed && ex3.passed &&
                  std::abs(r1 - 1.0) <= 0.02 && std::abs(r2 - 1.0) <= 0.02 &&
                  std::abs(r3 - 4.0) <= 4.0 * 0.02;
  criterion(3, "reach lower bound: attained on worked examples 1-2, slack 4 on example 3", ok,
            fmt("ratios %.4f, %.4f, %.4f", r1, r2, r3));
}

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_counterexample(0.1, 0.05, 0.01, 8192);
  const double elapsed = seconds_since(t0);
  const double u = r.measured.at("u");
  const double l = r.measured.at("l");
  const double reach_image = r.measured.at("reach_image");
  const bool ok = r.passed && u > 1.0 && u <= 1.5 + 1e-6 && l >= 1.0 - 1e-9 &&
                  reach_image <= 0.0722 && std::isinf(r.measured.at("reach_domain")) &&
                  elapsed < 30.0;
  criterion(4, "cusp counterexample (delta=0.1, c=0.05, rho=0.01): reach collapses", ok,
            fmt("u=%.4f, reach=%.4f, elapsed=%.1fs", u, reach_image, elapsed));
}

void criterion_5() {
  const std::vector<ParametricManifold> zoo_all = {
      zoo::circle(),       zoo::ellipse(3.0, 0.5),
      zoo::ellipsoid(2.0, 1.0, 0.5), zoo::sphere(),
      zoo::tilted_circle(M_PI / 6.0), zoo::trefoil(),
      zoo::segment()};
  int total = 0, passed = 0;
  std::string first_failure;
  for (const auto& m : zoo_all) {
    const int n = m.ambient_dim;
    const std::vector<AnyMap> maps = {AnyMap(make_orthogonal_map(n, 101 + total)),
                                      AnyMap(diag_padded(n)),
                                      AnyMap(make_gaussian_map(n, n, 202 + total))};
    for (const auto& map : maps) {
      const auto r = check_basic_properties(m, map, 8192, 1);
      ++total;
      if (r.passed) {
        ++passed;
      } else if (first_failure.empty()) {
        first_failure = r.inputs_digest.at("manifold") + " x " + r.inputs_digest.at("map");
      }
    }
  }
  criterion(5, "diameter/volume sandwich over the full zoo x map matrix",
            passed == total,
            fmt("%g/%g combinations", passed, total) +
                (first_failure.empty() ? "" : ", first failure: " + first_failure));
}

void criterion_6() {
  int total = 0, passed = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto on_circle = check_angles_exact(zoo::circle(), make_orthogonal_map(2, 301 + rep),
                                              100, 1 + rep, 4096);
    const auto on_sphere = check_angles_exact(zoo::sphere(), make_orthogonal_map(3, 401 + rep),
                                              100, 1 + rep, 4096);
    total += 2;
    passed += on_circle.passed + on_sphere.passed;
    worst = std::max({worst, on_circle.measured.at("max_deviation"),
                      on_sphere.measured.at("max_deviation")});
  }
  criterion(6, "angle preservation under 20 orthogonal maps x 100 pairs (circle, sphere)",
            passed == total, fmt("max deviation %.2e", worst));
}

void criterion_7() {
  struct Combo {
    ParametricManifold m;
    LinearMapSpec map;
  };
  Matrix d(2, 2);
  d << 3.0, 0.0, 0.0, 0.5;
  const double theta = M_PI / 6.0;
  const std::vector<Combo> combos = {
      {zoo::circle(), LinearMapSpec::from_matrix(d, "diag(3,0.5)")},
      {zoo::tilted_circle(theta), make_projection_map(2, 3)},
      {zoo::tilted_circle(theta), matrix2x3(2.0, 1.0)},
      {zoo::ellipse(2.0, 1.0), make_gaussian_map(2, 2, 555)},
      {zoo::trefoil(), make_gaussian_map(3, 3, 556)},
  };
  int passed = 0;
  double worst_margin = 1e300;
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const auto r = check_angle_bound(combos[i].m, combos[i].map, 10000, 7 + i, 8192);
    passed += r.passed;
    worst_margin = std::min(worst_margin, r.measured.at("min_margin"));
  }
  criterion(7, "tangent-angle bound holds for 10^4 pairs on 5 manifold/map combinations",
            passed == static_cast<int>(combos.size()),
            fmt("%g/5 combos, smallest margin %.3e", double(passed), worst_margin));
}

void criterion_8() {
  int total = 0, passed = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    for (const auto& m : {zoo::ellipse(3.0, 0.5), zoo::trefoil()}) {
      const auto r = check_reach_exact(m, make_orthogonal_map(m.ambient_dim, 601 + rep), 2048, 1);
      ++total;
      passed += r.passed;
      worst = std::max(worst, r.measured.at("relative_difference"));
    }
  }
  criterion(8, "reach estimates unchanged (1e-9 relative) across 20 orthogonal maps",
            passed == total, fmt("max relative difference %.2e", worst));
}

void criterion_9() {
  const auto padded = zoo::pad_with_rotation(zoo::tilted_circle(M_PI / 6.0), 10, 11);
  const auto reports = random_projection_experiment(padded, 3, 100, 13, 1024);
  const auto& summary = reports.back();
  const double pass_rate = summary.measured.at("pass_rate");
  const double sigma_mean = summary.measured.at("sigma_mean");
  const double cluster = std::sqrt(10.0 / 3.0);
  criterion(9,
            "100 Gaussian maps (m=3, n=10) on the padded tilted circle: bound holds, "
            "singular values cluster",
            summary.passed,
            fmt("pass rate %.2f, mean sigma %.3f vs sqrt(10/3)=%.3f", pass_rate, sigma_mean,
                cluster));
}

void criterion_10() {
  bool ok = true;
  std::string detail;

  // estimator monotonicity under sample supersets (periodic grids nest on doubling)
  {
    const auto coarse = sample(zoo::trefoil(), 256, SampleStrategy::kUniformGrid, 0);
    const auto fine = sample(zoo::trefoil(), 512, SampleStrategy::kUniformGrid, 0);
    if (!(estimate_reach(fine).value <= estimate_reach(coarse).value + 1e-12)) {
      ok = false;
      detail = "monotonicity";
    }
  }

  // scaling covariance: reach/diameter/volume/isometry constants under s = 2
  if (ok) {
    const auto m1 = zoo::ellipse(3.0, 0.5);
    const auto m2 = zoo::ellipse(6.0, 1.0);
    const auto s1 = sample(m1, 1024, SampleStrategy::kUniformGrid, 0);
    auto s2 = s1;
    for (auto& p : s2.points) p *= 2.0;
    const bool reach_ok = estimate_reach(s2).value == 2.0 * estimate_reach(s1).value;
    const bool diam_ok =
        std::abs(diameter(s2) - 2.0 * diameter(s1)) <= 1e-9 * diameter(s2);
    const double v1 = volume_k(s1, m1);
    const auto s2g = sample(m2, 1024, SampleStrategy::kUniformGrid, 0);
    const double v2 = volume_k(s2g, m2);
    const bool vol_ok = std::abs(v2 - 2.0 * v1) <= 1e-6 * v2;
    Matrix a(2, 2);
    a << 1.2, -0.3, 0.4, 0.9;
    const auto iso1 = isometry_constants(LinearMapSpec::from_matrix(a), s1);
    const auto iso2 = isometry_constants(LinearMapSpec::from_matrix(2.0 * a), s1);
    const bool iso_ok = iso2.l == 2.0 * iso1.l && iso2.u == 2.0 * iso1.u;
    if (!(reach_ok && diam_ok && vol_ok && iso_ok)) {
      ok = false;
      detail = "scaling";
    }
  }

  // tangent-length sandwich under a seeded gaussian map
  if (ok) {
    const auto s = sample(zoo::ellipse(2.0, 1.0), 1024, SampleStrategy::kUniformGrid, 0);
    const auto g = make_gaussian_map(2, 2, 999);
    const auto iso = isometry_constants(g, s);
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      const Vector v = s.tangents[i].basis().col(0);
      const double len = (g.matrix() * v).norm();
      if (!(len >= iso.l - 1e-6 && len <= iso.u + 1e-6)) {
        ok = false;
        detail = "tangent sandwich";
      }
    }
  }

  // geodesic-vs-chordal: beyond the reach, chords stay longer than reach/2
  if (ok) {
    struct Case {
      ParametricManifold m;
      double reach;
    };
    for (const auto& c : {Case{zoo::circle(), 1.0}, Case{zoo::ellipse(3.0, 0.5), 1.0 / 12.0}}) {
      const auto s = sample(c.m, 96, SampleStrategy::kUniformGrid, 0);
      for (std::size_t i = 0; i < s.size() && ok; i += 2) {
        for (std::size_t j = i + 1; j < s.size() && ok; j += 2) {
          const double geo = geodesic_distance(c.m, s.params[i][0], s.params[j][0]);
          if (geo > c.reach &&
              !((s.points[i] - s.points[j]).norm() > c.reach / 2.0 - 1e-9)) {
            ok = false;
            detail = "geodesic-chordal";
          }
        }
      }
    }
  }

  // closed-form vs numeric ellipsoid curvature
  if (ok) {
    const auto m = zoo::ellipsoid(2.0, 1.0, 0.5);
    const auto s = sample(m, 400, SampleStrategy::kUniformGrid, 0);
    double max_curv = 0.0;
    for (const auto& p : s.params) {
      max_curv = std::max(max_curv, numeric_max_principal_curvature(m, p));
    }
    const double closed = ellipsoid_max_curvature({2.0, 1.0, 0.5});
    if (!(max_curv <= closed * (1.0 + 1e-4) && max_curv >= closed * 0.9)) {
      ok = false;
      detail = fmt("curvature agreement (numeric %.3f vs closed %.3f)", max_curv, closed);
    }
  }

  criterion(10,
            "property suites: monotonicity, scaling, tangent sandwich, geodesic-chordal, "
            "curvature agreement",
            ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures;
}
