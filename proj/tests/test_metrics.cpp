#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reachlab/detail/random_matrix.hpp"
#include "reachlab/maps.hpp"
#include "reachlab/metrics.hpp"
#include "reachlab/zoo.hpp"

using namespace reachlab;

TEST_CASE("diameter of dense circle sample approaches 2") {
  const auto s = sample(zoo::circle(), 2048, SampleStrategy::kUniformGrid, 0);
  CHECK(diameter(s) == doctest::Approx(2.0).epsilon(2.0 / 2048));
}

TEST_CASE("diameter of the (3, 0.5) ellipse is the major axis") {
  const auto s = sample(zoo::ellipse(3.0, 0.5), 4096, SampleStrategy::kUniformGrid, 0);
  CHECK(diameter(s) == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("diameter of a single pair") {
  SampledManifold s;
  Vector a(2), b(2);
  a << 0.0, 0.0;
  b << 1.0, 1.0;
  Matrix basis(2, 1);
  basis << 1.0, 0.0;
  s.points = {a, b};
  s.params = {Vector::Zero(1), Vector::Ones(1)};
  s.tangents = {Subspace(basis), Subspace(basis)};
  s.source_label = "pair";
  CHECK(diameter(s) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("circumference of the unit circle") {
  const auto m = zoo::circle();
  const auto s = sample(m, 16, SampleStrategy::kUniformGrid, 0);
  CHECK(volume_k(s, m) == doctest::Approx(2.0 * M_PI).epsilon(1e-3));
}

TEST_CASE("circumference scales linearly (k = 1)") {
  const auto m = zoo::circle(2.0);
  const auto s = sample(m, 16, SampleStrategy::kUniformGrid, 0);
  CHECK(volume_k(s, m) == doctest::Approx(4.0 * M_PI).epsilon(1e-3));
}

TEST_CASE("area of the unit sphere") {
  const auto m = zoo::sphere();
  const auto s = sample(m, 64, SampleStrategy::kUniformGrid, 0);
  CHECK(volume_k(s, m) == doctest::Approx(4.0 * M_PI).epsilon(1e-3));
}

TEST_CASE("volume rejects k > 2") {
  ParametricManifold flat3;
  flat3.intrinsic_dim = 3;
  flat3.ambient_dim = 4;
  flat3.domain = {ParamAxis{0, 1}, ParamAxis{0, 1}, ParamAxis{0, 1}};
  flat3.embed = [](const Vector& t) {
    Vector x(4);
    x << t[0], t[1], t[2], 0.0;
    return x;
  };
  flat3.jacobian = [](const Vector&) {
    Matrix j = Matrix::Zero(4, 3);
    j.topRows(3).setIdentity();
    return j;
  };
  flat3.label = "cube3";
  const auto s = sample(flat3, 16, SampleStrategy::kSeededRandom, 0);
  CHECK_THROWS_AS(volume_k(s, flat3), UnsupportedDimensionError);
}

TEST_CASE("geodesic distances on the circle take the short way") {
  const auto m = zoo::circle();
  CHECK(geodesic_distance(m, 0.0, M_PI) == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(geodesic_distance(m, 0.0, 3.0 * M_PI / 2.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-10));
}

TEST_CASE("geodesic distance on the flat segment is the gap") {
  CHECK(geodesic_distance(zoo::segment(), -0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geodesic distance rejects surfaces") {
  CHECK_THROWS_AS(geodesic_distance(zoo::sphere(), 0.1, 0.2), UnsupportedDimensionError);
}

namespace {

Subspace line(double x, double y) {
  Matrix b(2, 1);
  b << x, y;
  return Subspace::orthonormalized(b);
}

}  // namespace

TEST_CASE("principal angle cosines on planar lines") {
  CHECK(principal_angle_cos(line(1, 0), line(1, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(principal_angle_cos(line(1, 0), line(0, 1)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(principal_angle_cos(line(1, 0), line(1, 1)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("principal angle requires dim(a) <= dim(b) and equal ambient") {
  Matrix plane(3, 2);
  plane << 1, 0, 0, 1, 0, 0;
  Matrix line3(3, 1);
  line3 << 0, 0, 1;
  CHECK_THROWS_AS(principal_angle_cos(Subspace(plane), Subspace(line3)),
                  DimensionMismatchError);
  Matrix line2(2, 1);
  line2 << 1, 0;
  CHECK_THROWS_AS(principal_angle_cos(Subspace(line2), Subspace(line3)),
                  DimensionMismatchError);
  // a line against a containing plane: cosine 1
  CHECK(principal_angle_cos(Subspace(line3), Subspace::orthonormalized(Matrix::Identity(3, 3)))
        == doctest::Approx(1.0));
}

TEST_CASE("principal angle is symmetric for equal dimensions") {
  auto eng_seeded = [](int s) { return detail::gaussian_matrix(3, 1, s, 0); };
  for (int s = 0; s < 20; ++s) {
    const auto a = Subspace::orthonormalized(eng_seeded(2 * s));
    const auto b = Subspace::orthonormalized(eng_seeded(2 * s + 1));
    CHECK(principal_angle_cos(a, b) == doctest::Approx(principal_angle_cos(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("principal angle is invariant under a joint orthogonal transform") {
  for (int s = 1; s <= 10; ++s) {
    const auto a = Subspace::orthonormalized(detail::gaussian_matrix(4, 2, 3 * s, 1));
    const auto b = Subspace::orthonormalized(detail::gaussian_matrix(4, 2, 3 * s + 1, 1));
    const Matrix q = detail::haar_orthogonal(4, 3 * s + 2, 1);
    const auto qa = Subspace::orthonormalized(q * a.basis());
    const auto qb = Subspace::orthonormalized(q * b.basis());
    CHECK(std::abs(principal_angle_cos(qa, qb) - principal_angle_cos(a, b)) < 1e-10);
  }
}

TEST_CASE("diameter and volume scale as s and s^k") {
  SUBCASE("curve") {
    const auto m1 = zoo::ellipse(3.0, 0.5);
    const auto m2 = zoo::ellipse(3.0 * 1.7, 0.5 * 1.7);
    const auto s1 = sample(m1, 512, SampleStrategy::kUniformGrid, 0);
    const auto s2 = sample(m2, 512, SampleStrategy::kUniformGrid, 0);
    CHECK(diameter(s2) == doctest::Approx(1.7 * diameter(s1)).epsilon(1e-9));
    CHECK(volume_k(s2, m2) == doctest::Approx(1.7 * volume_k(s1, m1)).epsilon(1e-9));
  }
  SUBCASE("surface") {
    const auto m1 = zoo::ellipsoid(2.0, 1.0, 0.5);
    const auto m2 = zoo::ellipsoid(2.0 * 1.3, 1.0 * 1.3, 0.5 * 1.3);
    const auto s1 = sample(m1, 256, SampleStrategy::kUniformGrid, 0);
    const auto s2 = sample(m2, 256, SampleStrategy::kUniformGrid, 0);
    QuadratureSpec quad{64, 16};  // plenty for a relative comparison
    CHECK(diameter(s2) == doctest::Approx(1.3 * diameter(s1)).epsilon(1e-9));
    CHECK(volume_k(s2, m2, quad) ==
          doctest::Approx(1.3 * 1.3 * volume_k(s1, m1, quad)).epsilon(1e-9));
  }
}

TEST_CASE("sandwich: measured (l, u) bracket diameter and volume distortion") {
  const auto m = zoo::ellipse(1.0, 0.7);
  const auto s = sample(m, 1024, SampleStrategy::kUniformGrid, 0);
  Matrix a(2, 2);
  a << 1.4, 0.3, -0.1, 0.8;
  const auto map = LinearMapSpec::from_matrix(a);
  const auto iso = isometry_constants(map, s);
  const auto image = pushforward(map, s);
  const double d0 = diameter(s), d1 = diameter(image);
  CHECK(d1 - iso.l * d0 >= -1e-9);
  CHECK(iso.u * d0 - d1 >= -1e-9);
  const double v0 = volume_k(s, m);
  const double v1 = volume_k(image, compose(map, m));
  CHECK(v1 - iso.l * v0 >= -1e-9 * v0);
  CHECK(iso.u * v0 - v1 >= -1e-9 * v0);
}

TEST_CASE("metric summary carries diameter, volume, and k") {
  const auto m = zoo::circle();
  const auto s = sample(m, 256, SampleStrategy::kUniformGrid, 0);
  const auto summary = metric_summary(s, m);
  CHECK(summary.intrinsic_dim == 1);
  CHECK(summary.diameter == doctest::Approx(2.0).epsilon(1e-3));
  REQUIRE(summary.volume_k.has_value());
  CHECK(*summary.volume_k == doctest::Approx(2 * M_PI).epsilon(1e-6));
}
