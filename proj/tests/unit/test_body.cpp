#include <doctest.h>

#include "quermass/body.hpp"
#include "quermass/exact_algebra.hpp"
#include "quermass/grassmann.hpp"

using namespace quermass;
using namespace quermass::body;

namespace {

// h = 1 + t u_1^3 on S^1: smooth, convex for small t, not symmetric.
SupportBody skew_disk(double t) {
  Polynomial<double> p(2);
  p += Polynomial<double>::monomial({3, 0}, 1.0);
  return SupportBody::perturbation(sphere::polynomial_function(p), t, false);
}

}  // namespace

TEST_CASE("convexity certificates") {
  const auto ball = certify_convex(SupportBody::ball(3), SphereQuadrature::product(8, 16), 1, 100);
  CHECK(ball.certified);
  CHECK(ball.margin == doctest::Approx(1.0));

  const auto k = SupportBody::fourth_harmonic_perturbation(11, 0.05);
  const auto c = certify_convex(k, SphereQuadrature::monte_carlo(3, 2000), 4, 2000);
  CHECK(c.certified);
  CHECK(c.margin > 0.5);

  // scan upward in t until the certificate fails
  double t = 0.1;
  ConvexityCertificate bad;
  for (; t < 5.0; t *= 1.5) {
    bad = certify_convex(SupportBody::fourth_harmonic_perturbation(11, t),
                         SphereQuadrature::monte_carlo(3, 500), 4, 500);
    if (!bad.certified) break;
  }
  CHECK_FALSE(bad.certified);
  CHECK(bad.margin < 0.0);
  CHECK(bad.witness.size() == 11);
  CHECK_THROWS_AS(require_convex(SupportBody::fourth_harmonic_perturbation(11, t),
                                 SphereQuadrature::monte_carlo(3, 500)),
                  PreconditionError);
}

TEST_CASE("curvature matrix is frame independent") {
  const auto k = SupportBody::ellipsoid(Vec((Vec(3) << 1.0, 1.4, 0.6).finished()));
  RandomStream rng(3);
  for (int i = 0; i < 5; ++i) {
    const Vec u = rng.unit_vector(3);
    const Mat f = sphere::tangent_frame(u);
    const Mat g = f * rng.orthogonal_matrix(2);
    CHECK(curvature_matrix(k, u, f).determinant() ==
          doctest::Approx(curvature_matrix(k, u, g).determinant()).epsilon(1e-12));
  }
}

TEST_CASE("volumes") {
  CHECK(std::abs(volume(SupportBody::ball(3)).value - 4.0 * kPi / 3.0) <= 1e-10);
  CHECK(std::abs(volume(SupportBody::ball(2, 2.0)).value - 4.0 * kPi) <= 1e-10);
  VolumeOptions generic;
  generic.method = VolumeMethod::Generic;
  CHECK(std::abs(volume(SupportBody::ball(3), generic).value - 4.0 * kPi / 3.0) <= 1e-10);

  // ellipsoid: abc kappa_3
  const auto e = SupportBody::ellipsoid(Vec((Vec(3) << 1.0, 1.3, 0.7).finished()));
  CHECK(volume(e).value == doctest::Approx(1.3 * 0.7 * 4.0 * kPi / 3.0).epsilon(1e-8));

  // zonal reduction against the full quadrature (n = 3) and Monte Carlo (n = 5)
  const auto z3 = SupportBody::fourth_harmonic_perturbation(3, 0.1);
  CHECK(volume(z3).value == doctest::Approx(volume(z3, generic).value).epsilon(1e-10));
  const auto z5 = SupportBody::fourth_harmonic_perturbation(5, 0.1);
  VolumeOptions mc = generic;
  mc.quad = SphereQuadrature::monte_carlo(5, 40000);
  CHECK(volume(z5, mc).within(volume(z5).value));

  // ball in R^5 by Monte Carlo: 3 SE
  const auto b5 = volume(SupportBody::ball(5), mc);
  CHECK(b5.within(ball_volume(5)));
}

TEST_CASE("second variation of the volume") {
  const int n = 11;
  const double t = 1e-2;
  auto v = [&](double s) {
    return volume(SupportBody::fourth_harmonic_perturbation(n, s)).value / ball_volume(n);
  };
  const double fd = (v(t) - 2.0 * v(0.0) + v(-t)) / (t * t);
  const double lambda = 4.0 * (n + 2);
  const double predicted = n * ((n - 1) - lambda) * exact::norm_Y_sq(n).get_d();
  CHECK(fd == doctest::Approx(predicted).epsilon(1e-3));
}

TEST_CASE("planar area") {
  CHECK(planar_area(sphere::constant_function(2, 1.0), 64) == doctest::Approx(kPi).epsilon(1e-14));
  const double t = 0.1;
  const double a = planar_area(
      [t](double th) { return std::pair{1.0 + t * std::cos(2 * th), -2.0 * t * std::sin(2 * th)}; },
      64);
  CHECK(a == doctest::Approx(kPi * (1.0 - 1.5 * t * t)).epsilon(1e-14));
  const double ea = 2.0, eb = 0.5;
  const auto ell = SupportBody::ellipsoid(Vec((Vec(2) << ea, eb).finished()));
  CHECK(std::abs(planar_area(ell.support_function(), 512) - kPi * ea * eb) <= 1e-10);
}

TEST_CASE("projections") {
  const auto ball = SupportBody::ball(5);
  for (const auto& f : grassmann::sample_grassmann(5, 2, 3, 1))
    CHECK(projection_volume(ball, f).value == doctest::Approx(kPi).epsilon(1e-12));

  // zonal: projection is zonal with profile phi(s c) about P_F e_1 / s
  const int n = 6;
  const auto k = SupportBody::fourth_harmonic_perturbation(n, 0.1);
  for (const auto& f : grassmann::sample_grassmann(n, 3, 4, 2)) {
    const auto p = project(k, f);
    REQUIRE(p.zonal_form());
    const double s = std::sqrt(grassmann::t_of(f));
    const Vec axis = f.basis().transpose() * Vec::Unit(n, 0) / s;
    CHECK((p.zonal_form()->axis - axis).norm() < 1e-12);
    RandomStream rng(3);
    for (int i = 0; i < 5; ++i) {
      const Vec y = rng.unit_vector(3);
      CHECK(p.support(y) == doctest::Approx(k.support(f.basis() * y)).epsilon(1e-13));
      CHECK(p.support(y) ==
            doctest::Approx(1.0 + 0.1 * sphere::ZonalProfile::fourth_harmonic(n)(s * y.dot(axis)))
                .epsilon(1e-13));
    }
    // zonal path against the generic path
    VolumeOptions generic;
    generic.method = VolumeMethod::Generic;
    CHECK(projection_volume(k, f).value ==
          doctest::Approx(volume(SupportBody(p.support_function(), true), generic).value).epsilon(1e-9));
  }
  // j = 1: width
  const auto e = SupportBody::ellipsoid(Vec((Vec(3) << 1.0, 2.0, 0.5).finished()));
  for (const auto& f : grassmann::sample_grassmann(3, 1, 5, 3)) {
    const Vec u = f.basis().col(0);
    CHECK(projection_volume(e, f).value == doctest::Approx(e.support(u) + e.support(-u)).epsilon(1e-12));
  }
}

TEST_CASE("polar volumes") {
  CHECK(polar_volume(SupportBody::ball(3)).value == doctest::Approx(ball_volume(3)).epsilon(1e-12));
  CHECK(polar_volume(SupportBody::ball(4)).value == doctest::Approx(ball_volume(4)).epsilon(1e-12));
  // planar Santalo equality for centered ellipses
  Mat a(2, 2);
  a << 1.2, 0.4, -0.3, 0.7;
  const auto ell = SupportBody::ellipsoid(a);
  CHECK(volume(ell).value * polar_volume(ell).value == doctest::Approx(kPi * kPi).epsilon(1e-10));
  // homogeneity
  const auto k = SupportBody::fourth_harmonic_perturbation(3, 0.1);
  CHECK(polar_volume(k.dilate(1.7)).value ==
        doctest::Approx(std::pow(1.7, -3.0) * polar_volume(k).value).epsilon(1e-12));
  CHECK_THROWS_AS(polar_volume(SupportBody::ball(3).translate(Vec::Constant(3, 2.0))),
                  PreconditionError);
}

TEST_CASE("central symmetrization") {
  const auto ball = SupportBody::ball(3);
  const auto l = central_symmetrization(ball);
  CHECK(l.symmetric());
  RandomStream rng(5);
  const auto k = skew_disk(0.2);
  const auto lk = central_symmetrization(k);
  const auto lt = central_symmetrization(k.translate((Vec(2) << 0.1, -0.2).finished()));
  for (int i = 0; i < 10; ++i) {
    const Vec u3 = rng.unit_vector(3);
    CHECK(l.support(u3) == doctest::Approx(1.0));
    const Vec u = rng.unit_vector(2);
    CHECK(lk.support(u) == doctest::Approx(0.5 * (k.support(u) + k.support(-u))).epsilon(1e-14));
    CHECK(lt.support(u) == doctest::Approx(lk.support(u)).epsilon(1e-13));
    CHECK(lk.support(u) + lk.support(-u) == doctest::Approx(k.support(u) + k.support(-u)));
  }
  CHECK(volume(lk).value >= volume(k).value);
}

TEST_CASE("projection commutes with symmetrization; planar Brunn-Minkowski") {
  Polynomial<double> p(3);
  p += Polynomial<double>::monomial({3, 0, 0}, 1.0);
  p += Polynomial<double>::monomial({0, 1, 2}, -0.5);
  const auto k = SupportBody::perturbation(sphere::polynomial_function(p), 0.1, false);
  const auto l = central_symmetrization(k);
  RandomStream rng(6);
  for (const auto& f : grassmann::sample_grassmann(3, 2, 5, 7)) {
    const auto a = project(l, f);
    const auto b = central_symmetrization(project(k, f));
    for (int i = 0; i < 5; ++i) {
      const Vec y = rng.unit_vector(2);
      CHECK(std::abs(a.support(y) - b.support(y)) <= 1e-12);
    }
    CHECK(projection_volume(l, f).value >= projection_volume(k, f).value);
  }
}

TEST_CASE("section polar volumes") {
  const auto m = RadialBody::polar_of(SupportBody::ball(3));
  for (const auto& f : grassmann::sample_grassmann(3, 2, 2, 1)) {
    const auto s = section_polar_volume(m, f);
    CHECK(s.projection_route == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(s.radial_route == doctest::Approx(kPi).epsilon(1e-10));
  }
  // random zonal L, two routes agree
  RandomStream rng(8);
  for (int i = 0; i < 3; ++i) {
    const Vec axis = rng.unit_vector(3);
    const double t = 0.05 + 0.1 * rng.uniform();
    const auto g = sphere::ZonalProfile::fourth_harmonic(3).affine(1.0, t);
    const auto l = SupportBody::zonal(3, g, axis);
    const auto mm = RadialBody::polar_of(l);
    for (const auto& f : grassmann::sample_grassmann(3, 2, 3, 10 + i)) {
      const auto s = section_polar_volume(mm, f);
      CHECK(std::abs(s.projection_route - s.radial_route) <= 1e-8 * s.projection_route);
      // scaling M -> lambda M
      const auto sl = section_polar_volume(mm.dilate(2.0), f);
      CHECK(sl.radial_route == doctest::Approx(s.radial_route / 4.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("linear images") {
  RandomStream rng(9);
  const auto g = sphere::ZonalProfile::fourth_harmonic(3).affine(1.0, 0.1);
  const auto z = SupportBody::zonal(3, g, Vec::Unit(3, 0));
  const Mat a = Mat::Identity(3, 3) + 0.3 * rng.gaussian_matrix(3, 3);
  const auto az = z.linear_image(a);
  VolumeOptions generic;
  generic.method = VolumeMethod::Generic;
  CHECK(volume(az, generic).value ==
        doctest::Approx(std::abs(a.determinant()) * volume(z).value).epsilon(1e-8));
  CHECK(polar_volume(az, generic).value ==
        doctest::Approx(polar_volume(z).value / std::abs(a.determinant())).epsilon(1e-8));
}
