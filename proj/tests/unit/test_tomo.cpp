#include <doctest.h>

#include "quermass/tomo.hpp"

using namespace quermass;
using namespace quermass::tomo;

namespace {

Mat hexagon() {
  Mat v(2, 6);
  for (int i = 0; i < 6; ++i) {
    v(0, i) = std::cos(kPi * i / 3.0);
    v(1, i) = std::sin(kPi * i / 3.0);
  }
  return v;
}

}  // namespace

TEST_CASE("planar bodies") {
  const auto disk = PlanarBody::disk(2.0);
  CHECK(area(disk) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(polar_area(disk) == doctest::Approx(kPi / 4.0).epsilon(1e-12));

  Mat t(2, 2);
  t << 1.5, 0.3, -0.2, 0.8;
  const auto e = PlanarBody::ellipse(t);
  CHECK(area(e) == doctest::Approx(kPi * std::abs(t.determinant())).epsilon(1e-10));
  CHECK(area(e) * polar_area(e) == doctest::Approx(kPi * kPi).epsilon(1e-10));
  // polar swaps radial and support
  const auto p = e.polar();
  CHECK(area(p) == doctest::Approx(polar_area(e)).epsilon(1e-10));
  for (double th : {0.1, 1.0, 2.5}) CHECK(p.radial(th) == doctest::Approx(1.0 / e.support(th)));

  const auto hex = PlanarBody::polygon(hexagon());
  CHECK(area(hex, 4096) == doctest::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-6));
  CHECK(hex.support(0.0) == doctest::Approx(1.0));
}

TEST_CASE("uniform planar sampling matches the area") {
  Mat t(2, 2);
  t << 1.0, 0.4, 0.0, 0.6;
  const auto e = PlanarBody::ellipse(t);
  PlanarSampler s(e, 3);
  RunningStats r2;
  for (int i = 0; i < 100000; ++i) r2.push(s.sample().squaredNorm());
  // E|x|^2 over T B^2 = tr(T T^T) / 4
  CHECK(r2.estimate().within((t * t.transpose()).trace() / 4.0));
}

TEST_CASE("determinant functional") {
  const auto disk = PlanarBody::disk();
  const auto d = D_functional(disk, 200000, 1);
  CHECK(d.within(8.0 * kPi / 9.0));
  CHECK(D_quadrature(disk) == doctest::Approx(8.0 * kPi / 9.0).epsilon(1e-12));

  // linear invariance: D(TA) = |det T|^3 D(A)
  Mat t(2, 2);
  t << 2.0, 0.5, 0.0, 0.7;
  const auto a = PlanarBody::polygon(hexagon());
  const double dq = D_quadrature(a, 1024);
  const auto dt = D_functional(a.linear_image(t), 200000, 2);
  CHECK(dt.within(std::pow(std::abs(t.determinant()), 3) * dq));
  // homogeneity of degree 6 under dilation (vol^2 scaling in the plane)
  CHECK(D_quadrature(disk.dilate(1.5)) == doctest::Approx(std::pow(1.5, 6) * D_quadrature(disk)));

  // thin rectangle, fixed area: |det T|^3 scaling from the square
  Mat sq(2, 4);
  sq << 1, -1, -1, 1, 1, 1, -1, -1;
  const auto square = PlanarBody::polygon(sq);
  // brute-force grid oracle on the square [-1,1]^2
  const int g = 40;
  double brute = 0.0;
  const double h = 2.0 / g;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      for (int k = 0; k < g; ++k)
        for (int l = 0; l < g; ++l) {
          const double x0 = -1 + (i + 0.5) * h, x1 = -1 + (j + 0.5) * h;
          const double y0 = -1 + (k + 0.5) * h, y1 = -1 + (l + 0.5) * h;
          brute += std::abs(x0 * y1 - x1 * y0);
        }
  brute *= std::pow(h, 4);
  Mat thin(2, 2);
  thin << 8.0, 0.0, 0.0, 1.0 / 8.0;
  const auto dr = D_functional(square.linear_image(thin), 200000, 3);
  CHECK(std::abs(dr.value - brute) <= 3.0 * dr.std_error + 2e-3 * brute);
}

TEST_CASE("planar lemma") {
  const auto disk = planar_lemma_check(PlanarBody::disk(), 100000, 4);
  CHECK(disk.pass);
  CHECK(std::abs(disk.slack) <= 3.0 * disk.slack_se);

  Mat t(2, 2);
  t << 1.3, -0.4, 0.2, 0.6;
  const auto e = planar_lemma_check(PlanarBody::ellipse(t), 100000, 5);
  CHECK(std::abs(e.slack) <= 3.0 * e.slack_se);

  // symmetric hull of an ellipse and a point pair: strictly positive slack
  Mat v(2, 8);
  for (int i = 0; i < 8; ++i) {
    const double th = 2.0 * kPi * i / 8.0 + 0.3;
    v(0, i) = std::cos(th) * (i % 4 == 0 ? 1.8 : 1.0);
    v(1, i) = 0.6 * std::sin(th) * (i % 4 == 0 ? 1.8 : 1.0);
  }
  const auto hull = planar_lemma_check(PlanarBody::polygon(v), 100000, 6);
  CHECK(hull.slack > 3.0 * hull.slack_se);

  RandomStream rng(7);
  for (int i = 0; i < 5; ++i) {
    const auto r = planar_lemma_check(random_symmetric_planar(rng), 20000, 10 + i);
    CHECK(r.pass);
  }
}

TEST_CASE("centroid bodies") {
  const auto disk = PlanarBody::disk();
  const auto [h, dh] = centroid_support(disk, 0.7);
  CHECK(h == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(1e-10));
  CHECK(std::abs(dh) < 1e-10);
  const auto c = centroid_identity_check(disk, 100000, 8);
  CHECK(c.gamma_area == doctest::Approx(16.0 / (9.0 * kPi)).epsilon(1e-8));
  CHECK(c.identity_rhs.within(c.gamma_area));
  CHECK(c.identity_pass);
  CHECK(c.polar_product == doctest::Approx(16.0 / 9.0).epsilon(1e-8));
  CHECK(c.product_pass);

  RandomStream rng(9);
  const auto a = random_symmetric_planar(rng);
  const auto r = centroid_identity_check(a, 50000, 9);
  CHECK(r.identity_pass);
  CHECK(r.identity_rhs_quadrature == doctest::Approx(r.gamma_area).epsilon(1e-6));
  CHECK(r.polar_product <= 16.0 / 9.0 + 1e-9);

  // linear equivariance: h_{Gamma TA}(xi) = h_{Gamma A}(T^T xi)
  Mat t(2, 2);
  t << 1.2, 0.3, -0.1, 0.9;
  const auto ta = a.linear_image(t);
  for (double xi : {0.0, 0.8, 2.0}) {
    const Eigen::Vector2d d(std::cos(xi), std::sin(xi));
    const Eigen::Vector2d td = t.transpose() * d;
    const double lhs = centroid_support(ta, xi).first;
    const double rhs = td.norm() * centroid_support(a, std::atan2(td[1], td[0])).first;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("moment matrices and D2") {
  const auto disk = PlanarBody::disk();
  const Mat m = moment_matrix(disk);
  CHECK((m - (kPi / 4.0) * Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(D2_functional(disk) == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-12));
  const auto [mm, se] = moment_matrix_mc(disk, 100000, 10);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(mm(i, j) - m(i, j)) <= 3.0 * se(i, j) + 1e-15);

  RandomStream rng(11);
  const auto a = random_symmetric_planar(rng);
  const double d2 = D2_functional(a);
  CHECK(D2_mc(a, 100000, 12).within(d2));
  // planar moment lower bound and the sharp D2 estimate
  const double v = area(a), vp = polar_area(a);
  CHECK(moment_matrix(a).determinant() >= std::pow(v, 4) / (16.0 * kPi * kPi));
  CHECK(d2 <= std::pow(kPi, 6) / 8.0 * std::pow(vp, -4));
  Mat t(2, 2);
  t << 1.4, 0.2, 0.1, 0.5;
  const auto e = PlanarBody::ellipse(t);
  CHECK(D2_functional(e) == doctest::Approx(std::pow(kPi, 6) / 8.0 * std::pow(polar_area(e), -4)).epsilon(1e-9));
  // degree 8 homogeneity (4 per factor)
  CHECK(D2_functional(a.dilate(1.3)) == doctest::Approx(std::pow(1.3, 8) * d2).epsilon(1e-10));
}

TEST_CASE("quadratic Santalo") {
  const auto disk = ball_quadratic_santalo_check(PlanarBody::disk());
  CHECK(disk.trace == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-12));
  CHECK(disk.pass);
  Mat t(2, 2);
  t << 0.9, 0.7, -0.3, 1.1;
  const auto e = ball_quadratic_santalo_check(PlanarBody::ellipse(t));
  CHECK(e.trace == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-9));
  const auto hex = ball_quadratic_santalo_check(PlanarBody::polygon(hexagon()), 8192);
  CHECK(hex.trace < kPi * kPi / 8.0 - 1e-3);
}

TEST_CASE("Blaschke-Petkantschin") {
  const auto b3 = bp3_check(body::SupportBody::ball(3), Estimate{ball_volume(3), 0.0});
  CHECK(b3.exact_match);
  CHECK(b3.lhs.value == doctest::Approx(32.0 * kPi * kPi / 9.0).epsilon(1e-12));
  CHECK(b3.rhs == doctest::Approx(32.0 * kPi * kPi / 9.0).epsilon(1e-14));
  const auto b4 = bp4_check(body::SupportBody::ball(4), Estimate{ball_volume(4), 0.0});
  CHECK(b4.exact_match);
  CHECK(b4.lhs.value == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-12));

  RandomStream rng(12);
  const auto t3 = random_symmetric_body(3, rng, "r3");
  const auto r3 = bp3_check(t3.body, t3.polar_volume);
  CHECK(r3.pass);
  CHECK(r3.lhs.std_error > 0.0);
  // lambda M scales both sides by lambda^6: L -> L / lambda
  const auto s3 = bp3_check(t3.body.dilate(0.5), Estimate{8.0 * t3.polar_volume.value,
                                                          8.0 * t3.polar_volume.std_error});
  CHECK(s3.rhs == doctest::Approx(64.0 * r3.rhs));
  CHECK(s3.lhs.value == doctest::Approx(64.0 * r3.lhs.value).epsilon(1e-10));

  const auto t4 = random_symmetric_body(4, rng, "r4");
  BPOptions o;
  o.samples = 1000;
  CHECK(bp4_check(t4.body, t4.polar_volume, o).pass);
}

TEST_CASE("polarity identity for sections") {
  RandomStream rng(13);
  const auto t = random_symmetric_body(3, rng, "r");
  const auto m = body::RadialBody::polar_of(t.body);
  for (const auto& f : grassmann::sample_grassmann(3, 2, 4, 14)) {
    const auto s = body::section_polar_volume(m, f);
    CHECK(std::abs(s.projection_route - s.radial_route) <= 1e-8 * s.projection_route);
  }
}

TEST_CASE("dimension-3 chain") {
  const auto ball = dim3_endpoints(body::SupportBody::ball(3), "ball");
  CHECK(ball.i1 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ball.i2 == doctest::Approx(1.0).epsilon(1e-10));
  const auto e = dim3_endpoints(body::SupportBody::ellipsoid(Vec((Vec(3) << 1.0, 1.3, 0.7).finished())), "e");
  CHECK(std::abs(e.i1 - 1.0) <= 1e-6);
  CHECK(std::abs(e.i2 - 1.0) <= 1e-6);

  const auto z = dim3_endpoints(body::SupportBody::fourth_harmonic_perturbation(3, 0.1), "z");
  CHECK(z.pass12);
  CHECK(z.pass2);
  CHECK(z.gap12 > 3.0 * z.gap12_error);
  CHECK(z.gap2 > 3.0 * z.gap2_error);

  RandomStream rng(15);
  for (int i = 0; i < 3; ++i) {
    const auto r = dim3_endpoints(random_perturbed_ball(rng), "p");
    CHECK(r.pass12);
    CHECK(r.pass2);
  }
  // non-convex input is refused
  CHECK_THROWS_AS(dim3_endpoints(body::SupportBody::fourth_harmonic_perturbation(3, 3.0), "bad"),
                  PreconditionError);
}

TEST_CASE("dimension-4 comparison") {
  ChainOptions o;
  o.samples = 2000;
  const double k4 = ball_volume(4);
  const auto ball = dim4_endpoints(TestBody{"ball", body::SupportBody::ball(4), {k4, 0}, {k4, 0}}, o);
  CHECK(std::abs(ball.i1 - 1.0) <= 1e-4);
  CHECK(std::abs(ball.i2 - 1.0) <= 1e-4);
  CHECK(ball.pass12);
  RandomStream rng(16);
  const auto r = dim4_endpoints(random_symmetric_body(4, rng, "r"), o);
  CHECK(r.pass12);
  CHECK(r.i1 > 0.0);
}

TEST_CASE("direction table") {
  const auto rows = direction_table(body::SupportBody::ball(3), 4, 1, 64);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.width == doctest::Approx(2.0));
    CHECK(r.brightness == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(r.section_d == doctest::Approx(8.0 * kPi / 9.0).epsilon(1e-10));
  }
}
