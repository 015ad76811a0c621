#include <doctest.h>

#include "quermass/exact_algebra.hpp"
#include "quermass/querm.hpp"

using namespace quermass;
using namespace quermass::querm;

TEST_CASE("balls give one") {
  for (int n : {3, 5, 11})
    for (int j = 1; j <= n; j += 2) {
      const auto r = I_jp(body::SupportBody::ball(n), j, -n);
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.error >= 0.0);
    }
  const auto r = I_jp(body::SupportBody::ball(4, 2.0), 2, -1.5);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(I_jp(body::SupportBody::fourth_harmonic_perturbation(7, 0.05), 7, -7).value == 1.0);
}

TEST_CASE("preconditions") {
  const auto b = body::SupportBody::ball(3);
  CHECK_THROWS_AS(I_jp(b, 1, 0.0), PreconditionError);
  CHECK_THROWS_AS(I_jp(b, 4, -3.0), PreconditionError);
  CHECK_THROWS_AS(I_jp(body::SupportBody::fourth_harmonic_perturbation(11, 3.0), 1, -11.0),
                  PreconditionError);
  CHECK_THROWS_AS(counterexample_certify(1, 2, 9, 0.05), PreconditionError);
  CHECK_THROWS_AS(counterexample_certify(1, 2, 10, 0.05), PreconditionError);
}

TEST_CASE("affine invariance in R^3") {
  QuermOptions o;
  o.method = Method::Sphere;
  RandomStream rng(3);
  for (int i = 0; i < 3; ++i) {
    Mat a = Mat::Identity(3, 3) + 0.3 * rng.gaussian_matrix(3, 3);
    a /= std::cbrt(std::abs(a.determinant()));
    const auto e = body::SupportBody::ellipsoid(a);
    for (int j : {1, 2}) CHECK(std::abs(I_jp(e, j, -3.0, o).value - 1.0) <= 1e-6);
  }
}

TEST_CASE("top-dimension comparison in R^3") {
  QuermOptions o;
  o.method = Method::Sphere;
  const auto k = body::SupportBody::fourth_harmonic_perturbation(3, 0.1);
  const auto r = I_jp(k, 2, -3.0, o);
  CHECK(r.value >= 1.0 - r.error);
}

TEST_CASE("zonal path against Haar Monte Carlo") {
  const auto k = body::SupportBody::fourth_harmonic_perturbation(6, 0.2);
  QuermOptions mc;
  mc.method = Method::HaarMC;
  mc.samples = 600;
  mc.volume.quad = SphereQuadrature::product(16, 32);
  for (int j : {1, 2}) {
    const auto z = I_jp(k, j, -6.0);
    const auto h = I_jp(k, j, -6.0, mc);
    CHECK(std::abs(z.value - h.value) <= h.error + z.error);
  }
}

TEST_CASE("log ratio") {
  CHECK(log_ratio(1, 2, 11, 0.0).value == doctest::Approx(0.0).epsilon(1e-15));
  const auto neg = log_ratio(1, 2, 11, 0.05);
  CHECK(neg.value < 0.0);
  CHECK(std::abs(neg.value) > 3.0 * neg.std_error);
  const auto pos = log_ratio(1, 2, 9, 0.05);
  CHECK(pos.value > 3.0 * pos.std_error);
}

TEST_CASE("second-variation extraction") {
  const double target = mpq_class(exact::coefficient(1, 2, 11) * exact::norm_Y_sq(11)).get_d();
  CHECK(target == doctest::Approx(-3.0 / 16.0 * 2880.0 / 7110675.0).epsilon(1e-15));
  const auto e = extract_quadratic(1, 2, 11, 0.02);
  CHECK(std::abs(e.value - target) <= 0.1 * std::abs(target));
  CHECK(std::abs(e.value - target) <= e.std_error);

  const auto rep = variation_report(1, 2, 11, 0.02);
  CHECK(rep.t_grid.size() == 3);
  CHECK(rep.observed_order == doctest::Approx(2.0).epsilon(0.1));
  CHECK(rep.relative_deviation < 1e-3);
  CHECK_FALSE(rep.boundary);

  // boundary: zero within the estimator error
  const auto b = variation_report(1, 2, 10, 0.02);
  CHECK(b.boundary);
  CHECK(b.target == 0.0);
  CHECK(std::abs(b.estimate) <= b.estimate_error);

  // sign dichotomy
  for (int n : {8, 9, 12, 14}) {
    const double c = exact::coefficient(1, 2, n).get_d();
    CHECK(extract_quadratic(1, 2, n, 0.02).value * c > 0.0);
  }
}

TEST_CASE("projection expansion") {
  const auto subspaces = grassmann::sample_grassmann(6, 3, 5, 4);
  const auto rep = projection_expansion_check(6, subspaces);
  CHECK(rep.entries.size() == 5);
  CHECK(rep.max_first_rel <= 1e-4);
  CHECK(rep.max_second_rel <= 1e-4);

  // j = 1: no second-order term
  const auto one = projection_expansion_check(6, grassmann::sample_grassmann(6, 1, 3, 5));
  for (const auto& e : one.entries) {
    CHECK(e.second_target == 0.0);
    CHECK(std::abs(e.second_fd) <= 1e-6);
  }
  // T = 0 and T = 1 for the same j give T-only coefficients
  Mat b0 = Mat::Zero(6, 3), b1 = Mat::Zero(6, 3);
  for (int i = 0; i < 3; ++i) {
    b0(i + 1, i) = 1.0;
    b1(i, i) = 1.0;
  }
  RandomStream rng(6);
  // rotations fixing e_1 keep T
  Mat r = Mat::Identity(6, 6);
  r.bottomRightCorner(5, 5) = rng.orthogonal_matrix(5);
  const auto ex = projection_expansion_check(
      6, {grassmann::Subspace(b0), grassmann::Subspace(r * b0), grassmann::Subspace(b1),
          grassmann::Subspace(r * b1)});
  CHECK(ex.entries[0].T == doctest::Approx(0.0));
  CHECK(ex.entries[2].T == doctest::Approx(1.0));
  CHECK(ex.entries[0].first_fd == doctest::Approx(ex.entries[1].first_fd).epsilon(1e-8));
  CHECK(ex.entries[2].second_fd == doctest::Approx(ex.entries[3].second_fd).epsilon(1e-6));
}

TEST_CASE("counterexample certificates") {
  const auto c = counterexample_certify(1, 2, 11, 0.05);
  CHECK(c.status == CertificateStatus::Certified);
  CHECK(c.gap > 3.0 * c.gap_error);
  CHECK(c.i_m.value < c.i_k.value);
  CHECK(c.convexity_margin > 0.0);

  const auto d = counterexample_certify(2, 3, 30, 0.05);
  CHECK(d.status == CertificateStatus::Certified);
}

TEST_CASE("certified t-range") {
  const auto [lo, hi] = certified_t_range(11, 1e-2);
  CHECK(lo < -0.05);
  CHECK(hi > 0.05);
  CHECK(body::certify_convex(body::SupportBody::fourth_harmonic_perturbation(11, hi),
                             SphereQuadrature::monte_carlo(11, 2000))
            .certified);
}
