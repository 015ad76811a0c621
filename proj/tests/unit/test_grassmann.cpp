#include <doctest.h>

#include "quermass/exact_algebra.hpp"
#include "quermass/grassmann.hpp"

using namespace quermass;
using namespace quermass::grassmann;

TEST_CASE("subspace basics") {
  CHECK_THROWS_AS(Subspace(Mat::Ones(3, 1)), PreconditionError);
  const auto f = Subspace::coordinate(5, 2);
  CHECK(t_of(f) == 1.0);
  Mat b = Mat::Zero(4, 2);
  b(1, 0) = 1.0;
  b(3, 1) = 1.0;
  CHECK(t_of(Subspace(b)) == 0.0);

  RandomStream rng(1);
  const auto g = haar_subspace(7, 3, rng);
  CHECK((g.basis().transpose() * g.basis() - Mat::Identity(3, 3)).norm() < 1e-12);
  // full space
  const auto full = sample_grassmann(4, 4, 3, 2);
  for (const auto& s : full) CHECK(t_of(s) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Haar moments of T") {
  const auto r = t_moment_check(11, 3, 4, 200000, 5);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.haar[i].within(r.exact[i]));
    CHECK(r.beta[i] == doctest::Approx(r.exact[i]).epsilon(1e-12));
  }
  CHECK(r.exact[0] == doctest::Approx(3.0 / 11.0));

  // invariance under replacing e_1 by a fixed unit vector
  RandomStream rng(6), arng(7);
  const Vec a = arng.unit_vector(11);
  RunningStats s;
  for (int i = 0; i < 100000; ++i) s.push(t_of(haar_subspace(11, 3, rng), a));
  CHECK(s.estimate().within(3.0 / 11.0));
}

TEST_CASE("Beta quadrature reproduces t_moment") {
  for (int n : {3, 6, 11, 30})
    for (int j = 1; j <= n; j += std::max(1, n / 5)) {
      const BetaQuadrature q(n, j, 64);
      double w = 0.0;
      for (double x : q.rule().weights) w += x;
      CHECK(w == doctest::Approx(1.0).epsilon(1e-13));
      for (unsigned r = 1; r <= 4; ++r)
        CHECK(std::abs(q.integrate([r](double t) { return std::pow(t, r); }) -
                       exact::t_moment(n, j, r).get_d()) <= 1e-12);
    }
}

TEST_CASE("Radon averages") {
  const int n = 7;
  const auto y = sphere::fourth_harmonic(n);
  const auto c = sphere::constant_function(n, 2.5);
  const auto quad = SphereQuadrature::product(24, 48, 1, 100000);
  for (const auto& f : sample_grassmann(n, 2, 10, 3)) {
    CHECK(radon_average(c, f, quad) == doctest::Approx(2.5));
    const double t = t_of(f);
    CHECK(2.0 * radon_average(y, f, quad) == doctest::Approx(jRjY_closed(n, 2, t)).epsilon(1e-12));
    // the zonal reduction gives the same
    CHECK(radon_average(y, f, quad) ==
          doctest::Approx(zonal_radon_average(sphere::ZonalProfile::fourth_harmonic(n),
                                              std::sqrt(t), 2, 64))
              .epsilon(1e-12));
    // basis change inside F does not matter
    RandomStream rng(4);
    const auto g = f.rotated_basis(rng.orthogonal_matrix(2));
    CHECK(std::abs(radon_average(y, g, quad) - radon_average(y, f, quad)) <= 1e-12);
  }
  // j = 1: antipodal average
  for (const auto& f : sample_grassmann(n, 1, 5, 8)) {
    const Vec b = f.basis().col(0);
    CHECK(radon_average(y, f, quad) == doctest::Approx(0.5 * (y(b) + y(-b))));
    CHECK(radon_gradient_energy(y, f, quad.rule(1)) == 0.0);
  }
  // j = 3 via product rule on S^2
  for (const auto& f : sample_grassmann(n, 3, 5, 9))
    CHECK(3.0 * radon_average(y, f, quad) == doctest::Approx(jRjY_closed(n, 3, t_of(f))).epsilon(1e-11));
  // j = n: mean-zero harmonic (Monte Carlo fallback on S^6)
  const auto full = Subspace::coordinate(n, n);
  CHECK(std::abs(radon_average(y, full, SphereQuadrature::monte_carlo(2, 200000))) < 1e-3);
}

TEST_CASE("Radon identities") {
  const double ny = exact::norm_Y_sq(6).get_d();
  const auto r = radon_identity_check(6, 3, 5000, 12, SphereQuadrature::product(16, 32));
  CHECK(r.y_sq_target == doctest::Approx(ny));
  CHECK(r.gradient_target == doctest::Approx(2.0 * 4.0 * 8.0 * ny / 5.0));
  CHECK(r.y_sq_average.within(r.y_sq_target));
  CHECK(r.gradient_average.within(r.gradient_target));

  const auto one = radon_identity_check(6, 1, 2000, 13, SphereQuadrature::product(16, 32));
  CHECK(one.gradient_target == 0.0);
  CHECK(one.gradient_average.value == 0.0);
}

TEST_CASE("square average") {
  const auto s = square_average_check(11, 2, 5000, 14);
  CHECK(s.target == doctest::Approx(2.0 * (2880.0 / 7110675.0) * (99.0 / 160.0)).epsilon(1e-14));
  CHECK(s.haar.within(s.target));
  CHECK(s.beta == doctest::Approx(s.target).epsilon(1e-12));

  const auto full = square_average_check(5, 5, 100, 15);
  CHECK(full.target == 0.0);
  CHECK(std::abs(full.beta) < 1e-15);
}
