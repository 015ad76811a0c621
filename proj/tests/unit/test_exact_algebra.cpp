#include <doctest.h>

#include <algorithm>

#include "quermass/exact_algebra.hpp"
#include "quermass/random.hpp"
#include "quermass/sphere.hpp"

using namespace quermass;
using exact::Rational;

TEST_CASE("rising factorial") {
  CHECK(exact::rising_factorial(Rational(1, 2), 0) == 1);
  CHECK(exact::rising_factorial(Rational(1, 2), 2) == Rational(3, 4));
  CHECK(exact::rising_factorial(Rational(3, 2), 3) == Rational(105, 8));
}

TEST_CASE("coordinate moments") {
  CHECK(exact::sphere_coordinate_moment(3, 1) == Rational(1, 3));
  CHECK(exact::sphere_coordinate_moment(7, 0) == 1);
  CHECK(exact::sphere_coordinate_moment(4, 2) == Rational(1, 8));
  CHECK_THROWS_AS(exact::sphere_coordinate_moment(1, 1), PreconditionError);

  // Monte Carlo cross-check of (n=4, r=2).
  RunningStats s;
  for (const auto& u : sphere::sample_sphere(4, 200000, 3)) s.push(std::pow(u[0], 4));
  CHECK(s.estimate().within(0.125));
}

TEST_CASE("monomial integrals") {
  CHECK(exact::sphere_poly_integral({{1, 1}}, 3) == Rational(1, 15));
  CHECK(exact::sphere_poly_integral({{0, 0, 0}}, 3) == 1);
  CHECK(exact::sphere_poly_integral({{2}}, 3) == Rational(1, 5));
  CHECK(exact::sphere_poly_integral({{2}}, 3) == exact::sphere_coordinate_moment(3, 2));
  // odd raw exponents vanish
  CHECK(exact::sphere_monomial_integral({1, 2, 0}) == 0);
  CHECK(exact::sphere_monomial_integral({2, 2, 0}) == Rational(1, 15));

  // permutation invariance
  std::vector<int> a{2, 1, 0, 3};
  const Rational ref = exact::sphere_poly_integral({a}, 6);
  std::sort(a.begin(), a.end());
  do {
    CHECK(exact::sphere_poly_integral({a}, 6) == ref);
  } while (std::next_permutation(a.begin(), a.end()));

  RunningStats s;
  for (const auto& u : sphere::sample_sphere(3, 200000, 4)) s.push(u[0] * u[0] * u[1] * u[1]);
  CHECK(s.estimate().within(1.0 / 15.0));
}

TEST_CASE("T moments") {
  CHECK(exact::t_moment(4, 2, 1) == Rational(1, 2));
  CHECK(exact::t_moment(11, 2, 2) == Rational(8, 143));
  for (unsigned r = 1; r <= 4; ++r) CHECK(exact::t_moment(9, 9, r) == 1);
  CHECK_THROWS_AS(exact::t_moment(5, 6, 1), PreconditionError);
  CHECK_THROWS_AS(exact::t_moment(5, 0, 1), PreconditionError);
}

TEST_CASE("norm of Y") {
  CHECK(exact::norm_Y_sq(3) == Rational(64, 11025));
  CHECK(exact::norm_Y_sq(11) == Rational(64, 158015));
  CHECK(exact::norm_Y_sq(11) * 7110675 == 2880);
  for (int n = 2; n <= 40; ++n) CHECK(exact::norm_Y_sq(n) == exact::norm_Y_sq_by_expansion(n));
  // direct polynomial integration of Y^2
  for (int n : {3, 5, 8}) {
    const auto y = exact::fourth_harmonic_polynomial(n);
    CHECK(exact::integrate_over_sphere(y * y) == exact::norm_Y_sq(n));
    CHECK(exact::integrate_over_sphere(y) == 0);
  }
}

TEST_CASE("B_j") {
  CHECK(exact::Bj(7, 7) == 0);
  CHECK(exact::Bj(3, 1) == 1);
  CHECK(exact::Bj(11, 2) == Rational(99, 160));
  for (int n = 2; n <= 20; ++n)
    for (int j = 1; j <= n; ++j) CHECK(exact::Bj(n, j) == exact::Bj_from_moments(n, j));
}

TEST_CASE("A_j and the coefficient") {
  CHECK(exact::Aj_closed(9, 9) == 0);
  CHECK(exact::Aj_closed(11, 1) == 15);
  CHECK(exact::coefficient(1, 2, 11) == Rational(-3, 16));
  CHECK(exact::coefficient(1, 2, 10) == 0);
  CHECK(exact::coefficient(1, 2, 9) == Rational(13, 64));
  CHECK_THROWS_AS(exact::coefficient(2, 2, 9), PreconditionError);
  CHECK_THROWS_AS(exact::coefficient(1, 9, 9), PreconditionError);
  for (int n = 3; n <= 25; ++n)
    for (int m = 1; m < n - 1; ++m)
      for (int k = m + 1; k <= n - 1; ++k) {
        CHECK(exact::coefficient(m, k, n) ==
              exact::Aj_closed(n, m) - exact::Aj_closed(n, k));
        CHECK(exact::counterexample_exists(m, k, n) == (exact::coefficient(m, k, n) < 0));
      }
}

TEST_CASE("counterexample condition") {
  CHECK(exact::counterexample_exists(1, 2, 11));
  CHECK_FALSE(exact::counterexample_exists(1, 2, 10));
  CHECK(exact::counterexample_exists(2, 3, 30));
  CHECK_FALSE(exact::counterexample_exists(2, 3, 18));
}

TEST_CASE("identity suite and negative control") {
  const auto rep = exact::run_identity_suite(40, 20);
  CHECK(rep.passed());
  CHECK(!rep.signs.empty());
  for (const auto& s : rep.signs) CHECK(s.n <= 20);

  exact::ClosedForms broken;
  broken.aj_closed = [](int n, int j) {
    return exact::Aj_closed(n, j) + (n == 23 && j == 4 ? Rational(1, 7) : Rational(0));
  };
  const auto bad = exact::run_identity_suite(40, 20, broken);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("fourth harmonic polynomial") {
  for (int n : {3, 4, 11}) {
    const auto h = exact::fourth_harmonic_polynomial(n);
    CHECK(h.laplacian().is_zero());
    // restriction to the sphere agrees with the zonal form
    RandomStream rng(5);
    const auto z = exact::fourth_harmonic_zonal_polynomial(n);
    const auto hd = h.cast<double>([](const Rational& q) { return q.get_d(); });
    const auto zd = z.cast<double>([](const Rational& q) { return q.get_d(); });
    for (int i = 0; i < 20; ++i) {
      const Vec u = rng.unit_vector(n);
      CHECK(hd.evaluate(u) == doctest::Approx(zd.evaluate(u)).epsilon(1e-12));
      CHECK(hd.evaluate(u) == doctest::Approx(sphere::eval_Y(n, sphere::UnitVector(u))).epsilon(1e-12));
    }
  }
}
