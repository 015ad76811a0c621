#pragma once

// Exact rational evaluation of the closed-form constants behind the
// fourth-harmonic second variation, plus an identity-certification suite.

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quermass/polynomial.hpp"

namespace quermass::exact {

/// Arbitrary-precision fraction, always canonical (lowest terms, positive
/// denominator) after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Multi-index alpha for the sphere moment of u_1^{2 alpha_1} ... u_n^{2 alpha_n}.
struct MonomialExponent {
  std::vector<int> exponents;
};

Rational rising_factorial(const Rational& a, unsigned r);

/// Normalized moment of u_1^{2r} on S^{n-1}: (1/2)_r / (n/2)_r.
Rational sphere_coordinate_moment(int n, unsigned r);

/// Normalized integral of u^{2 alpha} over S^{n-1} (alpha padded with zeros
/// up to length n).
Rational sphere_poly_integral(const MonomialExponent& alpha, int n);

/// Normalized integral of the raw monomial u^e; any odd exponent gives 0.
Rational sphere_monomial_integral(const std::vector<int>& raw_exponents);

/// Normalized integral over S^{n-1} of a rational polynomial in n variables.
Rational integrate_over_sphere(const Polynomial<Rational>& p);

/// M_r(j) = prod_{i<r} (j+2i)/(n+2i), the r-th moment of T_j = |P_F e_1|^2.
Rational t_moment(int n, int j, unsigned r);

/// ||Y||_2^2 for the degree-four zonal harmonic, closed form.
Rational norm_Y_sq(int n);

/// ||Y||_2^2 by expanding Y^2 in powers of u_1 and integrating term by term.
Rational norm_Y_sq_by_expansion(int n);

/// B_j = (1 / (j ||Y||^2)) int (j R_j Y)^2 dF, closed form.
Rational Bj(int n, int j);

/// B_j obtained by squaring j R_j Y as a quadratic in T_j and substituting
/// the moments M_1..M_4.
Rational Bj_from_moments(int n, int j);

/// A_j in units of ||Y||^2, closed form.
Rational Aj_closed(int n, int j);

/// A_j in units of ||Y||^2 assembled from the general second-variation
/// formula with eigenvalue lambda = 4(n+2).
Rational Aj_assembled(int n, int j);

/// Coefficient of ||Y||^2 t^2 in log(I_m^{1/m} / I_k^{1/k}).
Rational coefficient(int m, int k, int n);

/// True iff n > (m+2)(k+2) - 2.
bool counterexample_exists(int m, int k, int n);

/// Degree-four harmonic as a homogeneous polynomial on R^n:
/// x1^4 - 6/(n+4) x1^2 |x|^2 + 3/((n+2)(n+4)) |x|^4.
Polynomial<Rational> fourth_harmonic_polynomial(int n);

/// The same function on the sphere written through u_1 only:
/// u1^4 - 6/(n+4) u1^2 + 3/((n+2)(n+4)).
Polynomial<Rational> fourth_harmonic_zonal_polynomial(int n);

/// Canonical string "p/q" (or "p").
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// ---------------------------------------------------------------------------
// Identity certification

struct IdentityCheck {
  std::string name;
  std::string statement;
  std::string range;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && cases > 0; }
};

struct CoefficientSign {
  int m = 0, k = 0, n = 0;
  Rational value;
  bool counterexample = false;
};

struct IdentityReport {
  int n_max = 0;
  std::vector<IdentityCheck> checks;
  std::vector<CoefficientSign> signs;

  bool passed() const;
};

/// The closed forms under test. Swapping one member for a corrupted version
/// is how the suite is exercised as a negative control.
struct ClosedForms {
  std::function<Rational(int, int)> aj_closed = Aj_closed;
  std::function<Rational(int, int)> aj_assembled = Aj_assembled;
  std::function<Rational(int, int, int)> coefficient = exact::coefficient;
  std::function<Rational(int)> norm_y_sq = norm_Y_sq;
  std::function<Rational(int, int)> bj = Bj;
};

IdentityReport run_identity_suite(int n_max = 40, int sign_n_max = 20,
                                  const ClosedForms& forms = {});

}  // namespace quermass::exact
