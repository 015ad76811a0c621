#include "quermass/exact_algebra.hpp"

#include <sstream>

namespace quermass::exact {

namespace {

Rational frac(long num, long den) {
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

void check_nj(int n, int j) {
  require(n >= 2, "dimension n must be >= 2");
  require(j >= 1 && j <= n, "subspace dimension j must lie in [1, n]");
}

Rational lambda_fourth(int n) { return Rational(4 * (n + 2)); }

}  // namespace

Rational rising_factorial(const Rational& a, unsigned r) {
  Rational out(1);
  for (unsigned i = 0; i < r; ++i) out *= a + Rational(i);
  return out;
}

Rational sphere_coordinate_moment(int n, unsigned r) {
  require(n >= 2, "sphere dimension n must be >= 2");
  return rising_factorial(frac(1, 2), r) / rising_factorial(frac(n, 2), r);
}

Rational sphere_poly_integral(const MonomialExponent& alpha, int n) {
  require(n >= 1, "sphere dimension n must be >= 1");
  require(static_cast<int>(alpha.exponents.size()) <= n, "multi-index longer than dimension");
  Rational num(1);
  unsigned total = 0;
  for (int a : alpha.exponents) {
    require(a >= 0, "negative exponent");
    num *= rising_factorial(frac(1, 2), static_cast<unsigned>(a));
    total += static_cast<unsigned>(a);
  }
  return num / rising_factorial(frac(n, 2), total);
}

Rational sphere_monomial_integral(const std::vector<int>& raw_exponents) {
  MonomialExponent alpha;
  alpha.exponents.reserve(raw_exponents.size());
  for (int e : raw_exponents) {
    if (e % 2 != 0) return Rational(0);
    alpha.exponents.push_back(e / 2);
  }
  return sphere_poly_integral(alpha, static_cast<int>(raw_exponents.size()));
}

Rational integrate_over_sphere(const Polynomial<Rational>& p) {
  Rational sum(0);
  for (const auto& [e, c] : p.terms()) sum += c * sphere_monomial_integral(e);
  return sum;
}

Rational t_moment(int n, int j, unsigned r) {
  check_nj(n, j);
  Rational out(1);
  for (unsigned i = 0; i < r; ++i) out *= frac(j + 2 * static_cast<long>(i), n + 2 * static_cast<long>(i));
  return out;
}

Rational norm_Y_sq(int n) {
  require(n >= 2, "dimension n must be >= 2");
  const Integer num = Integer(24) * (n - 1) * (n + 1);
  const Integer den = Integer(n) * (n + 2) * (n + 2) * (n + 4) * (n + 4) * (n + 6);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational norm_Y_sq_by_expansion(int n) {
  require(n >= 2, "dimension n must be >= 2");
  // Y = u^4 + b u^2 + c with u = u_1.
  const Rational b = frac(-6, n + 4);
  const Rational c = frac(3, static_cast<long>(n + 2) * (n + 4));
  const Rational coeffs[5] = {c * c, 2 * b * c, b * b + 2 * c, 2 * b, Rational(1)};
  Rational sum(0);
  for (unsigned r = 0; r < 5; ++r) sum += coeffs[r] * sphere_coordinate_moment(n, r);
  return sum;
}

Rational Bj(int n, int j) {
  check_nj(n, j);
  const Integer num = Integer(3) * (n - j) * (n - j + 2);
  const Integer den = Integer(j + 2) * (n - 1) * (n + 1);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Bj_from_moments(int n, int j) {
  check_nj(n, j);
  // j R_j Y = a T^2 + b T + c as a function of T = |P_F e_1|^2.
  const Rational a = frac(3, j + 2);
  const Rational b = frac(-6, n + 4);
  const Rational c = frac(3L * j, static_cast<long>(n + 2) * (n + 4));
  const Rational square =
      a * a * t_moment(n, j, 4) + 2 * a * b * t_moment(n, j, 3) +
      (b * b + 2 * a * c) * t_moment(n, j, 2) + 2 * b * c * t_moment(n, j, 1) + c * c;
  return square / (Rational(j) * norm_Y_sq_by_expansion(n));
}

Rational Aj_closed(int n, int j) {
  check_nj(n, j);
  const Integer num = Integer(3) * (n + 4) * (n - j) * (j + 1);
  const Integer den = Integer(2) * (j + 2) * (n - 1);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Aj_assembled(int n, int j) {
  check_nj(n, j);
  const Rational volume_term =
      frac(n - j, 2) * (lambda_fourth(n) / Rational(n - 1) - Rational(1));
  return volume_term - frac(n + 1, 2) * Bj(n, j);
}

Rational coefficient(int m, int k, int n) {
  require(m >= 1 && m < k && k <= n - 1, "coefficient requires 1 <= m < k <= n-1");
  const Integer num = Integer(3) * (n + 4) * (k - m) * ((m + 2) * (k + 2) - n - 2);
  const Integer den = Integer(2) * (n - 1) * (m + 2) * (k + 2);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool counterexample_exists(int m, int k, int n) {
  require(m >= 1 && m < k && k <= n - 1, "requires 1 <= m < k <= n-1");
  return n > (m + 2) * (k + 2) - 2;
}

Polynomial<Rational> fourth_harmonic_polynomial(int n) {
  require(n >= 2, "dimension n must be >= 2");
  using P = Polynomial<Rational>;
  const P x1 = P::variable(n, 0);
  const P x1sq = x1 * x1;
  const P r2 = P::norm_squared(n);
  return x1sq * x1sq + frac(-6, n + 4) * (x1sq * r2) +
         frac(3, static_cast<long>(n + 2) * (n + 4)) * (r2 * r2);
}

Polynomial<Rational> fourth_harmonic_zonal_polynomial(int n) {
  require(n >= 2, "dimension n must be >= 2");
  using P = Polynomial<Rational>;
  const P x1 = P::variable(n, 0);
  const P x1sq = x1 * x1;
  return x1sq * x1sq + frac(-6, n + 4) * x1sq +
         P::constant(n, frac(3, static_cast<long>(n + 2) * (n + 4)));
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

// ---------------------------------------------------------------------------

bool IdentityReport::passed() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

namespace {

class CheckBuilder {
 public:
  CheckBuilder(std::string name, std::string statement, std::string range) {
    check_.name = std::move(name);
    check_.statement = std::move(statement);
    check_.range = std::move(range);
  }

  void record(bool ok, const std::string& where) {
    ++check_.cases;
    if (!ok) {
      if (check_.failures == 0) check_.first_failure = where;
      ++check_.failures;
    }
  }

  IdentityCheck take() { return std::move(check_); }

 private:
  IdentityCheck check_;
};

std::string at(std::initializer_list<std::pair<const char*, int>> params) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : params) {
    out << (first ? "" : ",") << name << "=" << value;
    first = false;
  }
  return out.str();
}

}  // namespace

IdentityReport run_identity_suite(int n_max, int sign_n_max, const ClosedForms& forms) {
  require(n_max >= 3, "identity suite needs n_max >= 3");
  IdentityReport report;
  report.n_max = n_max;
  const std::string nj_range = "2<=n<=" + std::to_string(n_max) + ", 1<=j<=n";
  const std::string mkn_range = "3<=n<=" + std::to_string(n_max) + ", 1<=m<k<=n-1";

  {
    CheckBuilder b("aj_assembled_equals_closed",
                   "(n-j)/2 (4(n+2)/(n-1) - 1) - (n+1)/2 B_j == 3(n+4)(n-j)(j+1) / (2(j+2)(n-1))",
                   nj_range);
    for (int n = 2; n <= n_max; ++n)
      for (int j = 1; j <= n; ++j)
        b.record(forms.aj_assembled(n, j) == forms.aj_closed(n, j), at({{"n", n}, {"j", j}}));
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("coefficient_equals_aj_difference",
                   "A_m - A_k == 3(n+4)(k-m)((m+2)(k+2)-n-2) / (2(n-1)(m+2)(k+2))", mkn_range);
    for (int n = 3; n <= n_max; ++n)
      for (int m = 1; m < n - 1; ++m)
        for (int k = m + 1; k <= n - 1; ++k)
          b.record(forms.aj_closed(n, m) - forms.aj_closed(n, k) == forms.coefficient(m, k, n),
                   at({{"m", m}, {"k", k}, {"n", n}}));
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("sign_matches_dimension_condition",
                   "coefficient(m,k,n) < 0 iff n > (m+2)(k+2)-2", mkn_range);
    for (int n = 3; n <= n_max; ++n)
      for (int m = 1; m < n - 1; ++m)
        for (int k = m + 1; k <= n - 1; ++k)
          b.record((forms.coefficient(m, k, n) < 0) == counterexample_exists(m, k, n),
                   at({{"m", m}, {"k", k}, {"n", n}}));
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("norm_y_closed_equals_expansion",
                   "24(n-1)(n+1) / (n(n+2)^2(n+4)^2(n+6)) == sum of coordinate moments of Y^2",
                   "2<=n<=" + std::to_string(n_max));
    for (int n = 2; n <= n_max; ++n)
      b.record(forms.norm_y_sq(n) == norm_Y_sq_by_expansion(n), at({{"n", n}}));
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("norm_y_equals_polynomial_integral",
                   "||Y||^2 == normalized sphere integral of the expanded polynomial Y^2",
                   "2<=n<=" + std::to_string(n_max));
    for (int n = 2; n <= n_max; ++n) {
      const auto y = fourth_harmonic_zonal_polynomial(n);
      b.record(forms.norm_y_sq(n) == integrate_over_sphere(y * y), at({{"n", n}}));
    }
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("bj_closed_equals_moment_expansion",
                   "3(n-j)(n-j+2)/((j+2)(n-1)(n+1)) == (1/(j||Y||^2)) sum_r coef_r M_r(j)",
                   nj_range);
    for (int n = 2; n <= n_max; ++n)
      for (int j = 1; j <= n; ++j)
        b.record(forms.bj(n, j) == Bj_from_moments(n, j), at({{"n", n}, {"j", j}}));
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("harmonic_polynomial_is_harmonic",
                   "Euclidean Laplacian of x1^4 - 6/(n+4) x1^2|x|^2 + 3/((n+2)(n+4))|x|^4 is 0",
                   "2<=n<=" + std::to_string(n_max));
    for (int n = 2; n <= n_max; ++n)
      b.record(fourth_harmonic_polynomial(n).laplacian().is_zero(), at({{"n", n}}));
    report.checks.push_back(b.take());
  }
  {
    CheckBuilder b("t_moments_match_sphere_pushforward",
                   "M_r(j) == integral of (u_1^2+...+u_j^2)^r over S^{n-1}, r<=4",
                   "2<=n<=12, 1<=j<=n");
    for (int n = 2; n <= std::min(n_max, 12); ++n)
      for (int j = 1; j <= n; ++j) {
        using P = Polynomial<Rational>;
        P s(n);
        for (int i = 0; i < j; ++i) s += P::variable(n, i) * P::variable(n, i);
        P power = P::constant(n, Rational(1));
        for (unsigned r = 1; r <= 4; ++r) {
          power = power * s;
          b.record(integrate_over_sphere(power) == t_moment(n, j, r),
                   at({{"n", n}, {"j", j}, {"r", static_cast<int>(r)}}));
        }
      }
    report.checks.push_back(b.take());
  }

  for (int n = 3; n <= std::min(sign_n_max, n_max); ++n)
    for (int m = 1; m < n - 1; ++m)
      for (int k = m + 1; k <= n - 1; ++k) {
        CoefficientSign s;
        s.m = m;
        s.k = k;
        s.n = n;
        s.value = forms.coefficient(m, k, n);
        s.counterexample = counterexample_exists(m, k, n);
        report.signs.push_back(std::move(s));
      }
  return report;
}

}  // namespace quermass::exact
