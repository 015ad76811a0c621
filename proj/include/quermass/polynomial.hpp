#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quermass/common.hpp"

namespace quermass {

/// Multivariate polynomial in n variables with coefficients in Scalar.
/// Terms are keyed by their exponent vector; zero coefficients are dropped.
template <class Scalar>
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Scalar>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, const Scalar& c) {
    Polynomial p(dim);
    p.add_term(Exponents(dim, 0), c);
    return p;
  }

  /// The coordinate function x_index.
  static Polynomial variable(int dim, int index) {
    Polynomial p(dim);
    Exponents e(dim, 0);
    e.at(index) = 1;
    p.add_term(e, Scalar(1));
    return p;
  }

  static Polynomial monomial(const Exponents& e, const Scalar& c) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  /// |x|^2
  static Polynomial norm_squared(int dim) {
    Polynomial p(dim);
    for (int i = 0; i < dim; ++i) {
      Exponents e(dim, 0);
      e[i] = 2;
      p.add_term(e, Scalar(1));
    }
    return p;
  }

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Exponents& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != dim_) throw std::invalid_argument("exponent length mismatch");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  Polynomial derivative(int index) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponents d = e;
      d[index] -= 1;
      out.add_term(d, c * Scalar(e[index]));
    }
    return out;
  }

  /// Euclidean Laplacian sum_i d^2/dx_i^2.
  Polynomial laplacian() const {
    Polynomial out(dim_);
    for (int i = 0; i < dim_; ++i) out += derivative(i).derivative(i);
    return out;
  }

  template <class Vector>
  double evaluate(const Vector& x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = static_cast<double>(c);
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      sum += term;
    }
    return sum;
  }

  template <class Other, class Convert>
  Polynomial<Other> cast(Convert convert) const {
    Polynomial<Other> out(dim_);
    for (const auto& [e, c] : terms_) out.add_term(e, convert(c));
    return out;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    check_dim(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& rhs) {
    check_dim(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dim(b);
    Polynomial out(a.dim_);
    Exponents e(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void check_dim(const Polynomial& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  int dim_ = 0;
  Terms terms_;
};

}  // namespace quermass
