#pragma once

// Functions on S^{n-1} carried by an ambient extension on R^n. Intrinsic
// derivatives come from the ambient ones by tangential projection, so they are
// exact to rounding (no finite differences on the sphere).

#include <cstdint>
#include <memory>
#include <vector>

#include "quermass/common.hpp"
#include "quermass/exact_algebra.hpp"
#include "quermass/polynomial.hpp"
#include "quermass/quadrature.hpp"

namespace quermass::sphere {

/// Point of S^{n-1}.
class UnitVector {
 public:
  /// Throws PreconditionError unless |v| = 1 within 1e-12.
  explicit UnitVector(Vec v);
  static UnitVector normalized(const Vec& v);
  static UnitVector basis(int n, int index);

  const Vec& coords() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }
  UnitVector operator-() const { return UnitVector(-v_); }

 private:
  struct Trusted {};
  UnitVector(Vec v, Trusted) : v_(std::move(v)) {}
  Vec v_;
};

/// Polynomial profile phi on [-1, 1]; coefficient k multiplies c^k.
class ZonalProfile {
 public:
  ZonalProfile() = default;
  explicit ZonalProfile(std::vector<double> coefficients);

  static ZonalProfile constant(double c);
  /// phi(c) = c^4 - 6c^2/(n+4) + 3/((n+2)(n+4)).
  static ZonalProfile fourth_harmonic(int n);

  double operator()(double c) const;
  double derivative(double c) const;
  double second_derivative(double c) const;

  /// c -> phi(s c).
  ZonalProfile scaled_argument(double s) const;
  /// offset + scale * phi.
  ZonalProfile affine(double offset, double scale) const;
  /// c -> (phi(c) + phi(-c)) / 2.
  ZonalProfile even_part() const;

  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<double> coeffs_{0.0};
};

/// Smooth function on R^n used as the extension of a spherical function.
class AmbientFunction {
 public:
  virtual ~AmbientFunction() = default;
  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;
};

/// Value-semantic handle on an ambient extension.
class SphericalFunction {
 public:
  SphericalFunction() = default;
  explicit SphericalFunction(std::shared_ptr<const AmbientFunction> impl);

  int dim() const { return impl_->dim(); }
  double operator()(const Vec& x) const { return impl_->value(x); }
  Vec gradient(const Vec& x) const { return impl_->gradient(x); }
  Mat hessian(const Vec& x) const { return impl_->hessian(x); }
  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  std::shared_ptr<const AmbientFunction> impl_;
};

SphericalFunction constant_function(int n, double c);
SphericalFunction polynomial_function(const Polynomial<double>& p);
SphericalFunction polynomial_function(const Polynomial<exact::Rational>& p);
/// x -> phi(<x, axis>).
SphericalFunction zonal_function(const ZonalProfile& phi, const Vec& axis);
/// Degree-four zonal harmonic Y written through u_1 (zonal extension).
SphericalFunction fourth_harmonic(int n);
/// Y as the harmonic homogeneous quartic H on R^n.
SphericalFunction fourth_harmonic_homogeneous(int n);
/// offset + scale * f.
SphericalFunction affine(double offset, double scale, const SphericalFunction& f);
SphericalFunction sum(const SphericalFunction& f, const SphericalFunction& g);
/// y -> f(A y) for an n x m matrix A; the result lives on R^m.
SphericalFunction compose_linear(const SphericalFunction& f, const Mat& a);
/// x -> sqrt(x^T S x) for symmetric positive definite S.
SphericalFunction quadratic_norm(const Mat& s);
/// x -> (f(x) + f(-x)) / 2.
SphericalFunction even_part(const SphericalFunction& f);
/// x -> |x| f(x/|x|): the degree-one homogeneous extension of the
/// restriction of f, as needed whenever a support function is evaluated off
/// the sphere.
SphericalFunction homogeneous_extension(const SphericalFunction& f);

double eval_Y(int n, const UnitVector& u);

/// n x (n-1) orthonormal basis of the tangent space at u, by Gram-Schmidt
/// completion of u against the coordinate axes.
Mat tangent_frame(const Vec& u);

/// (I - u u^T) grad f(u), as an ambient vector.
Vec intrinsic_gradient(const SphericalFunction& f, const Vec& u);

/// Covariant Hessian in the given tangent frame:
/// H[v,w] = D^2 f(u)[v,w] - <u, grad f(u)> <v,w>.
Mat intrinsic_hessian(const SphericalFunction& f, const Vec& u, const Mat& frame);
Mat intrinsic_hessian(const SphericalFunction& f, const Vec& u);

/// Laplace-Beltrami operator (non-positive spectrum).
double laplace_beltrami(const SphericalFunction& f, const Vec& u);

/// count i.i.d. uniform points on S^{n-1}, deterministic for a fixed seed.
std::vector<UnitVector> sample_sphere(int n, std::size_t count, std::uint64_t seed);

/// Integrated Bochner identity terms over S^{n-1} with the unnormalized
/// measure (total mass |S^{n-1}|):
/// residual = int (Lap f)^2 - |Hess f|^2 - (d-1) int |grad f|^2, d = n - 1.
struct BochnerResult {
  Estimate residual;
  double laplacian_sq = 0.0;
  double hessian_sq = 0.0;
  double gradient_sq = 0.0;
};

BochnerResult bochner_residual(const SphericalFunction& f, const SphereQuadrature& quad);

/// Polynomials whose restrictions to S^{n-1} equal the intrinsic quantities
/// of the restriction of p.
template <class Scalar>
struct IntrinsicPolynomials {
  Polynomial<Scalar> gradient_sq;
  Polynomial<Scalar> laplacian;
  Polynomial<Scalar> hessian_sq;
};

IntrinsicPolynomials<exact::Rational> intrinsic_polynomials(const Polynomial<exact::Rational>& p);

/// Exact Bochner terms with the normalized measure; residual is 0 for every
/// polynomial.
struct ExactBochner {
  exact::Rational laplacian_sq;
  exact::Rational hessian_sq;
  exact::Rational gradient_sq;
  exact::Rational residual;
};

ExactBochner bochner_residual_exact(const Polynomial<exact::Rational>& p);

}  // namespace quermass::sphere
