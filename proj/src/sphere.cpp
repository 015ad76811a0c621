#include "quermass/sphere.hpp"

#include <algorithm>
#include <numeric>

#include "quermass/random.hpp"

namespace quermass::sphere {

UnitVector::UnitVector(Vec v) : v_(std::move(v)) {
  require(v_.size() >= 1, "unit vector needs dimension >= 1");
  require(std::abs(v_.norm() - 1.0) <= 1e-12, "vector is not of unit length");
}

UnitVector UnitVector::normalized(const Vec& v) {
  const double norm = v.norm();
  require(norm > 0.0, "cannot normalize the zero vector");
  return UnitVector(v / norm, Trusted{});
}

UnitVector UnitVector::basis(int n, int index) {
  Vec e = Vec::Zero(n);
  e[index] = 1.0;
  return UnitVector(e, Trusted{});
}

// ---------------------------------------------------------------------------

ZonalProfile::ZonalProfile(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

ZonalProfile ZonalProfile::constant(double c) { return ZonalProfile({c}); }

ZonalProfile ZonalProfile::fourth_harmonic(int n) {
  require(n >= 2, "dimension must be >= 2");
  return ZonalProfile({3.0 / ((n + 2.0) * (n + 4.0)), 0.0, -6.0 / (n + 4.0), 0.0, 1.0});
}

double ZonalProfile::operator()(double c) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * c + *it;
  return acc;
}

double ZonalProfile::derivative(double c) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * c + k * coeffs_[k];
  return acc;
}

double ZonalProfile::second_derivative(double c) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 2;) acc = acc * c + k * (k - 1) * coeffs_[k];
  return acc;
}

ZonalProfile ZonalProfile::scaled_argument(double s) const {
  std::vector<double> out(coeffs_);
  double p = 1.0;
  for (double& c : out) {
    c *= p;
    p *= s;
  }
  return ZonalProfile(std::move(out));
}

ZonalProfile ZonalProfile::affine(double offset, double scale) const {
  std::vector<double> out(coeffs_);
  for (double& c : out) c *= scale;
  out[0] += offset;
  return ZonalProfile(std::move(out));
}

ZonalProfile ZonalProfile::even_part() const {
  std::vector<double> out(coeffs_);
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = 0.0;
  return ZonalProfile(std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

class ConstantFn final : public AmbientFunction {
 public:
  ConstantFn(int n, double c) : n_(n), c_(c) {}
  int dim() const override { return n_; }
  double value(const Vec&) const override { return c_; }
  Vec gradient(const Vec&) const override { return Vec::Zero(n_); }
  Mat hessian(const Vec&) const override { return Mat::Zero(n_, n_); }

 private:
  int n_;
  double c_;
};

class PolynomialFn final : public AmbientFunction {
 public:
  explicit PolynomialFn(const Polynomial<double>& p) : p_(p), n_(p.dim()) {
    grad_.reserve(n_);
    for (int i = 0; i < n_; ++i) grad_.push_back(p_.derivative(i));
    hess_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) hess_.push_back(grad_[i].derivative(j));
  }
  int dim() const override { return n_; }
  double value(const Vec& x) const override { return p_.evaluate(x); }
  Vec gradient(const Vec& x) const override {
    Vec g(n_);
    for (int i = 0; i < n_; ++i) g[i] = grad_[i].evaluate(x);
    return g;
  }
  Mat hessian(const Vec& x) const override {
    Mat h(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) h(i, j) = hess_[static_cast<std::size_t>(i) * n_ + j].evaluate(x);
    return h;
  }

 private:
  Polynomial<double> p_;
  int n_;
  std::vector<Polynomial<double>> grad_;
  std::vector<Polynomial<double>> hess_;
};

class ZonalFn final : public AmbientFunction {
 public:
  ZonalFn(ZonalProfile phi, Vec axis) : phi_(std::move(phi)), axis_(std::move(axis)) {}
  int dim() const override { return static_cast<int>(axis_.size()); }
  double value(const Vec& x) const override { return phi_(axis_.dot(x)); }
  Vec gradient(const Vec& x) const override { return phi_.derivative(axis_.dot(x)) * axis_; }
  Mat hessian(const Vec& x) const override {
    return phi_.second_derivative(axis_.dot(x)) * (axis_ * axis_.transpose());
  }

 private:
  ZonalProfile phi_;
  Vec axis_;
};

class AffineFn final : public AmbientFunction {
 public:
  AffineFn(double offset, double scale, SphericalFunction f)
      : offset_(offset), scale_(scale), f_(std::move(f)) {}
  int dim() const override { return f_.dim(); }
  double value(const Vec& x) const override { return offset_ + scale_ * f_(x); }
  Vec gradient(const Vec& x) const override { return scale_ * f_.gradient(x); }
  Mat hessian(const Vec& x) const override { return scale_ * f_.hessian(x); }

 private:
  double offset_, scale_;
  SphericalFunction f_;
};

class SumFn final : public AmbientFunction {
 public:
  SumFn(SphericalFunction f, SphericalFunction g) : f_(std::move(f)), g_(std::move(g)) {}
  int dim() const override { return f_.dim(); }
  double value(const Vec& x) const override { return f_(x) + g_(x); }
  Vec gradient(const Vec& x) const override { return f_.gradient(x) + g_.gradient(x); }
  Mat hessian(const Vec& x) const override { return f_.hessian(x) + g_.hessian(x); }

 private:
  SphericalFunction f_, g_;
};

class ComposeLinearFn final : public AmbientFunction {
 public:
  ComposeLinearFn(SphericalFunction f, Mat a) : f_(std::move(f)), a_(std::move(a)) {}
  int dim() const override { return static_cast<int>(a_.cols()); }
  double value(const Vec& y) const override { return f_(a_ * y); }
  Vec gradient(const Vec& y) const override { return a_.transpose() * f_.gradient(a_ * y); }
  Mat hessian(const Vec& y) const override {
    return a_.transpose() * f_.hessian(a_ * y) * a_;
  }

 private:
  SphericalFunction f_;
  Mat a_;
};

class HomogeneousFn final : public AmbientFunction {
 public:
  explicit HomogeneousFn(SphericalFunction f) : f_(std::move(f)) {}
  int dim() const override { return f_.dim(); }
  double value(const Vec& x) const override {
    const double r = x.norm();
    return r * f_(x / r);
  }
  Vec gradient(const Vec& x) const override {
    const double r = x.norm();
    const Vec v = x / r;
    const Vec g = f_.gradient(v);
    return f_(v) * v + g - v * v.dot(g);
  }
  // (1/r) [(f - <v, grad f>) P + P Hess f P] with P = I - v v^T.
  Mat hessian(const Vec& x) const override {
    const double r = x.norm();
    const Vec v = x / r;
    const Mat p = Mat::Identity(x.size(), x.size()) - v * v.transpose();
    return ((f_(v) - v.dot(f_.gradient(v))) * p + p * f_.hessian(v) * p) / r;
  }

 private:
  SphericalFunction f_;
};

class QuadraticNormFn final : public AmbientFunction {
 public:
  explicit QuadraticNormFn(Mat s) : s_(std::move(s)) {}
  int dim() const override { return static_cast<int>(s_.rows()); }
  double value(const Vec& x) const override { return std::sqrt(x.dot(s_ * x)); }
  Vec gradient(const Vec& x) const override { return s_ * x / value(x); }
  Mat hessian(const Vec& x) const override {
    const double h = value(x);
    const Vec sx = s_ * x;
    return (s_ - sx * sx.transpose() / (h * h)) / h;
  }

 private:
  Mat s_;
};

class EvenPartFn final : public AmbientFunction {
 public:
  explicit EvenPartFn(SphericalFunction f) : f_(std::move(f)) {}
  int dim() const override { return f_.dim(); }
  double value(const Vec& x) const override { return 0.5 * (f_(x) + f_(-x)); }
  Vec gradient(const Vec& x) const override {
    return 0.5 * (f_.gradient(x) - f_.gradient(-x));
  }
  Mat hessian(const Vec& x) const override { return 0.5 * (f_.hessian(x) + f_.hessian(-x)); }

 private:
  SphericalFunction f_;
};

}  // namespace

SphericalFunction::SphericalFunction(std::shared_ptr<const AmbientFunction> impl)
    : impl_(std::move(impl)) {}

SphericalFunction constant_function(int n, double c) {
  return SphericalFunction(std::make_shared<ConstantFn>(n, c));
}

SphericalFunction polynomial_function(const Polynomial<double>& p) {
  return SphericalFunction(std::make_shared<PolynomialFn>(p));
}

SphericalFunction polynomial_function(const Polynomial<exact::Rational>& p) {
  return polynomial_function(
      p.cast<double>([](const exact::Rational& q) { return exact::to_double(q); }));
}

SphericalFunction zonal_function(const ZonalProfile& phi, const Vec& axis) {
  require(std::abs(axis.norm() - 1.0) <= 1e-12, "zonal axis must be a unit vector");
  return SphericalFunction(std::make_shared<ZonalFn>(phi, axis));
}

SphericalFunction fourth_harmonic(int n) {
  return zonal_function(ZonalProfile::fourth_harmonic(n), UnitVector::basis(n, 0).coords());
}

SphericalFunction fourth_harmonic_homogeneous(int n) {
  return polynomial_function(exact::fourth_harmonic_polynomial(n));
}

SphericalFunction affine(double offset, double scale, const SphericalFunction& f) {
  return SphericalFunction(std::make_shared<AffineFn>(offset, scale, f));
}

SphericalFunction sum(const SphericalFunction& f, const SphericalFunction& g) {
  require(f.dim() == g.dim(), "dimension mismatch in sum");
  return SphericalFunction(std::make_shared<SumFn>(f, g));
}

SphericalFunction compose_linear(const SphericalFunction& f, const Mat& a) {
  require(a.rows() == f.dim(), "linear map does not match function dimension");
  return SphericalFunction(std::make_shared<ComposeLinearFn>(f, a));
}

SphericalFunction quadratic_norm(const Mat& s) {
  require(s.rows() == s.cols(), "quadratic form must be square");
  return SphericalFunction(std::make_shared<QuadraticNormFn>(s));
}

SphericalFunction homogeneous_extension(const SphericalFunction& f) {
  return SphericalFunction(std::make_shared<HomogeneousFn>(f));
}

SphericalFunction even_part(const SphericalFunction& f) {
  return SphericalFunction(std::make_shared<EvenPartFn>(f));
}

double eval_Y(int n, const UnitVector& u) {
  require(u.dim() == n, "unit vector dimension mismatch");
  const double u1sq = u[0] * u[0];
  return u1sq * u1sq - 6.0 * u1sq / (n + 4.0) + 3.0 / ((n + 2.0) * (n + 4.0));
}

// ---------------------------------------------------------------------------

Mat tangent_frame(const Vec& u) {
  const int n = static_cast<int>(u.size());
  Mat frame(n, n - 1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(u[a]) < std::abs(u[b]); });
  int filled = 0;
  for (int idx : order) {
    if (filled == n - 1) break;
    Vec v = Vec::Zero(n);
    v[idx] = 1.0;
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass) {
      v -= u.dot(v) * u;
      for (int k = 0; k < filled; ++k) v -= frame.col(k).dot(v) * frame.col(k);
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    frame.col(filled++) = v / norm;
  }
  return frame;
}

Vec intrinsic_gradient(const SphericalFunction& f, const Vec& u) {
  const Vec g = f.gradient(u);
  return g - u.dot(g) * u;
}

Mat intrinsic_hessian(const SphericalFunction& f, const Vec& u, const Mat& frame) {
  const double radial = u.dot(f.gradient(u));
  Mat h = frame.transpose() * f.hessian(u) * frame;
  h.diagonal().array() -= radial;
  return h;
}

Mat intrinsic_hessian(const SphericalFunction& f, const Vec& u) {
  return intrinsic_hessian(f, u, tangent_frame(u));
}

double laplace_beltrami(const SphericalFunction& f, const Vec& u) {
  const Vec g = f.gradient(u);
  const Mat h = f.hessian(u);
  const int n = static_cast<int>(u.size());
  return h.trace() - u.dot(h * u) - (n - 1) * u.dot(g);
}

std::vector<UnitVector> sample_sphere(int n, std::size_t count, std::uint64_t seed) {
  require(n >= 1 && count >= 1, "sample_sphere needs n >= 1 and count >= 1");
  RandomStream rng(seed);
  std::vector<UnitVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(UnitVector::normalized(rng.unit_vector(n)));
  return out;
}

BochnerResult bochner_residual(const SphericalFunction& f, const SphereQuadrature& quad) {
  const int n = f.dim();
  require(n >= 2, "Bochner identity needs S^d with d >= 1");
  const SphereRule rule = quad.rule(n);
  const double d = n - 1;
  double lap_sq = 0.0, hess_sq = 0.0, grad_sq = 0.0;
  const Estimate residual = rule.integrate([&](const Vec& u) {
    const Mat h = intrinsic_hessian(f, u);
    const double lap = h.trace();
    const double hs = h.squaredNorm();
    const double gs = intrinsic_gradient(f, u).squaredNorm();
    return lap * lap - hs - (d - 1.0) * gs;
  });
  // the three terms separately, for reporting
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec& u = rule.nodes[i];
    const Mat h = intrinsic_hessian(f, u);
    lap_sq += rule.weights[i] * h.trace() * h.trace();
    hess_sq += rule.weights[i] * h.squaredNorm();
    grad_sq += rule.weights[i] * intrinsic_gradient(f, u).squaredNorm();
  }
  const double area = sphere_area(n);
  BochnerResult out;
  out.residual = {area * residual.value, area * residual.std_error};
  out.laplacian_sq = area * lap_sq;
  out.hessian_sq = area * hess_sq;
  out.gradient_sq = area * grad_sq;
  return out;
}

IntrinsicPolynomials<exact::Rational> intrinsic_polynomials(
    const Polynomial<exact::Rational>& p) {
  using P = Polynomial<exact::Rational>;
  using exact::Rational;
  const int n = p.dim();
  std::vector<P> x, g;
  for (int i = 0; i < n; ++i) {
    x.push_back(P::variable(n, i));
    g.push_back(p.derivative(i));
  }
  P radial(n);
  for (int i = 0; i < n; ++i) radial += x[i] * g[i];

  // Q = D^2 p - radial * I
  std::vector<P> q(static_cast<std::size_t>(n) * n, P(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      P entry = g[i].derivative(j);
      if (i == j) entry -= radial;
      q[static_cast<std::size_t>(i) * n + j] = entry;
    }
  auto qe = [&](int i, int j) -> const P& { return q[static_cast<std::size_t>(i) * n + j]; };

  IntrinsicPolynomials<Rational> out;
  out.gradient_sq = P(n);
  for (int i = 0; i < n; ++i) out.gradient_sq += g[i] * g[i];
  out.gradient_sq -= radial * radial;

  // Laplace-Beltrami = tr Q - x^T Q x restricted, written with the original
  // Hessian: tr D^2 p - x^T D^2 p x - (n-1) radial.
  P trace(n), qxx(n), tr_q2(n), qx_sq(n);
  std::vector<P> qx(n, P(n));
  for (int i = 0; i < n; ++i) {
    trace += qe(i, i);
    for (int j = 0; j < n; ++j) {
      if (qe(i, j).is_zero()) continue;
      qx[i] += qe(i, j) * x[j];
      tr_q2 += qe(i, j) * qe(j, i);
    }
    qxx += x[i] * qx[i];
    qx_sq += qx[i] * qx[i];
  }
  // tr(Pi Q) with Pi = I - x x^T equals tr Q - x^T Q x.
  out.laplacian = trace - qxx;
  // |Pi Q Pi|^2 = tr Q^2 - 2 |Q x|^2 + (x^T Q x)^2 on the unit sphere.
  out.hessian_sq = tr_q2 - Rational(2) * qx_sq + qxx * qxx;
  return out;
}

ExactBochner bochner_residual_exact(const Polynomial<exact::Rational>& p) {
  const int n = p.dim();
  require(n >= 2, "Bochner identity needs S^d with d >= 1");
  const auto ip = intrinsic_polynomials(p);
  ExactBochner out;
  out.laplacian_sq = exact::integrate_over_sphere(ip.laplacian * ip.laplacian);
  out.hessian_sq = exact::integrate_over_sphere(ip.hessian_sq);
  out.gradient_sq = exact::integrate_over_sphere(ip.gradient_sq);
  out.residual = out.laplacian_sq - out.hessian_sq - exact::Rational(n - 2) * out.gradient_sq;
  return out;
}

}  // namespace quermass::sphere
