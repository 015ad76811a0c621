#include "quermass/grassmann.hpp"

#include "quermass/exact_algebra.hpp"

namespace quermass::grassmann {

Subspace::Subspace(Mat basis) : basis_(std::move(basis)) {
  require(basis_.cols() >= 1 && basis_.cols() <= basis_.rows(),
          "subspace basis must be n x j with 1 <= j <= n");
  const Mat gram = basis_.transpose() * basis_;
  require((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-12,
          "subspace basis is not orthonormal");
}

Subspace Subspace::span_of(const Mat& vectors) {
  const int n = static_cast<int>(vectors.rows());
  const int j = static_cast<int>(vectors.cols());
  Eigen::HouseholderQR<Mat> qr(vectors);
  Mat q = qr.householderQ() * Mat::Identity(n, j);
  const Mat r = qr.matrixQR().topRows(j).triangularView<Eigen::Upper>();
  for (int i = 0; i < j; ++i) {
    require(std::abs(r(i, i)) > 1e-12, "spanning vectors are linearly dependent");
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return Subspace(std::move(q));
}

Subspace Subspace::coordinate(int n, int j) {
  require(j >= 1 && j <= n, "coordinate subspace needs 1 <= j <= n");
  return Subspace(Mat::Identity(n, j));
}

Subspace haar_subspace(int n, int j, RandomStream& rng) {
  require(j >= 1 && j <= n, "Grassmannian needs 1 <= j <= n");
  return Subspace::span_of(rng.gaussian_matrix(n, j));
}

std::vector<Subspace> sample_grassmann(int n, int j, std::size_t count, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Subspace> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(haar_subspace(n, j, rng));
  return out;
}

double t_of(const Subspace& f, const Vec& axis) {
  return (f.basis().transpose() * axis).squaredNorm();
}

double t_of(const Subspace& f) { return f.basis().row(0).squaredNorm(); }

BetaQuadrature::BetaQuadrature(int n, int j, int order)
    : n_(n), j_(j), rule_(beta_rule(order, 0.5 * j, 0.5 * (n - j))) {
  require(j >= 1 && j <= n, "Beta law needs 1 <= j <= n");
}

double radon_average(const sphere::SphericalFunction& f, const Subspace& subspace,
                     const SphereRule& rule) {
  require(!rule.nodes.empty() && rule.nodes.front().size() == subspace.dim(),
          "inner rule does not live on S^{j-1}");
  const Mat& b = subspace.basis();
  return rule.integrate([&](const Vec& y) { return f(b * y); }).value;
}

double radon_average(const sphere::SphericalFunction& f, const Subspace& subspace,
                     const SphereQuadrature& quad) {
  return radon_average(f, subspace, quad.rule(subspace.dim()));
}

double radon_gradient_energy(const sphere::SphericalFunction& f, const Subspace& subspace,
                             const SphereRule& rule) {
  if (subspace.dim() == 1) return 0.0;
  const auto restricted = sphere::compose_linear(f, subspace.basis());
  return rule
      .integrate([&](const Vec& y) { return sphere::intrinsic_gradient(restricted, y).squaredNorm(); })
      .value;
}

double zonal_radon_average(const sphere::ZonalProfile& phi, double s, const Rule1D& rule) {
  return rule.integrate([&](double c) { return phi(s * c); });
}

double zonal_radon_average(const sphere::ZonalProfile& phi, double s, int j, int angle_order) {
  return zonal_radon_average(phi, s, zonal_rule(j, angle_order));
}

double jRjY_closed(int n, int j, double t) {
  return 3.0 * t * t / (j + 2.0) - 6.0 * t / (n + 4.0) + 3.0 * j / ((n + 2.0) * (n + 4.0));
}

RadonIdentityResult radon_identity_check(int n, int j, std::size_t samples, std::uint64_t seed,
                                         const SphereQuadrature& inner) {
  require(n >= 2 && j >= 1 && j <= n, "radon identities need 1 <= j <= n, n >= 2");
  require(samples >= 2, "need at least two samples");
  const auto y = sphere::fourth_harmonic(n);
  const auto y_sq = sphere::polynomial_function([&] {
    const auto p = exact::fourth_harmonic_zonal_polynomial(n);
    return p * p;
  }());
  const SphereRule rule = inner.rule(j);
  RandomStream rng(seed);
  RunningStats ysq_stats, grad_stats;
  for (std::size_t i = 0; i < samples; ++i) {
    const Subspace f = haar_subspace(n, j, rng);
    ysq_stats.push(radon_average(y_sq, f, rule));
    grad_stats.push(radon_gradient_energy(y, f, rule));
  }
  const double norm = exact::to_double(exact::norm_Y_sq(n));
  const double lambda = 4.0 * (n + 2.0);
  RadonIdentityResult out;
  out.n = n;
  out.j = j;
  out.samples = samples;
  out.y_sq_average = ysq_stats.estimate();
  out.gradient_average = grad_stats.estimate();
  out.y_sq_target = norm;
  out.gradient_target = (j - 1.0) * lambda * norm / (n - 1.0);
  return out;
}

SquareAverageResult square_average_check(int n, int j, std::size_t samples, std::uint64_t seed,
                                         int beta_order, int angle_order) {
  require(n >= 2 && j >= 1 && j <= n, "square average needs 1 <= j <= n, n >= 2");
  require(samples >= 2, "need at least two samples");
  const auto phi = sphere::ZonalProfile::fourth_harmonic(n);
  const auto y = sphere::fourth_harmonic(n);

  SquareAverageResult out;
  out.n = n;
  out.j = j;
  out.samples = samples;

  // Haar path: the inner average over S_F is a quadrature on S^{j-1} for
  // j <= 3, and the zonal reduction inside F otherwise.
  const SphereQuadrature inner = SphereQuadrature::product(16, 32);
  const SphereRule rule = inner.rule(std::min(j, 3));
  const Rule1D zonal = zonal_rule(j, angle_order);
  RandomStream rng(seed);
  RunningStats stats;
  for (std::size_t i = 0; i < samples; ++i) {
    const Subspace f = haar_subspace(n, j, rng);
    const double r = j <= 3 ? radon_average(y, f, rule)
                            : zonal_radon_average(phi, std::sqrt(t_of(f)), zonal);
    stats.push(j * j * r * r);
  }
  out.haar = stats.estimate();

  const BetaQuadrature beta(n, j, beta_order);
  out.beta = beta.integrate([&](double t) {
    const double r = j * zonal_radon_average(phi, std::sqrt(t), zonal);
    return r * r;
  });
  out.target = exact::to_double(exact::Rational(j) * exact::Bj(n, j) * exact::norm_Y_sq(n));
  return out;
}

MomentCheckResult t_moment_check(int n, int j, int r_max, std::size_t samples,
                                 std::uint64_t seed, int beta_order) {
  require(n >= 2 && j >= 1 && j <= n, "moment check needs 1 <= j <= n, n >= 2");
  require(r_max >= 1, "need at least one moment");
  require(samples >= 2, "need at least two samples");
  MomentCheckResult out;
  out.n = n;
  out.j = j;
  out.samples = samples;
  std::vector<RunningStats> stats(r_max);
  RandomStream rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_of(haar_subspace(n, j, rng));
    double p = 1.0;
    for (int r = 0; r < r_max; ++r) stats[r].push(p *= t);
  }
  const BetaQuadrature beta(n, j, beta_order);
  for (int r = 1; r <= r_max; ++r) {
    out.haar.push_back(stats[r - 1].estimate());
    out.beta.push_back(beta.integrate([r](double t) { return std::pow(t, r); }));
    out.exact.push_back(exact::to_double(exact::t_moment(n, j, r)));
  }
  return out;
}

}  // namespace quermass::grassmann
