#include "quermass/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "quermass/random.hpp"

namespace quermass {

namespace {

struct JacobiValues {
  double p = 0.0;       // P_N(x)
  double p_prev = 0.0;  // P_{N-1}(x)
};

JacobiValues jacobi_eval(int order, double alpha, double beta, double x) {
  double p0 = 1.0;
  if (order == 0) return {p0, 0.0};
  double p1 = 0.5 * ((alpha - beta) + (alpha + beta + 2.0) * x);
  const double ab = alpha + beta;
  for (int k = 2; k <= order; ++k) {
    const double kk = k;
    const double a1 = 2.0 * kk * (kk + ab) * (2.0 * kk + ab - 2.0);
    const double a2 = (2.0 * kk + ab - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (2.0 * kk + ab - 2.0) * (2.0 * kk + ab - 1.0) * (2.0 * kk + ab);
    const double a4 = 2.0 * (kk + alpha - 1.0) * (kk + beta - 1.0) * (2.0 * kk + ab);
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

double jacobi_derivative(int order, double alpha, double beta, double x, const JacobiValues& v) {
  const double n = order;
  const double ab2n = 2.0 * n + alpha + beta;
  return (n * ((alpha - beta) - ab2n * x) * v.p + 2.0 * (n + alpha) * (n + beta) * v.p_prev) /
         (ab2n * (1.0 - x * x));
}

std::vector<double> golub_welsch_nodes(int order, double alpha, double beta) {
  const double ab = alpha + beta;
  Vec diag(order);
  Vec sub(std::max(order - 1, 1));
  for (int k = 0; k < order; ++k) {
    if (k == 0) {
      diag[k] = (beta - alpha) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < order; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }
  std::vector<double> nodes(order);
  if (order == 1) {
    nodes[0] = diag[0];
    return nodes;
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver;
  solver.computeFromTridiagonal(diag, sub.head(order - 1), Eigen::EigenvaluesOnly);
  for (int i = 0; i < order; ++i) nodes[i] = solver.eigenvalues()[i];
  return nodes;
}

Rule1D compute_gauss_jacobi(int order, double alpha, double beta) {
  Rule1D rule;
  rule.nodes = golub_welsch_nodes(order, alpha, beta);
  rule.weights.resize(order);
  const double n = order;
  const double log_c = (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(n + alpha + 1.0) +
                       std::lgamma(n + beta + 1.0) - std::lgamma(n + alpha + beta + 1.0) -
                       std::lgamma(n + 1.0);
  const double c = std::exp(log_c);
  for (int i = 0; i < order; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 4; ++it) {
      const auto v = jacobi_eval(order, alpha, beta, x);
      const double dp = jacobi_derivative(order, alpha, beta, x, v);
      const double step = v.p / dp;
      x -= step;
      if (std::abs(step) < 1e-17) break;
    }
    const auto v = jacobi_eval(order, alpha, beta, x);
    const double dp = jacobi_derivative(order, alpha, beta, x, v);
    rule.nodes[i] = x;
    rule.weights[i] = c / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

// Rules are rebuilt constantly (every projection of a zonal body), so memoize.
Rule1D gauss_jacobi(int order, double alpha, double beta) {
  require(order >= 1, "quadrature order must be >= 1");
  require(alpha > -1.0 && beta > -1.0, "Jacobi parameters must exceed -1");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, Rule1D> cache;
  const auto key = std::tuple{order, alpha, beta};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Rule1D rule = compute_gauss_jacobi(order, alpha, beta);
  std::lock_guard lock(mutex);
  cache.emplace(key, rule);
  return rule;
}

Rule1D gauss_legendre(int order, double a, double b) {
  Rule1D rule = gauss_jacobi(order, 0.0, 0.0);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

Rule1D beta_rule(int order, double a, double b) {
  require(a > 0.0 && b >= 0.0, "Beta parameters must be positive");
  if (b == 0.0) return Rule1D{{1.0}, {1.0}};  // point mass at 1
  // T = (1 + x)/2 turns T^{a-1}(1-T)^{b-1} into the Jacobi weight with
  // alpha = b - 1, beta = a - 1.
  Rule1D rule = gauss_jacobi(order, b - 1.0, a - 1.0);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] /= total;
  }
  return rule;
}

Rule1D zonal_rule(int dim, int order) {
  require(dim >= 1, "sphere dimension must be >= 1");
  if (dim == 1) return Rule1D{{-1.0, 1.0}, {0.5, 0.5}};
  const Rule1D angle = gauss_legendre(order, 0.0, kPi);
  Rule1D rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    const double theta = angle.nodes[i];
    rule.nodes[i] = std::cos(theta);
    rule.weights[i] = angle.weights[i] * std::pow(std::sin(theta), dim - 2);
    total += rule.weights[i];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

SphereRule monte_carlo_sphere_rule(int n, std::size_t count, std::uint64_t seed,
                                   std::uint64_t stream) {
  require(n >= 1 && count >= 1, "Monte Carlo sphere rule needs n >= 1 and count >= 1");
  RandomStream rng(seed, stream);
  SphereRule rule;
  rule.monte_carlo = true;
  rule.nodes.reserve(count);
  rule.weights.assign(count, 1.0 / static_cast<double>(count));
  for (std::size_t i = 0; i < count; ++i) rule.nodes.push_back(rng.unit_vector(n));
  return rule;
}

SphereRule circle_rule(int order) {
  require(order >= 1, "circle rule order must be >= 1");
  SphereRule rule;
  rule.nodes.reserve(order);
  rule.weights.assign(order, 1.0 / order);
  for (int i = 0; i < order; ++i) {
    const double theta = 2.0 * kPi * i / order;
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    rule.nodes.push_back(u);
  }
  return rule;
}

SphereRule sphere2_rule(int polar_order, int azimuth_order) {
  require(polar_order >= 1 && azimuth_order >= 1, "S^2 rule orders must be >= 1");
  const Rule1D z = gauss_legendre(polar_order);
  SphereRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(polar_order) * azimuth_order);
  for (int i = 0; i < polar_order; ++i) {
    const double r = std::sqrt(std::max(0.0, 1.0 - z.nodes[i] * z.nodes[i]));
    for (int k = 0; k < azimuth_order; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / azimuth_order;
      Vec u(3);
      u << r * std::cos(phi), r * std::sin(phi), z.nodes[i];
      rule.nodes.push_back(u);
      rule.weights.push_back(0.5 * z.weights[i] / azimuth_order);
    }
  }
  return rule;
}

SphereQuadrature SphereQuadrature::monte_carlo(std::uint64_t seed, std::size_t count) {
  require(count >= 1, "Monte Carlo count must be >= 1");
  SphereQuadrature q;
  q.product_ = false;
  q.seed_ = seed;
  q.count_ = count;
  return q;
}

SphereQuadrature SphereQuadrature::product(int polar_order, int azimuth_order,
                                           std::uint64_t fallback_seed,
                                           std::size_t fallback_count) {
  require(polar_order >= 1 && azimuth_order >= 1, "product orders must be >= 1");
  SphereQuadrature q;
  q.product_ = true;
  q.polar_order_ = polar_order;
  q.azimuth_order_ = azimuth_order;
  q.seed_ = fallback_seed;
  q.count_ = fallback_count;
  return q;
}

SphereRule SphereQuadrature::rule(int n) const {
  require(n >= 1, "sphere ambient dimension must be >= 1");
  if (n == 1) {
    SphereRule r;
    r.nodes = {Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)};
    r.weights = {0.5, 0.5};
    return r;
  }
  if (product_ && n == 2) return circle_rule(azimuth_order_);
  if (product_ && n == 3) return sphere2_rule(polar_order_, azimuth_order_);
  return monte_carlo_sphere_rule(n, count_, seed_, static_cast<std::uint64_t>(n));
}

}  // namespace quermass
