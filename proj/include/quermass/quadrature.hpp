#pragma once

#include <cstdint>
#include <vector>

#include "quermass/common.hpp"

namespace quermass {

/// One-dimensional rule: sum_i weights[i] f(nodes[i]).
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1. Weights sum to the total mass of the weight.
/// Nodes from the Golub-Welsch eigenproblem, polished by Newton steps on the
/// three-term recurrence.
Rule1D gauss_jacobi(int order, double alpha, double beta);

/// Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int order, double a = -1.0, double b = 1.0);

/// Probability rule for the Beta(a, b) law on [0, 1].
Rule1D beta_rule(int order, double a, double b);

/// Probability rule for the law of u_1 when u is uniform on S^{dim-1}.
/// dim = 1 gives the two points +-1; dim >= 2 uses Gauss-Legendre in the
/// polar angle with weight sin^{dim-2}.
Rule1D zonal_rule(int dim, int order);

/// Quadrature rule on S^{n-1} for the normalized measure.
struct SphereRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;
  bool monte_carlo = false;

  std::size_t size() const { return nodes.size(); }

  /// Integral of f. For Monte Carlo rules std_error is the sample standard
  /// error; deterministic rules report zero.
  template <class F>
  Estimate integrate(F&& f) const {
    if (!monte_carlo) {
      double sum = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
      return {sum, 0.0};
    }
    RunningStats stats;
    for (const auto& u : nodes) stats.push(f(u));
    return stats.estimate();
  }
};

/// Quadrature policy on spheres of any dimension: Monte Carlo with a seed and
/// count, or deterministic product rules. Product rules exist for S^0 (two
/// antipodal points), S^1 (trapezoid) and S^2 (Gauss-Legendre in z times
/// trapezoid in azimuth); other dimensions fall back to Monte Carlo with
/// `fallback_count` samples.
class SphereQuadrature {
 public:
  static SphereQuadrature monte_carlo(std::uint64_t seed, std::size_t count);
  static SphereQuadrature product(int polar_order, int azimuth_order,
                                  std::uint64_t fallback_seed = 1,
                                  std::size_t fallback_count = 100000);

  /// Rule on S^{n-1} (n = ambient dimension >= 1).
  SphereRule rule(int n) const;

  bool is_product() const { return product_; }
  int polar_order() const { return polar_order_; }
  int azimuth_order() const { return azimuth_order_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t count() const { return count_; }

 private:
  bool product_ = false;
  int polar_order_ = 0;
  int azimuth_order_ = 0;
  std::uint64_t seed_ = 1;
  std::size_t count_ = 0;
};

/// Monte Carlo rule on S^{n-1} with i.i.d. uniform nodes.
SphereRule monte_carlo_sphere_rule(int n, std::size_t count, std::uint64_t seed,
                                   std::uint64_t stream = 0);

/// Deterministic rule on S^1: equally spaced angles.
SphereRule circle_rule(int order);

/// Deterministic rule on S^2: Gauss-Legendre in z times equally spaced
/// azimuths; exact for polynomials of degree < min(2 polar_order, azimuth_order).
SphereRule sphere2_rule(int polar_order, int azimuth_order);

}  // namespace quermass
