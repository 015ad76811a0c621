#pragma once

#include <cstdint>
#include <vector>

#include "quermass/common.hpp"
#include "quermass/quadrature.hpp"
#include "quermass/random.hpp"
#include "quermass/sphere.hpp"

namespace quermass::grassmann {

/// j-dimensional linear subspace of R^n, held as an n x j matrix with
/// orthonormal columns.
class Subspace {
 public:
  /// Throws PreconditionError unless basis^T basis = I within 1e-12.
  explicit Subspace(Mat basis);
  /// Orthonormalizes the columns of `vectors` (which must be independent).
  static Subspace span_of(const Mat& vectors);
  /// span(e_1, ..., e_j).
  static Subspace coordinate(int n, int j);

  const Mat& basis() const { return basis_; }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }

  Vec project(const Vec& x) const { return basis_ * (basis_.transpose() * x); }
  /// Same subspace with basis B Q for an orthogonal j x j matrix Q.
  Subspace rotated_basis(const Mat& q) const { return Subspace(basis_ * q); }

 private:
  Mat basis_;
};

/// Haar-distributed subspace: QR of an n x j Gaussian matrix with the signs
/// fixed so that R has a positive diagonal.
Subspace haar_subspace(int n, int j, RandomStream& rng);
std::vector<Subspace> sample_grassmann(int n, int j, std::size_t count, std::uint64_t seed);

/// |P_F axis|^2 (axis = e_1 by default).
double t_of(const Subspace& f, const Vec& axis);
double t_of(const Subspace& f);

/// Law of T_j(F) under Haar measure on G_{n,j}: Beta(j/2, (n-j)/2), with a
/// point mass at T = 1 when j = n.
class BetaQuadrature {
 public:
  BetaQuadrature(int n, int j, int order);

  int n() const { return n_; }
  int j() const { return j_; }
  const Rule1D& rule() const { return rule_; }

  template <class F>
  double integrate(F&& f) const {
    return rule_.integrate(std::forward<F>(f));
  }

 private:
  int n_, j_;
  Rule1D rule_;
};

/// Mean of f over S_F = S^{n-1} cap F using a rule on S^{j-1} mapped through
/// the basis. For j = 1 this is (f(b) + f(-b)) / 2.
double radon_average(const sphere::SphericalFunction& f, const Subspace& subspace,
                     const SphereRule& rule);
double radon_average(const sphere::SphericalFunction& f, const Subspace& subspace,
                     const SphereQuadrature& quad);

/// R_j(|grad_F f|^2)(F), gradient intrinsic to S_F; zero when j = 1.
double radon_gradient_energy(const sphere::SphericalFunction& f, const Subspace& subspace,
                             const SphereRule& rule);

/// R_j of x -> phi(<x, a>) for a unit axis a with |P_F a| = s, through the
/// one-dimensional law of a coordinate on S^{j-1}.
double zonal_radon_average(const sphere::ZonalProfile& phi, double s, const Rule1D& rule);
double zonal_radon_average(const sphere::ZonalProfile& phi, double s, int j, int angle_order);

/// Closed form j R_j Y = 3T^2/(j+2) - 6T/(n+4) + 3j/((n+2)(n+4)).
double jRjY_closed(int n, int j, double t);

struct RadonIdentityResult {
  int n = 0, j = 0;
  std::size_t samples = 0;
  Estimate y_sq_average;      // int R_j(Y^2) dF
  Estimate gradient_average;  // int R_j(|grad_F Y|^2) dF
  double y_sq_target = 0.0;
  double gradient_target = 0.0;
};

/// Haar Monte Carlo estimate of the two Grassmannian Radon identities for Y,
/// with the inner averages over S_F taken by `inner`.
RadonIdentityResult radon_identity_check(int n, int j, std::size_t samples, std::uint64_t seed,
                                         const SphereQuadrature& inner);

struct SquareAverageResult {
  int n = 0, j = 0;
  std::size_t samples = 0;
  Estimate haar;      // Haar Monte Carlo path
  double beta = 0.0;  // Beta-law quadrature path
  double target = 0.0;
};

/// int (j R_j Y)^2 dF by Haar Monte Carlo and by the Beta reduction.
SquareAverageResult square_average_check(int n, int j, std::size_t samples, std::uint64_t seed,
                                         int beta_order = 128, int angle_order = 256);

struct MomentCheckResult {
  int n = 0, j = 0;
  std::size_t samples = 0;
  std::vector<Estimate> haar;   // E[T^r], r = 1..r_max, Haar Monte Carlo
  std::vector<double> beta;     // same moments through BetaQuadrature
  std::vector<double> exact;    // t_moment as doubles
};

/// Moments of T_j = |P_F e_1|^2 by Haar sampling and by the Beta law.
MomentCheckResult t_moment_check(int n, int j, int r_max, std::size_t samples,
                                 std::uint64_t seed, int beta_order = 128);

}  // namespace quermass::grassmann
