#pragma once

// Dimension-3 endpoint chain and the dimension-4 first comparison: planar
// determinant functionals, centroid bodies, moment matrices and the
// Blaschke-Petkantschin identities.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quermass/body.hpp"
#include "quermass/common.hpp"
#include "quermass/random.hpp"

namespace quermass::tomo {

/// Origin-symmetric (or at least origin-interior) planar body carried by a
/// radial oracle and a support oracle, both functions of the angle.
class PlanarBody {
 public:
  PlanarBody(std::function<double(double)> radial, std::function<double(double)> support,
             bool symmetric);

  static PlanarBody disk(double radius = 1.0);
  /// t B^2 for an invertible 2 x 2 matrix t.
  static PlanarBody ellipse(const Mat& t);
  /// Convex polygon with counter-clockwise vertices (columns of a 2 x N
  /// matrix), origin in the interior.
  static PlanarBody polygon(const Mat& vertices);
  /// A = Q polar for a planar support body Q: rho_A = 1/h_Q exactly, h_A by
  /// maximization of rho_A.
  static PlanarBody polar_of(const body::SupportBody& q);
  /// M cap F for a radial body M and a 2-plane with orthonormal basis (n x 2).
  static PlanarBody section(const body::RadialBody& m, const Mat& basis);

  double radial(double theta) const { return radial_(theta); }
  double support(double phi) const { return support_(phi); }
  bool symmetric() const { return symmetric_; }

  PlanarBody linear_image(const Mat& t) const;
  /// rho_{A polar} = 1/h_A and h_{A polar} = 1/rho_A.
  PlanarBody polar() const;
  PlanarBody dilate(double factor) const;

 private:
  std::function<double(double)> radial_;
  std::function<double(double)> support_;
  bool symmetric_;
};

/// (1/2) int rho^2 d theta.
double area(const PlanarBody& a, int order = 2048);
/// vol_2(A polar) = (1/2) int h_A^{-2} d phi.
double polar_area(const PlanarBody& a, int order = 2048);

/// Uniform points in a star body: theta with density rho^2 by rejection,
/// r = rho sqrt(U).
class PlanarSampler {
 public:
  PlanarSampler(const PlanarBody& a, std::uint64_t seed, std::uint64_t stream = 0);
  Eigen::Vector2d sample();

 private:
  PlanarBody a_;
  RandomStream rng_;
  double rho_max_sq_;
};

/// D(A) = int_A int_A |det(x,y)| dx dy by Monte Carlo over pairs.
Estimate D_functional(const PlanarBody& a, std::size_t pairs, std::uint64_t seed);
/// Same integral in polar coordinates, (1/9) int int rho^3 rho^3 |sin|, with
/// Gauss-Legendre on the arcs where the integrand is smooth.
double D_quadrature(const PlanarBody& a, int order = 256);

struct PlanarLemmaResult {
  Estimate d;               // D(A), Monte Carlo
  double polar_area = 0.0;  // vol_2(A polar)
  double bound = 0.0;       // (8 pi^4 / 9) vol_2(A polar)^{-3}
  double slack = 0.0;       // bound - D
  double slack_se = 0.0;
  bool pass = false;        // slack >= -3 SE
};

PlanarLemmaResult planar_lemma_check(const PlanarBody& a, std::size_t pairs, std::uint64_t seed);

/// h_{Gamma A}(xi) and its angular derivative, with
/// h_{Gamma A}(xi) = (1 / vol A) int_A |<x, xi>| dx.
std::pair<double, double> centroid_support(const PlanarBody& a, double xi, int order = 1024);

struct CentroidResult {
  double gamma_area = 0.0;     // vol_2(Gamma A) from the support function
  Estimate identity_rhs;       // 2 D(A) / vol_2(A)^2 with D by Monte Carlo
  double identity_rhs_quadrature = 0.0;
  double polar_product = 0.0;  // vol_2(Gamma A) vol_2(A polar), <= 16/9
  bool identity_pass = false;
  bool product_pass = false;
};

CentroidResult centroid_identity_check(const PlanarBody& a, std::size_t pairs, std::uint64_t seed,
                                       int order = 512);

/// M_A = int_A x x^T dx = int rho^4/4 u u^T d theta (trapezoid).
Mat moment_matrix(const PlanarBody& a, int order = 2048);
/// Monte Carlo M_A; the second member holds entrywise standard errors.
std::pair<Mat, Mat> moment_matrix_mc(const PlanarBody& a, std::size_t samples, std::uint64_t seed);
/// D_2(A) = 2 det M_A.
double D2_functional(const PlanarBody& a, int order = 2048);
/// int_A int_A det(x,y)^2 by Monte Carlo over pairs.
Estimate D2_mc(const PlanarBody& a, std::size_t pairs, std::uint64_t seed);

struct SantaloResult {
  double trace = 0.0;  // tr(M_A M_{A polar})
  double error = 0.0;  // order sensitivity
  double bound = 0.0;  // pi^2 / 8
  bool pass = false;
};

SantaloResult ball_quadratic_santalo_check(const PlanarBody& a, int order = 2048);

struct BPReport {
  int dim = 0;
  Estimate lhs;              // flag integral
  double rhs = 0.0;          // closed form in vol(M)
  double rhs_error = 0.0;
  bool exact_match = false;  // |lhs - rhs| <= 1e-10 rhs with zero variance
  bool pass = false;         // within 3 SE (+ rhs error)
};

struct BPOptions {
  SphereQuadrature directions = SphereQuadrature::product(16, 32);  // dim 3
  std::size_t samples = 2000;                                        // dim 4 (G_{4,2})
  std::uint64_t seed = 1;
  int planar_order = 64;
};

/// int_{S^2} D(M cap u^perp) d omega(u) (unnormalized, mass 4 pi) against
/// 2 vol_3(M)^2, for M = L polar. `polar_volume` is vol_3(M).
BPReport bp3_check(const body::SupportBody& l, const Estimate& polar_volume,
                   const BPOptions& options = {});
BPReport bp3_check(const body::SupportBody& l, const BPOptions& options = {});

/// int_{G_{4,2}} D_2(M cap F) dF (normalized Haar) against vol_4(M)^2/(2 pi^2).
BPReport bp4_check(const body::SupportBody& l, const Estimate& polar_volume,
                   const BPOptions& options = {});

/// Convex body together with trusted volumes of itself and of its polar.
struct TestBody {
  std::string id;
  body::SupportBody body;
  Estimate volume;
  Estimate polar_volume;
};

/// Volumes through the generic support-function formulas.
TestBody make_test_body(std::string id, const body::SupportBody& k,
                        const body::VolumeOptions& options = {});
/// a Z for the zonal body Z = {h = g(<u, e_1>)}: volumes from the zonal
/// reduction and |det a|.
TestBody linear_image_of_zonal(std::string id, const Mat& a, const sphere::ZonalProfile& g,
                               int order = 256);
/// Random origin-symmetric body: linear image of a certified zonal perturbation
/// of the ball.
TestBody random_symmetric_body(int n, RandomStream& rng, std::string id);
/// Random smooth planar body A = Q polar with Q a certified trigonometric
/// perturbation of a random ellipse.
PlanarBody random_symmetric_planar(RandomStream& rng);
/// Random 3-D perturbed ball 1 + t P with P a random polynomial of degree <= 4
/// (not necessarily symmetric), certified convex.
body::SupportBody random_perturbed_ball(RandomStream& rng);

struct ChainReport {
  std::string id;
  int dim = 0;
  double r = 0.0;        // volume radius
  Estimate a;            // int w^{-n} d sigma
  Estimate b;            // dim 3: int b^{-3} d sigma; dim 4: int_{G_{4,2}} b^{-4} dF
  double i1 = 0.0, i1_error = 0.0;
  double i2 = 0.0, i2_error = 0.0;  // I_2^{1/2}
  double gap12 = 0.0, gap12_error = 0.0;  // I_1 - I_2^{1/2}
  double gap2 = 0.0, gap2_error = 0.0;    // dim 3: I_2^{1/2} - 1
  bool pass12 = false, pass2 = false;
  // dim 4 only: B >= (256/pi^4) A^2 and the measured (unasserted) I_3^{1/3}.
  double comparison_lhs = 0.0, comparison_rhs = 0.0, comparison_error = 0.0;
  double i3 = 0.0, i3_error = 0.0;
};

struct ChainOptions {
  SphereQuadrature directions = SphereQuadrature::product(24, 48);
  // Brightness is a periodic trapezoid rule; 128 nodes is plenty for smooth bodies.
  body::VolumeOptions volume = [] {
    body::VolumeOptions v;
    v.planar_order = 128;
    return v;
  }();
  std::size_t samples = 4000;  // dim 4 Monte Carlo
  std::uint64_t seed = 1;
  bool measure_i3 = false;     // dim 4
  std::size_t i3_samples = 200;
};

/// I_1 = (2r)^{-1} A^{-1/3}, I_2^{1/2} = (sqrt(pi) r)^{-1} B'^{-1/6} with
/// deterministic product quadrature on S^2.
ChainReport dim3_endpoints(const body::SupportBody& k, const std::string& id,
                           const ChainOptions& options = {});

/// I_{1,-4} >= I_{2,-4}^{1/2} through A_K = int w^{-4} and
/// B_K = int_{G_{4,2}} b^{-4}, by Monte Carlo.
ChainReport dim4_endpoints(const TestBody& k, const ChainOptions& options = {});

/// Per-direction table (u, w_K(u), b_K(u), D(L polar cap u^perp)) for plotting.
struct DirectionRow {
  Vec u;
  double width = 0.0, brightness = 0.0, section_d = 0.0;
};
std::vector<DirectionRow> direction_table(const body::SupportBody& k, std::size_t count,
                                          std::uint64_t seed, int planar_order = 256);

}  // namespace quermass::tomo
