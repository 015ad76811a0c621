#pragma once

// Normalized L^p-moment quermassintegrals and the second-variation machinery
// around the perturbed balls K_t (support 1 + tY).

#include <cstdint>
#include <string>
#include <vector>

#include "quermass/body.hpp"
#include "quermass/common.hpp"
#include "quermass/grassmann.hpp"

namespace quermass::querm {

enum class Method {
  Zonal,   // Beta law of T times the one-dimensional angle reduction
  HaarMC,  // Haar Monte Carlo over G_{n,j}
  Sphere,  // j = 1 or j = n-1: the Grassmannian as a quotient of the sphere
};

std::string to_string(Method m);

struct QuermOptions {
  Method method = Method::Zonal;
  int beta_order = 128;
  int angle_order = 256;
  std::size_t samples = 2000;  // HaarMC
  std::uint64_t seed = 1;      // HaarMC
  /// Directions for the Sphere method.
  SphereQuadrature directions = SphereQuadrature::product(24, 48);
  /// Inner projection volumes for the HaarMC and Sphere methods.
  body::VolumeOptions volume;
  /// Certify convexity before evaluating (skipped by callers that already did).
  bool certify = true;
};

/// I_{j,p}(K)^{1/j}. `error` is the error bar: order sensitivity for the
/// deterministic paths, 3 standard errors for Monte Carlo.
struct QuermResult {
  int j = 0;
  double p = 0.0;
  double value = 0.0;
  double error = 0.0;
  Method method = Method::Zonal;
};

QuermResult I_jp(const body::SupportBody& k, int j, double p, const QuermOptions& options = {});

/// Convexity certificate on the default node set used by this module.
body::ConvexityCertificate certify(const body::SupportBody& k);

/// log I_{m,-n}(K_t)^{1/m} - log I_{k,-n}(K_t)^{1/k}; std_error holds the
/// error bar.
Estimate log_ratio(int m, int k, int n, double t, const QuermOptions& options = {});

/// (f(t) + f(-t)) / (2 t^2) for f = log_ratio. The error bar adds the
/// quadrature error to a Richardson estimate of the O(t^2) remainder from the
/// same estimator at t/2.
Estimate extract_quadratic(int m, int k, int n, double t, const QuermOptions& options = {});

struct VariationReport {
  int m = 0, k = 0, n = 0;
  std::vector<double> t_grid;     // t, t/2, t/4
  std::vector<double> f_plus;     // f(t)
  std::vector<double> f_minus;    // f(-t)
  std::vector<double> f_error;    // error bar of f(t) and f(-t) combined
  std::vector<double> estimates;  // (f(t) + f(-t)) / (2t^2)
  double estimate = 0.0;          // at t_grid[0]
  double estimate_error = 0.0;
  double target = 0.0;            // coefficient(m,k,n) * ||Y||^2
  double relative_deviation = 0.0;
  double observed_order = 0.0;    // log2 of successive estimate differences
  bool boundary = false;          // n = (m+2)(k+2) - 2
};

VariationReport variation_report(int m, int k, int n, double t, const QuermOptions& options = {});

struct ExpansionEntry {
  double T = 0.0;
  double first_fd = 0.0, first_target = 0.0;    // vs j R_j Y
  double second_fd = 0.0, second_target = 0.0;  // vs j R_j((j-1)Y^2 - |grad_F Y|^2)
  double first_rel = 0.0, second_rel = 0.0;
};

struct ExpansionReport {
  int n = 0, j = 0;
  double step = 0.0;
  double scale = 0.0;  // floor for relative deviations: ||Y||_2
  std::vector<ExpansionEntry> entries;
  double max_first_rel = 0.0, max_second_rel = 0.0;
};

/// Five-point finite differences in t of vol_j(P_F K_t)/kappa_j at t = 0,
/// with K_t the generic (non-zonal) body 1 + tY. Relative deviations are
/// measured against max(|target|, ||Y||_2).
ExpansionReport projection_expansion_check(int n, const std::vector<grassmann::Subspace>& subspaces,
                                           double step = 1e-2,
                                           const body::VolumeOptions& volume = {});

enum class CertificateStatus { Certified, Indeterminate };

struct CounterexampleCertificate {
  int m = 0, k = 0, n = 0;
  double t = 0.0;
  double convexity_margin = 0.0;
  QuermResult i_m;  // I_{m,-n}^{1/m}
  QuermResult i_k;  // I_{k,-n}^{1/k}
  double gap = 0.0;        // log I_k^{1/k} - log I_m^{1/m} (> 0 means reversal)
  double gap_error = 0.0;
  CertificateStatus status = CertificateStatus::Indeterminate;
};

/// Throws PreconditionError unless n > (m+2)(k+2)-2 and K_t is certified.
CounterexampleCertificate counterexample_certify(int m, int k, int n, double t,
                                                 const QuermOptions& options = {});

/// Largest |t| steps (of size `step`) for which 1 + tY stays certified, on each
/// side of zero: returns {t_min, t_max}.
std::pair<double, double> certified_t_range(int n, double step = 1e-3);

}  // namespace quermass::querm
