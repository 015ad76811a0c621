#pragma once

// Convex bodies given by support-function oracles, their polars as radial
// bodies, and the volume functionals used throughout.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "quermass/common.hpp"
#include "quermass/grassmann.hpp"
#include "quermass/quadrature.hpp"
#include "quermass/sphere.hpp"

namespace quermass::body {

using sphere::SphericalFunction;
using sphere::ZonalProfile;

/// h(u) = profile(<u, axis>) for a unit axis.
struct ZonalForm {
  ZonalProfile profile;
  Vec axis;
};

class SupportBody {
 public:
  SupportBody(SphericalFunction support, bool symmetric, std::optional<ZonalForm> zonal = {});

  static SupportBody ball(int n, double radius = 1.0);
  /// Axis-aligned ellipsoid with the given semi-axes.
  static SupportBody ellipsoid(const Vec& semi_axes);
  /// Image of the unit ball under the invertible map a: h(u) = |a^T u|.
  static SupportBody ellipsoid(const Mat& a);
  static SupportBody zonal(int n, const ZonalProfile& profile, const Vec& axis);
  /// h = 1 + t Y with Y the degree-four zonal harmonic about e_1.
  static SupportBody fourth_harmonic_perturbation(int n, double t);
  /// h = base + t * perturbation.
  static SupportBody perturbation(const SphericalFunction& perturbation, double t,
                                  bool symmetric);

  int dim() const { return support_.dim(); }
  double support(const Vec& u) const { return support_(u); }
  const SphericalFunction& support_function() const { return support_; }
  bool symmetric() const { return symmetric_; }
  const std::optional<ZonalForm>& zonal_form() const { return zonal_; }

  /// a K for an invertible n x n matrix: h_{aK}(u) = h_K(a^T u).
  SupportBody linear_image(const Mat& a) const;
  SupportBody dilate(double factor) const;
  SupportBody translate(const Vec& shift) const;

 private:
  SphericalFunction support_;
  bool symmetric_;
  std::optional<ZonalForm> zonal_;
};

/// Origin-star body given by its radial function; used for polars of support
/// bodies (rho = 1/h).
class RadialBody {
 public:
  RadialBody(int n, std::function<double(const Vec&)> radial, bool symmetric);
  /// M = L polar, rho_M = 1 / h_L. Keeps L for the projection route of
  /// section computations.
  static RadialBody polar_of(const SupportBody& l);

  int dim() const { return n_; }
  double radial(const Vec& u) const { return radial_(u); }
  double operator()(const Vec& u) const { return radial_(u); }
  bool symmetric() const { return symmetric_; }
  const std::optional<SupportBody>& polar_source() const { return source_; }
  RadialBody dilate(double factor) const;

 private:
  int n_;
  std::function<double(const Vec&)> radial_;
  bool symmetric_;
  std::optional<SupportBody> source_;
};

/// Curvature matrix Hess_S h + h g in the given tangent frame.
Mat curvature_matrix(const SupportBody& body, const Vec& u, const Mat& frame);
Mat curvature_matrix(const SupportBody& body, const Vec& u);

struct ConvexityCertificate {
  bool certified = false;
  double margin = 0.0;       // smallest curvature eigenvalue seen
  double min_support = 0.0;  // smallest h seen
  Vec witness;               // node attaining the margin
  std::size_t nodes = 0;
};

/// Positive-definiteness of the curvature matrix and positivity of h at every
/// node, with margin threshold.
ConvexityCertificate certify_convex(const SupportBody& body, const std::vector<Vec>& nodes,
                                    double threshold = 1e-8);

/// Standard node set: the quadrature nodes on S^{n-1} plus `random_count`
/// uniform points; zonal bodies additionally get a dense scan of the profile.
ConvexityCertificate certify_convex(const SupportBody& body, const SphereQuadrature& quad,
                                    std::uint64_t seed = 7, std::size_t random_count = 10000,
                                    double threshold = 1e-8);

/// Throws PreconditionError("non-convex body") on failure.
void require_convex(const SupportBody& body, const SphereQuadrature& quad);

/// Principal radii of a zonal body at <u, axis> = c: meridian and azimuthal.
struct ZonalRadii {
  double meridian = 0.0;
  double azimuthal = 0.0;
};
ZonalRadii zonal_radii(const ZonalProfile& g, double c);

/// vol_n / kappa_n of the zonal body h(u) = g(<u,a>), through the law of
/// <u,a> on S^{n-1}: int g r_mer r_azi^{n-2} dmu_n.
double zonal_volume_ratio(const ZonalProfile& g, int n, const Rule1D& zonal);
double zonal_volume_ratio(const ZonalProfile& g, int n, int order);

/// (1/2) int_0^{2 pi} (h^2 - h'^2) d theta by the trapezoid rule.
/// h_and_derivative(theta) returns {h, dh/dtheta}.
double planar_area(const std::function<std::pair<double, double>(double)>& h_and_derivative,
                   int order);
double planar_area(const SphericalFunction& h, int order);

enum class VolumeMethod { Auto, Generic };

struct VolumeOptions {
  SphereQuadrature quad = SphereQuadrature::product(32, 64);
  int zonal_order = 256;
  int planar_order = 512;
  VolumeMethod method = VolumeMethod::Auto;
};

/// vol_n via the support-function formula
/// (1/n) int h det(Hess h + h g) d omega. Deterministic for n <= 3 with a
/// product quadrature and for zonal bodies; Monte Carlo otherwise.
Estimate volume(const SupportBody& body, const VolumeOptions& options = {});

/// vol_j(P_F K).
Estimate projection_volume(const SupportBody& body, const grassmann::Subspace& subspace,
                           const VolumeOptions& options = {});

/// Support body of P_F K inside F (coordinates w.r.t. the basis of F).
SupportBody project(const SupportBody& body, const grassmann::Subspace& subspace);

/// vol_n(K polar) = kappa_n int h^{-n} d sigma.
Estimate polar_volume(const SupportBody& body, const VolumeOptions& options = {});

/// L = (K + (-K)) / 2, support (h(u) + h(-u)) / 2.
SupportBody central_symmetrization(const SupportBody& body);

/// Support function of a planar star body with radial function rho (angle
/// parametrized), at direction angle phi: max_theta rho(theta) cos(theta - phi).
double planar_support_from_radial(const std::function<double(double)>& rho, double phi,
                                  int grid = 256);

struct SectionPolarVolume {
  double projection_route = 0.0;  // vol_j(P_F L)
  double radial_route = 0.0;      // radial integration of (M cap F) polar
};

/// vol_j((M cap F) polar) for M = L polar, by two routes. The radial route is
/// available for j <= 2.
SectionPolarVolume section_polar_volume(const RadialBody& m, const grassmann::Subspace& subspace,
                                        const VolumeOptions& options = {}, int order = 512);

}  // namespace quermass::body
