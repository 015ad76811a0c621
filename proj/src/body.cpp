#include "quermass/body.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "quermass/random.hpp"

namespace quermass::body {

namespace {

bool is_even(const ZonalProfile& g) {
  const auto& c = g.coefficients();
  for (std::size_t k = 1; k < c.size(); k += 2)
    if (c[k] != 0.0) return false;
  return true;
}

// Unit vector making <u, axis> = c, used to report zonal witnesses.
Vec zonal_point(const Vec& axis, double c) {
  const int n = static_cast<int>(axis.size());
  Vec u = c * axis;
  if (n >= 2) {
    const Mat frame = sphere::tangent_frame(axis);
    u += std::sqrt(std::max(0.0, 1.0 - c * c)) * frame.col(0);
  }
  return u;
}

Estimate deterministic(double fine, double coarse) {
  // Order sensitivity plus a roundoff floor.
  return {fine, std::abs(fine - coarse) + 1e-15 * std::abs(fine)};
}

}  // namespace

SupportBody::SupportBody(SphericalFunction support, bool symmetric, std::optional<ZonalForm> zonal)
    : support_(std::move(support)), symmetric_(symmetric), zonal_(std::move(zonal)) {
  require(static_cast<bool>(support_), "support body needs a support function");
  if (zonal_) {
    require(zonal_->axis.size() == support_.dim(), "zonal axis has the wrong dimension");
    require(std::abs(zonal_->axis.norm() - 1.0) <= 1e-12, "zonal axis must be a unit vector");
  }
}

SupportBody SupportBody::ball(int n, double radius) {
  require(n >= 1, "dimension must be positive");
  require(radius > 0.0, "ball radius must be positive");
  return SupportBody(sphere::constant_function(n, radius), true,
                     ZonalForm{ZonalProfile::constant(radius), Vec::Unit(n, 0)});
}

SupportBody SupportBody::ellipsoid(const Vec& semi_axes) {
  require(semi_axes.size() >= 1, "ellipsoid needs at least one axis");
  require(semi_axes.minCoeff() > 0.0, "ellipsoid semi-axes must be positive");
  const Mat s = semi_axes.array().square().matrix().asDiagonal();
  return SupportBody(sphere::quadratic_norm(s), true);
}

SupportBody SupportBody::ellipsoid(const Mat& a) {
  require(a.rows() == a.cols() && a.rows() >= 1, "ellipsoid map must be square");
  require(std::abs(a.determinant()) > 1e-14, "ellipsoid map must be invertible");
  return SupportBody(sphere::quadratic_norm(a * a.transpose()), true);
}

SupportBody SupportBody::zonal(int n, const ZonalProfile& profile, const Vec& axis) {
  require(axis.size() == n, "zonal axis has the wrong dimension");
  return SupportBody(sphere::zonal_function(profile, axis), is_even(profile),
                     ZonalForm{profile, axis});
}

SupportBody SupportBody::fourth_harmonic_perturbation(int n, double t) {
  require(n >= 2, "perturbation needs n >= 2");
  return zonal(n, ZonalProfile::fourth_harmonic(n).affine(1.0, t), Vec::Unit(n, 0));
}

SupportBody SupportBody::perturbation(const SphericalFunction& perturbation, double t,
                                      bool symmetric) {
  return SupportBody(sphere::affine(1.0, t, perturbation), symmetric);
}

SupportBody SupportBody::linear_image(const Mat& a) const {
  require(a.rows() == dim() && a.cols() == dim(), "linear map must be n x n");
  require(std::abs(a.determinant()) > 1e-14, "linear map must be invertible");
  return SupportBody(
      sphere::compose_linear(sphere::homogeneous_extension(support_), a.transpose()), symmetric_);
}

SupportBody SupportBody::dilate(double factor) const {
  require(factor > 0.0, "dilation factor must be positive");
  std::optional<ZonalForm> z;
  if (zonal_) z = ZonalForm{zonal_->profile.affine(0.0, factor), zonal_->axis};
  return SupportBody(sphere::affine(0.0, factor, support_), symmetric_, z);
}

SupportBody SupportBody::translate(const Vec& shift) const {
  require(shift.size() == dim(), "translation has the wrong dimension");
  Polynomial<double> linear(dim());
  for (int i = 0; i < dim(); ++i)
    linear += Polynomial<double>::variable(dim(), i) * shift[i];
  const bool sym = symmetric_ && shift.squaredNorm() == 0.0;
  return SupportBody(sphere::sum(support_, sphere::polynomial_function(linear)), sym);
}

RadialBody::RadialBody(int n, std::function<double(const Vec&)> radial, bool symmetric)
    : n_(n), radial_(std::move(radial)), symmetric_(symmetric) {
  require(n >= 1, "dimension must be positive");
}

RadialBody RadialBody::polar_of(const SupportBody& l) {
  const SphericalFunction h = l.support_function();
  RadialBody m(l.dim(), [h](const Vec& u) { return 1.0 / h(u); }, l.symmetric());
  m.source_ = l;
  return m;
}

RadialBody RadialBody::dilate(double factor) const {
  require(factor > 0.0, "dilation factor must be positive");
  auto rho = radial_;
  RadialBody m(n_, [rho, factor](const Vec& u) { return factor * rho(u); }, symmetric_);
  if (source_) m.source_ = source_->dilate(1.0 / factor);
  return m;
}

Mat curvature_matrix(const SupportBody& body, const Vec& u, const Mat& frame) {
  Mat c = sphere::intrinsic_hessian(body.support_function(), u, frame);
  c.diagonal().array() += body.support(u);
  return c;
}

Mat curvature_matrix(const SupportBody& body, const Vec& u) {
  return curvature_matrix(body, u, sphere::tangent_frame(u));
}

ConvexityCertificate certify_convex(const SupportBody& body, const std::vector<Vec>& nodes,
                                    double threshold) {
  ConvexityCertificate cert;
  cert.margin = std::numeric_limits<double>::infinity();
  cert.min_support = std::numeric_limits<double>::infinity();
  const int n = body.dim();
  for (const auto& u : nodes) {
    const double h = body.support(u);
    double eig;
    if (n == 1) {
      eig = h + body.support(-u);  // width of the segment
    } else {
      Eigen::SelfAdjointEigenSolver<Mat> solver(curvature_matrix(body, u),
                                                Eigen::EigenvaluesOnly);
      eig = solver.eigenvalues().minCoeff();
    }
    if (h < cert.min_support) cert.min_support = h;
    if (eig < cert.margin) {
      cert.margin = eig;
      cert.witness = u;
    }
    ++cert.nodes;
  }
  cert.certified = cert.nodes > 0 && cert.margin > threshold && cert.min_support > 0.0;
  return cert;
}

ConvexityCertificate certify_convex(const SupportBody& body, const SphereQuadrature& quad,
                                    std::uint64_t seed, std::size_t random_count,
                                    double threshold) {
  const int n = body.dim();
  std::vector<Vec> nodes = quad.rule(n).nodes;
  RandomStream rng(seed, 0xC0DE);
  for (std::size_t i = 0; i < random_count; ++i) nodes.push_back(rng.unit_vector(n));
  ConvexityCertificate cert = certify_convex(body, nodes, threshold);

  if (const auto& z = body.zonal_form(); z && n >= 2) {
    // Dense scan of the principal radii along the profile.
    const int steps = 4096;
    for (int i = 0; i <= steps; ++i) {
      const double c = std::cos(kPi * i / steps);
      const ZonalRadii r = zonal_radii(z->profile, c);
      const double g = z->profile(c);
      double eig = r.meridian;
      if (n >= 3) eig = std::min(eig, r.azimuthal);
      if (g < cert.min_support) cert.min_support = g;
      if (eig < cert.margin) {
        cert.margin = eig;
        cert.witness = zonal_point(z->axis, c);
      }
      ++cert.nodes;
    }
    cert.certified = cert.margin > threshold && cert.min_support > 0.0;
  }
  return cert;
}

void require_convex(const SupportBody& body, const SphereQuadrature& quad) {
  const auto cert = certify_convex(body, quad);
  require(cert.certified, "non-convex body (certification margin " +
                              std::to_string(cert.margin) + ")");
}

ZonalRadii zonal_radii(const ZonalProfile& g, double c) {
  const double v = g(c), d1 = g.derivative(c), d2 = g.second_derivative(c);
  return {(1.0 - c * c) * d2 - c * d1 + v, v - c * d1};
}

double zonal_volume_ratio(const ZonalProfile& g, int n, const Rule1D& zonal) {
  if (n == 1) return zonal.integrate([&](double c) { return g(c); });
  return zonal.integrate([&](double c) {
    const ZonalRadii r = zonal_radii(g, c);
    return g(c) * r.meridian * std::pow(r.azimuthal, n - 2);
  });
}

double zonal_volume_ratio(const ZonalProfile& g, int n, int order) {
  return zonal_volume_ratio(g, n, zonal_rule(n, order));
}

double planar_area(const std::function<std::pair<double, double>(double)>& h_and_derivative,
                   int order) {
  require(order >= 3, "planar area needs at least three nodes");
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const auto [h, dh] = h_and_derivative(2.0 * kPi * i / order);
    sum += h * h - dh * dh;
  }
  return 0.5 * sum * (2.0 * kPi / order);
}

double planar_area(const SphericalFunction& h, int order) {
  require(h.dim() == 2, "planar area needs a function on R^2");
  return planar_area(
      [&](double theta) {
        Vec u(2);
        u << std::cos(theta), std::sin(theta);
        Vec tangent(2);
        tangent << -u[1], u[0];
        return std::pair{h(u), h.gradient(u).dot(tangent)};
      },
      order);
}

namespace {

double support_volume_integrand(const SupportBody& body, const Vec& u) {
  const Mat c = curvature_matrix(body, u);
  return body.support(u) * c.determinant();
}

Estimate volume_on_rule(const SupportBody& body, const SphereRule& rule) {
  const Estimate mean =
      rule.integrate([&](const Vec& u) { return support_volume_integrand(body, u); });
  const double kappa = ball_volume(body.dim());
  return {kappa * mean.value, kappa * mean.std_error};
}

}  // namespace

Estimate volume(const SupportBody& body, const VolumeOptions& options) {
  const int n = body.dim();
  const double kappa = ball_volume(n);
  if (n == 1) {
    const Vec e = Vec::Ones(1);
    return {body.support(e) + body.support(-e), 0.0};
  }
  if (options.method == VolumeMethod::Auto && body.zonal_form()) {
    const auto& g = body.zonal_form()->profile;
    const int order = options.zonal_order;
    return deterministic(kappa * zonal_volume_ratio(g, n, order),
                         kappa * zonal_volume_ratio(g, n, std::max(2, order / 2)));
  }
  if (n == 2) {
    const int order = std::max(options.planar_order, 8);
    return deterministic(planar_area(body.support_function(), order),
                         planar_area(body.support_function(), order / 2));
  }
  const SphereRule rule = options.quad.rule(n);
  const Estimate full = volume_on_rule(body, rule);
  if (rule.monte_carlo) return full;
  const auto coarse = SphereQuadrature::product(std::max(2, options.quad.polar_order() / 2),
                                                std::max(3, options.quad.azimuth_order() / 2));
  return deterministic(full.value, volume_on_rule(body, coarse.rule(n)).value);
}

SupportBody project(const SupportBody& body, const grassmann::Subspace& subspace) {
  require(subspace.ambient_dim() == body.dim(), "subspace lives in the wrong dimension");
  const Mat& b = subspace.basis();
  const SphericalFunction h = sphere::compose_linear(body.support_function(), b);
  std::optional<ZonalForm> z;
  if (const auto& zf = body.zonal_form()) {
    const Vec axis = b.transpose() * zf->axis;
    const double s = axis.norm();
    if (s > 1e-14)
      z = ZonalForm{zf->profile.scaled_argument(s), axis / s};
    else
      z = ZonalForm{zf->profile.scaled_argument(0.0), Vec::Unit(subspace.dim(), 0)};
  }
  return SupportBody(h, body.symmetric(), z);
}

Estimate projection_volume(const SupportBody& body, const grassmann::Subspace& subspace,
                           const VolumeOptions& options) {
  return volume(project(body, subspace), options);
}

Estimate polar_volume(const SupportBody& body, const VolumeOptions& options) {
  const int n = body.dim();
  const double kappa = ball_volume(n);
  auto inverse_power = [&](double h) {
    require(h > 0.0, "polar volume needs the origin in the interior (h > 0)");
    return std::pow(h, -n);
  };
  if (options.method == VolumeMethod::Auto && body.zonal_form() && n >= 2) {
    const auto& g = body.zonal_form()->profile;
    auto at = [&](int order) {
      return kappa * zonal_rule(n, order).integrate([&](double c) { return inverse_power(g(c)); });
    };
    return deterministic(at(options.zonal_order), at(std::max(2, options.zonal_order / 2)));
  }
  const auto& h = body.support_function();
  auto on_rule = [&](const SphereRule& rule) {
    const Estimate e = rule.integrate([&](const Vec& u) { return inverse_power(h(u)); });
    return Estimate{kappa * e.value, kappa * e.std_error};
  };
  if (n == 2) {
    const int order = std::max(options.planar_order, 8);
    return deterministic(on_rule(circle_rule(order)).value,
                         on_rule(circle_rule(order / 2)).value);
  }
  const SphereRule rule = options.quad.rule(n);
  const Estimate full = on_rule(rule);
  if (rule.monte_carlo || n == 1) return full;
  const auto coarse = SphereQuadrature::product(std::max(2, options.quad.polar_order() / 2),
                                                std::max(3, options.quad.azimuth_order() / 2));
  return deterministic(full.value, on_rule(coarse.rule(n)).value);
}

SupportBody central_symmetrization(const SupportBody& body) {
  std::optional<ZonalForm> z;
  if (const auto& zf = body.zonal_form()) z = ZonalForm{zf->profile.even_part(), zf->axis};
  return SupportBody(sphere::even_part(body.support_function()), true, z);
}

double planar_support_from_radial(const std::function<double(double)>& rho, double phi,
                                  int grid) {
  require(grid >= 8, "radial support search needs a grid of at least 8 points");
  auto f = [&](double theta) { return rho(theta) * std::cos(theta - phi); };
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = phi;
  const double step = kPi / grid;
  for (int i = 0; i <= grid; ++i) {
    const double theta = phi - 0.5 * kPi + i * step;
    const double v = f(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double theta) { return -f(theta); }, best_theta - step, best_theta + step,
      std::numeric_limits<double>::digits);
  return std::max(best, -refined.second);
}

SectionPolarVolume section_polar_volume(const RadialBody& m, const grassmann::Subspace& subspace,
                                        const VolumeOptions& options, int order) {
  require(subspace.ambient_dim() == m.dim(), "subspace lives in the wrong dimension");
  require(m.polar_source().has_value(), "section polar volume needs M given as a polar body");
  SectionPolarVolume out;
  out.projection_route = projection_volume(*m.polar_source(), subspace, options).value;
  const Mat& b = subspace.basis();
  const int j = subspace.dim();
  if (j == 1) {
    const Vec v = b.col(0);
    out.radial_route = 1.0 / m(v) + 1.0 / m(-v);
  } else if (j == 2) {
    auto rho = [&](double theta) {
      return m(b.col(0) * std::cos(theta) + b.col(1) * std::sin(theta));
    };
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
      const double h = planar_support_from_radial(rho, 2.0 * kPi * i / order);
      sum += 1.0 / (h * h);
    }
    out.radial_route = 0.5 * sum * (2.0 * kPi / order);
  } else {
    out.radial_route = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace quermass::body
