#include "quermass/querm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quermass/exact_algebra.hpp"
#include "quermass/random.hpp"

namespace quermass::querm {

namespace {

constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

QuermResult finish(int j, double p, double value, double error, Method method) {
  require(std::isfinite(value) && value > 0.0, "quermassintegral evaluation failed");
  return {j, p, value, error, method};
}

double zonal_I(const sphere::ZonalProfile& g, int n, int j, double p, int beta_order,
               int angle_order) {
  const Rule1D rule_j = zonal_rule(j, angle_order);
  const double vn = body::zonal_volume_ratio(g, n, angle_order);
  const double scale = std::pow(vn, static_cast<double>(j) / n);
  const grassmann::BetaQuadrature beta(n, j, beta_order);
  const double mean = beta.integrate([&](double t) {
    const double vj = body::zonal_volume_ratio(g.scaled_argument(std::sqrt(t)), j, rule_j);
    return std::pow(vj / scale, p);
  });
  return std::pow(mean, 1.0 / (p * j));
}

body::VolumeOptions coarser(const body::VolumeOptions& v) {
  body::VolumeOptions c = v;
  c.zonal_order = std::max(2, v.zonal_order / 2);
  c.planar_order = std::max(8, v.planar_order / 2);
  if (v.quad.is_product())
    c.quad = SphereQuadrature::product(std::max(2, v.quad.polar_order() / 2),
                                       std::max(3, v.quad.azimuth_order() / 2),
                                       v.quad.seed(), v.quad.count());
  return c;
}

SphereQuadrature coarser(const SphereQuadrature& q) {
  if (!q.is_product()) return q;
  return SphereQuadrature::product(std::max(2, q.polar_order() / 2),
                                   std::max(3, q.azimuth_order() / 2), q.seed(), q.count());
}

// Mean over a direction rule of (V_j(F(u)) / V_n^{j/n})^p for j = 1 or n-1.
Estimate sphere_mean(const body::SupportBody& k, int j, double p, const SphereRule& rule,
                     const body::VolumeOptions& volume, double scale) {
  const int n = k.dim();
  const double kappa_j = ball_volume(j);
  return rule.integrate([&](const Vec& u) {
    double vj;
    if (j == 1) {
      vj = 0.5 * (k.support(u) + k.support(-u));
    } else {
      const grassmann::Subspace f(sphere::tangent_frame(u));
      vj = body::projection_volume(k, f, volume).value / kappa_j;
    }
    (void)n;
    return std::pow(vj / scale, p);
  });
}

double zonal_margin(const sphere::ZonalProfile& g, int n) {
  double margin = std::numeric_limits<double>::infinity();
  const int steps = 4096;
  for (int i = 0; i <= steps; ++i) {
    const double c = std::cos(kPi * i / steps);
    const auto r = body::zonal_radii(g, c);
    margin = std::min({margin, r.meridian, g(c)});
    if (n >= 3) margin = std::min(margin, r.azimuthal);
  }
  return margin;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Zonal: return "zonal";
    case Method::HaarMC: return "haar-mc";
    case Method::Sphere: return "sphere";
  }
  return "unknown";
}

body::ConvexityCertificate certify(const body::SupportBody& k) {
  const int n = k.dim();
  const SphereQuadrature quad =
      n <= 3 ? SphereQuadrature::product(32, 64) : SphereQuadrature::monte_carlo(11, 2000);
  return body::certify_convex(k, quad);
}

QuermResult I_jp(const body::SupportBody& k, int j, double p, const QuermOptions& options) {
  const int n = k.dim();
  require(p != 0.0, "p = 0 is not allowed");
  require(j >= 1 && j <= n, "quermassintegral needs 1 <= j <= n");
  if (options.certify) {
    const auto cert = certify(k);
    require(cert.certified, "non-convex body (certification margin " +
                                std::to_string(cert.margin) + ")");
  }
  if (j == n) return finish(j, p, 1.0, 0.0, options.method);

  switch (options.method) {
    case Method::Zonal: {
      require(k.zonal_form().has_value(), "zonal method needs a zonal body");
      const auto& z = k.zonal_form()->profile;
      const double fine = zonal_I(z, n, j, p, options.beta_order, options.angle_order);
      const double coarse = zonal_I(z, n, j, p, std::max(2, options.beta_order / 2),
                                    std::max(2, options.angle_order / 2));
      return finish(j, p, fine, std::abs(fine - coarse) + kRoundoff * fine, Method::Zonal);
    }
    case Method::HaarMC: {
      require(options.samples >= 2, "Haar Monte Carlo needs at least two samples");
      const Estimate vol = body::volume(k, options.volume);
      const double vn = vol.value / ball_volume(n);
      const double scale = std::pow(vn, static_cast<double>(j) / n);
      RandomStream rng(options.seed, 0x4A5E);
      RunningStats stats;
      for (std::size_t i = 0; i < options.samples; ++i) {
        const auto f = grassmann::haar_subspace(n, j, rng);
        const double vj = body::projection_volume(k, f, options.volume).value / ball_volume(j);
        stats.push(std::pow(vj / scale, p));
      }
      const double mean = stats.mean();
      const double e = 1.0 / (p * j);
      const double value = std::pow(mean, e);
      // Delta method on the outer mean, plus the relative error of V_n.
      const double err = std::abs(e) * value * 3.0 * stats.std_error() / mean +
                         value * std::abs(static_cast<double>(j) / n * e * p) *
                             3.0 * vol.std_error / vol.value;
      return finish(j, p, value, err, Method::HaarMC);
    }
    case Method::Sphere: {
      require(j == 1 || j == n - 1, "sphere method needs j = 1 or j = n - 1");
      auto evaluate = [&](const SphereQuadrature& dirs, const body::VolumeOptions& vo) {
        const Estimate vol = body::volume(k, vo);
        const double scale = std::pow(vol.value / ball_volume(n), static_cast<double>(j) / n);
        const SphereRule rule = dirs.rule(n);
        const Estimate mean = sphere_mean(k, j, p, rule, vo, scale);
        const double e = 1.0 / (p * j);
        const double value = std::pow(mean.value, e);
        return std::pair{value, rule.monte_carlo
                                    ? std::abs(e) * value * 3.0 * mean.std_error / mean.value
                                    : -1.0};
      };
      const auto [fine, mc_err] = evaluate(options.directions, options.volume);
      double err = mc_err;
      if (err < 0.0) {
        const auto [coarse, unused] =
            evaluate(coarser(options.directions), coarser(options.volume));
        (void)unused;
        err = std::abs(fine - coarse) + kRoundoff * fine;
      }
      return finish(j, p, fine, err, Method::Sphere);
    }
  }
  throw PreconditionError("unknown method");
}

Estimate log_ratio(int m, int k, int n, double t, const QuermOptions& options) {
  require(1 <= m && m < k && k <= n, "log ratio needs 1 <= m < k <= n");
  const auto body = body::SupportBody::fourth_harmonic_perturbation(n, t);
  if (options.certify) {
    const double margin = zonal_margin(body.zonal_form()->profile, n);
    require(margin > 1e-8, "non-convex body: K_t is not certified at t = " + std::to_string(t));
  }
  QuermOptions inner = options;
  inner.certify = false;
  const double p = -static_cast<double>(n);
  const QuermResult a = I_jp(body, m, p, inner);
  const QuermResult b = I_jp(body, k, p, inner);
  return {std::log(a.value) - std::log(b.value), a.error / a.value + b.error / b.value};
}

namespace {

struct Symmetric {
  Estimate plus, minus;
  double estimate, error;
};

Symmetric symmetric_quotient(int m, int k, int n, double t, const QuermOptions& options) {
  Symmetric s;
  s.plus = log_ratio(m, k, n, t, options);
  s.minus = log_ratio(m, k, n, -t, options);
  s.estimate = (s.plus.value + s.minus.value) / (2.0 * t * t);
  s.error = (s.plus.std_error + s.minus.std_error) / (2.0 * t * t);
  return s;
}

}  // namespace

Estimate extract_quadratic(int m, int k, int n, double t, const QuermOptions& options) {
  require(t > 0.0, "extraction step t must be positive");
  const Symmetric a = symmetric_quotient(m, k, n, t, options);
  const Symmetric b = symmetric_quotient(m, k, n, 0.5 * t, options);
  // Remainder is C t^2, so e(t) - c ~ (4/3)(e(t) - e(t/2)); use 2 for headroom.
  const double truncation = 2.0 * std::abs(a.estimate - b.estimate);
  return {a.estimate, a.error + truncation};
}

VariationReport variation_report(int m, int k, int n, double t, const QuermOptions& options) {
  require(t > 0.0, "extraction step t must be positive");
  VariationReport r;
  r.m = m;
  r.k = k;
  r.n = n;
  r.boundary = (m + 2) * (k + 2) - 2 == n;
  r.target = exact::to_double(exact::coefficient(m, k, n) * exact::norm_Y_sq(n));
  for (double s : {t, 0.5 * t, 0.25 * t}) {
    const Symmetric q = symmetric_quotient(m, k, n, s, options);
    r.t_grid.push_back(s);
    r.f_plus.push_back(q.plus.value);
    r.f_minus.push_back(q.minus.value);
    r.f_error.push_back(q.plus.std_error + q.minus.std_error);
    r.estimates.push_back(q.estimate);
  }
  r.estimate = r.estimates[0];
  r.estimate_error = r.f_error[0] / (2.0 * t * t) +
                     2.0 * std::abs(r.estimates[0] - r.estimates[1]);
  r.relative_deviation =
      r.target != 0.0 ? std::abs(r.estimate - r.target) / std::abs(r.target)
                      : std::numeric_limits<double>::quiet_NaN();
  const double d1 = std::abs(r.estimates[0] - r.estimates[1]);
  const double d2 = std::abs(r.estimates[1] - r.estimates[2]);
  r.observed_order = d2 > 0.0 ? std::log2(d1 / d2) : std::numeric_limits<double>::quiet_NaN();
  return r;
}

ExpansionReport projection_expansion_check(int n, const std::vector<grassmann::Subspace>& subspaces,
                                           double step, const body::VolumeOptions& volume) {
  require(n >= 2, "expansion check needs n >= 2");
  require(step > 0.0, "finite-difference step must be positive");
  const auto y = sphere::fourth_harmonic(n);
  const auto y_sq = sphere::polynomial_function([&] {
    const auto p = exact::fourth_harmonic_zonal_polynomial(n);
    return p * p;
  }());
  body::VolumeOptions generic = volume;
  generic.method = body::VolumeMethod::Generic;

  ExpansionReport rep;
  rep.n = n;
  rep.step = step;
  rep.scale = std::sqrt(exact::to_double(exact::norm_Y_sq(n)));
  for (const auto& f : subspaces) {
    require(f.ambient_dim() == n, "subspace lives in the wrong dimension");
    const int j = f.dim();
    rep.j = j;
    const double kappa = ball_volume(j);
    auto v = [&](double t) {
      const auto k = body::SupportBody::perturbation(y, t, true);
      return body::projection_volume(k, f, generic).value / kappa;
    };
    const double vm2 = v(-2 * step), vm1 = v(-step), v0 = v(0.0), vp1 = v(step),
                 vp2 = v(2 * step);
    ExpansionEntry e;
    e.T = grassmann::t_of(f);
    e.first_fd = (-vp2 + 8 * vp1 - 8 * vm1 + vm2) / (12 * step);
    e.second_fd = (-vp2 + 16 * vp1 - 30 * v0 + 16 * vm1 - vm2) / (12 * step * step);

    const SphereRule rule = volume.quad.rule(j);
    e.first_target = j * grassmann::radon_average(y, f, rule);
    e.second_target =
        j * ((j - 1) * grassmann::radon_average(y_sq, f, rule) -
             grassmann::radon_gradient_energy(y, f, rule));
    e.first_rel = std::abs(e.first_fd - e.first_target) /
                  std::max(std::abs(e.first_target), rep.scale);
    e.second_rel = std::abs(e.second_fd - e.second_target) /
                   std::max(std::abs(e.second_target), rep.scale);
    rep.max_first_rel = std::max(rep.max_first_rel, e.first_rel);
    rep.max_second_rel = std::max(rep.max_second_rel, e.second_rel);
    rep.entries.push_back(e);
  }
  return rep;
}

CounterexampleCertificate counterexample_certify(int m, int k, int n, double t,
                                                 const QuermOptions& options) {
  require(exact::counterexample_exists(m, k, n),
          "no counterexample: n > (m+2)(k+2)-2 fails for (m,k,n) = (" + std::to_string(m) +
              "," + std::to_string(k) + "," + std::to_string(n) + ")");
  require(t != 0.0, "t must be nonzero");
  CounterexampleCertificate c;
  c.m = m;
  c.k = k;
  c.n = n;
  c.t = t;
  const auto body = body::SupportBody::fourth_harmonic_perturbation(n, t);
  const auto cert = certify(body);
  c.convexity_margin = cert.margin;
  require(cert.certified, "non-convex body: K_t is not certified at t = " + std::to_string(t));

  QuermOptions inner = options;
  inner.certify = false;
  const double p = -static_cast<double>(n);
  c.i_m = I_jp(body, m, p, inner);
  c.i_k = I_jp(body, k, p, inner);
  c.gap = std::log(c.i_k.value) - std::log(c.i_m.value);
  c.gap_error = c.i_m.error / c.i_m.value + c.i_k.error / c.i_k.value;
  c.status = c.gap > 3.0 * c.gap_error ? CertificateStatus::Certified
                                       : CertificateStatus::Indeterminate;
  return c;
}

std::pair<double, double> certified_t_range(int n, double step) {
  require(n >= 2, "t range needs n >= 2");
  require(step > 0.0, "step must be positive");
  const auto y = sphere::ZonalProfile::fourth_harmonic(n);
  auto last_ok = [&](double sign) {
    double t = 0.0;
    while (t < 10.0 && zonal_margin(y.affine(1.0, sign * (t + step)), n) > 1e-8) t += step;
    return sign * t;
  };
  return {last_ok(-1.0), last_ok(1.0)};
}

}  // namespace quermass::querm
