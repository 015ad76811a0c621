#include "quermass/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <Eigen/Core>
#include <gmp.h>

namespace quermass::report {

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

Json versions() {
  Json v;
  v["quermass"] = "1.0.0";
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
               "." + std::to_string(EIGEN_MINOR_VERSION);
  v["gmp"] = gmp_version;
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return v;
}

Json to_json(const Estimate& e) { return Json{{"value", e.value}, {"std_error", e.std_error}}; }

Json to_json(const exact::IdentityReport& r) {
  Json j;
  j["n_max"] = r.n_max;
  j["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"statement", c.statement},
                      {"range", c.range},
                      {"cases", c.cases},
                      {"failures", c.failures},
                      {"first_failure", c.first_failure},
                      {"passed", c.passed()}});
  }
  j["identities"] = checks;
  Json signs = Json::array();
  for (const auto& s : r.signs) {
    signs.push_back({{"m", s.m},
                     {"k", s.k},
                     {"n", s.n},
                     {"coefficient", exact::to_string(s.value)},
                     {"sign", sgn(s.value)},
                     {"counterexample", s.counterexample}});
  }
  j["coefficient_signs"] = signs;
  return j;
}

Json to_json(const querm::QuermResult& r) {
  return Json{{"j", r.j},
              {"p", r.p},
              {"value", r.value},
              {"error_bar", r.error},
              {"method", querm::to_string(r.method)}};
}

Json to_json(const querm::VariationReport& r) {
  Json j;
  j["m"] = r.m;
  j["k"] = r.k;
  j["n"] = r.n;
  j["t_grid"] = r.t_grid;
  j["log_ratio_plus"] = r.f_plus;
  j["log_ratio_minus"] = r.f_minus;
  j["log_ratio_error"] = r.f_error;
  j["estimates"] = r.estimates;
  j["estimate"] = r.estimate;
  j["estimate_error_bar"] = r.estimate_error;
  j["target"] = r.target;
  j["target_exact"] = exact::to_string(exact::coefficient(r.m, r.k, r.n)) + " * " +
                      exact::to_string(exact::norm_Y_sq(r.n));
  j["relative_deviation"] = r.relative_deviation;
  j["observed_order"] = r.observed_order;
  j["boundary"] = r.boundary;
  return j;
}

Json to_json(const querm::CounterexampleCertificate& c) {
  Json j;
  j["m"] = c.m;
  j["k"] = c.k;
  j["n"] = c.n;
  j["t"] = c.t;
  j["convexity_margin"] = c.convexity_margin;
  j["I_m"] = to_json(c.i_m);
  j["I_k"] = to_json(c.i_k);
  j["log_gap"] = c.gap;
  j["log_gap_error_bar"] = c.gap_error;
  j["status"] = c.status == querm::CertificateStatus::Certified ? "certified" : "indeterminate";
  return j;
}

Json to_json(const querm::ExpansionReport& r) {
  Json j;
  j["n"] = r.n;
  j["j"] = r.j;
  j["step"] = r.step;
  j["relative_floor"] = r.scale;
  j["max_first_relative"] = r.max_first_rel;
  j["max_second_relative"] = r.max_second_rel;
  Json rows = Json::array();
  for (const auto& e : r.entries) {
    rows.push_back({{"T", e.T},
                    {"first_fd", e.first_fd},
                    {"first_target", e.first_target},
                    {"second_fd", e.second_fd},
                    {"second_target", e.second_target}});
  }
  j["subspaces"] = rows;
  return j;
}

Json to_json(const body::ConvexityCertificate& c) {
  return Json{{"certified", c.certified},
              {"margin", c.margin},
              {"min_support", c.min_support},
              {"witness", vec_json(c.witness)},
              {"nodes", c.nodes}};
}

Json to_json(const grassmann::RadonIdentityResult& r) {
  return Json{{"n", r.n},
              {"j", r.j},
              {"samples", r.samples},
              {"y_sq_average", to_json(r.y_sq_average)},
              {"y_sq_target", r.y_sq_target},
              {"gradient_average", to_json(r.gradient_average)},
              {"gradient_target", r.gradient_target},
              {"pass", r.y_sq_average.within(r.y_sq_target) &&
                           r.gradient_average.within(r.gradient_target)}};
}

Json to_json(const grassmann::SquareAverageResult& r) {
  return Json{{"n", r.n},
              {"j", r.j},
              {"samples", r.samples},
              {"haar", to_json(r.haar)},
              {"beta", r.beta},
              {"target", r.target},
              {"pass", r.haar.within(r.target) &&
                           std::abs(r.beta - r.target) <= 1e-12 + 1e-10 * std::abs(r.target)}};
}

Json to_json(const grassmann::MomentCheckResult& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.exact.size(); ++i) {
    rows.push_back({{"r", i + 1},
                    {"haar", to_json(r.haar[i])},
                    {"beta", r.beta[i]},
                    {"exact", r.exact[i]}});
  }
  return Json{{"n", r.n}, {"j", r.j}, {"samples", r.samples}, {"moments", rows}};
}

Json to_json(const tomo::ChainReport& r) {
  Json j;
  j["id"] = r.id;
  j["dim"] = r.dim;
  j["volume_radius"] = r.r;
  j["A"] = to_json(r.a);
  j["B"] = to_json(r.b);
  j["I1"] = {{"value", r.i1}, {"error_bar", r.i1_error}};
  j["I2_sqrt"] = {{"value", r.i2}, {"error_bar", r.i2_error}};
  j["gap_I1_I2"] = {{"value", r.gap12}, {"error_bar", r.gap12_error}, {"pass", r.pass12}};
  if (r.dim == 3) {
    j["gap_I2_one"] = {{"value", r.gap2}, {"error_bar", r.gap2_error}, {"pass", r.pass2}};
  } else {
    j["comparison"] = {{"B", r.comparison_lhs},
                       {"bound", r.comparison_rhs},
                       {"error_bar", r.comparison_error},
                       {"pass", r.pass12}};
    if (r.i3 != 0.0) j["I3_cuberoot_measured"] = {{"value", r.i3}, {"error_bar", r.i3_error}};
  }
  return j;
}

Json to_json(const tomo::BPReport& r) {
  return Json{{"dim", r.dim},
              {"lhs", to_json(r.lhs)},
              {"rhs", r.rhs},
              {"rhs_error", r.rhs_error},
              {"exact_match", r.exact_match},
              {"pass", r.pass}};
}

Json to_json(const tomo::PlanarLemmaResult& r) {
  return Json{{"D", to_json(r.d)},
              {"polar_area", r.polar_area},
              {"bound", r.bound},
              {"slack", r.slack},
              {"slack_se", r.slack_se},
              {"pass", r.pass}};
}

Json to_json(const tomo::CentroidResult& r) {
  return Json{{"gamma_area", r.gamma_area},
              {"identity_rhs", to_json(r.identity_rhs)},
              {"identity_rhs_quadrature", r.identity_rhs_quadrature},
              {"polar_product", r.polar_product},
              {"identity_pass", r.identity_pass},
              {"product_pass", r.product_pass}};
}

Json to_json(const tomo::SantaloResult& r) {
  return Json{{"trace", r.trace}, {"error_bar", r.error}, {"bound", r.bound}, {"pass", r.pass}};
}

void write_variation_csv(std::ostream& out, const querm::VariationReport& r) {
  out << "t,f,error\n" << std::setprecision(17);
  for (std::size_t i = r.t_grid.size(); i-- > 0;)
    out << -r.t_grid[i] << ',' << r.f_minus[i] << ',' << r.f_error[i] << '\n';
  out << 0.0 << ',' << 0.0 << ',' << 0.0 << '\n';
  for (std::size_t i = 0; i < r.t_grid.size(); ++i)
    out << r.t_grid[i] << ',' << r.f_plus[i] << ',' << r.f_error[i] << '\n';
}

void write_direction_csv(std::ostream& out, const std::vector<tomo::DirectionRow>& rows) {
  out << "u1,u2,u3,width,brightness,section_D\n" << std::setprecision(17);
  for (const auto& r : rows)
    out << r.u[0] << ',' << r.u[1] << ',' << r.u[2] << ',' << r.width << ',' << r.brightness
        << ',' << r.section_d << '\n';
}

body::SupportBody body_from_spec(const Json& spec) {
  require(spec.is_object() && spec.contains("type"), "body spec needs a \"type\" field");
  const std::string type = spec.at("type").get<std::string>();
  try {
    if (type == "ball") {
      return body::SupportBody::ball(spec.value("n", 3), spec.value("radius", 1.0));
    }
    if (type == "ellipsoid") {
      const auto axes = spec.at("axes").get<std::vector<double>>();
      return body::SupportBody::ellipsoid(Vec(Eigen::Map<const Vec>(axes.data(), axes.size())));
    }
    if (type == "zonal4") {
      return body::SupportBody::fourth_harmonic_perturbation(spec.value("n", 3),
                                                             spec.at("t").get<double>());
    }
    if (type == "harmonic_perturbation") {
      const int n = spec.value("n", 3);
      require(n >= 2, "body dimension must be at least 2");
      Polynomial<double> p(n);
      bool even = true;
      for (const auto& term : spec.at("coeffs")) {
        auto e = term.at("exponents").get<std::vector<int>>();
        require(static_cast<int>(e.size()) == n, "monomial exponent length must equal n");
        int degree = 0;
        for (int x : e) {
          require(x >= 0, "exponents must be non-negative");
          degree += x;
        }
        if (degree % 2 != 0) even = false;
        p += Polynomial<double>::monomial(e, term.at("c").get<double>());
      }
      return body::SupportBody::perturbation(sphere::polynomial_function(p),
                                             spec.at("t").get<double>(), even);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed body spec: ") + e.what());
  }
  throw PreconditionError("unknown body type: " + type);
}

body::SupportBody body_from_argument(const std::string& arg, int default_dim) {
  if (arg == "ball") return body::SupportBody::ball(default_dim);
  if (arg == "ball3") return body::SupportBody::ball(3);
  if (arg == "ball4") return body::SupportBody::ball(4);
  Json spec;
  try {
    if (!arg.empty() && arg.front() == '{') {
      spec = Json::parse(arg);
    } else {
      std::ifstream in(arg);
      require(static_cast<bool>(in), "cannot open body spec file: " + arg);
      spec = Json::parse(in);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed body spec: ") + e.what());
  }
  if (!spec.contains("n") && spec.value("type", "") != "ellipsoid") spec["n"] = default_dim;
  return body_from_spec(spec);
}

}  // namespace quermass::report
