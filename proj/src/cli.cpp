#include "quermass/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "quermass/exact_algebra.hpp"
#include "quermass/grassmann.hpp"
#include "quermass/querm.hpp"
#include "quermass/report.hpp"
#include "quermass/tomo.hpp"

namespace quermass::cli {

using report::Json;

void RunConfig::validate() const {
  require(mc_samples >= 2, "mc_samples must be at least 2");
  require(beta_order >= 2, "beta_order must be at least 2");
  require(angle_order >= 2, "angle_order must be at least 2");
  require(sphere_grid >= 2, "sphere_grid must be at least 2");
  require(sigmas > 0.0, "sigmas must be positive");
}

Json RunConfig::to_json() const {
  return Json{{"seed", seed},
              {"mc_samples", mc_samples},
              {"beta_order", beta_order},
              {"angle_order", angle_order},
              {"sphere_grid", sphere_grid},
              {"sigmas", sigmas},
              {"json_out", json_out},
              {"csv_out", csv_out}};
}

void RunConfig::merge(const nlohmann::json& j) {
  require(j.is_object(), "config must be a JSON object");
  try {
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mc_samples")) mc_samples = j.at("mc_samples").get<std::size_t>();
    if (j.contains("beta_order")) beta_order = j.at("beta_order").get<int>();
    if (j.contains("angle_order")) angle_order = j.at("angle_order").get<int>();
    if (j.contains("sphere_grid")) sphere_grid = j.at("sphere_grid").get<int>();
    if (j.contains("sigmas")) sigmas = j.at("sigmas").get<double>();
    if (j.contains("json_out")) json_out = j.at("json_out").get<std::string>();
    if (j.contains("csv_out")) csv_out = j.at("csv_out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad config: ") + e.what());
  }
}

namespace {

struct Outcome {
  int code = kPass;
  Json result;
};

const char* status_name(int code) {
  switch (code) {
    case kPass: return "pass";
    case kFailure: return "fail";
    case kPrecondition: return "precondition";
    default: return "indeterminate";
  }
}

SphereQuadrature sphere_rule(const RunConfig& c) {
  return SphereQuadrature::product(c.sphere_grid, 2 * c.sphere_grid, c.seed);
}

querm::QuermOptions querm_options(const RunConfig& c) {
  querm::QuermOptions o;
  o.beta_order = c.beta_order;
  o.angle_order = c.angle_order;
  o.samples = c.mc_samples;
  o.seed = c.seed;
  o.directions = sphere_rule(c);
  return o;
}

void write_csv(const RunConfig& c, const std::function<void(std::ostream&)>& writer) {
  if (c.csv_out.empty()) return;
  std::ofstream out(c.csv_out);
  require(static_cast<bool>(out), "cannot open CSV output " + c.csv_out);
  writer(out);
}

// --- exact-report ----------------------------------------------------------

struct ExactArgs {
  int n_max = 40;
  int sign_n_max = 20;
  std::string mutate = "none";
};

Outcome cmd_exact(const RunConfig&, const ExactArgs& a) {
  require(a.n_max >= 2 && a.sign_n_max >= 2, "n ranges must be at least 2");
  exact::ClosedForms forms;
  using exact::Rational;
  if (a.mutate == "aj") {
    forms.aj_closed = [](int n, int j) {
      Rational v = exact::Aj_closed(n, j);
      if (n == 17 && j == 3) v += Rational(1, 1000000);
      return v;
    };
  } else if (a.mutate == "coefficient") {
    forms.coefficient = [](int m, int k, int n) {
      return exact::coefficient(m, k, n) * Rational(1001, 1000);
    };
  } else if (a.mutate == "norm") {
    forms.norm_y_sq = [](int n) { return exact::norm_Y_sq(n) + Rational(1, n * n); };
  } else {
    require(a.mutate == "none", "unknown mutation: " + a.mutate);
  }
  const auto rep = exact::run_identity_suite(a.n_max, a.sign_n_max, forms);
  Outcome o;
  o.result = report::to_json(rep);
  o.result["mutation"] = a.mutate;
  o.code = rep.passed() ? kPass : kFailure;
  return o;
}

// --- counterexample --------------------------------------------------------

struct CounterexampleArgs {
  int m = 1, k = 2, n = 11;
  double t = 0.05;
  double extract_t = 0.02;
};

Outcome cmd_counterexample(const RunConfig& c, const CounterexampleArgs& a) {
  require(a.m >= 1 && a.m < a.k && a.k <= a.n - 1, "need 1 <= m < k <= n-1");
  require(exact::counterexample_exists(a.m, a.k, a.n),
          "no counterexample: n must exceed (m+2)(k+2)-2 = " +
              std::to_string((a.m + 2) * (a.k + 2) - 2));
  require(a.t > 0.0 && a.t < 1.0, "t must lie in (0, 1)");
  const auto opts = querm_options(c);
  const auto cert = querm::counterexample_certify(a.m, a.k, a.n, a.t, opts);
  Outcome o;
  o.result["certificate"] = report::to_json(cert);
  if (a.extract_t > 0.0) {
    const auto var = querm::variation_report(a.m, a.k, a.n, a.extract_t, opts);
    o.result["second_variation"] = report::to_json(var);
    write_csv(c, [&](std::ostream& out) { report::write_variation_csv(out, var); });
  }
  o.code = cert.status == querm::CertificateStatus::Certified ? kPass : kIndeterminate;
  return o;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  int n_max = 20;
  bool certify = false;
  double t = 0.05;
};

Outcome cmd_scan(const RunConfig& c, const ScanArgs& a) {
  require(a.n_max >= 3, "n-max must be at least 3");
  Outcome o;
  Json rows = Json::array();
  Json certs = Json::array();
  const auto opts = querm_options(c);
  std::ostringstream csv;
  csv << "m,k,n,coefficient,sign,counterexample\n";
  for (int n = 3; n <= a.n_max; ++n) {
    for (int m = 1; m < n - 1; ++m) {
      for (int k = m + 1; k <= n - 1; ++k) {
        const auto q = exact::coefficient(m, k, n);
        const bool ce = exact::counterexample_exists(m, k, n);
        rows.push_back({{"m", m},
                        {"k", k},
                        {"n", n},
                        {"coefficient", exact::to_string(q)},
                        {"sign", sgn(q)},
                        {"counterexample", ce}});
        csv << m << ',' << k << ',' << n << ',' << exact::to_string(q) << ',' << sgn(q) << ','
            << (ce ? 1 : 0) << '\n';
        // Certify only at the first dimension where the reversal appears.
        if (a.certify && ce && n == (m + 2) * (k + 2) - 1) {
          const auto cert = querm::counterexample_certify(m, k, n, a.t, opts);
          certs.push_back(report::to_json(cert));
          if (cert.status != querm::CertificateStatus::Certified) o.code = kIndeterminate;
        }
      }
    }
  }
  o.result["coefficients"] = rows;
  if (a.certify) o.result["certificates"] = certs;
  write_csv(c, [&](std::ostream& out) { out << csv.str(); });
  return o;
}

// --- chain3 ----------------------------------------------------------------

struct Chain3Args {
  std::string body = "ball3";
  std::size_t directions = 200;
};

Outcome cmd_chain3(const RunConfig& c, const Chain3Args& a) {
  const auto k = report::body_from_argument(a.body, 3);
  require(k.dim() == 3, "chain3 needs a body in R^3");
  const auto cert = querm::certify(k);
  require(cert.certified, "body is not certified convex");
  tomo::ChainOptions opts;
  opts.directions = sphere_rule(c);
  opts.seed = c.seed;
  const auto rep = tomo::dim3_endpoints(k, a.body, opts);
  Outcome o;
  o.result["convexity"] = report::to_json(cert);
  o.result["chain"] = report::to_json(rep);
  write_csv(c, [&](std::ostream& out) {
    report::write_direction_csv(out, tomo::direction_table(k, a.directions, c.seed));
  });
  o.code = rep.pass12 && rep.pass2 ? kPass : kFailure;
  return o;
}

// --- planar ----------------------------------------------------------------

struct PlanarArgs {
  int trials = 100;
  int ellipses = 20;
};

Outcome cmd_planar(const RunConfig& c, const PlanarArgs& a) {
  require(a.trials >= 0 && a.ellipses >= 0, "trial counts must be non-negative");
  Outcome o;
  bool ok = true;
  const auto disk = tomo::PlanarBody::disk();
  const auto lemma = tomo::planar_lemma_check(disk, c.mc_samples, c.seed);
  const auto centroid = tomo::centroid_identity_check(disk, c.mc_samples, c.seed);
  const auto santalo = tomo::ball_quadratic_santalo_check(disk);
  ok = ok && lemma.pass && centroid.identity_pass && centroid.product_pass && santalo.pass;
  o.result["disk"] = {{"lemma", report::to_json(lemma)},
                      {"centroid", report::to_json(centroid)},
                      {"santalo", report::to_json(santalo)}};

  Json bodies = Json::array();
  int violations = 0;
  for (int i = 0; i < a.trials; ++i) {
    RandomStream rng(c.seed, 0x100 + static_cast<std::uint64_t>(i));
    const auto body = tomo::random_symmetric_planar(rng);
    const auto r = tomo::planar_lemma_check(body, c.mc_samples, c.seed + i + 1);
    if (r.slack < -c.sigmas * r.slack_se) ++violations;
    bodies.push_back(report::to_json(r));
  }
  Json ellipses = Json::array();
  int ellipse_misses = 0;
  for (int i = 0; i < a.ellipses; ++i) {
    RandomStream rng(c.seed, 0x200 + static_cast<std::uint64_t>(i));
    Mat t = Mat::Identity(2, 2) + 0.4 * rng.gaussian_matrix(2, 2);
    if (t.determinant() < 0.0) t.col(0) *= -1.0;
    const auto r = tomo::planar_lemma_check(tomo::PlanarBody::ellipse(t), c.mc_samples,
                                            c.seed + 1000 + i);
    if (std::abs(r.slack) > c.sigmas * r.slack_se) ++ellipse_misses;
    ellipses.push_back(report::to_json(r));
  }
  o.result["random_bodies"] = {{"count", a.trials}, {"violations", violations}, {"rows", bodies}};
  o.result["random_ellipses"] = {
      {"count", a.ellipses}, {"nonzero_slack", ellipse_misses}, {"rows", ellipses}};
  ok = ok && violations == 0 && ellipse_misses == 0;
  o.code = ok ? kPass : kFailure;
  return o;
}

// --- bp --------------------------------------------------------------------

struct BPArgs {
  int dim = 3;
  std::string body = "ball";
  int random = 0;
};

tomo::TestBody test_body_for(const body::SupportBody& k, const std::string& id,
                             const RunConfig& c) {
  const int n = k.dim();
  const auto& z = k.zonal_form();
  if (z && (z->axis - Vec::Unit(n, 0)).norm() < 1e-14)
    return tomo::linear_image_of_zonal(id, Mat::Identity(n, n), z->profile);
  body::VolumeOptions v;
  v.quad = SphereQuadrature::product(32, 64, c.seed, 20 * c.mc_samples);
  return tomo::make_test_body(id, k, v);
}

Outcome cmd_bp(const RunConfig& c, const BPArgs& a) {
  require(a.dim == 3 || a.dim == 4, "bp supports --dim 3 or 4");
  require(a.random >= 0, "--random must be non-negative");
  tomo::BPOptions opts;
  opts.seed = c.seed;
  opts.samples = c.mc_samples;
  opts.directions = SphereQuadrature::product(c.sphere_grid, 2 * c.sphere_grid, c.seed);
  const auto l = report::body_from_argument(a.body, a.dim);
  require(l.dim() == a.dim, "body dimension does not match --dim");
  require(l.symmetric(), "bp needs an origin-symmetric body");

  auto run = [&](const tomo::TestBody& tb) {
    return a.dim == 3 ? tomo::bp3_check(tb.body, tb.polar_volume, opts)
                      : tomo::bp4_check(tb.body, tb.polar_volume, opts);
  };
  Outcome o;
  const auto main = run(test_body_for(l, a.body, c));
  o.result["body"] = report::to_json(main);
  if (a.body.rfind("ball", 0) == 0) o.result["note"] = main.exact_match ? "exact match" : "no exact match";
  bool ok = main.pass;
  Json rows = Json::array();
  for (int i = 0; i < a.random; ++i) {
    RandomStream rng(c.seed, 0x300 + static_cast<std::uint64_t>(i));
    const auto tb = tomo::random_symmetric_body(a.dim, rng, "random-" + std::to_string(i));
    const auto r = run(tb);
    ok = ok && r.pass;
    Json row = report::to_json(r);
    row["id"] = tb.id;
    rows.push_back(row);
  }
  if (a.random > 0) o.result["random"] = rows;
  o.code = ok ? kPass : kFailure;
  return o;
}

// --- moments ---------------------------------------------------------------

Outcome cmd_moments(const RunConfig& c) {
  Outcome o;
  bool ok = true;
  Json moments = Json::array();
  for (int j : {1, 2, 5}) {
    const auto r = grassmann::t_moment_check(11, j, 4, c.mc_samples, c.seed + j, c.beta_order);
    for (std::size_t i = 0; i < r.exact.size(); ++i) {
      ok = ok && r.haar[i].within(r.exact[i], c.sigmas) &&
           std::abs(r.beta[i] - r.exact[i]) <= 1e-12;
    }
    moments.push_back(report::to_json(r));
  }
  o.result["t_moments"] = moments;
  Json radon = Json::array(), square = Json::array();
  for (auto [n, j] : {std::pair{6, 3}, std::pair{11, 2}}) {
    const auto r = grassmann::radon_identity_check(n, j, c.mc_samples, c.seed, sphere_rule(c));
    ok = ok && r.y_sq_average.within(r.y_sq_target, c.sigmas) &&
         r.gradient_average.within(r.gradient_target, c.sigmas);
    radon.push_back(report::to_json(r));
    const auto s =
        grassmann::square_average_check(n, j, c.mc_samples, c.seed, c.beta_order, c.angle_order);
    ok = ok && s.haar.within(s.target, c.sigmas) &&
         std::abs(s.beta - s.target) <= 1e-12 + 1e-10 * std::abs(s.target);
    square.push_back(report::to_json(s));
  }
  o.result["radon_identities"] = radon;
  o.result["square_average"] = square;
  o.code = ok ? kPass : kFailure;
  return o;
}

void emit(const RunConfig& c, const std::string& command, const Json& args, const Outcome& o,
          const std::string& error) {
  Json rep;
  rep["command"] = command;
  rep["arguments"] = args;
  rep["config"] = c.to_json();
  rep["versions"] = report::versions();
  rep["status"] = status_name(o.code);
  rep["exit_code"] = o.code;
  if (!error.empty()) rep["error"] = error;
  rep["result"] = o.result.is_null() ? Json::object() : o.result;
  const std::string text = rep.dump(2) + "\n";
  if (c.json_out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.json_out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << c.json_out << "\n";
    return;
  }
  out << text;
  std::cout << command << ": " << status_name(o.code) << "\n";
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"quermass: affine quermassintegral verification campaigns"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig flags;
  std::string config_path;
  auto* o_seed = app.add_option("--seed", flags.seed, "Random seed");
  auto* o_mc = app.add_option("--mc-samples", flags.mc_samples, "Samples per Monte Carlo estimate");
  auto* o_beta = app.add_option("--beta-order", flags.beta_order, "Gauss-Jacobi order (Beta law)");
  auto* o_angle = app.add_option("--angle-order", flags.angle_order, "Angle quadrature order");
  auto* o_grid = app.add_option("--sphere-grid", flags.sphere_grid, "Polar order of S^2 rules");
  auto* o_sig = app.add_option("--sigmas", flags.sigmas, "Monte Carlo tolerance in standard errors");
  auto* o_json = app.add_option("--json", flags.json_out, "Write the JSON report here");
  auto* o_csv = app.add_option("--csv", flags.csv_out, "Write the CSV table here");
  app.add_option("--config", config_path, "JSON config file (default: $QUERMASS_CONFIG)");

  std::string command;
  Json args;
  std::function<Outcome(const RunConfig&)> action;

  ExactArgs ea;
  auto* s_exact = app.add_subcommand("exact-report", "Exact rational identity certificate");
  s_exact->add_option("--n-max", ea.n_max, "Largest n for the identities");
  s_exact->add_option("--sign-n-max", ea.sign_n_max, "Largest n for the coefficient sign table");
  s_exact->add_option("--mutate", ea.mutate, "Negative control: none|aj|coefficient|norm");
  s_exact->callback([&] {
    command = "exact-report";
    args = {{"n_max", ea.n_max}, {"sign_n_max", ea.sign_n_max}, {"mutate", ea.mutate}};
    action = [&](const RunConfig& c) { return cmd_exact(c, ea); };
  });

  CounterexampleArgs ca;
  auto* s_ce = app.add_subcommand("counterexample", "Certify I_{m,-n}^{1/m} < I_{k,-n}^{1/k}");
  s_ce->add_option("--m", ca.m)->required();
  s_ce->add_option("--k", ca.k)->required();
  s_ce->add_option("--n", ca.n)->required();
  s_ce->add_option("--t", ca.t, "Perturbation size for the certificate");
  s_ce->add_option("--extract-t", ca.extract_t, "Step for the t^2 coefficient (0 disables)");
  s_ce->callback([&] {
    command = "counterexample";
    args = {{"m", ca.m}, {"k", ca.k}, {"n", ca.n}, {"t", ca.t}, {"extract_t", ca.extract_t}};
    action = [&](const RunConfig& c) { return cmd_counterexample(c, ca); };
  });

  ScanArgs sa;
  auto* s_scan = app.add_subcommand("scan", "Sign table of the t^2 coefficient");
  s_scan->add_option("--n-max", sa.n_max);
  s_scan->add_flag("--certify", sa.certify, "Certify the first reversal for each (m,k)");
  s_scan->add_option("--t", sa.t);
  s_scan->callback([&] {
    command = "scan";
    args = {{"n_max", sa.n_max}, {"certify", sa.certify}, {"t", sa.t}};
    action = [&](const RunConfig& c) { return cmd_scan(c, sa); };
  });

  Chain3Args c3;
  auto* s_c3 = app.add_subcommand("chain3", "I_1 >= I_2^{1/2} >= 1 for a body in R^3");
  s_c3->add_option("--body", c3.body, "Body spec: JSON, file, or ball3");
  s_c3->add_option("--directions", c3.directions, "Rows of the CSV direction table");
  s_c3->callback([&] {
    command = "chain3";
    args = {{"body", c3.body}, {"directions", c3.directions}};
    action = [&](const RunConfig& c) { return cmd_chain3(c, c3); };
  });

  PlanarArgs pa;
  auto* s_pl = app.add_subcommand("planar", "Planar determinant lemma and companions");
  s_pl->add_option("--trials", pa.trials, "Random symmetric planar bodies");
  s_pl->add_option("--ellipses", pa.ellipses, "Random centered ellipses");
  s_pl->callback([&] {
    command = "planar";
    args = {{"trials", pa.trials}, {"ellipses", pa.ellipses}};
    action = [&](const RunConfig& c) { return cmd_planar(c, pa); };
  });

  BPArgs ba;
  auto* s_bp = app.add_subcommand("bp", "Blaschke-Petkantschin identities");
  s_bp->add_option("--dim", ba.dim, "3 or 4");
  s_bp->add_option("--body", ba.body, "Body spec L (M = L polar)");
  s_bp->add_option("--random", ba.random, "Extra random symmetric bodies");
  s_bp->callback([&] {
    command = "bp";
    args = {{"dim", ba.dim}, {"body", ba.body}, {"random", ba.random}};
    action = [&](const RunConfig& c) { return cmd_bp(c, ba); };
  });

  auto* s_mom = app.add_subcommand("moments", "Grassmannian moments and Radon identities");
  s_mom->callback([&] {
    command = "moments";
    args = Json::object();
    action = [](const RunConfig& c) { return cmd_moments(c); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kPrecondition;
  }

  RunConfig config;
  Outcome outcome;
  std::string error;
  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv(kConfigEnv)) config_path = env;
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      require(static_cast<bool>(in), "cannot open config " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("bad config: ") + e.what());
      }
      config.merge(j);
    }
    if (o_seed->count()) config.seed = flags.seed;
    if (o_mc->count()) config.mc_samples = flags.mc_samples;
    if (o_beta->count()) config.beta_order = flags.beta_order;
    if (o_angle->count()) config.angle_order = flags.angle_order;
    if (o_grid->count()) config.sphere_grid = flags.sphere_grid;
    if (o_sig->count()) config.sigmas = flags.sigmas;
    if (o_json->count()) config.json_out = flags.json_out;
    if (o_csv->count()) config.csv_out = flags.csv_out;
    config.validate();
    outcome = action(config);
  } catch (const PreconditionError& e) {
    outcome = {kPrecondition, {}};
    error = e.what();
    std::cerr << "precondition: " << e.what() << "\n";
  }
  emit(config, command, args, outcome, error);
  return outcome.code;
}

}  // namespace quermass::cli
