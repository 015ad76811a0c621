#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace quermass::cli {

enum ExitCode : int {
  kPass = 0,
  kFailure = 1,       // an identity or inequality check failed
  kPrecondition = 2,  // bad flags, bad body spec, non-convex body, ...
  kIndeterminate = 3  // error bars too large to decide
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t mc_samples = 2000;
  int beta_order = 128;
  int angle_order = 256;
  int sphere_grid = 24;  // polar order of the S^2 product rule (azimuth = 2x)
  double sigmas = 3.0;   // tolerance policy for Monte Carlo comparisons
  std::string json_out;  // empty: JSON goes to stdout
  std::string csv_out;   // empty: no CSV

  /// Throws PreconditionError on non-positive counts or orders.
  void validate() const;
  nlohmann::ordered_json to_json() const;
  /// Fields present in `j` override the current values.
  void merge(const nlohmann::json& j);
};

/// Environment variable naming a JSON file with RunConfig defaults.
inline constexpr const char* kConfigEnv = "QUERMASS_CONFIG";

int run_cli(int argc, char** argv);

}  // namespace quermass::cli
