#pragma once

#include <cstdint>
#include <random>

#include "quermass/common.hpp"

namespace quermass {

/// Deterministic random stream keyed by (seed, stream index). Independent
/// streams let Monte Carlo work be split into chunks whose results do not
/// depend on how the chunks are scheduled.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  Vec gaussian_vector(int n);
  Mat gaussian_matrix(int rows, int cols);
  /// Uniform point on S^{n-1} (normalized Gaussian vector).
  Vec unit_vector(int n);
  /// Haar-distributed orthogonal matrix.
  Mat orthogonal_matrix(int n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace quermass
