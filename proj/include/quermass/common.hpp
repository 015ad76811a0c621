#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace quermass {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;

/// Raised when an operation is called outside its domain (bad dimension,
/// m >= k, a non-convex body, ...). The CLI maps it to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Volume of the Euclidean unit ball in R^n.
inline double ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface area of S^{n-1} (unnormalized), n * kappa_n.
inline double sphere_area(int n) { return n * ball_volume(n); }

/// Monte Carlo or deterministic scalar estimate. std_error is zero for
/// deterministic evaluations.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;

  /// |value - target| <= sigmas * std_error, with an absolute floor for
  /// zero-variance estimates.
  bool within(double target, double sigmas = 3.0, double floor = 1e-12) const {
    return std::abs(value - target) <= sigmas * std_error + floor;
  }
};

/// Welford accumulator for the mean of i.i.d. samples.
class RunningStats {
 public:
  void push(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }
  Estimate estimate() const { return {mean(), std_error()}; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace quermass
