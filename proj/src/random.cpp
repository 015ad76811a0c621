#include "quermass/random.hpp"

namespace quermass {

namespace {

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream),
                       static_cast<std::uint32_t>(stream >> 32), 0x51ed27u};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seed(seed, stream);
  engine_.seed(seq);
}

Vec RandomStream::gaussian_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Mat RandomStream::gaussian_matrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = normal();
  return m;
}

Vec RandomStream::unit_vector(int n) {
  for (;;) {
    Vec v = gaussian_vector(n);
    const double norm = v.norm();
    if (norm > 1e-300) return v / norm;
  }
}

Mat RandomStream::orthogonal_matrix(int n) {
  const Mat g = gaussian_matrix(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace quermass
