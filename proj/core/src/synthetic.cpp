#include "dnnbound/synthetic.hpp"

#include <random>
#include <stdexcept>

namespace dnnbound {

namespace {

Eigen::MatrixXd random_symmetric(int r, std::mt19937_64& rng, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  Eigen::MatrixXd m(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      const double v = static_cast<double>(lo + static_cast<int>(rng() % span));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXd random_bqop_matrix(int r, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("random_bqop_matrix: r must be >= 1");
  std::mt19937_64 rng(seed);
  return random_symmetric(r, rng, -10, 10);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> random_qap_pair(int r,
                                                            std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("random_qap_pair: r must be >= 1");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd a = random_symmetric(r, rng, 0, 9);
  Eigen::MatrixXd b = random_symmetric(r, rng, 0, 9);
  return {a, b};
}

}  // namespace dnnbound
