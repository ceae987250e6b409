#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace dnnbound {

/// Seeded random symmetric r x r matrix with integer entries in [-10, 10].
/// Generated from raw mt19937_64 output so the stream is identical across
/// platforms.
Eigen::MatrixXd random_bqop_matrix(int r, std::uint64_t seed);

/// Seeded random QAP data: two symmetric r x r matrices with integer
/// entries in [0, 9].
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> random_qap_pair(int r,
                                                            std::uint64_t seed);

}  // namespace dnnbound
