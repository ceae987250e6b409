#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dnnbound/model.hpp"

namespace dnnbound {

/// Exhaustive minimum of v'Fv over v in {0,1}^r. Refuses r > 22.
struct BqopOptimum {
  double value = 0;
  std::vector<int> argmin;  // 0/1 entries
};
BqopOptimum brute_bqop(const Eigen::MatrixXd& F);

/// Exhaustive minimum of sum_ij A(i,j) B(pi(i),pi(j)) over permutations.
/// Refuses r > 9.
struct QapOptimum {
  double value = 0;
  std::vector<int> perm;  // pi as a 0-based permutation of {0..r-1}
};
QapOptimum brute_qap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Exhaustive minimum of a QOP whose variables are all binary: enumerates
/// u in {0,1}^n, keeps points with Au = b (within tol) and the
/// complementarity products zero, and minimizes u'Cu + 2c'u. Refuses n > 24.
struct QopOptimum {
  double value = 0;
  std::vector<int> argmin;
  bool feasible = false;
};
QopOptimum brute_qop_binary(const QopModel& q, double feas_tol = 1e-9);

}  // namespace dnnbound
