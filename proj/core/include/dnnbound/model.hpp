#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dnnbound/cones.hpp"
#include "dnnbound/sym_matrix.hpp"

namespace dnnbound {

/// Quadratic optimization problem over nonnegative variables
///
///   min u'Cu + 2c'u   s.t.  u >= 0, Au = b,
///                           u_i(1-u_i) = 0      (i in bin_indices),
///                           u_j u_k = 0         ((j,k) in comp_pairs).
struct QopModel {
  int n = 0;
  Eigen::MatrixXd C;  // n x n, symmetric
  Eigen::VectorXd c;  // n
  Eigen::MatrixXd A;  // l x n (l may be 0)
  Eigen::VectorXd b;  // l
  std::vector<int> bin_indices;
  std::vector<std::pair<int, int>> comp_pairs;
  /// Objective value at a known feasible point, when the builder has one;
  /// used to seed the bracketing methods from above.
  std::optional<double> feasible_objective;

  void validate() const;
};

/// The conic relaxation data: minimize <Q0, X> over X in K1 cap K2 with
/// <H0, X> = 1 and <H1, X> = 0, all matrices in S^{1+n}.
struct DnnCop {
  int n = 0;
  SymMatrix Q0;
  SymMatrix H0;  // single 1 at (0,0)
  SymMatrix H1;  // Gram matrix of the linear constraints, PSD
  ConeStructure cone;
  std::optional<double> feasible_objective;
};

/// The penalized single-equality problem the bracketing loop solves:
/// Q = Q0 + lambda H1, H = H0, with trace bound rho over the primal
/// feasible set.
struct LagrangianCop {
  SymMatrix Q;
  SymMatrix H;
  double lambda = 0;
  double rho = 0;
  DnnCop source;
};

DnnCop build_dnn(const QopModel& q);

/// Lift a binary quadratic problem min v'Fv over {0,1}^r with slack
/// variables w = e - v: n = 2r, C = blkdiag(+-F, 0), A = [I I], b = e,
/// all 2r variables binary. With `maximize` the sign of F is flipped so the
/// model always minimizes.
QopModel build_bqop(const Eigen::MatrixXd& F, bool maximize);

/// Quadratic assignment min <W, A W B'> over permutation matrices W, lifted
/// through u = vec(W): objective matrix is the symmetrized Kronecker product
/// B (x) A, with the 2r assignment-row/column equalities.
QopModel build_qap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Fold the penalty into Q = Q0 + lambda H1. rho = nullopt selects the
/// automatic trace bound 1 + n, valid when every variable is binary-linked.
LagrangianCop lagrangian(const DnnCop& d, double lambda,
                         std::optional<double> rho = std::nullopt);

/// Tightened trace bound 1 + r for QAP models (row-sum argument); opt-in
/// because it leans on the penalized assignment equalities.
double qap_tight_rho(int r);

}  // namespace dnnbound
