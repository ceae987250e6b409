#include "dnnbound/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dnnbound {

void QopModel::validate() const {
  if (n < 1) throw std::invalid_argument("QopModel: n must be >= 1");
  if (C.rows() != n || C.cols() != n) {
    throw std::invalid_argument("QopModel: C must be n x n");
  }
  if (!C.isApprox(C.transpose(), 0)) {
    throw std::invalid_argument("QopModel: C must be symmetric");
  }
  if (c.size() != n) throw std::invalid_argument("QopModel: c must have size n");
  if (A.size() > 0 && A.cols() != n) {
    throw std::invalid_argument("QopModel: A must have n columns");
  }
  if (b.size() != A.rows()) {
    throw std::invalid_argument("QopModel: b must match the rows of A");
  }
  for (int i : bin_indices) {
    if (i < 1 || i > n) {
      throw std::invalid_argument("QopModel: binary index out of range");
    }
  }
  for (auto [j, k] : comp_pairs) {
    if (j < 1 || k > n || j >= k) {
      throw std::invalid_argument("QopModel: complementarity pair out of range");
    }
  }
}

DnnCop build_dnn(const QopModel& q) {
  q.validate();
  const int n = q.n;
  const int d = n + 1;

  DnnCop out;
  out.n = n;

  Eigen::MatrixXd q0 = Eigen::MatrixXd::Zero(d, d);
  q0.block(1, 1, n, n) = q.C;
  q0.block(0, 1, 1, n) = q.c.transpose();
  q0.block(1, 0, n, 1) = q.c;
  out.Q0 = SymMatrix::from_symmetric(q0);

  out.H0 = SymMatrix(d);
  out.H0.set(0, 0, 1.0);

  const Eigen::Index l = q.A.rows();
  if (l == 0) {
    out.H1 = SymMatrix(d);
  } else {
    Eigen::MatrixXd m(l, d);  // (-b A)
    m.col(0) = -q.b;
    m.rightCols(n) = q.A;
    out.H1 = SymMatrix::symmetrized(m.transpose() * m);
    const double h1_norm = norm(out.H1);
    if (lambda_min(out.H1) < -1e-9 * h1_norm) {
      throw NumericalError("build_dnn: H1 failed its PSD check");
    }
  }

  out.cone = ConeStructure(n, q.bin_indices, q.comp_pairs);
  out.feasible_objective = q.feasible_objective;
  return out;
}

QopModel build_bqop(const Eigen::MatrixXd& F, bool maximize) {
  const int r = static_cast<int>(F.rows());
  if (r < 1 || F.cols() != r) {
    throw std::invalid_argument("build_bqop: F must be square, r >= 1");
  }
  if (!F.isApprox(F.transpose(), 0)) {
    throw std::invalid_argument("build_bqop: F must be symmetric");
  }
  QopModel q;
  q.n = 2 * r;
  q.C = Eigen::MatrixXd::Zero(q.n, q.n);
  q.C.topLeftCorner(r, r) = maximize ? (-F).eval() : F;
  q.c = Eigen::VectorXd::Zero(q.n);
  q.A = Eigen::MatrixXd::Zero(r, q.n);
  q.A.leftCols(r) = Eigen::MatrixXd::Identity(r, r);
  q.A.rightCols(r) = Eigen::MatrixXd::Identity(r, r);
  q.b = Eigen::VectorXd::Ones(r);
  q.bin_indices.resize(q.n);
  for (int i = 0; i < q.n; ++i) q.bin_indices[i] = i + 1;
  // v = 0, w = e is feasible with objective 0
  q.feasible_objective = 0.0;
  return q;
}

QopModel build_qap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int r = static_cast<int>(A.rows());
  if (r < 1 || A.cols() != r || B.rows() != r || B.cols() != r) {
    throw std::invalid_argument("build_qap: A and B must be square of equal size");
  }
  QopModel q;
  q.n = r * r;

  Eigen::MatrixXd kron(q.n, q.n);  // B (x) A
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      kron.block(i * r, j * r, r, r) = B(i, j) * A;
    }
  }
  q.C = 0.5 * (kron + kron.transpose());

  q.c = Eigen::VectorXd::Zero(q.n);

  // u = vec(W) column-major: u_{(j-1)r + i} = W(i,j).
  // Column sums first ((e_j' (x) e') u = 1), then row sums ((e' (x) e_j') u = 1).
  q.A = Eigen::MatrixXd::Zero(2 * r, q.n);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < r; ++i) {
      q.A(j, j * r + i) = 1.0;
      q.A(r + j, i * r + j) = 1.0;
    }
  }
  q.b = Eigen::VectorXd::Ones(2 * r);

  q.bin_indices.resize(q.n);
  for (int i = 0; i < q.n; ++i) q.bin_indices[i] = i + 1;

  // identity permutation is feasible
  q.feasible_objective = (A.array() * B.array()).sum();
  return q;
}

LagrangianCop lagrangian(const DnnCop& d, double lambda,
                         std::optional<double> rho) {
  if (lambda <= 0) {
    throw std::invalid_argument("lagrangian: lambda must be positive");
  }
  LagrangianCop out;
  out.lambda = lambda;
  out.Q = d.Q0 + lambda * d.H1;
  out.H = d.H0;
  if (rho) {
    if (*rho <= 0) throw std::invalid_argument("lagrangian: rho must be positive");
    out.rho = *rho;
  } else {
    // trace bound 1 + n: X00 = 1 and each binary-linked diagonal obeys
    // X_ii^2 = X_0i^2 <= X00 X_ii, i.e. X_ii <= 1
    if (static_cast<int>(d.cone.bin_indices().size()) != d.n) {
      throw std::invalid_argument(
          "lagrangian: automatic rho requires every variable to be binary; "
          "pass rho explicitly");
    }
    out.rho = 1.0 + d.n;
  }
  out.source = d;
  return out;
}

double qap_tight_rho(int r) {
  if (r < 1) throw std::invalid_argument("qap_tight_rho: r must be >= 1");
  return 1.0 + r;
}

}  // namespace dnnbound
