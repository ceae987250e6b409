#include "dnnbound/sym_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#ifdef DNNBOUND_USE_LAPACKE
#include <lapacke.h>
#endif

namespace dnnbound {

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix r;
  r.m_ = Eigen::MatrixXd::Identity(dim, dim);
  return r;
}

SymMatrix SymMatrix::from_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("SymMatrix: matrix is not square");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (m(i, j) != m(j, i)) {
        throw std::invalid_argument("SymMatrix: matrix is not symmetric at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
  SymMatrix r;
  r.m_ = m;
  return r;
}

SymMatrix SymMatrix::symmetrized(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("SymMatrix: matrix is not square");
  }
  SymMatrix r;
  r.m_ = 0.5 * (m + m.transpose());
  return r;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (dim() != o.dim()) {
    throw std::invalid_argument("SymMatrix: dimension mismatch in +");
  }
  m_ += o.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (dim() != o.dim()) {
    throw std::invalid_argument("SymMatrix: dimension mismatch in -");
  }
  m_ -= o.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

double inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return (a.mat().array() * b.mat().array()).sum();
}

double norm(const SymMatrix& a) { return std::sqrt(inner(a, a)); }

EigDecomposition eig_sym(const SymMatrix& a) {
#ifdef DNNBOUND_USE_LAPACKE
  {
    const int d = a.dim();
    EigDecomposition r;
    r.vectors = a.mat();
    r.values.resize(d);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', d,
                                           r.vectors.data(), d,
                                           r.values.data());
    if (info == 0) return r;
    // divide-and-conquer failed; fall through to the Eigen solver
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.mat());
  if (es.info() != Eigen::Success) {
    throw NumericalError("eig_sym: eigensolver did not converge (dim=" +
                         std::to_string(a.dim()) + ")");
  }
  return EigDecomposition{es.eigenvalues(), es.eigenvectors()};
}

double lambda_min(const SymMatrix& a) {
#ifdef DNNBOUND_USE_LAPACKE
  {
    Eigen::MatrixXd tmp = a.mat();
    Eigen::VectorXd w(a.dim());
    const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', a.dim(),
                                          tmp.data(), a.dim(), w.data());
    if (info == 0) return w(0);
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.mat(),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("lambda_min: eigensolver did not converge (dim=" +
                         std::to_string(a.dim()) + ")");
  }
  return es.eigenvalues()(0);
}

}  // namespace dnnbound
