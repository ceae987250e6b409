#pragma once

#include <Eigen/Dense>

namespace dnnbound {

/// Element of the symmetric-matrix space S^d with the Frobenius inner
/// product. Symmetry is enforced by construction: every write touches both
/// (i,j) and (j,i), and the dense factories either verify or symmetrize.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}

  static SymMatrix identity(int dim);
  /// Adopts `m`, requiring bit-exact symmetry.
  static SymMatrix from_symmetric(const Eigen::MatrixXd& m);
  /// Adopts (m + m^T)/2.
  static SymMatrix symmetrized(const Eigen::MatrixXd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(int i, int j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }

  const Eigen::MatrixXd& mat() const { return m_; }

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }

 private:
  Eigen::MatrixXd m_;
};

/// Frobenius inner product <A, B>. Throws on dimension mismatch.
double inner(const SymMatrix& a, const SymMatrix& b);

/// Frobenius norm sqrt(<A, A>).
double norm(const SymMatrix& a);

struct EigDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, A = V diag(values) V^T
};

/// Full symmetric eigendecomposition. Throws NumericalError if the
/// iterative solver fails to converge.
EigDecomposition eig_sym(const SymMatrix& a);

/// Smallest eigenvalue of a symmetric matrix.
double lambda_min(const SymMatrix& a);

/// Raised when an iterative numerical kernel (eigensolver, oracle
/// iteration) fails to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dnnbound
