#include "dnnbound/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dnnbound {

BqopOptimum brute_bqop(const Eigen::MatrixXd& F) {
  const int r = static_cast<int>(F.rows());
  if (r < 1 || F.cols() != r) {
    throw std::invalid_argument("brute_bqop: F must be square");
  }
  if (r > 22) {
    throw std::invalid_argument("brute_bqop: refusing r > 22 (got " +
                                std::to_string(r) + ")");
  }

  // Gray-code walk with incremental row sums s_i = sum_j F(i,j) v_j:
  // flipping bit i changes the objective by sign*(2 s_i) + F(i,i).
  std::vector<int> v(r, 0);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(r);
  double obj = 0;
  BqopOptimum best;
  best.value = 0;
  best.argmin = v;

  const std::uint64_t count = 1ull << r;
  for (std::uint64_t code = 1; code < count; ++code) {
    const int i = std::countr_zero(code);  // bit flipped by the Gray walk
    const double sign = v[i] ? -1.0 : 1.0;
    obj += sign * 2.0 * s(i) + F(i, i);
    s += sign * F.col(i);
    v[i] ^= 1;
    if (obj < best.value) {
      best.value = obj;
      best.argmin = v;
    }
  }
  return best;
}

QapOptimum brute_qap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int r = static_cast<int>(A.rows());
  if (r < 1 || A.cols() != r || B.rows() != r || B.cols() != r) {
    throw std::invalid_argument("brute_qap: A and B must be square of equal size");
  }
  if (r > 9) {
    throw std::invalid_argument("brute_qap: refusing r > 9 (got " +
                                std::to_string(r) + ")");
  }
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  QapOptimum best;
  best.value = std::numeric_limits<double>::infinity();
  do {
    double obj = 0;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        obj += A(i, j) * B(perm[i], perm[j]);
      }
    }
    if (obj < best.value) {
      best.value = obj;
      best.perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

QopOptimum brute_qop_binary(const QopModel& q, double feas_tol) {
  q.validate();
  if (static_cast<int>(q.bin_indices.size()) != q.n) {
    throw std::invalid_argument("brute_qop_binary: all variables must be binary");
  }
  if (q.n > 24) {
    throw std::invalid_argument("brute_qop_binary: refusing n > 24");
  }
  QopOptimum best;
  best.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd u(q.n);
  const std::uint64_t count = 1ull << q.n;
  for (std::uint64_t code = 0; code < count; ++code) {
    for (int i = 0; i < q.n; ++i) u(i) = (code >> i) & 1 ? 1.0 : 0.0;
    if (q.A.rows() > 0 && (q.A * u - q.b).lpNorm<Eigen::Infinity>() > feas_tol) {
      continue;
    }
    bool comp_ok = true;
    for (auto [j, k] : q.comp_pairs) {
      if (u(j - 1) * u(k - 1) != 0.0) {
        comp_ok = false;
        break;
      }
    }
    if (!comp_ok) continue;
    const double obj = u.dot(q.C * u) + 2.0 * q.c.dot(u);
    if (obj < best.value) {
      best.value = obj;
      best.feasible = true;
      best.argmin.resize(q.n);
      for (int i = 0; i < q.n; ++i) best.argmin[i] = (code >> i) & 1;
    }
  }
  return best;
}

}  // namespace dnnbound
