#include "dnnbound/cones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dnnbound {

ConeStructure::ConeStructure(int n, std::vector<int> bin_indices,
                             std::vector<std::pair<int, int>> comp_pairs)
    : n_(n), bin_(std::move(bin_indices)), comp_(std::move(comp_pairs)) {
  if (n_ < 0) throw std::invalid_argument("ConeStructure: n < 0");
  std::sort(bin_.begin(), bin_.end());
  bin_.erase(std::unique(bin_.begin(), bin_.end()), bin_.end());
  for (int i : bin_) {
    if (i < 1 || i > n_) {
      throw std::invalid_argument("ConeStructure: binary index " +
                                  std::to_string(i) + " out of range [1," +
                                  std::to_string(n_) + "]");
    }
  }
  std::sort(comp_.begin(), comp_.end());
  comp_.erase(std::unique(comp_.begin(), comp_.end()), comp_.end());
  for (auto [j, k] : comp_) {
    if (j < 1 || k > n_ || j >= k) {
      throw std::invalid_argument("ConeStructure: complementarity pair (" +
                                  std::to_string(j) + "," + std::to_string(k) +
                                  ") must satisfy 1 <= j < k <= n");
    }
    // a zero-forced entry may not sit inside a binary-linked triple
    // {(0,i),(i,0),(i,i)}; impossible for 1 <= j < k, but guarded
    for (int i : bin_) {
      const bool in_triple = (j == 0 && k == i) || (j == i && k == i);
      if (in_triple) {
        throw std::invalid_argument(
            "ConeStructure: complementarity pair (" + std::to_string(j) + "," +
            std::to_string(k) + ") collides with binary linking of index " +
            std::to_string(i));
      }
    }
  }
}

SymMatrix project_psd(const SymMatrix& a) { return psd_split(a).pos; }

PsdSplit psd_split(const SymMatrix& a) {
  const EigDecomposition ed = eig_sym(a);
  const int d = a.dim();
  int num_neg = 0;
  while (num_neg < d && ed.values(num_neg) < 0.0) ++num_neg;
  const int num_pos = d - num_neg;

  PsdSplit out;
  // assemble the smaller side, derive the other by subtraction
  if (num_neg <= num_pos) {
    if (num_neg == 0) {
      out.neg = SymMatrix(d);
      out.pos = a;
      return out;
    }
    const Eigen::MatrixXd vneg = ed.vectors.leftCols(num_neg);
    const Eigen::VectorXd wneg = -ed.values.head(num_neg);
    out.neg = SymMatrix::symmetrized(vneg * wneg.asDiagonal() * vneg.transpose());
    out.pos = a + out.neg;
  } else {
    if (num_pos == 0) {
      out.pos = SymMatrix(d);
      out.neg = -a;
      return out;
    }
    const Eigen::MatrixXd vpos = ed.vectors.rightCols(num_pos);
    const Eigen::VectorXd wpos = ed.values.tail(num_pos);
    out.pos = SymMatrix::symmetrized(vpos * wpos.asDiagonal() * vpos.transpose());
    out.neg = out.pos - a;
  }
  return out;
}

SymMatrix project_k2(const SymMatrix& a, const ConeStructure& s) {
  if (a.dim() != s.dim()) {
    throw std::invalid_argument("project_k2: matrix dim " +
                                std::to_string(a.dim()) +
                                " does not match cone dim " +
                                std::to_string(s.dim()));
  }
  const int d = a.dim();
  SymMatrix r(d);
  // entrywise clamp; symmetric storage already equalizes (p,q) and (q,p)
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) {
      r.set(i, j, std::max(a(i, j), 0.0));
    }
  }
  for (int i : s.bin_indices()) {
    const double t = std::max(0.0, (a(0, i) + a(i, 0) + a(i, i)) / 3.0);
    r.set(0, i, t);
    r.set(i, i, t);
  }
  for (auto [j, k] : s.comp_pairs()) {
    r.set(j, k, 0.0);
  }
  return r;
}

SymMatrix project_dual_psd(const SymMatrix& a) { return project_psd(a); }

SymMatrix project_dual_k2(const SymMatrix& a, const ConeStructure& s) {
  return a + project_k2(-a, s);
}

DykstraResult project_intersection_dykstra(const SymMatrix& a,
                                           const ConeStructure& s, double tol,
                                           int max_iter) {
  if (tol <= 0) throw std::invalid_argument("dykstra: tol must be positive");
  const int d = a.dim();
  SymMatrix x = a;
  SymMatrix p(d), q(d);
  DykstraResult out;
  for (int it = 1; it <= max_iter; ++it) {
    const SymMatrix y = project_psd(x + p);
    p = (x + p) - y;
    const SymMatrix x_next = project_k2(y + q, s);
    q = (y + q) - x_next;
    const double change = norm(x_next - x);
    x = x_next;
    if (change <= tol) {
      out.point = x;
      out.converged = true;
      out.iters = it;
      return out;
    }
  }
  out.point = x;
  out.converged = false;
  out.iters = max_iter;
  return out;
}

}  // namespace dnnbound
