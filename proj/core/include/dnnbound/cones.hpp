#pragma once

#include <utility>
#include <vector>

#include "dnnbound/sym_matrix.hpp"

namespace dnnbound {

/// Binary-linking / complementarity pattern that defines the polyhedral cone
/// K2 inside S^{1+n}:
///
///   K2 = { X >= 0 entrywise : X(0,i) = X(i,0) = X(i,i)  for i in bin_indices,
///                             X(j,k) = X(k,j) = 0       for (j,k) in comp_pairs }.
///
/// Indices are 1-based into the variable block (row/column 0 is the
/// homogenization row). Validated at construction.
class ConeStructure {
 public:
  ConeStructure() = default;
  ConeStructure(int n, std::vector<int> bin_indices,
                std::vector<std::pair<int, int>> comp_pairs);

  int n() const { return n_; }
  int dim() const { return n_ + 1; }
  const std::vector<int>& bin_indices() const { return bin_; }
  const std::vector<std::pair<int, int>>& comp_pairs() const { return comp_; }

 private:
  int n_ = 0;
  std::vector<int> bin_;                     // sorted, unique
  std::vector<std::pair<int, int>> comp_;    // sorted, unique, j < k
};

/// Metric projection onto the PSD cone K1: V diag(max(lambda,0)) V^T.
SymMatrix project_psd(const SymMatrix& a);

/// Orthogonal split a = pos - neg with pos, neg PSD and <pos, neg> = 0.
/// pos = project_psd(a); one side is assembled from the eigendecomposition,
/// the other derived by subtraction, so pos - neg == a up to roundoff.
struct PsdSplit {
  SymMatrix pos;
  SymMatrix neg;
};
PsdSplit psd_split(const SymMatrix& a);

/// Metric projection onto K2. Closed form by separability: complementarity
/// entries are zeroed, each binary-linked triple collapses to
/// max(0, (A(0,i) + A(i,0) + A(i,i))/3), every other entry clamps at 0.
SymMatrix project_k2(const SymMatrix& a, const ConeStructure& s);

/// Projections onto the dual cones via the Moreau decomposition
/// Pi*(A) = A + Pi(-A). K1 is self-dual, so project_dual_psd == project_psd.
SymMatrix project_dual_psd(const SymMatrix& a);
SymMatrix project_dual_k2(const SymMatrix& a, const ConeStructure& s);

/// Dykstra's alternating projections onto K1 and K2; converges to the metric
/// projection onto K1 cap K2. Test/verification oracle only.
struct DykstraResult {
  SymMatrix point;
  bool converged = false;
  int iters = 0;
};
DykstraResult project_intersection_dykstra(const SymMatrix& a,
                                           const ConeStructure& s,
                                           double tol = 1e-9,
                                           int max_iter = 200000);

}  // namespace dnnbound
