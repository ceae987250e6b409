#pragma once

#include <vector>

#include "dnnbound/model.hpp"

namespace dnnbound {

struct ApgParams {
  double tol = 1e-12;      // KKT residual threshold (first stopping criterion)
  double eps = 1e-12;      // ||X|| threshold below which g(y) counts as zero
  int max_iter = 20000;
  bool restart = true;     // function-value adaptive restart of the momentum
  int window = 100;        // lookback of the z^p stability test
  double var_tol = 1e-8;   // relative std-dev threshold on the z^p window
  double slope_tol = 1e-8; // relative slope threshold on the z^p window
  // stagnation exit: give up (NotConverged) when the objective improves by
  // less than stall_rtol relative over stall_window iterations while the
  // residual still exceeds tol; the outer loops handle the fallback
  int stall_window = 300;
  double stall_rtol = 1e-12;

  void validate() const;
};

enum class ApgStatus { Converged, ZeroX, NotConverged };

/// One evaluation of g(y): the optimal splitting G(y) = Y1 + Y2 - X with
/// Y1 in K1*, Y2 in K2*, X in K1 (exactly, by construction) and g = ||X||.
struct ProjectionResult {
  SymMatrix X;
  SymMatrix Y1;
  SymMatrix Y2;
  double g = 0;
  double kappa = 0;
  int iters = 0;
  ApgStatus status = ApgStatus::NotConverged;
};

/// Outer-loop context that activates the second (z^p stability) stopping
/// criterion: the damped secant step the caller would take next.
struct SecantContext {
  double y_prev = 0;
  double g_prev = 0;
  double alpha = 1.0;
};

struct ApgTraceRecord {
  int iter = 0;
  double f = 0;      // 0.5 ||X||^2 of the per-step monitor triple
  double kappa = 0;  // complementarity slack of the monitor triple
  double z = 0;      // would-be next secant iterate (NaN without context)
  bool restart = false;  // momentum was reset and the candidate discarded
};

/// Evaluate g(y) for G(y) = Q - H y by the accelerated proximal gradient
/// method on the reduced problem min_{Y2 in K2*} 0.5 dist(G - Y2, K1)^2,
/// unit step, Nesterov momentum, adaptive restart.
///
/// Status ZeroX takes precedence over Converged: ||X|| < eps certifies
/// y <= y* regardless of the residual.
ProjectionResult eval_g(const LagrangianCop& cop, double y,
                        const ApgParams& params,
                        const SymMatrix* warm_y2 = nullptr,
                        const SecantContext* secant_ctx = nullptr,
                        std::vector<ApgTraceRecord>* trace = nullptr);

/// Normalized KKT residual: the maximum of the two complementarity terms
/// <X,Yi>/(1+||X||+||Yi||) and the two cone-infeasibility terms
/// ||Pi_i*(-X)||/(1+||X||).
double kappa(const SymMatrix& X, const SymMatrix& Y1, const SymMatrix& Y2,
             const ConeStructure& s);

/// Second stopping criterion: true iff the trailing window of z^p values has
/// sample standard deviation <= var_tol*(1+|z|) and least-squares slope
/// magnitude <= slope_tol*(1+|z|).
bool secant_stable(const std::vector<double>& z_history, int window,
                   double var_tol, double slope_tol);

}  // namespace dnnbound
