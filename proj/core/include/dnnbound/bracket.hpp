#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dnnbound/apg.hpp"
#include "dnnbound/model.hpp"

namespace dnnbound {

enum class Method { Bp, Newton, Secant };

struct BracketParams {
  double delta = 1e-4;   // target width y^k - lb
  double eps = 1e-12;    // duplicated into ApgParams.eps
  double alpha = 0.9;    // secant damping, constant schedule
  std::optional<double> y0;  // starting point; default: feasible objective
  std::optional<double> y1;  // second secant point; default y0 - max(1,|y0|)*1e-3
  int max_outer = 60;
  ApgParams apg;
  std::optional<double> time_limit_sec;

  void validate() const;
};

enum class ProbeMode { Secant, Bisection, Newton };

enum class SolveStatus { Converged, MaxOuterReached, TimeLimit };

struct TraceRecord {
  int k = 0;
  double y = 0;
  double g = 0;
  double lb_certified = 0;  // running certified lower bound after this probe
  double lb_probe = 0;      // the valid-lower-bound candidate of this probe
  int apg_iters = 0;
  ProbeMode mode = ProbeMode::Secant;
  bool zero_x = false;
  bool inner_converged = true;
};

struct BracketResult {
  double lb_valid = 0;  // certified lower bound for y* (and the QOP optimum)
  double y_final = 0;
  double interval_lb = 0;  // numerical bracket; not certified
  double interval_ub = 0;
  std::vector<TraceRecord> trace;
  long total_apg_iters = 0;
  int outer_iters = 0;
  double wall_time_sec = 0;
  SolveStatus status = SolveStatus::Converged;
};

/// Certified lower bound y + rho * min(0, lambda_min(G(y) - Y2)) <= y*,
/// valid for any Y2 in K2*. The membership of Y2 is asserted through the
/// projection fixed-point residual (tolerance 1e-9 relative).
double valid_lb(double y, const SymMatrix& y2, const LagrangianCop& cop);

/// Undamped-to-damped secant update; exposed for unit testing.
double secant_step(double y_k, double y_km1, double g_k, double g_km1,
                   double alpha);

/// Bisection-projection. lb0 may be -infinity: the bracket floor is then
/// found by doubling downward from ub0 until a probe reports zero g.
BracketResult bp_solve(const LagrangianCop& cop, const BracketParams& params,
                       double lb0, double ub0);

/// Newton-bracketing with the derivative estimate <H, X>/g. Reference
/// implementation: an inaccurate derivative can overshoot, in which case the
/// loop falls back to bisection on the stored bracket.
BracketResult newton_solve(const LagrangianCop& cop, const BracketParams& params);

/// Damped secant-bracketing with temporary bisection fallback when the inner
/// solver fails its two-part stopping criterion.
BracketResult secant_solve(const LagrangianCop& cop, const BracketParams& params);

/// Analytic scaffold: the same outer control flow driven by a closed-form g.
/// The certified-bound analog of a probe is y - lb_gain * g(y), valid when
/// g is convex and grows with slope at least 1/lb_gain right of its largest
/// zero.
struct AnalyticG {
  std::function<double(double)> g;
  std::function<double(double)> dg;  // required by Method::Newton only
  double lb_gain = 1.0;
};

BracketResult solve_1d(const AnalyticG& f, Method method,
                       const BracketParams& params,
                       std::optional<double> lb0 = std::nullopt,
                       std::optional<double> ub0 = std::nullopt);

}  // namespace dnnbound
