#include "dnnbound/bracket.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnnbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct ProbeOut {
  double g = 0;
  double gprime = kNan;
  double lb_cand = -kInf;
  bool zero_x = false;
  bool converged = true;   // terminated before the iteration cap
  bool step3_ok = true;    // met the two stopping criteria (always, analytic)
  int inner_iters = 0;
};

class GEvaluator {
 public:
  virtual ~GEvaluator() = default;
  virtual ProbeOut probe(double y, const SecantContext* ctx) = 0;
  virtual std::optional<double> start_hint() const = 0;
};

class CopEvaluator final : public GEvaluator {
 public:
  CopEvaluator(const LagrangianCop& cop, const ApgParams& apg)
      : cop_(cop), apg_(apg) {}

  ProbeOut probe(double y, const SecantContext* ctx) override {
    const ProjectionResult r =
        eval_g(cop_, y, apg_, warm_ ? &*warm_ : nullptr, ctx);
    warm_ = r.Y2;
    ProbeOut o;
    o.g = r.g;
    o.gprime = r.g > 0 ? inner(cop_.H, r.X) / r.g : kNan;
    o.lb_cand = valid_lb(y, r.Y2, cop_);
    o.zero_x = r.status == ApgStatus::ZeroX;
    o.converged = r.status != ApgStatus::NotConverged;
    o.step3_ok = r.status == ApgStatus::Converged;
    o.inner_iters = r.iters;
    return o;
  }

  std::optional<double> start_hint() const override {
    return cop_.source.feasible_objective;
  }

 private:
  const LagrangianCop& cop_;
  ApgParams apg_;
  std::optional<SymMatrix> warm_;
};

class AnalyticEvaluator final : public GEvaluator {
 public:
  AnalyticEvaluator(const AnalyticG& f, double eps) : f_(f), eps_(eps) {}

  ProbeOut probe(double y, const SecantContext*) override {
    ProbeOut o;
    o.g = f_.g(y);
    o.gprime = f_.dg ? f_.dg(y) : kNan;
    o.lb_cand = y - f_.lb_gain * o.g;
    o.zero_x = o.g < eps_;
    o.converged = true;
    o.inner_iters = 1;
    return o;
  }

  std::optional<double> start_hint() const override { return std::nullopt; }

 private:
  const AnalyticG& f_;
  double eps_;
};

class Driver {
 public:
  Driver(GEvaluator& ev, const BracketParams& params)
      : ev_(ev), params_(params), start_(std::chrono::steady_clock::now()) {}

  ProbeOut record_probe(double y, const SecantContext* ctx, ProbeMode mode) {
    ProbeOut o = ev_.probe(y, ctx);
    lbt_ = std::max(lbt_, o.lb_cand);
    if (o.zero_x) {
      lb_num_ = std::max(lb_num_, y);
    } else {
      ub_num_ = std::min(ub_num_, y);
    }
    trace_.push_back({static_cast<int>(trace_.size()), y, o.g, lbt_, o.lb_cand,
                      o.inner_iters, mode, o.zero_x, o.converged});
    total_inner_ += o.inner_iters;
    return o;
  }

  // y0 with g(y0) > 0, doubling upward from the starting guess; the last
  // (positive-g) probe doubles as the k = 0 evaluation of the caller
  std::pair<double, ProbeOut> positive_start(double y0) {
    for (int tries = 0; tries <= 60; ++tries) {
      ProbeOut o = record_probe(y0, nullptr, ProbeMode::Bisection);
      if (!o.zero_x) return {y0, o};
      y0 += std::max(1.0, std::abs(y0));
    }
    throw NumericalError(
        "bracket: no start with positive g within 60 upward doublings");
  }

  bool time_up() const {
    if (!params_.time_limit_sec) return false;
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start_);
    return elapsed.count() > *params_.time_limit_sec;
  }

  double lbt() const { return lbt_; }
  double lb_num() const { return lb_num_; }
  double ub_num() const { return ub_num_; }
  void seed_bracket(double lb, double ub) {
    lb_num_ = lb;
    ub_num_ = ub;
  }
  // bisection floor: the certified bound backs the numerical one up when no
  // zero-g probe has been seen yet
  double floor_lb() const { return std::max(lb_num_, lbt_); }

  BracketResult finish(double y_final, SolveStatus status) {
    BracketResult r;
    r.lb_valid = lbt_;
    r.y_final = y_final;
    r.interval_lb = lb_num_;
    r.interval_ub = ub_num_;
    r.trace = std::move(trace_);
    r.total_apg_iters = total_inner_;
    r.outer_iters = static_cast<int>(r.trace.size());
    r.wall_time_sec = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    r.status = status;
    return r;
  }

 private:
  GEvaluator& ev_;
  const BracketParams& params_;
  std::chrono::steady_clock::time_point start_;
  double lbt_ = -kInf;
  double lb_num_ = -kInf;
  double ub_num_ = kInf;
  std::vector<TraceRecord> trace_;
  long total_inner_ = 0;
};

double resolve_y0(const GEvaluator& ev, const BracketParams& params) {
  if (params.y0) return *params.y0;
  if (auto hint = ev.start_hint()) return *hint;
  throw std::invalid_argument(
      "bracket: no starting point; set y0 or use a model with a feasible "
      "objective hint");
}

BracketResult secant_run(GEvaluator& ev, const BracketParams& params) {
  Driver d(ev, params);

  auto [y_cur, out0] = d.positive_start(resolve_y0(ev, params));
  const double y1 =
      params.y1 ? *params.y1 : y_cur - std::max(1.0, std::abs(y_cur)) * 1e-3;
  if (y1 >= y_cur) {
    throw std::invalid_argument("secant: y1 must lie strictly below y0");
  }

  double y_prev = y_cur;
  double g_prev = out0.g;
  y_cur = y1;
  ProbeMode mode = ProbeMode::Secant;
  double y_final = y_cur;
  SolveStatus status = SolveStatus::MaxOuterReached;

  for (int k = 1; k <= params.max_outer; ++k) {
    if (d.time_up()) {
      status = SolveStatus::TimeLimit;
      y_final = y_cur;
      break;
    }
    const SecantContext ctx{y_prev, g_prev, params.alpha};
    const ProbeOut o = d.record_probe(y_cur, &ctx, mode);
    mode = ProbeMode::Secant;

    if (!o.step3_ok) {
      // the inner solve ended without meeting both stopping criteria
      // (iteration cap, stagnation, or an early zero-g exit): bisect
      // temporarily instead of taking an unreliable secant step
      y_final = y_cur = 0.5 * (d.floor_lb() + d.ub_num());
      if (d.ub_num() - d.floor_lb() < params.delta) {
        status = SolveStatus::Converged;
        break;
      }
      mode = ProbeMode::Bisection;
      continue;
    }

    if (o.zero_x || y_cur - d.lbt() < params.delta) {
      status = SolveStatus::Converged;
      y_final = y_cur;
      break;
    }

    double y_next;
    ProbeMode next_mode = ProbeMode::Secant;
    const double denom = o.g - g_prev;
    if (!(std::abs(denom) > 1e-15 * (1.0 + o.g))) {
      y_next = 0.5 * (d.floor_lb() + d.ub_num());
      next_mode = ProbeMode::Bisection;
    } else {
      y_next = secant_step(y_cur, y_prev, o.g, g_prev, params.alpha);
      if (!(y_next < y_cur)) {
        y_next = 0.5 * (d.floor_lb() + d.ub_num());
        next_mode = ProbeMode::Bisection;
      } else if (std::isfinite(d.lb_num()) && y_next <= d.lb_num()) {
        y_next = 0.5 * (d.lb_num() + y_cur);
        next_mode = ProbeMode::Bisection;
      } else if (y_next < d.lbt() - params.delta) {
        y_next = 0.5 * (d.floor_lb() + d.ub_num());
        next_mode = ProbeMode::Bisection;
      }
    }

    y_prev = y_cur;
    g_prev = o.g;
    y_cur = y_next;
    mode = next_mode;
    y_final = y_cur;
  }

  return d.finish(y_final, status);
}

BracketResult newton_run(GEvaluator& ev, const BracketParams& params) {
  Driver d(ev, params);

  auto [y_cur, first] = d.positive_start(resolve_y0(ev, params));
  std::optional<ProbeOut> pending = first;
  ProbeMode mode = ProbeMode::Newton;
  double y_final = y_cur;
  SolveStatus status = SolveStatus::MaxOuterReached;

  for (int k = 0; k <= params.max_outer; ++k) {
    if (d.time_up()) {
      status = SolveStatus::TimeLimit;
      y_final = y_cur;
      break;
    }
    ProbeOut o;
    if (pending) {
      o = *pending;
      pending.reset();
    } else {
      o = d.record_probe(y_cur, nullptr, mode);
    }
    mode = ProbeMode::Newton;

    if (o.zero_x) {
      if (y_cur < d.lbt() - params.delta) {
        // the Newton step overshot far past the certified bound; recover by
        // bisecting the stored bracket
        y_final = y_cur = 0.5 * (d.floor_lb() + d.ub_num());
        if (d.ub_num() - d.floor_lb() < params.delta) {
          status = SolveStatus::Converged;
          break;
        }
        mode = ProbeMode::Bisection;
        continue;
      }
      status = SolveStatus::Converged;
      y_final = y_cur;
      break;
    }

    if (y_cur - d.lbt() < params.delta) {
      status = SolveStatus::Converged;
      y_final = y_cur;
      break;
    }

    double y_next;
    ProbeMode next_mode = ProbeMode::Newton;
    if (!std::isfinite(o.gprime) || o.gprime <= 0) {
      y_next = 0.5 * (d.floor_lb() + d.ub_num());
      next_mode = ProbeMode::Bisection;
    } else {
      y_next = y_cur - o.g / o.gprime;
      if (!(y_next < y_cur)) {
        y_next = 0.5 * (d.floor_lb() + d.ub_num());
        next_mode = ProbeMode::Bisection;
      } else if (std::isfinite(d.lb_num()) && y_next <= d.lb_num()) {
        y_next = 0.5 * (d.lb_num() + y_cur);
        next_mode = ProbeMode::Bisection;
      }
    }
    y_cur = y_next;
    mode = next_mode;
    y_final = y_cur;
  }

  return d.finish(y_final, status);
}

BracketResult bp_run(GEvaluator& ev, const BracketParams& params, double lb0,
                     double ub0) {
  if (!(lb0 < ub0) || !std::isfinite(ub0)) {
    throw std::invalid_argument("bp: need lb0 < ub0 with finite ub0");
  }
  Driver d(ev, params);
  double lb = lb0;
  double ub = ub0;
  d.seed_bracket(std::isfinite(lb0) ? lb0 : -kInf, ub0);

  if (!std::isfinite(lb)) {
    double step = std::max(1.0, std::abs(ub0));
    bool found = false;
    for (int i = 0; i < 60; ++i) {
      const double y = ub0 - step;
      const ProbeOut o = d.record_probe(y, nullptr, ProbeMode::Bisection);
      if (o.zero_x) {
        lb = y;
        found = true;
        break;
      }
      ub = std::min(ub, y);
      step *= 2.0;
    }
    if (!found) {
      throw NumericalError(
          "bp: no bracket floor within 60 downward doublings");
    }
  }

  SolveStatus status = SolveStatus::Converged;
  int k = 0;
  while (ub - lb >= params.delta) {
    if (++k > params.max_outer) {
      status = SolveStatus::MaxOuterReached;
      break;
    }
    if (d.time_up()) {
      status = SolveStatus::TimeLimit;
      break;
    }
    const double y = 0.5 * (lb + ub);
    const ProbeOut o = d.record_probe(y, nullptr, ProbeMode::Bisection);
    if (o.zero_x) {
      lb = y;
    } else {
      ub = y;
    }
  }

  BracketResult r = d.finish(ub, status);
  r.interval_lb = lb;
  r.interval_ub = ub;
  return r;
}

}  // namespace

void BracketParams::validate() const {
  if (delta <= 0) throw std::invalid_argument("BracketParams: delta must be positive");
  if (eps <= 0) throw std::invalid_argument("BracketParams: eps must be positive");
  if (!(alpha > 0 && alpha <= 1)) {
    throw std::invalid_argument("BracketParams: alpha must lie in (0,1]");
  }
  if (max_outer < 1) throw std::invalid_argument("BracketParams: max_outer must be >= 1");
  apg.validate();
}

double valid_lb(double y, const SymMatrix& y2, const LagrangianCop& cop) {
  const ConeStructure& cone = cop.source.cone;
  const double resid = norm(project_dual_k2(y2, cone) - y2);
  if (resid > 1e-9 * (1.0 + norm(y2))) {
    throw std::invalid_argument("valid_lb: Y2 is not in the dual cone K2*");
  }
  const SymMatrix shifted = cop.Q - y * cop.H - y2;
  const double t = std::min(0.0, lambda_min(shifted));
  return y + cop.rho * t;
}

double secant_step(double y_k, double y_km1, double g_k, double g_km1,
                   double alpha) {
  return y_k - alpha * g_k * (y_k - y_km1) / (g_k - g_km1);
}

namespace {

// the bracket-level eps is the single epsilon of the method; push it into
// the inner solver so both zero tests agree
ApgParams inner_params(const BracketParams& params) {
  ApgParams apg = params.apg;
  apg.eps = params.eps;
  return apg;
}

}  // namespace

BracketResult bp_solve(const LagrangianCop& cop, const BracketParams& params,
                       double lb0, double ub0) {
  params.validate();
  CopEvaluator ev(cop, inner_params(params));
  return bp_run(ev, params, lb0, ub0);
}

BracketResult newton_solve(const LagrangianCop& cop,
                           const BracketParams& params) {
  params.validate();
  CopEvaluator ev(cop, inner_params(params));
  return newton_run(ev, params);
}

BracketResult secant_solve(const LagrangianCop& cop,
                           const BracketParams& params) {
  params.validate();
  CopEvaluator ev(cop, inner_params(params));
  return secant_run(ev, params);
}

BracketResult solve_1d(const AnalyticG& f, Method method,
                       const BracketParams& params, std::optional<double> lb0,
                       std::optional<double> ub0) {
  params.validate();
  if (!f.g) throw std::invalid_argument("solve_1d: evaluator has no g");
  AnalyticEvaluator ev(f, params.eps);
  switch (method) {
    case Method::Bp: {
      const double ub = ub0 ? *ub0
                            : (params.y0 ? *params.y0
                                         : throw std::invalid_argument(
                                               "solve_1d: bp needs ub0 or y0"));
      return bp_run(ev, params, lb0.value_or(-kInf), ub);
    }
    case Method::Newton:
      if (!f.dg) {
        throw std::invalid_argument("solve_1d: newton needs a derivative");
      }
      return newton_run(ev, params);
    case Method::Secant:
      return secant_run(ev, params);
  }
  throw std::logic_error("solve_1d: unknown method");
}

}  // namespace dnnbound
