#include "dnnbound/apg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnnbound {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double dist_k2(const SymMatrix& x, const ConeStructure& s) {
  return norm(project_k2(x, s) - x);
}

double secant_candidate(double y, const SecantContext& ctx, double g_now) {
  const double denom = g_now - ctx.g_prev;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return y - ctx.alpha * g_now * (y - ctx.y_prev) / denom;
}

}  // namespace

void ApgParams::validate() const {
  if (tol <= 0 || eps <= 0 || var_tol <= 0 || slope_tol <= 0 ||
      stall_rtol <= 0) {
    throw std::invalid_argument("ApgParams: tolerances must be positive");
  }
  if (max_iter < 1) throw std::invalid_argument("ApgParams: max_iter must be >= 1");
  if (window < 2) throw std::invalid_argument("ApgParams: window must be >= 2");
  if (stall_window < 2) {
    throw std::invalid_argument("ApgParams: stall_window must be >= 2");
  }
}

double kappa(const SymMatrix& x, const SymMatrix& y1, const SymMatrix& y2,
             const ConeStructure& s) {
  if (x.dim() != y1.dim() || x.dim() != y2.dim()) {
    throw std::invalid_argument("kappa: dimension mismatch");
  }
  const double xn = norm(x);
  const double c1 = inner(x, y1) / (1.0 + xn + norm(y1));
  const double c2 = inner(x, y2) / (1.0 + xn + norm(y2));
  const double c3 = norm(project_dual_psd(-x)) / (1.0 + xn);
  const double c4 = dist_k2(x, s) / (1.0 + xn);
  return std::max({c1, c2, c3, c4});
}

bool secant_stable(const std::vector<double>& z_history, int window,
                   double var_tol, double slope_tol) {
  const int len = static_cast<int>(z_history.size());
  if (window < 2 || len < 2) return false;
  const int m = std::min(window, len - 1);
  if (m < 2) return false;

  const double* z = z_history.data() + (len - m);
  const double z_last = z[m - 1];
  if (!std::isfinite(z_last)) return false;

  double mean = 0;
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(z[i])) return false;
    mean += z[i];
  }
  mean /= m;

  double var = 0, cov = 0;
  const double i_mean = 0.5 * (m - 1);
  double i_var = 0;
  for (int i = 0; i < m; ++i) {
    const double dz = z[i] - mean;
    const double di = i - i_mean;
    var += dz * dz;
    cov += di * dz;
    i_var += di * di;
  }
  const double sd = std::sqrt(var / (m - 1));
  const double slope = cov / i_var;
  const double scale = 1.0 + std::abs(z_last);
  return sd <= var_tol * scale && std::abs(slope) <= slope_tol * scale;
}

// The iteration keeps a single eigendecomposition per step, taken at the
// momentum point to form the gradient; cheap per-step monitors come from the
// Moreau byproducts of the K2* projection. The pair
//   Y2_next = Pi_{K2*}(M - Xg),  S = Pi_{K2}(Xg - M)
// satisfies Y2_next - S = M - Xg, so (X,Y1,Y2) = (S, Pi_1(G-M), Y2_next)
// fulfils G = Y1 + Y2 - X exactly with <X,Y2> = 0 and X in K2; ||S|| tracks
// g. The spec-shape exit triple (X in K1 exactly) is rebuilt from an
// eigendecomposition at the accepted iterate before returning.
ProjectionResult eval_g(const LagrangianCop& cop, double y,
                        const ApgParams& params, const SymMatrix* warm_y2,
                        const SecantContext* secant_ctx,
                        std::vector<ApgTraceRecord>* trace) {
  params.validate();
  const ConeStructure& cone = cop.source.cone;
  const SymMatrix g_mat = cop.Q - y * cop.H;

  SymMatrix y2_cur =
      warm_y2 ? project_dual_k2(*warm_y2, cone) : SymMatrix(g_mat.dim());

  ProjectionResult out;
  auto finish = [&](ApgStatus status, int iters, bool full_kappa) {
    const PsdSplit sp = psd_split(g_mat - y2_cur);
    out.X = sp.neg;
    out.Y1 = sp.pos;
    out.Y2 = y2_cur;
    out.g = norm(out.X);
    out.kappa = full_kappa ? kappa(out.X, out.Y1, out.Y2, cone) : 0.0;
    out.iters = iters;
    out.status = status;
    return out;
  };

  double f_cur;
  {
    const PsdSplit sp0 = psd_split(g_mat - y2_cur);
    const double g0 = norm(sp0.neg);
    if (g0 < params.eps) return finish(ApgStatus::ZeroX, 0, false);
    f_cur = 0.5 * g0 * g0;
  }

  SymMatrix y2_prev = y2_cur;
  double t_momentum = 1.0;
  std::vector<double> z_history;
  if (secant_ctx) z_history.reserve(std::min(params.max_iter, 4096));
  std::vector<double> f_history;
  f_history.reserve(std::min(params.max_iter, 4096));
  int last_exit_check = -1000000;

  for (int p = 1; p <= params.max_iter; ++p) {
    const double t_next =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
    const double beta = (t_momentum - 1.0) / t_next;
    SymMatrix momentum = y2_cur;
    if (beta > 0) momentum += beta * (y2_cur - y2_prev);

    // gradient of 0.5 dist(G - Y2, K1)^2 at the momentum point
    const PsdSplit grad_split = psd_split(g_mat - momentum);
    const SymMatrix step_point = momentum - grad_split.neg;
    const SymMatrix candidate = project_dual_k2(step_point, cone);
    const SymMatrix s_resid = candidate - step_point;  // in K2, tracks X
    const double s_norm = norm(s_resid);
    const double f_cand = 0.5 * s_norm * s_norm;

    if (params.restart && f_cand > f_cur && beta > 0) {
      // momentum overshot: discard the candidate, fall back to a plain
      // gradient step from the last accepted iterate
      t_momentum = 1.0;
      y2_prev = y2_cur;
      if (trace) trace->push_back({p, f_cur, kNan, kNan, true});
      continue;
    }

    y2_prev = y2_cur;
    y2_cur = candidate;
    f_cur = f_cand;
    t_momentum = t_next;

    double z = kNan;
    if (secant_ctx) {
      z = secant_candidate(y, *secant_ctx, s_norm);
      z_history.push_back(z);
    }
    // the complementarity slack <X, Y1> of the monitor triple; its other
    // residual terms vanish by construction
    const double kap_cheap =
        inner(s_resid, grad_split.pos) /
        (1.0 + s_norm + norm(grad_split.pos));
    if (trace) trace->push_back({p, f_cur, kap_cheap, z, false});

    const bool may_check = p - last_exit_check >= 10;

    if (s_norm < params.eps && may_check) {
      last_exit_check = p;
      const PsdSplit sp = psd_split(g_mat - y2_cur);
      if (norm(sp.neg) < params.eps) {
        out.X = sp.neg;
        out.Y1 = sp.pos;
        out.Y2 = y2_cur;
        out.g = norm(out.X);
        out.kappa = 0.0;
        out.iters = p;
        out.status = ApgStatus::ZeroX;
        return out;
      }
    }

    if (kap_cheap < params.tol && may_check) {
      const bool z_ok =
          !secant_ctx || secant_stable(z_history, params.window, params.var_tol,
                                       params.slope_tol);
      if (z_ok) {
        last_exit_check = p;
        const PsdSplit sp = psd_split(g_mat - y2_cur);
        const double g_now = norm(sp.neg);
        if (g_now < params.eps) {
          out.X = sp.neg;
          out.Y1 = sp.pos;
          out.Y2 = y2_cur;
          out.g = g_now;
          out.kappa = 0.0;
          out.iters = p;
          out.status = ApgStatus::ZeroX;
          return out;
        }
        const double kap_full = kappa(sp.neg, sp.pos, y2_cur, cone);
        if (kap_full < params.tol) {
          out.X = sp.neg;
          out.Y1 = sp.pos;
          out.Y2 = y2_cur;
          out.g = g_now;
          out.kappa = kap_full;
          out.iters = p;
          out.status = ApgStatus::Converged;
          return out;
        }
      }
    }

    // no measurable progress left in double precision: report NotConverged
    // now instead of burning the rest of the budget
    f_history.push_back(f_cur);
    const int fh = static_cast<int>(f_history.size());
    if (fh > params.stall_window) {
      const double f_old = f_history[fh - 1 - params.stall_window];
      if (f_old - f_cur <= params.stall_rtol * (1.0 + std::abs(f_old))) {
        return finish(ApgStatus::NotConverged, p, true);
      }
    }
  }

  return finish(ApgStatus::NotConverged, params.max_iter, true);
}

}  // namespace dnnbound
