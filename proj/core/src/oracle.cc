#include "zsl/oracle.h"

#include <cmath>
#include <string>

#include "zsl/optimality.h"

namespace zsl {

OracleResult oracle_solve(const Problem& p, double tol, long max_sweeps) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "oracle_solve: tol must be > 0");
  }
  const Index n = p.cols();
  SolverConfig cfg;
  SolverState state = make_state(p, cfg, Vector::Zero(n));
  Vector col_diff(p.rows());

  OracleResult out;
  for (long sweep = 1; sweep <= max_sweeps; ++sweep) {
    const double f_start = state.f;
    for (Index i = 0; i < n; ++i) {
      if (state.removed[static_cast<std::size_t>(i)]) continue;
      for (Index j = i + 1; j < n; ++j) {
        if (state.removed[static_cast<std::size_t>(j)]) continue;
        exact_pair_step(p, state, i, j, cfg.dup_tol, col_diff);
        if (state.removed[static_cast<std::size_t>(i)]) break;
      }
    }
    refresh_residual(p, state);
    const Vector grad = full_gradient(p, state.r);
    const EtaBounds eb = eta_bounds(state.x, grad, p.lambda(), state.removed);
    const double scale = optimality_scale(eb);
    const bool flat = std::abs(f_start - state.f) <= tol * (1.0 + std::abs(state.f));
    if (flat && eb.gap <= tol * scale) {
      out.x = state.x;
      out.objective = state.f;
      out.gap = eb.gap;
      out.scale = scale;
      out.sweeps = sweep;
      return out;
    }
  }
  throw Error(ErrorCode::kNotConverged,
              "oracle_solve: not converged after " + std::to_string(max_sweeps) +
                  " sweeps");
}

double grid_line_search_oracle(const PiecewiseQuadratic& q, double lambda) {
  if (!(q.alpha > 0.0)) {
    throw Error(ErrorCode::kNonConvexDirection, "grid oracle needs alpha > 0");
  }
  constexpr long kPoints = 1000000;
  const double radius =
      (std::abs(q.beta) + 2.0 * lambda + std::abs(q.s) * q.alpha + 1.0) / q.alpha;
  const double h = 2.0 * radius / static_cast<double>(kPoints - 1);

  // Values relative to f(0) keep magnitudes small; c drops out.
  long best = 0;
  double best_val = q.difference(-radius, 0.0, lambda);
  for (long k = 1; k < kPoints; ++k) {
    const double u = -radius + h * static_cast<double>(k);
    const double v = q.difference(u, 0.0, lambda);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }

  double lo = -radius + h * static_cast<double>(best - 1);
  double hi = -radius + h * static_cast<double>(best + 1);
  // Kinks sitting exactly on a grid point are common (0 and s); keep them as
  // candidates since ternary search only approaches them.
  double best_u = -radius + h * static_cast<double>(best);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (m1 <= lo || m2 >= hi) break;
    if (q.difference(m1, m2, lambda) <= 0.0) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double mid = 0.5 * (lo + hi);
  for (double cand : {mid, 0.0, q.s}) {
    if (cand >= -radius && cand <= radius &&
        q.difference(cand, best_u, lambda) < 0.0) {
      best_u = cand;
    }
  }
  return best_u;
}

}  // namespace zsl
