#include "zsl/solver.h"

#include <algorithm>
#include <cmath>

#include "zsl/line_search.h"
#include "zsl/optimality.h"
#include "zsl/random.h"

namespace zsl {

ActivePartition estimate_active_set(const Vector& x, const Vector& pi,
                                    double lambda, const Mask& removed) {
  if (x.size() != pi.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "estimate_active_set: size mismatch");
  }
  const bool masked = !removed.empty();
  ActivePartition part;
  for (Index i = 0; i < x.size(); ++i) {
    if (masked && removed[static_cast<std::size_t>(i)]) continue;
    if (x[i] == 0.0 && std::abs(pi[i]) <= lambda) {
      part.active.push_back(i);
    } else {
      part.nonactive.push_back(i);
    }
  }
  return part;
}

MvpPair mvp_pair(const Vector& x, const Vector& grad, double lambda,
                 const std::vector<Index>& indices) {
  if (indices.empty()) {
    throw Error(ErrorCode::kEmptyNonactive, "mvp_pair: empty index set");
  }
  MvpPair pair;
  double lo_best = 0.0;
  double hi_best = 0.0;
  for (Index i : indices) {
    const double lo = lower_score(x[i], grad[i], lambda);
    const double hi = upper_score(x[i], grad[i], lambda);
    if (pair.i_hat < 0 || lo < lo_best || (lo == lo_best && i < pair.i_hat)) {
      lo_best = lo;
      pair.i_hat = i;
    }
    if (pair.j_hat < 0 || hi > hi_best || (hi == hi_best && i < pair.j_hat)) {
      hi_best = hi;
      pair.j_hat = i;
    }
  }
  pair.gap = hi_best - lo_best;
  return pair;
}

Index select_j(const Vector& x, const std::vector<Index>& nonactive,
               double tau) {
  const double x_inf = x.size() > 0 ? x.lpNorm<Eigen::Infinity>() : 0.0;
  if (x_inf == 0.0) {
    throw Error(ErrorCode::kNoEligibleIndex, "select_j: x = 0");
  }
  Index best = -1;
  double best_abs = -1.0;
  for (Index i : nonactive) {
    const double a = std::abs(x[i]);
    if (a > best_abs || (a == best_abs && i < best)) {
      best_abs = a;
      best = i;
    }
  }
  if (best < 0 || best_abs < tau * x_inf || best_abs == 0.0) {
    throw Error(ErrorCode::kNoEligibleIndex,
                "select_j: no nonactive index with |x_j| >= tau ||x||_inf");
  }
  return best;
}

Strategy select_strategy(double f_prev, double f_cur, double theta,
                         Strategy last) {
  const bool stalled = (f_prev - f_cur) <= theta * std::max(f_prev, 1.0);
  return stalled && last != Strategy::kMvp ? Strategy::kMvp : Strategy::kAc2cd;
}

double mvp_iteration(const Problem& p, SolverState& state,
                     const SolverConfig& cfg, double* scale_out) {
  const double lambda = p.lambda();
  const Vector grad = full_gradient(p, state.r);
  const EtaBounds eb = eta_bounds(state.x, grad, lambda, state.removed);
  const double scale = optimality_scale(eb);
  if (scale_out) *scale_out = scale;
  const double tol = cfg.eps_opt * scale;

  const double mu = multiplier(state.x, grad, lambda, cfg.p);
  state.pi = grad.array() - mu;
  if (eb.gap <= tol) return eb.gap;

  const ActivePartition part =
      estimate_active_set(state.x, state.pi, lambda, state.removed);
  MvpPair pair = mvp_pair(state.x, grad, lambda, part.nonactive);
  if (pair.gap <= tol) {
    // N^k is already optimal on its own but some estimated-active index
    // still violates; use the pair over all indices instead.
    pair.i_hat = eb.arg_min_idx;
    pair.j_hat = eb.arg_max_idx;
  }
  if (pair.i_hat != pair.j_hat) {
    Vector col_diff(p.rows());
    if (exact_pair_step(p, state, pair.i_hat, pair.j_hat, cfg.dup_tol,
                        col_diff) == StepKind::kStep) {
      ++state.inner_steps;
    }
  }
  return eb.gap;
}

void ac2cd_iteration(const Problem& p, SolverState& state,
                     const SolverConfig& cfg) {
  const ActivePartition part =
      estimate_active_set(state.x, state.pi, p.lambda(), state.removed);
  const Index j = select_j(state.x, part.nonactive, cfg.tau);

  std::vector<Index> order = part.nonactive;
  shuffle_indices(order, state.rng);

  Vector col_diff(p.rows());
  for (Index i : order) {
    if (i == j || state.removed[static_cast<std::size_t>(i)]) continue;
    if (exact_pair_step(p, state, i, j, cfg.dup_tol, col_diff) ==
        StepKind::kStep) {
      ++state.inner_steps;
    }
  }
}

namespace {

// Flags every column that duplicates a lower-indexed one and merges its
// coefficient into that column.
void remove_duplicate_columns(const Problem& p, SolverState& state) {
  for (const auto& group : find_duplicate_columns(p.a())) {
    const Index keep = group.front();
    for (std::size_t t = 1; t < group.size(); ++t) {
      eliminate_duplicate(state, group[t], keep, p.lambda());
    }
  }
}

bool is_zero(const Vector& x) { return (x.array() == 0.0).all(); }

void record(const SolverConfig& cfg, SolverState& state, Strategy s,
            double drift, std::vector<IterationRecord>& trace) {
  if (!cfg.record_trace) return;
  trace.push_back({s, state.f, feasibility_violation(state.x), drift});
}

SolverResult run(const Problem& p, const SolverConfig& cfg, SolverState state,
                 std::vector<IterationRecord> trace) {
  double f_prev = state.f;
  bool force_mvp = true;

  while (!state.converged && state.outer_iters < cfg.max_outer_iters) {
    if (is_zero(state.x)) break;  // no descent was possible from x = 0
    const Strategy s = force_mvp ? Strategy::kMvp
                                 : select_strategy(f_prev, state.f, state.theta,
                                                   state.last_strategy);
    force_mvp = false;
    const double f_before = state.f;

    if (s == Strategy::kMvp) {
      double scale = 1.0;
      const double gap = mvp_iteration(p, state, cfg, &scale);
      ++state.mvp_iters;
      state.theta = std::max(cfg.theta_min, cfg.theta_decay * state.theta);
      if (gap <= cfg.eps_opt * scale) state.converged = true;
    } else {
      ac2cd_iteration(p, state, cfg);
    }
    state.last_strategy = s;
    f_prev = f_before;
    ++state.outer_iters;

    double drift = 0.0;
    if (cfg.audit || state.outer_iters % cfg.refresh_every == 0) {
      drift = refresh_residual(p, state);
      if (cfg.audit && state.f > f_before) {
        state.max_rel_increase =
            std::max(state.max_rel_increase,
                     (state.f - f_before) / (1.0 + std::abs(f_before)));
      }
    }
    record(cfg, state, s, drift, trace);
  }

  refresh_residual(p, state);
  const Vector grad = full_gradient(p, state.r);
  const EtaBounds eb = eta_bounds(state.x, grad, p.lambda(), state.removed);

  SolverResult res;
  res.gap = eb.gap;
  res.eta_min = eb.eta_min;
  res.eta_max = eb.eta_max;
  res.scale = optimality_scale(eb);
  res.status = eb.gap <= cfg.eps_opt * res.scale ? SolveStatus::kOptimal
                                                  : SolveStatus::kMaxIters;
  const double mu = is_zero(state.x)
                        ? 0.5 * (eb.eta_min + eb.eta_max)
                        : multiplier(state.x, grad, p.lambda(), cfg.p);
  const Vector pi = grad.array() - mu;
  res.final_active =
      estimate_active_set(state.x, pi, p.lambda(), state.removed).active;
  res.objective = state.f;
  res.outer_iters = state.outer_iters;
  res.mvp_iters = state.mvp_iters;
  res.ac2cd_inner_steps = state.inner_steps;
  res.eliminated = state.eliminated;
  res.max_rel_increase = state.max_rel_increase;
  res.removed = std::move(state.removed);
  res.x_star = std::move(state.x);
  res.trace = std::move(trace);
  return res;
}

}  // namespace

SolverState initialize(const Problem& p, const SolverConfig& cfg) {
  cfg.validate();
  SolverState state = make_state(p, cfg, Vector::Zero(p.cols()));
  if (cfg.preprocess_duplicates) remove_duplicate_columns(p, state);

  // x = 0 stays fixed while duplicate directions are being eliminated, so
  // the gradient is computed once.
  const Vector grad = full_gradient(p, state.r);
  Vector col_diff(p.rows());
  for (;;) {
    const EtaBounds eb = eta_bounds(state.x, grad, p.lambda(), state.removed);
    if (eb.gap <= cfg.eps_opt * optimality_scale(eb)) {
      state.converged = true;
      break;
    }
    const StepKind kind = exact_pair_step(p, state, eb.arg_min_idx,
                                          eb.arg_max_idx, cfg.dup_tol, col_diff);
    if (kind == StepKind::kEliminated) continue;
    if (kind == StepKind::kStep) ++state.inner_steps;
    break;
  }
  return state;
}

SolverResult solve(const Problem& p, const SolverConfig& cfg) {
  SolverState state = initialize(p, cfg);
  std::vector<IterationRecord> trace;
  if (cfg.record_trace && !state.converged) {
    trace.push_back({Strategy::kNone, state.f, feasibility_violation(state.x), 0.0});
  }
  return run(p, cfg, std::move(state), std::move(trace));
}

SolverResult solve_from(const Problem& p, const SolverConfig& cfg,
                        const Vector& x0) {
  cfg.validate();
  if (x0.size() != p.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "solve_from: x0 size mismatch");
  }
  if (!x0.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "solve_from: x0 is not finite");
  }
  if (feasibility_violation(x0) > 1e-8) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve_from: x0 violates the zero-sum constraint");
  }
  if (is_zero(x0)) return solve(p, cfg);

  SolverState state = make_state(p, cfg, x0);
  if (cfg.preprocess_duplicates) remove_duplicate_columns(p, state);
  return run(p, cfg, std::move(state), {});
}

}  // namespace zsl
