#pragma once

#include <vector>

#include "zsl/problem.h"

namespace zsl {

struct ActivePartition {
  std::vector<Index> active;     // x_i = 0 and |pi_i| <= lambda
  std::vector<Index> nonactive;  // everything else that is not removed
};

ActivePartition estimate_active_set(const Vector& x, const Vector& pi,
                                    double lambda, const Mask& removed = {});

struct MvpPair {
  Index i_hat = -1;
  Index j_hat = -1;
  double gap = 0.0;  // max upper score - min lower score over the index list
};

// Maximal violating pair restricted to `indices`. Throws kEmptyNonactive.
MvpPair mvp_pair(const Vector& x, const Vector& grad, double lambda,
                 const std::vector<Index>& indices);

// Index in `nonactive` of largest |x_j| (lowest index on ties); it satisfies
// |x_j| >= tau ||x||_inf for every tau in (0, 1]. Throws kNoEligibleIndex
// when x = 0 or no candidate meets the threshold.
Index select_j(const Vector& x, const std::vector<Index>& nonactive,
               double tau);

// MVP when progress (f_prev - f_cur) <= theta max{f_prev, 1} and the previous
// iteration was not MVP; AC2CD otherwise.
Strategy select_strategy(double f_prev, double f_cur, double theta,
                         Strategy last);

// One MVP iteration: full gradient, optimality gap at the current point, and
// (unless the point is already optimal to cfg.eps_opt) a refreshed pi, active
// set and one exact step along the maximal violating pair. Returns the gap
// measured at the entry point; `scale_out`, if given, receives its scale.
double mvp_iteration(const Problem& p, SolverState& state,
                     const SolverConfig& cfg, double* scale_out = nullptr);

// One AC2CD iteration: active set from the stored pi, j(k) from select_j and
// a cycle of exact steps (p_i, j(k)) over a random permutation of N^k.
void ac2cd_iteration(const Problem& p, SolverState& state,
                     const SolverConfig& cfg);

// x0 = 0. If 0 is optimal the returned state has converged = true; otherwise
// one exact step along the maximal violating pair over all indices is taken,
// giving f(x1) < f(x0).
SolverState initialize(const Problem& p, const SolverConfig& cfg);

SolverResult solve(const Problem& p, const SolverConfig& cfg);

// Starts from a feasible x0 instead of 0. The first outer iteration is MVP
// so pi is rebuilt from a fresh gradient. x0 = 0 falls back to solve().
SolverResult solve_from(const Problem& p, const SolverConfig& cfg,
                        const Vector& x0);

}  // namespace zsl
