#pragma once

#include <optional>

#include "zsl/problem.h"

namespace zsl {

// Restriction of the objective to the feasible line x + xi (e_i - e_j),
// written in terms of u = new value of x_i:
//
//   f_ij(u) = 0.5 alpha u^2 - beta u + lambda (|u| + |u - s|) + c
//
// with alpha = ||A^i - A^j||^2, beta = alpha x_i - grad_i + grad_j and
// s = x_i + x_j (x_j becomes s - u).
struct PiecewiseQuadratic {
  double alpha = 0.0;
  double beta = 0.0;
  double s = 0.0;
  double c = 0.0;

  double value(double u, double lambda) const;
  // f_ij(a) - f_ij(b) without forming either value (c cancels exactly).
  double difference(double a, double b, double lambda) const;
};

// Throws kSameIndex when i == j. If f_current is omitted it is recomputed
// from x and r in O(m + n).
PiecewiseQuadratic direction_coefficients(
    const Problem& p, const Vector& x, const Vector& r, double grad_i,
    double grad_j, Index i, Index j,
    std::optional<double> f_current = std::nullopt);

// Fused O(m) variant used inside the solvers: writes A^i - A^j into col_diff
// and takes grad_i - grad_j = (A^i - A^j)^T r from the same pass.
PiecewiseQuadratic pair_coefficients(const Problem& p, const SolverState& state,
                                     Index i, Index j, Vector& col_diff);

// Unique minimizer of f_ij: stationary point of one of the three smooth
// pieces if it lies inside that piece, otherwise the better breakpoint
// among {0, s} (ties go to 0). Throws kNonConvexDirection if alpha <= 0.
double minimize_univariate(const PiecewiseQuadratic& q, double lambda);

// x_i <- u*, x_j <- s - u*, r <- r + (u* - x_i) col_diff, f updated from q.
// Returns the objective change.
double apply_step(SolverState& state, Index i, Index j, double u_star,
                  const PiecewiseQuadratic& q, const Vector& col_diff,
                  double lambda);

// For A^i = A^j: moves x_i onto x_j, fixes x_i = 0 and flags i as removed.
// A x is unchanged; ||x||_1 and f can only decrease.
void eliminate_duplicate(SolverState& state, Index i, Index j, double lambda);

// alpha <= dup_tol (||A^i||^2 + ||A^j||^2)
inline bool is_duplicate_direction(double alpha, double sq_norm_i,
                                   double sq_norm_j, double dup_tol) {
  return alpha <= dup_tol * (sq_norm_i + sq_norm_j);
}

enum class StepKind { kStep, kNullStep, kEliminated };

// One exact minimization along e_i - e_j from the current state, routing
// duplicate columns to eliminate_duplicate (removing i). col_diff is scratch.
StepKind exact_pair_step(const Problem& p, SolverState& state, Index i,
                         Index j, double dup_tol, Vector& col_diff);

// Groups of exactly identical columns; each group lists indices ascending.
std::vector<std::vector<Index>> find_duplicate_columns(const Matrix& a);

}  // namespace zsl
