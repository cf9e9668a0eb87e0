#pragma once

#include "zsl/line_search.h"
#include "zsl/problem.h"

namespace zsl {

// Slow reference solvers for tests. They share the problem types and the
// exact pair step with the main solver, but none of its index selection,
// active-set estimation or randomness.

struct OracleResult {
  Vector x;
  double objective = 0.0;
  double gap = 0.0;
  double scale = 1.0;
  long sweeps = 0;
};

// Exact 2-coordinate descent over every pair (i, j), i < j, in lexicographic
// order, starting from x = 0. Stops once a sweep changes f by at most
// tol (1 + |f|) and the eta gap is at most tol * scale. Throws kNotConverged
// after max_sweeps.
OracleResult oracle_solve(const Problem& p, double tol, long max_sweeps);

// Minimizer of f_ij by brute force: 10^6-point grid on [-R, R] with
// R = (|beta| + 2 lambda + |s| alpha + 1) / alpha, then ternary search on the
// winning cell. Requires alpha > 0.
double grid_line_search_oracle(const PiecewiseQuadratic& q, double lambda);

}  // namespace zsl
