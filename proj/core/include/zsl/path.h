#pragma once

#include <filesystem>
#include <vector>

#include "zsl/problem.h"

namespace zsl {

struct LambdaGrid {
  std::vector<double> values;  // strictly decreasing, all > 0
};

// Geometric sequence from hi_frac * lmax down to lo_frac * lmax.
// Throws kInvalidArgument unless lmax > 0, count >= 2 and
// 0 < lo_frac < hi_frac <= 1.
LambdaGrid lambda_grid(double lmax, int count, double hi_frac = 0.95,
                       double lo_frac = 1e-3);

struct PathPoint {
  double lambda = 0.0;
  SolverResult result;
  double seconds = 0.0;
};

struct PathReport {
  std::vector<PathPoint> points;
  bool warm_start = false;
  long cumulative_outer_iters = 0;
  long cumulative_mvp_iters = 0;
  long cumulative_inner_steps = 0;
};

// Solves for every grid value in order. With warm_start, each solve after the
// first starts from the previous solution (a fresh solver state, theta reset).
PathReport solve_path(const Matrix& a, const Vector& y, const LambdaGrid& grid,
                      const SolverConfig& cfg, bool warm_start);

// Columns: lambda,objective,gap,nnz,outer_iters,mvp_iters,inner_steps,status
void write_path_csv(const std::filesystem::path& path, const PathReport& report);
void write_path_json(const std::filesystem::path& path, const PathReport& report);

Index count_nonzeros(const Vector& x);

}  // namespace zsl
