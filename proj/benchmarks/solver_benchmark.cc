#include <benchmark/benchmark.h>

#include "test_util.h"
#include "zsl/line_search.h"
#include "zsl/optimality.h"
#include "zsl/path.h"
#include "zsl/solver.h"

namespace zsl {
namespace {

void BM_MinimizeUnivariate(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<PiecewiseQuadratic> qs(1024);
  for (auto& q : qs) {
    q = {1.0 + uniform01(rng), -5.0 + 10.0 * uniform01(rng), -2.0 + 4.0 * uniform01(rng), 0.0};
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_univariate(qs[k++ & 1023], 0.7));
  }
}
BENCHMARK(BM_MinimizeUnivariate);

void BM_FullGradient(benchmark::State& state) {
  const Index m = 200, n = state.range(0);
  const Problem p(testing::random_matrix(m, n, 2), testing::random_vector(m, 3), 0.1);
  const Vector r = residual(p, testing::random_feasible(n, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_gradient(p, r));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_FullGradient)->Arg(400)->Arg(2000);

void BM_Solve(benchmark::State& state) {
  const Index m = state.range(0), n = state.range(1);
  const double frac = static_cast<double>(state.range(2)) / 1000.0;
  const Problem p = testing::synthetic_problem(m, n, 5, frac);
  long outer = 0;
  for (auto _ : state) {
    const SolverResult r = solve(p, SolverConfig{});
    outer = r.outer_iters;
    benchmark::DoNotOptimize(r.objective);
  }
  state.counters["outer_iters"] = static_cast<double>(outer);
}
BENCHMARK(BM_Solve)
    ->Args({200, 400, 100})
    ->Args({200, 1000, 10})
    ->Args({500, 2500, 10})
    ->Unit(benchmark::kMillisecond);

void BM_WarmPath(benchmark::State& state) {
  const Problem base = testing::synthetic_problem(200, 1000, 6, 1.0);
  const LambdaGrid grid = lambda_grid(base.lambda(), 10);
  const bool warm = state.range(0) != 0;
  for (auto _ : state) {
    const PathReport rep = solve_path(base.a(), base.y(), grid, SolverConfig{}, warm);
    benchmark::DoNotOptimize(rep.cumulative_inner_steps);
  }
}
BENCHMARK(BM_WarmPath)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace zsl
BENCHMARK_MAIN();
