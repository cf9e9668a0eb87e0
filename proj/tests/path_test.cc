#include "zsl/path.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "test_util.h"
#include "zsl/optimality.h"
#include "zsl/solver.h"

namespace zsl {
namespace {

TEST(LambdaGridTest, FivePoints) {
  const LambdaGrid g = lambda_grid(1.0, 5);
  ASSERT_EQ(g.values.size(), 5u);
  EXPECT_DOUBLE_EQ(g.values[0], 0.95);
  EXPECT_DOUBLE_EQ(g.values[4], 0.001);
  EXPECT_NEAR(g.values[2], std::sqrt(0.95 * 0.001), 1e-15);
  EXPECT_NEAR(g.values[2], 0.030822, 5e-7);
  for (std::size_t k = 1; k < g.values.size(); ++k) EXPECT_LT(g.values[k], g.values[k - 1]);
}

TEST(LambdaGridTest, EndpointsAndTenPoints) {
  const LambdaGrid two = lambda_grid(4.0, 2);
  EXPECT_EQ(two.values, (std::vector<double>{0.95 * 4.0, 0.001 * 4.0}));
  const LambdaGrid ten = lambda_grid(1.0, 10);
  EXPECT_NEAR(ten.values[1], 0.95 * std::pow(0.001 / 0.95, 1.0 / 9.0), 1e-15);
  EXPECT_NEAR(ten.values[1], 0.443471, 5e-7);
  // 0.1711 is the second point of the five-point grid.
  EXPECT_NEAR(lambda_grid(1.0, 5).values[1], 0.1711, 5e-5);
}

TEST(LambdaGridTest, RejectsBadArguments) {
  EXPECT_THROW(lambda_grid(0.0, 5), Error);
  EXPECT_THROW(lambda_grid(1.0, 1), Error);
  EXPECT_THROW(lambda_grid(1.0, 5, 0.5, 0.6), Error);
  EXPECT_THROW(lambda_grid(1.0, 5, 1.5, 0.1), Error);
}

TEST(SolvePathTest, WarmMatchesColdAndObjectiveDecreases) {
  const Problem base = testing::synthetic_problem(60, 120, 6, 1.0);
  const LambdaGrid grid = lambda_grid(base.lambda(), 6);
  SolverConfig cfg;
  const PathReport warm = solve_path(base.a(), base.y(), grid, cfg, true);
  const PathReport cold = solve_path(base.a(), base.y(), grid, cfg, false);
  ASSERT_EQ(warm.points.size(), grid.values.size());
  EXPECT_TRUE(warm.warm_start);
  EXPECT_FALSE(cold.warm_start);
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    const double fw = warm.points[k].result.objective;
    const double fc = cold.points[k].result.objective;
    EXPECT_EQ(warm.points[k].result.status, SolveStatus::kOptimal);
    EXPECT_LE(std::abs(fw - fc), 1e-6 * std::max(1.0, std::abs(fc))) << "point " << k;
    if (k > 0) EXPECT_LE(fw, warm.points[k - 1].result.objective * (1.0 + 1e-12));
  }
  long inner = 0;
  for (const auto& pt : warm.points) inner += pt.result.ac2cd_inner_steps;
  EXPECT_EQ(warm.cumulative_inner_steps, inner);
}

TEST(SolvePathTest, SingletonGridEqualsSolve) {
  const Problem p = testing::synthetic_problem(40, 60, 2, 0.2);
  const PathReport rep = solve_path(p.a(), p.y(), LambdaGrid{{p.lambda()}}, SolverConfig{}, true);
  const SolverResult direct = solve(p, SolverConfig{});
  ASSERT_EQ(rep.points.size(), 1u);
  EXPECT_EQ(rep.points[0].result.x_star, direct.x_star);
  EXPECT_EQ(rep.points[0].result.objective, direct.objective);
}

TEST(SolvePathTest, PrefixAboveLambdaMaxIsZero) {
  const Problem p = testing::synthetic_problem(30, 40, 3, 1.0);
  const double lmax = p.lambda();
  const LambdaGrid grid{{2.0 * lmax, 1.1 * lmax, 0.5 * lmax}};
  const PathReport rep = solve_path(p.a(), p.y(), grid, SolverConfig{}, true);
  EXPECT_EQ(count_nonzeros(rep.points[0].result.x_star), 0);
  EXPECT_EQ(count_nonzeros(rep.points[1].result.x_star), 0);
  EXPECT_GT(count_nonzeros(rep.points[2].result.x_star), 0);
}

TEST(SolvePathTest, RejectsNonDecreasingGrid) {
  const Problem p = testing::identity_problem(0.5);
  EXPECT_THROW(solve_path(p.a(), p.y(), LambdaGrid{{0.1, 0.2}}, SolverConfig{}, true), Error);
}

TEST(PathReportTest, CsvAndJson) {
  const Problem p = testing::identity_problem(0.5);
  const PathReport rep =
      solve_path(p.a(), p.y(), LambdaGrid{{2.0, 0.5}}, SolverConfig{}, true);
  const auto dir = std::filesystem::temp_directory_path() / "zsl_path_report";
  std::filesystem::create_directories(dir);
  write_path_csv(dir / "r.csv", rep);
  write_path_json(dir / "r.json", rep);
  std::ifstream in(dir / "r.csv");
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "lambda,objective,gap,nnz,outer_iters,mvp_iters,inner_steps,status");
  EXPECT_EQ(row1.rfind("2,1,", 0), 0u) << row1;
  EXPECT_EQ(row2.rfind("0.5,0.75", 0), 0u) << row2;
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_TRUE(std::filesystem::exists(dir / "r.json"));
  std::filesystem::remove_all(dir);
}

TEST(CountNonzerosTest, Basic) {
  EXPECT_EQ(count_nonzeros(Vector{{0.0, -0.0, 1e-300, 2.0}}), 2);
}

}  // namespace
}  // namespace zsl
