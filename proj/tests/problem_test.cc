#include "zsl/problem.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "test_util.h"
#include "zsl/line_search.h"

namespace zsl {
namespace {

using testing::identity_problem;

TEST(ProblemTest, AcceptsIdentityInstance) {
  const Problem p = identity_problem(0.5);
  EXPECT_EQ(p.rows(), 2);
  EXPECT_EQ(p.cols(), 2);
  EXPECT_DOUBLE_EQ(p.lambda(), 0.5);
  EXPECT_DOUBLE_EQ(p.column_sq_norm(1), 1.0);
}

TEST(ProblemTest, RejectsNonFiniteEntry) {
  Matrix a = Matrix::Identity(2, 2);
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    Problem(a, Vector{{1.0, -1.0}}, 0.5);
    FAIL() << "expected NonFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(ProblemTest, RejectsNegativeLambda) {
  try {
    identity_problem(-0.1);
    FAIL() << "expected NegativeLambda";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeLambda);
  }
}

TEST(ProblemTest, RejectsShapeErrors) {
  try {
    Problem(Matrix::Ones(3, 1), Vector::Ones(3), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewColumns);
  }
  try {
    Problem(Matrix::Ones(3, 2), Vector::Ones(2), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ProblemTest, WithLambdaSharesData) {
  const Problem p = identity_problem(0.5);
  const Problem q = p.with_lambda(2.0);
  EXPECT_EQ(&p.a(), &q.a());
  EXPECT_DOUBLE_EQ(q.lambda(), 2.0);
  EXPECT_THROW(p.with_lambda(-1.0), Error);
}

TEST(ObjectiveTest, IdentityOptimumValue) {
  const Problem p = identity_problem(0.5);
  // Brute-force the minimum along x = t (1, -1).
  auto on_line = [&](double t) {
    const Vector x{{t, -t}};
    return objective(p, x, residual(p, x));
  };
  const double t_star = testing::grid_minimize(on_line, -3.0, 3.0);
  EXPECT_NEAR(t_star, 0.5, 1e-7);
  EXPECT_NEAR(on_line(t_star), 0.75, 1e-12);

  const Vector x{{0.5, -0.5}};
  const Vector r{{-0.5, 0.5}};
  EXPECT_DOUBLE_EQ(objective(p, x, r), 0.75);
}

TEST(ObjectiveTest, ZeroPointIsHalfSquaredResponse) {
  const Problem p = identity_problem(0.5);
  EXPECT_DOUBLE_EQ(objective(p, Vector::Zero(2), -p.y()), 1.0);
}

TEST(ObjectiveTest, ZeroLambdaIsResidualNorm) {
  const Problem p = identity_problem(0.0);
  const Vector x{{1.0, -1.0}};  // least-squares point on the feasible line
  const Vector r = residual(p, x);
  EXPECT_DOUBLE_EQ(objective(p, x, r), 0.5 * r.squaredNorm());
  EXPECT_DOUBLE_EQ(objective(p, x, r), 0.0);
}

TEST(ObjectiveTest, NonNegativeAtRandomPoints) {
  const Problem p(testing::random_matrix(7, 9, 3), testing::random_vector(7, 4), 0.3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Vector x = testing::random_feasible(9, 100 + s);
    EXPECT_GE(objective(p, x, residual(p, x)), 0.0);
  }
}

TEST(RefreshResidualTest, ExactResidualHasNoDrift) {
  const Problem p = identity_problem(0.5);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.2, -0.2}});
  const Vector before = st.r;
  EXPECT_EQ(refresh_residual(p, st), 0.0);
  EXPECT_EQ(st.r, before);
}

TEST(RefreshResidualTest, ReportsAndRepairsInjectedDrift) {
  const Problem p = identity_problem(0.5);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.2, -0.2}});
  const Vector exact = st.r;
  st.r[1] += 1e-3;
  st.f += 1.0;
  EXPECT_NEAR(refresh_residual(p, st), 1e-3, 1e-15);
  EXPECT_EQ(st.r, exact);
  EXPECT_DOUBLE_EQ(st.f, objective(p, st.x, exact));
}

TEST(RefreshResidualTest, IncrementalUpdatesStayClose) {
  const Index m = 20, n = 30;
  const Problem p(testing::random_matrix(m, n, 11), testing::random_vector(m, 12), 0.1);
  SolverState st = make_state(p, SolverConfig{}, Vector::Zero(n));
  std::mt19937_64 rng(5);
  Vector col_diff(m);
  for (int k = 0; k < 10000; ++k) {
    const Index i = static_cast<Index>(uniform_index(rng, n));
    Index j = static_cast<Index>(uniform_index(rng, n - 1));
    if (j >= i) ++j;
    exact_pair_step(p, st, i, j, 1e-24, col_diff);
  }
  const double y_inf = p.y().lpNorm<Eigen::Infinity>();
  EXPECT_LE(refresh_residual(p, st), 1e-8 * (1.0 + y_inf));
  EXPECT_LE(feasibility_violation(st.x), 1e-10);
}

TEST(SolverConfigTest, ValidatesRanges) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tau = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = SolverConfig{};
  cfg.theta_init = 1e-8;  // below theta_min
  EXPECT_THROW(cfg.validate(), Error);
  cfg = SolverConfig{};
  cfg.p = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
}

}  // namespace
}  // namespace zsl
