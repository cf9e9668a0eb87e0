#include "zsl/line_search.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "zsl/optimality.h"
#include "zsl/oracle.h"

namespace zsl {
namespace {

using testing::identity_problem;

// f along x + (u - x_i)(e_i - e_j), evaluated from scratch.
double direct_value(const Problem& p, const Vector& x, Index i, Index j, double u) {
  Vector z = x;
  const double xi = u - x[i];
  z[i] += xi;
  z[j] -= xi;
  return objective(p, z, residual(p, z));
}

void expect_matches_direct(const Problem& p, const Vector& x, Index i, Index j,
                           const PiecewiseQuadratic& q) {
  for (double u : {-2.0, -0.7, 0.0, 0.3, 1.1, 2.5}) {
    const double direct = direct_value(p, x, i, j, u);
    EXPECT_NEAR(q.value(u, p.lambda()), direct, 1e-12 * (1.0 + std::abs(direct)))
        << "u = " << u;
  }
}

TEST(DirectionCoefficientsTest, IdentityAtZero) {
  const Problem p = identity_problem(0.5);
  const Vector x = Vector::Zero(2);
  const Vector r = residual(p, x);
  const PiecewiseQuadratic q = direction_coefficients(p, x, r, -1.0, 1.0, 0, 1);
  EXPECT_DOUBLE_EQ(q.alpha, 2.0);
  EXPECT_DOUBLE_EQ(q.beta, 2.0);
  EXPECT_DOUBLE_EQ(q.s, 0.0);
  expect_matches_direct(p, x, 0, 1, q);
}

TEST(DirectionCoefficientsTest, IdentityAtInteriorPoint) {
  const Problem p = identity_problem(0.5);
  const Vector x{{0.2, -0.2}};
  const Vector r = residual(p, x);
  const PiecewiseQuadratic q = direction_coefficients(p, x, r, -0.8, 0.8, 0, 1);
  EXPECT_DOUBLE_EQ(q.alpha, 2.0);
  EXPECT_NEAR(q.beta, 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(q.s, 0.0);
  expect_matches_direct(p, x, 0, 1, q);
}

TEST(DirectionCoefficientsTest, RandomInstanceMatchesDirectEvaluation) {
  const Problem p(testing::random_matrix(8, 6, 7), testing::random_vector(8, 8), 0.3);
  const Vector x = testing::random_feasible(6, 9);
  const Vector r = residual(p, x);
  const Vector g = full_gradient(p, r);
  for (auto [i, j] : {std::pair<Index, Index>{0, 1}, {4, 2}, {5, 0}}) {
    const PiecewiseQuadratic q = direction_coefficients(p, x, r, g[i], g[j], i, j);
    expect_matches_direct(p, x, i, j, q);
    SolverState st = make_state(p, SolverConfig{}, x);
    Vector diff(8);
    const PiecewiseQuadratic fused = pair_coefficients(p, st, i, j, diff);
    EXPECT_NEAR(fused.alpha, q.alpha, 1e-12);
    EXPECT_NEAR(fused.beta, q.beta, 1e-12);
    EXPECT_NEAR(fused.c, q.c, 1e-12);
  }
}

TEST(DirectionCoefficientsTest, IdenticalColumnsGiveZeroAlpha) {
  Matrix a(3, 3);
  a << 1, 1, 0, 2, 2, 1, 3, 3, 5;
  const Problem p(a, Vector{{1.0, 0.0, -1.0}}, 0.1);
  const Vector x = Vector::Zero(3);
  const PiecewiseQuadratic q = direction_coefficients(p, x, residual(p, x), 0, 0, 0, 1);
  EXPECT_EQ(q.alpha, 0.0);
  EXPECT_THROW(direction_coefficients(p, x, residual(p, x), 0, 0, 1, 1), Error);
}

TEST(MinimizeUnivariateTest, PositiveStationaryBranch) {
  const PiecewiseQuadratic q{2.0, 2.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(minimize_univariate(q, 0.5), 0.5);
  EXPECT_NEAR(grid_line_search_oracle(q, 0.5), 0.5, 1e-9);
}

TEST(MinimizeUnivariateTest, SoftThresholdToZero) {
  const PiecewiseQuadratic q{2.0, 0.5, 0.0, 0.0};
  EXPECT_EQ(minimize_univariate(q, 1.0), 0.0);
  EXPECT_NEAR(grid_line_search_oracle(q, 1.0), 0.0, 1e-9);
}

TEST(MinimizeUnivariateTest, BreakpointComparison) {
  const PiecewiseQuadratic q{1.0, 0.0, 2.0, 0.0};
  EXPECT_EQ(minimize_univariate(q, 1.0), 0.0);
  EXPECT_LT(q.value(0.0, 1.0), q.value(2.0, 1.0));
  EXPECT_NEAR(grid_line_search_oracle(q, 1.0), 0.0, 1e-9);
}

TEST(MinimizeUnivariateTest, SymmetricCaseIsZero) {
  for (double lambda : {0.0, 0.5, 3.0}) {
    EXPECT_EQ(minimize_univariate(PiecewiseQuadratic{1.7, 0.0, 0.0, 0.0}, lambda), 0.0);
  }
}

TEST(MinimizeUnivariateTest, RejectsFlatDirection) {
  try {
    minimize_univariate(PiecewiseQuadratic{0.0, 1.0, 0.0, 0.0}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonConvexDirection);
  }
}

TEST(MinimizeUnivariateTest, AgreesWithGridOracleOnRandomTuples) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    PiecewiseQuadratic q;
    q.alpha = 10.0 * (1.0 - uniform01(rng));
    q.beta = -10.0 + 20.0 * uniform01(rng);
    q.s = -5.0 + 10.0 * uniform01(rng);
    const double lambda = 5.0 * uniform01(rng);
    const double u = minimize_univariate(q, lambda);
    const double ref = grid_line_search_oracle(q, lambda);
    EXPECT_LE(std::abs(u - ref), 1e-8 * (1.0 + std::abs(ref))) << "tuple " << t;
    EXPECT_LE(q.difference(u, ref, lambda), 1e-12 * (1.0 + std::abs(q.value(ref, lambda))));
  }
}

TEST(ApplyStepTest, IdentityStepReachesOptimum) {
  const Problem p = identity_problem(0.5);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.2, -0.2}});
  Vector diff(2);
  const PiecewiseQuadratic q = pair_coefficients(p, st, 0, 1, diff);
  const double u = minimize_univariate(q, 0.5);
  ASSERT_DOUBLE_EQ(u, 0.5);
  apply_step(st, 0, 1, u, q, diff, 0.5);
  EXPECT_DOUBLE_EQ(st.x[0], 0.5);
  EXPECT_DOUBLE_EQ(st.x[1], -0.5);
  EXPECT_NEAR(st.f, 0.75, 1e-15);
  EXPECT_NEAR(st.f, q.value(u, 0.5), 1e-15);
  EXPECT_NEAR(st.f, objective(p, st.x, residual(p, st.x)), 1e-15);
  EXPECT_EQ(st.x.sum(), 0.0);
}

TEST(ApplyStepTest, NullStepLeavesStateUnchanged) {
  const Problem p = identity_problem(0.5);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.5, -0.5}});
  const SolverState before = st;
  Vector diff(2);
  const PiecewiseQuadratic q = pair_coefficients(p, st, 0, 1, diff);
  EXPECT_EQ(apply_step(st, 0, 1, st.x[0], q, diff, 0.5), 0.0);
  EXPECT_EQ(st.x, before.x);
  EXPECT_EQ(st.r, before.r);
  EXPECT_EQ(st.f, before.f);
}

TEST(ApplyStepTest, StepsNeverIncreaseObjective) {
  const Problem p(testing::random_matrix(12, 10, 51), testing::random_vector(12, 52), 0.4);
  SolverState st = make_state(p, SolverConfig{}, testing::random_feasible(10, 53));
  std::mt19937_64 rng(54);
  Vector diff(12);
  for (int k = 0; k < 500; ++k) {
    const Index i = static_cast<Index>(uniform_index(rng, 10));
    Index j = static_cast<Index>(uniform_index(rng, 9));
    if (j >= i) ++j;
    const double f_old = objective(p, st.x, residual(p, st.x));
    exact_pair_step(p, st, i, j, 1e-24, diff);
    const double f_new = objective(p, st.x, residual(p, st.x));
    EXPECT_LE(f_new, f_old + 1e-12 * (1.0 + std::abs(f_old)));
    EXPECT_NEAR(st.f, f_new, 1e-10 * (1.0 + f_new));
  }
  EXPECT_LE(std::abs(st.x.sum()), 1e-12 * (1.0 + st.x.lpNorm<1>()));
}

Problem duplicate_problem(double lambda) {
  Matrix a(3, 3);
  a << 1, 1, 0, 2, 2, 1, -1, -1, 4;
  return Problem(a, Vector{{1.0, 0.5, -1.0}}, lambda);
}

TEST(EliminateDuplicateTest, MergesCoefficient) {
  const Problem p = duplicate_problem(0.7);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.3, -0.1, -0.2}});
  const Vector ax = p.a() * st.x;
  const double l1 = st.x.lpNorm<1>();
  const double f_old = st.f;
  const Vector r_old = st.r;
  eliminate_duplicate(st, 0, 1, p.lambda());
  EXPECT_EQ(st.x[0], 0.0);
  EXPECT_NEAR(st.x[1], 0.2, 1e-15);
  EXPECT_EQ(st.removed[0], 1);
  EXPECT_EQ(st.r, r_old);
  EXPECT_EQ(p.a() * st.x, ax);
  EXPECT_NEAR(l1 - st.x.lpNorm<1>(), 0.2, 1e-15);
  EXPECT_LE(st.f, f_old);
  EXPECT_NEAR(st.f, objective(p, st.x, residual(p, st.x)), 1e-14);
}

TEST(EliminateDuplicateTest, ZeroCoefficientOnlyFlags) {
  const Problem p = duplicate_problem(0.7);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.0, 0.4, -0.4}});
  const Vector x_old = st.x;
  eliminate_duplicate(st, 0, 1, p.lambda());
  EXPECT_EQ(st.x, x_old);
  EXPECT_EQ(st.removed[0], 1);
}

TEST(EliminateDuplicateTest, Cancellation) {
  const Problem p = duplicate_problem(0.7);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.3, -0.3, 0.0}});
  eliminate_duplicate(st, 0, 1, p.lambda());
  EXPECT_EQ(st.x[1], 0.0);
  EXPECT_NEAR(st.x.lpNorm<1>(), 0.0, 0.0);
}

TEST(EliminateDuplicateTest, ExactStepRoutesDuplicates) {
  const Problem p = duplicate_problem(0.7);
  SolverState st = make_state(p, SolverConfig{}, Vector{{0.3, -0.1, -0.2}});
  Vector diff(3);
  EXPECT_EQ(exact_pair_step(p, st, 0, 1, 1e-24, diff), StepKind::kEliminated);
  EXPECT_EQ(st.removed[0], 1);
}

TEST(FindDuplicateColumnsTest, GroupsIdenticalColumns) {
  Matrix a(2, 5);
  a << 1, 2, 1, 0, 1, -0.0, 3, 0.0, 1, 0;
  const auto groups = find_duplicate_columns(a);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0], (std::vector<Index>{0, 2, 4}));
}

}  // namespace
}  // namespace zsl
