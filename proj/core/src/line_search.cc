#include "zsl/line_search.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string_view>
#include <unordered_map>

namespace zsl {

double PiecewiseQuadratic::value(double u, double lambda) const {
  return 0.5 * alpha * u * u - beta * u +
         lambda * (std::abs(u) + std::abs(u - s)) + c;
}

namespace {

// |a - k| - |b - k|, exact up to one rounding when a and b share a side of k.
double abs_gap(double a, double b, double k) {
  if (a >= k && b >= k) return a - b;
  if (a <= k && b <= k) return b - a;
  return std::abs(a - k) - std::abs(b - k);
}

}  // namespace

double PiecewiseQuadratic::difference(double a, double b, double lambda) const {
  return (a - b) * (0.5 * alpha * (a + b) - beta) +
         lambda * (abs_gap(a, b, 0.0) + abs_gap(a, b, s));
}

namespace {

PiecewiseQuadratic make_quadratic(double alpha, double grad_diff, double x_i,
                                  double x_j, double f, double lambda) {
  PiecewiseQuadratic q;
  q.alpha = alpha;
  q.beta = alpha * x_i - grad_diff;
  q.s = x_i + x_j;
  q.c = f - (0.5 * alpha * x_i * x_i - q.beta * x_i +
             lambda * (std::abs(x_i) + std::abs(x_j)));
  return q;
}

void check_pair(Index n, Index i, Index j) {
  if (i == j) {
    throw Error(ErrorCode::kSameIndex, "direction needs two distinct indices");
  }
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, "pair index out of range");
  }
}

}  // namespace

PiecewiseQuadratic direction_coefficients(const Problem& p, const Vector& x,
                                          const Vector& r, double grad_i,
                                          double grad_j, Index i, Index j,
                                          std::optional<double> f_current) {
  check_pair(p.cols(), i, j);
  const double alpha = (p.column(i) - p.column(j)).squaredNorm();
  const double f = f_current ? *f_current : objective(p, x, r);
  return make_quadratic(alpha, grad_i - grad_j, x[i], x[j], f, p.lambda());
}

PiecewiseQuadratic pair_coefficients(const Problem& p, const SolverState& state,
                                     Index i, Index j, Vector& col_diff) {
  check_pair(p.cols(), i, j);
  col_diff.noalias() = p.column(i) - p.column(j);
  const double alpha = col_diff.squaredNorm();
  const double grad_diff = col_diff.dot(state.r);
  return make_quadratic(alpha, grad_diff, state.x[i], state.x[j], state.f,
                        p.lambda());
}

double minimize_univariate(const PiecewiseQuadratic& q, double lambda) {
  if (!(q.alpha > 0.0)) {
    throw Error(ErrorCode::kNonConvexDirection,
                "f_ij is not strictly convex (identical columns)");
  }
  // piece u > max{s, 0}
  double u = (q.beta - 2.0 * lambda) / q.alpha;
  if (u > std::max(q.s, 0.0)) return u;
  // piece u < min{s, 0}
  u = (q.beta + 2.0 * lambda) / q.alpha;
  if (u < std::min(q.s, 0.0)) return u;
  // piece strictly between 0 and s
  u = q.beta / q.alpha;
  if (u * (u - q.s) < 0.0) return u;
  // kink: f(0) <= f(s) picks 0
  return q.difference(0.0, q.s, lambda) <= 0.0 ? 0.0 : q.s;
}

double apply_step(SolverState& state, Index i, Index j, double u_star,
                  const PiecewiseQuadratic& q, const Vector& col_diff,
                  double lambda) {
  const double x_i = state.x[i];
  const double x_j = state.x[j];
  const double xi = u_star - x_i;
  if (xi == 0.0) return 0.0;

  const double new_x_j = q.s - u_star;
  const double delta =
      xi * (0.5 * q.alpha * (u_star + x_i) - q.beta) +
      lambda * ((std::abs(u_star) - std::abs(x_i)) +
                (std::abs(new_x_j) - std::abs(x_j)));

  state.x[i] = u_star;
  state.x[j] = new_x_j;
  state.r.noalias() += xi * col_diff;
  const double f_old = state.f;
  state.f += delta;
  if (delta > 0.0) {
    state.max_rel_increase =
        std::max(state.max_rel_increase, delta / (1.0 + std::abs(f_old)));
  }
  return delta;
}

void eliminate_duplicate(SolverState& state, Index i, Index j, double lambda) {
  const double x_i = state.x[i];
  const double x_j = state.x[j];
  const double merged = x_j + x_i;
  state.f += lambda * (std::abs(merged) - std::abs(x_i) - std::abs(x_j));
  state.x[j] = merged;
  state.x[i] = 0.0;
  if (state.removed.size() != static_cast<std::size_t>(state.x.size())) {
    state.removed.assign(static_cast<std::size_t>(state.x.size()), 0);
  }
  state.removed[static_cast<std::size_t>(i)] = 1;
  ++state.eliminated;
}

StepKind exact_pair_step(const Problem& p, SolverState& state, Index i,
                         Index j, double dup_tol, Vector& col_diff) {
  const PiecewiseQuadratic q = pair_coefficients(p, state, i, j, col_diff);
  if (is_duplicate_direction(q.alpha, p.column_sq_norm(i),
                             p.column_sq_norm(j), dup_tol)) {
    eliminate_duplicate(state, i, j, p.lambda());
    return StepKind::kEliminated;
  }
  const double u = minimize_univariate(q, p.lambda());
  if (u == state.x[i]) return StepKind::kNullStep;
  apply_step(state, i, j, u, q, col_diff, p.lambda());
  return StepKind::kStep;
}

std::vector<std::vector<Index>> find_duplicate_columns(const Matrix& a) {
  const Index m = a.rows();
  std::vector<double> buf(static_cast<std::size_t>(m));
  std::unordered_map<std::size_t, std::vector<Index>> buckets;
  std::vector<std::size_t> order;
  for (Index i = 0; i < a.cols(); ++i) {
    for (Index h = 0; h < m; ++h) {
      const double v = a(h, i);
      buf[static_cast<std::size_t>(h)] = v == 0.0 ? 0.0 : v;  // fold -0.0
    }
    const std::string_view bytes(reinterpret_cast<const char*>(buf.data()),
                                 buf.size() * sizeof(double));
    const std::size_t key = std::hash<std::string_view>{}(bytes);
    auto [it, inserted] = buckets.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(i);
  }

  std::vector<std::vector<Index>> groups;
  for (std::size_t key : order) {
    std::vector<Index> pending = buckets[key];
    // Hash collisions are split by exact comparison.
    while (pending.size() > 1) {
      std::vector<Index> same{pending.front()};
      std::vector<Index> rest;
      for (std::size_t t = 1; t < pending.size(); ++t) {
        if (a.col(pending[t]) == a.col(pending.front())) {
          same.push_back(pending[t]);
        } else {
          rest.push_back(pending[t]);
        }
      }
      if (same.size() > 1) groups.push_back(std::move(same));
      pending = std::move(rest);
    }
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace zsl
