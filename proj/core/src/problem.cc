#include "zsl/problem.h"

#include <cmath>
#include <string>

namespace zsl {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNegativeLambda: return "NegativeLambda";
    case ErrorCode::kTooFewColumns: return "TooFewColumns";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kZeroPoint: return "ZeroPoint";
    case ErrorCode::kSameIndex: return "SameIndex";
    case ErrorCode::kNonConvexDirection: return "NonConvexDirection";
    case ErrorCode::kEmptyNonactive: return "EmptyNonactive";
    case ErrorCode::kNoEligibleIndex: return "NoEligibleIndex";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kNonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kNone: return "none";
    case Strategy::kMvp: return "mvp";
    case Strategy::kAc2cd: return "ac2cd";
  }
  return "?";
}

const char* status_name(SolveStatus s) {
  return s == SolveStatus::kOptimal ? "optimal" : "max_iters";
}

Problem::Problem(Matrix a, Vector y, double lambda) : lambda_(lambda) {
  if (a.rows() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "A has " + std::to_string(a.rows()) + " rows but y has " +
                    std::to_string(y.size()) + " entries");
  }
  if (a.rows() < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "A must have at least one row");
  }
  if (a.cols() < 2) {
    throw Error(ErrorCode::kTooFewColumns,
                "the zero-sum constraint needs at least 2 columns");
  }
  if (!std::isfinite(lambda)) {
    throw Error(ErrorCode::kNonFinite, "lambda is not finite");
  }
  if (lambda < 0.0) {
    throw Error(ErrorCode::kNegativeLambda, "lambda must be >= 0");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "A contains a non-finite entry");
  }
  if (!y.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "y contains a non-finite entry");
  }
  auto data = std::make_shared<Data>();
  data->col_sq_norms = a.colwise().squaredNorm().transpose();
  data->a = std::move(a);
  data->y = std::move(y);
  data_ = std::move(data);
}

Problem::Problem(std::shared_ptr<const Data> data, double lambda)
    : data_(std::move(data)), lambda_(lambda) {}

Problem Problem::with_lambda(double lambda) const {
  if (!std::isfinite(lambda)) {
    throw Error(ErrorCode::kNonFinite, "lambda is not finite");
  }
  if (lambda < 0.0) {
    throw Error(ErrorCode::kNegativeLambda, "lambda must be >= 0");
  }
  return Problem(data_, lambda);
}

void SolverConfig::validate() const {
  auto fail = [](const char* what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (!(p > 0.0)) fail("p must be > 0");
  if (!(tau > 0.0 && tau <= 1.0)) fail("tau must lie in (0, 1]");
  if (!(theta_min > 0.0)) fail("theta_min must be > 0");
  if (!(theta_init >= theta_min && theta_init <= 1.0)) {
    fail("theta_init must lie in [theta_min, 1]");
  }
  if (!(theta_decay > 0.0 && theta_decay < 1.0)) {
    fail("theta_decay must lie in (0, 1)");
  }
  if (!(eps_opt > 0.0)) fail("eps_opt must be > 0");
  if (!(feas_tol > 0.0) || !(resid_tol > 0.0)) fail("tolerances must be > 0");
  if (!(dup_tol >= 0.0)) fail("dup_tol must be >= 0");
  if (max_outer_iters < 0) fail("max_outer_iters must be >= 0");
  if (refresh_every < 1) fail("refresh_every must be >= 1");
}

double objective(const Problem& p, const Vector& x, const Vector& r) {
  if (x.size() != p.cols() || r.size() != p.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "objective: size mismatch");
  }
  return 0.5 * r.squaredNorm() + p.lambda() * x.lpNorm<1>();
}

Vector residual(const Problem& p, const Vector& x) {
  if (x.size() != p.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "residual: size mismatch");
  }
  return p.a() * x - p.y();
}

double feasibility_violation(const Vector& x) {
  return std::abs(x.sum()) / (1.0 + x.lpNorm<1>());
}

double refresh_residual(const Problem& p, SolverState& state) {
  Vector fresh = residual(p, state.x);
  const double drift =
      state.r.size() == fresh.size() ? (state.r - fresh).lpNorm<Eigen::Infinity>()
                                     : 0.0;
  state.r = std::move(fresh);
  state.f = objective(p, state.x, state.r);
  return drift;
}

SolverState make_state(const Problem& p, const SolverConfig& cfg, Vector x) {
  if (x.size() != p.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "make_state: size mismatch");
  }
  SolverState state;
  state.x = std::move(x);
  state.r = residual(p, state.x);
  state.f = objective(p, state.x, state.r);
  state.pi = Vector::Zero(p.cols());
  state.theta = cfg.theta_init;
  state.removed.assign(static_cast<std::size_t>(p.cols()), 0);
  state.rng.seed(cfg.seed);
  return state;
}

}  // namespace zsl
