#include "zsl/optimality.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace zsl {

double partial_derivative(const Problem& p, const Vector& r, Index i) {
  if (i < 0 || i >= p.cols()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "column index " + std::to_string(i) + " out of range");
  }
  if (r.size() != p.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "residual size mismatch");
  }
  return p.column(i).dot(r);
}

Vector full_gradient(const Problem& p, const Vector& r) {
  if (r.size() != p.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "residual size mismatch");
  }
  Vector grad(p.cols());
  for (Index i = 0; i < p.cols(); ++i) grad[i] = p.column(i).dot(r);
  return grad;
}

EtaBounds eta_bounds(const Vector& x, const Vector& grad, double lambda,
                     const Mask& removed) {
  if (x.size() != grad.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "eta_bounds: size mismatch");
  }
  const bool masked = !removed.empty();
  EtaBounds eb;
  eb.eta_min = std::numeric_limits<double>::infinity();
  eb.eta_max = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    if (masked && removed[static_cast<std::size_t>(i)]) continue;
    const double lo = lower_score(x[i], grad[i], lambda);
    const double hi = upper_score(x[i], grad[i], lambda);
    if (lo < eb.eta_min) {
      eb.eta_min = lo;
      eb.arg_min_idx = i;
    }
    if (hi > eb.eta_max) {
      eb.eta_max = hi;
      eb.arg_max_idx = i;
    }
  }
  if (eb.arg_min_idx < 0) {
    throw Error(ErrorCode::kInvalidArgument, "eta_bounds: no eligible index");
  }
  eb.gap = eb.eta_max - eb.eta_min;
  return eb;
}

double multiplier(const Vector& x, const Vector& grad, double lambda,
                  double p_exp) {
  if (!(p_exp > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "multiplier exponent must be > 0");
  }
  if (x.size() != grad.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "multiplier: size mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const double w = p_exp == 1.0 ? std::abs(x[i]) : std::pow(std::abs(x[i]), p_exp);
    num += w * (grad[i] + lambda * sgn(x[i]));
    den += w;
  }
  if (den == 0.0) {
    throw Error(ErrorCode::kZeroPoint, "multiplier is undefined at x = 0");
  }
  return num / den;
}

KktReport kkt_check(const Vector& x, const Vector& grad, double lambda,
                    double mu) {
  if (x.size() != grad.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "kkt_check: size mismatch");
  }
  KktReport rep{mu, 0.0};
  for (Index i = 0; i < x.size(); ++i) {
    const double d = grad[i] - mu;
    double v;
    if (x[i] < 0.0) {
      v = std::abs(d - lambda);
    } else if (x[i] > 0.0) {
      v = std::abs(d + lambda);
    } else {
      v = std::max(0.0, std::abs(d) - lambda);
    }
    rep.max_violation = std::max(rep.max_violation, v);
  }
  return rep;
}

double lambda_max(const Matrix& a, const Vector& y) {
  if (a.rows() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "lambda_max: size mismatch");
  }
  if (a.cols() == 0) return 0.0;
  Vector aty(a.cols());
  for (Index i = 0; i < a.cols(); ++i) aty[i] = a.col(i).dot(y);
  return std::max(0.0, (aty.maxCoeff() - aty.minCoeff()) / 2.0);
}

}  // namespace zsl
