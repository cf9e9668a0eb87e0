#pragma once

#include <cmath>

#include "zsl/problem.h"

namespace zsl {

// sgn(0) = 0.
inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Score entering eta_min: grad_i + lambda if x_i >= 0, grad_i - lambda if x_i < 0.
inline double lower_score(double x_i, double grad_i, double lambda) {
  return x_i < 0.0 ? grad_i - lambda : grad_i + lambda;
}

// Score entering eta_max: grad_i + lambda if x_i > 0, grad_i - lambda if x_i <= 0.
inline double upper_score(double x_i, double grad_i, double lambda) {
  return x_i > 0.0 ? grad_i + lambda : grad_i - lambda;
}

// (A^i)^T r in O(m). Throws kIndexOutOfRange.
double partial_derivative(const Problem& p, const Vector& r, Index i);

// A^T r, one column dot product at a time so that entry i is bitwise equal to
// partial_derivative(p, r, i).
Vector full_gradient(const Problem& p, const Vector& r);

struct EtaBounds {
  double eta_min = 0.0;
  double eta_max = 0.0;
  double gap = 0.0;  // eta_max - eta_min; <= 0 exactly at optimal points
  Index arg_min_idx = -1;
  Index arg_max_idx = -1;
};

// Optimality measures over every index not flagged in `removed` (an empty
// mask means no index is removed). Ties go to the lowest index.
EtaBounds eta_bounds(const Vector& x, const Vector& grad, double lambda,
                     const Mask& removed = {});

inline double optimality_scale(const EtaBounds& eb) {
  return 1.0 + std::abs(eb.eta_min) + std::abs(eb.eta_max);
}

// mu(x) = sum |x_i|^p (grad_i + lambda sgn(x_i)) / sum |x_i|^p.
// Throws kZeroPoint when x = 0 and kInvalidArgument when p_exp <= 0.
double multiplier(const Vector& x, const Vector& grad, double lambda,
                  double p_exp);

struct KktReport {
  double mu = 0.0;
  double max_violation = 0.0;
};

// Largest residual of the sign-conditioned stationarity system at multiplier mu.
KktReport kkt_check(const Vector& x, const Vector& grad, double lambda,
                    double mu);

// Smallest lambda for which x = 0 is optimal: (max(A^T y) - min(A^T y)) / 2.
double lambda_max(const Matrix& a, const Vector& y);

}  // namespace zsl
