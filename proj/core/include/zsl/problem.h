#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "zsl/error.h"

namespace zsl {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Per-variable flag; 1 marks a variable fixed to zero by duplicate-column
// elimination.
using Mask = std::vector<std::uint8_t>;

// min 0.5 ||A x - y||^2 + lambda ||x||_1  subject to  sum(x) = 0.
//
// A and y are held behind shared pointers so that problems differing only in
// lambda (regularization paths) share one copy of the data. Column storage is
// contiguous (Eigen column-major), so every column A^i is an O(m) view.
class Problem {
 public:
  // Throws Error with kDimensionMismatch, kNonFinite, kNegativeLambda or
  // kTooFewColumns.
  Problem(Matrix a, Vector y, double lambda);

  Problem with_lambda(double lambda) const;

  const Matrix& a() const { return data_->a; }
  const Vector& y() const { return data_->y; }
  double lambda() const { return lambda_; }
  Index rows() const { return data_->a.rows(); }
  Index cols() const { return data_->a.cols(); }

  auto column(Index i) const { return data_->a.col(i); }
  double column_sq_norm(Index i) const { return data_->col_sq_norms[i]; }
  const Vector& column_sq_norms() const { return data_->col_sq_norms; }

 private:
  struct Data {
    Matrix a;
    Vector y;
    Vector col_sq_norms;
  };
  Problem(std::shared_ptr<const Data> data, double lambda);

  std::shared_ptr<const Data> data_;
  double lambda_;
};

enum class Strategy : std::uint8_t { kNone, kMvp, kAc2cd };

const char* strategy_name(Strategy s);

struct SolverConfig {
  double p = 1.0;             // multiplier-function exponent, > 0
  double tau = 1.0;           // j(k) magnitude threshold, in (0, 1]
  double theta_init = 1e-2;   // sufficient-progress threshold
  double theta_min = 1e-6;
  double theta_decay = 0.5;   // applied each time MVP runs
  double eps_opt = 1e-6;      // relative optimality tolerance
  long max_outer_iters = 1000000;
  std::uint64_t seed = 0;
  double feas_tol = 1e-10;
  double resid_tol = 1e-8;
  double dup_tol = 1e-24;     // relative ||A^i - A^j||^2 threshold
  int refresh_every = 50;     // outer iterations between residual audits
  bool preprocess_duplicates = true;
  bool record_trace = false;
  // Recompute r and f from scratch after every outer iteration (O(mn) each);
  // the exact values are written into the trace.
  bool audit = false;

  // Throws Error(kInvalidArgument) on out-of-range parameters.
  void validate() const;
};

struct SolverState {
  Vector x;
  Vector r;                   // A x - y
  double f = 0.0;             // cached objective
  Vector pi;                  // grad f0 - mu e at the last MVP iteration
  double theta = 1e-2;
  Strategy last_strategy = Strategy::kNone;
  Mask removed;
  std::mt19937_64 rng;

  // bookkeeping
  long outer_iters = 0;
  long mvp_iters = 0;
  long inner_steps = 0;
  long eliminated = 0;
  // largest (f_new - f_old) / (1 + |f_old|) seen over all steps
  double max_rel_increase = 0.0;
  bool converged = false;
};

struct IterationRecord {
  Strategy strategy;
  double f;            // exact when SolverConfig::audit is set
  double feasibility;  // |e^T x| / (1 + ||x||_1)
  double drift;        // residual drift found by the audit (0 otherwise)
};

enum class SolveStatus : std::uint8_t { kOptimal, kMaxIters };

const char* status_name(SolveStatus s);

struct SolverResult {
  Vector x_star;
  double objective = 0.0;
  double gap = 0.0;       // eta_max - eta_min at the final full-gradient check
  double eta_min = 0.0;
  double eta_max = 0.0;
  double scale = 1.0;     // 1 + |eta_min| + |eta_max|
  long outer_iters = 0;
  long mvp_iters = 0;
  long ac2cd_inner_steps = 0;
  long eliminated = 0;
  double max_rel_increase = 0.0;
  SolveStatus status = SolveStatus::kMaxIters;
  Mask removed;
  // Active-set estimate at x_star, built from the final gradient and mu(x_star).
  std::vector<Index> final_active;
  std::vector<IterationRecord> trace;
};

// 0.5 ||r||^2 + lambda ||x||_1 with r = A x - y supplied by the caller.
double objective(const Problem& p, const Vector& x, const Vector& r);

Vector residual(const Problem& p, const Vector& x);

// |e^T x| / (1 + ||x||_1)
double feasibility_violation(const Vector& x);

// Recomputes r and f from scratch; returns ||r_old - r_new||_inf.
double refresh_residual(const Problem& p, SolverState& state);

// State at x with r, f recomputed, theta = theta_init, rng seeded from cfg.
SolverState make_state(const Problem& p, const SolverConfig& cfg, Vector x);

}  // namespace zsl
