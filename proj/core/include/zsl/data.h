#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "zsl/problem.h"

namespace zsl {

struct Dataset {
  Matrix x;  // compositional Z or design matrix A
  Vector y;
  bool is_compositional = false;
  bool is_log_transformed = false;
  bool is_centered = false;
  // Offsets removed by center(); zero until centering.
  Vector column_means;
  double y_mean = 0.0;

  Index rows() const { return x.rows(); }
  Index cols() const { return x.cols(); }
};

// Design matrix from X.csv and response from a single-column y.csv. A first
// row that does not parse as numbers is treated as a header. Throws
// Error(kParse) naming the line (and column) of ragged rows or bad cells.
Dataset load_csv(const std::filesystem::path& x_path,
                 const std::filesystem::path& y_path);

// Same, with the response taken from the last column of a single file.
Dataset load_csv(const std::filesystem::path& path);

// Numeric CSV reader shared by the loaders.
Matrix read_csv_matrix(const std::filesystem::path& path);

// Writes values with 17 significant digits so that reading back is exact.
void write_csv(const std::filesystem::path& path, const Matrix& m);
void write_csv(const std::filesystem::path& path, const Vector& v);

// A_ij = log(Z_ij). Throws kNonPositiveEntry with coordinates.
Dataset log_transform(const Dataset& d);

// Shifts each column and y to mean zero. Idempotent; offsets accumulate in
// column_means / y_mean.
Dataset center(const Dataset& d);

// Rows of Z lie in the positive simplex (entries > 0, row sum within tol of 1).
bool rows_in_simplex(const Matrix& z, double tol = 1e-8);

enum class CoefMode { kPaperSix, kRandomFraction };

struct SyntheticSpec {
  Index m = 200;
  Index n = 400;
  CoefMode coef_mode = CoefMode::kPaperSix;
  double fraction = 0.05;  // kRandomFraction only
  double low = -1.0;
  double high = 1.0;
  double noise_sd = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticData {
  Dataset data;  // compositional Z with y = log(Z) x_true + noise
  Vector x_true;
};

// Log-contrast benchmark data. Draw order from one NormalStream(seed):
//   1. M row by row: M_i1 = e, M_it = 0.5 M_i,t-1 + sqrt(0.75) e, plus the mean
//      log(0.5 n) on the first five columns;
//   2. for kRandomFraction: support indices (partial Fisher-Yates), then one
//      uniform per support entry in support order;
//   3. noise, one deviate per row.
SyntheticData gen_synthetic(const SyntheticSpec& spec);

// Dataset bundle: X.csv, y.csv and meta.json inside dir (created if needed).
// meta_extra is merged into meta.json as a JSON object text (may be empty).
void write_bundle(const std::filesystem::path& dir, const Dataset& d,
                  const std::string& meta_extra_json = "");
Dataset read_bundle(const std::filesystem::path& dir);

}  // namespace zsl
