#include "zsl/data.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zsl/random.h"

namespace zsl {

namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::kParse, path.string() + ": " + what);
}

}  // namespace

Matrix read_csv_matrix(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  long line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto cells = split(view);
    std::vector<double> row(cells.size());
    std::size_t bad = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], row[c])) {
        bad = c;
        break;
      }
    }
    if (bad != cells.size()) {
      if (first) {  // header row
        first = false;
        cols = cells.size();
        continue;
      }
      parse_error(path, "line " + std::to_string(line_no) + ", column " +
                            std::to_string(bad + 1) + ": non-numeric cell '" +
                            std::string(trim(cells[bad])) + "'");
    }
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols) {
      parse_error(path, "line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " fields, expected " +
                            std::to_string(cols));
    }
    first = false;
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) parse_error(path, "empty file");

  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = values[r * cols + c];
    }
  }
  return m;
}

Dataset load_csv(const fs::path& x_path, const fs::path& y_path) {
  Dataset d;
  d.x = read_csv_matrix(x_path);
  const Matrix ym = read_csv_matrix(y_path);
  if (ym.cols() != 1) {
    parse_error(y_path, "response file must have exactly one column");
  }
  if (ym.rows() != d.x.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "X has " + std::to_string(d.x.rows()) + " rows but y has " +
                    std::to_string(ym.rows()));
  }
  d.y = ym.col(0);
  return d;
}

Dataset load_csv(const fs::path& path) {
  const Matrix all = read_csv_matrix(path);
  if (all.cols() < 2) {
    parse_error(path, "need at least one feature column plus the response");
  }
  Dataset d;
  d.x = all.leftCols(all.cols() - 1);
  d.y = all.col(all.cols() - 1);
  return d;
}

void write_csv(const fs::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  std::string line;
  for (Index r = 0; r < m.rows(); ++r) {
    line.clear();
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) line += ',';
      line += format_double(m(r, c));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void write_csv(const fs::path& path, const Vector& v) {
  write_csv(path, Matrix(v));
}

Dataset log_transform(const Dataset& d) {
  for (Index j = 0; j < d.x.cols(); ++j) {
    for (Index i = 0; i < d.x.rows(); ++i) {
      if (!(d.x(i, j) > 0.0)) {
        throw Error(ErrorCode::kNonPositiveEntry,
                    "log transform needs strictly positive entries; row " +
                        std::to_string(i + 1) + ", column " +
                        std::to_string(j + 1) + " is " + format_double(d.x(i, j)));
      }
    }
  }
  Dataset out = d;
  out.x = d.x.array().log().matrix();
  out.is_log_transformed = true;
  return out;
}

Dataset center(const Dataset& d) {
  Dataset out = d;
  const Eigen::RowVectorXd means = d.x.colwise().mean();
  const double y_mean = d.y.mean();
  out.x.rowwise() -= means;
  out.y.array() -= y_mean;
  if (out.column_means.size() != d.x.cols()) {
    out.column_means = Vector::Zero(d.x.cols());
  }
  out.column_means += means.transpose();
  out.y_mean += y_mean;
  out.is_centered = true;
  return out;
}

bool rows_in_simplex(const Matrix& z, double tol) {
  if ((z.array() <= 0.0).any()) return false;
  return ((z.rowwise().sum().array() - 1.0).abs() <= tol).all();
}

void SyntheticSpec::validate() const {
  if (m < 1 || n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need m >= 1 and n >= 2");
  }
  if (coef_mode == CoefMode::kPaperSix && n < 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "six-coefficient model needs n >= 8");
  }
  if (coef_mode == CoefMode::kRandomFraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "fraction must lie in (0, 1]");
    }
    if (!(low < high)) {
      throw Error(ErrorCode::kInvalidArgument, "need low < high");
    }
  }
  if (!(noise_sd > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise_sd must be > 0");
  }
}

SyntheticData gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const Index m = spec.m;
  const Index n = spec.n;
  NormalStream stream(spec.seed);

  const double major = std::log(0.5 * static_cast<double>(n));
  const double innov = std::sqrt(0.75);
  Matrix z(m, n);
  Eigen::RowVectorXd row(n);
  for (Index i = 0; i < m; ++i) {
    double prev = stream.next();
    row[0] = prev;
    for (Index t = 1; t < n; ++t) {
      prev = 0.5 * prev + innov * stream.next();
      row[t] = prev;
    }
    for (Index t = 0; t < std::min<Index>(5, n); ++t) row[t] += major;
    // softmax, shifted by the row max for range safety
    const double top = row.maxCoeff();
    Eigen::RowVectorXd e = (row.array() - top).exp();
    z.row(i) = e / e.sum();
  }

  Vector x_true = Vector::Zero(n);
  if (spec.coef_mode == CoefMode::kPaperSix) {
    const double six[8] = {1.0, -0.8, 0.6, 0.0, 0.0, -1.5, -0.5, 1.2};
    for (Index t = 0; t < 8; ++t) x_true[t] = six[t];
  } else {
    const Index k = std::max<Index>(
        2, static_cast<Index>(std::llround(spec.fraction * static_cast<double>(n))));
    if (k > n) {
      throw Error(ErrorCode::kInvalidArgument, "support larger than n");
    }
    std::vector<Index> idx(static_cast<std::size_t>(n));
    for (Index t = 0; t < n; ++t) idx[static_cast<std::size_t>(t)] = t;
    for (Index t = 0; t < k; ++t) {
      const auto pick = static_cast<std::size_t>(t) +
                        stream.index(static_cast<std::uint64_t>(n - t));
      std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
    }
    double mean = 0.0;
    for (Index t = 0; t < k; ++t) {
      const double v = spec.low + (spec.high - spec.low) * stream.uniform();
      x_true[idx[static_cast<std::size_t>(t)]] = v;
      mean += v;
    }
    mean /= static_cast<double>(k);
    for (Index t = 0; t < k; ++t) x_true[idx[static_cast<std::size_t>(t)]] -= mean;
  }

  const Matrix a = z.array().log().matrix();
  Vector y = a * x_true;
  for (Index i = 0; i < m; ++i) y[i] += spec.noise_sd * stream.next();

  SyntheticData out;
  out.data.x = std::move(z);
  out.data.y = std::move(y);
  out.data.is_compositional = true;
  out.x_true = std::move(x_true);
  return out;
}

void write_bundle(const fs::path& dir, const Dataset& d,
                  const std::string& meta_extra_json) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  write_csv(dir / "X.csv", d.x);
  write_csv(dir / "y.csv", d.y);

  nlohmann::ordered_json meta;
  meta["m"] = d.rows();
  meta["n"] = d.cols();
  meta["is_compositional"] = d.is_compositional;
  meta["is_log_transformed"] = d.is_log_transformed;
  meta["is_centered"] = d.is_centered;
  if (!meta_extra_json.empty()) {
    const auto extra = nlohmann::ordered_json::parse(meta_extra_json);
    for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  }
  std::ofstream out(dir / "meta.json", std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write meta.json");
  out << meta.dump(2) << '\n';
}

Dataset read_bundle(const fs::path& dir) {
  Dataset d = load_csv(dir / "X.csv", dir / "y.csv");
  std::ifstream in(dir / "meta.json");
  if (in) {
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "meta.json: " + std::string(e.what()));
    }
    d.is_compositional = meta.value("is_compositional", false);
    d.is_log_transformed = meta.value("is_log_transformed", false);
    d.is_centered = meta.value("is_centered", false);
  }
  return d;
}

}  // namespace zsl
