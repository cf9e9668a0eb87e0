#include "zsl/path.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "zsl/solver.h"

namespace zsl {

LambdaGrid lambda_grid(double lmax, int count, double hi_frac, double lo_frac) {
  if (!(lmax > 0.0) || !std::isfinite(lmax)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambda grid needs lambda_max > 0 (x = 0 is optimal otherwise)");
  }
  if (count < 2) {
    throw Error(ErrorCode::kInvalidArgument, "lambda grid needs count >= 2");
  }
  if (!(lo_frac > 0.0 && lo_frac < hi_frac && hi_frac <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambda grid needs 0 < lo_frac < hi_frac <= 1");
  }
  LambdaGrid grid;
  grid.values.reserve(static_cast<std::size_t>(count));
  const double ratio = lo_frac / hi_frac;
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(count - 1);
    grid.values.push_back(hi_frac * lmax * std::pow(ratio, t));
  }
  grid.values.back() = lo_frac * lmax;
  return grid;
}

Index count_nonzeros(const Vector& x) {
  return static_cast<Index>((x.array() != 0.0).count());
}

PathReport solve_path(const Matrix& a, const Vector& y, const LambdaGrid& grid,
                      const SolverConfig& cfg, bool warm_start) {
  if (grid.values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty lambda grid");
  }
  for (std::size_t k = 1; k < grid.values.size(); ++k) {
    if (!(grid.values[k] < grid.values[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lambda grid must be strictly decreasing");
    }
  }
  const Problem base(a, y, grid.values.front());
  PathReport report;
  report.warm_start = warm_start;
  Vector previous;
  for (double lambda : grid.values) {
    const Problem prob = base.with_lambda(lambda);
    const auto t0 = std::chrono::steady_clock::now();
    PathPoint pt;
    pt.lambda = lambda;
    pt.result = warm_start && previous.size() > 0 ? solve_from(prob, cfg, previous)
                                                  : solve(prob, cfg);
    pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                     .count();
    previous = pt.result.x_star;
    report.cumulative_outer_iters += pt.result.outer_iters;
    report.cumulative_mvp_iters += pt.result.mvp_iters;
    report.cumulative_inner_steps += pt.result.ac2cd_inner_steps;
    report.points.push_back(std::move(pt));
  }
  return report;
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_path_csv(const std::filesystem::path& path, const PathReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "lambda,objective,gap,nnz,outer_iters,mvp_iters,inner_steps,status\n";
  for (const auto& pt : report.points) {
    const auto& r = pt.result;
    out << fmt17(pt.lambda) << ',' << fmt17(r.objective) << ',' << fmt17(r.gap)
        << ',' << count_nonzeros(r.x_star) << ',' << r.outer_iters << ','
        << r.mvp_iters << ',' << r.ac2cd_inner_steps << ','
        << status_name(r.status) << '\n';
  }
}

void write_path_json(const std::filesystem::path& path, const PathReport& report) {
  nlohmann::ordered_json j;
  j["warm_start"] = report.warm_start;
  j["cumulative_outer_iters"] = report.cumulative_outer_iters;
  j["cumulative_mvp_iters"] = report.cumulative_mvp_iters;
  j["cumulative_inner_steps"] = report.cumulative_inner_steps;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& pt : report.points) {
    const auto& r = pt.result;
    pts.push_back({{"lambda", pt.lambda},
                   {"objective", r.objective},
                   {"gap", r.gap},
                   {"nnz", count_nonzeros(r.x_star)},
                   {"outer_iters", r.outer_iters},
                   {"mvp_iters", r.mvp_iters},
                   {"inner_steps", r.ac2cd_inner_steps},
                   {"status", status_name(r.status)}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace zsl
