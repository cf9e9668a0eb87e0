#include "cli.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsl/data.h"
#include "zsl/optimality.h"
#include "zsl/path.h"
#include "zsl/solver.h"

namespace zsl::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct DataArgs {
  std::string x_path;
  std::string y_path;
  std::string data_dir;
  bool log_transform = false;
  bool center = false;
};

void add_data_options(CLI::App* cmd, DataArgs& d) {
  cmd->add_option("--x", d.x_path, "design / composition matrix CSV");
  cmd->add_option("--y", d.y_path, "response CSV (one column)");
  cmd->add_option("--data", d.data_dir, "dataset bundle directory (X.csv, y.csv)");
  cmd->add_flag("--log-transform", d.log_transform, "use log(X) as the design");
  cmd->add_flag("--center", d.center, "center the columns of the design and y");
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Dataset load_data(const DataArgs& d) {
  Dataset ds;
  if (!d.data_dir.empty()) {
    ds = read_bundle(d.data_dir);
  } else if (!d.x_path.empty() && !d.y_path.empty()) {
    ds = load_csv(d.x_path, d.y_path);
  } else {
    throw UsageError("give either --data DIR or both --x and --y");
  }
  if (d.log_transform) ds = log_transform(ds);
  if (d.center) ds = center(ds);
  return ds;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  long m = 200;
  long n = 400;
  std::string coef = "paper6";
  double noise_sd = 0.5;
  std::uint64_t seed = 0;
  std::string out;
  bool design = false;
};

SyntheticSpec parse_spec(long m, long n, const std::string& coef,
                         double noise_sd, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.m = m;
  spec.n = n;
  spec.noise_sd = noise_sd;
  spec.seed = seed;
  if (coef == "paper6") {
    spec.coef_mode = CoefMode::kPaperSix;
  } else if (coef.rfind("frac=", 0) == 0) {
    spec.coef_mode = CoefMode::kRandomFraction;
    try {
      spec.fraction = std::stod(coef.substr(5));
    } catch (const std::exception&) {
      throw UsageError("bad --coef value '" + coef + "'");
    }
  } else {
    throw UsageError("--coef must be 'paper6' or 'frac=<fraction>'");
  }
  return spec;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const SyntheticSpec spec = parse_spec(a.m, a.n, a.coef, a.noise_sd, a.seed);
  SyntheticData gen = gen_synthetic(spec);
  if (a.design) {
    gen.data = log_transform(gen.data);
  }
  json extra;
  extra["seed"] = a.seed;
  extra["coef"] = a.coef;
  extra["noise_sd"] = a.noise_sd;
  write_bundle(a.out, gen.data, extra.dump());
  write_csv(fs::path(a.out) / "x_true.csv", gen.x_true);
  out << "wrote " << gen.data.rows() << "x" << gen.data.cols() << " dataset to "
      << a.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  DataArgs data;
  std::optional<double> lambda;
  std::optional<double> lambda_frac;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  long max_iters = 1000000;
  std::string out;
};

json result_json(const Dataset& ds, const DataArgs& d, double lambda,
                 double lmax, const SolverConfig& cfg, const SolverResult& r) {
  json j;
  j["format"] = "zsl-result";
  j["version"] = 1;
  j["m"] = ds.rows();
  j["n"] = ds.cols();
  j["lambda"] = lambda;
  j["lambda_max"] = lmax;
  j["log_transform"] = d.log_transform;
  j["center"] = d.center;
  j["eps"] = cfg.eps_opt;
  j["seed"] = cfg.seed;
  j["status"] = status_name(r.status);
  j["objective"] = r.objective;
  j["gap"] = r.gap;
  j["eta_min"] = r.eta_min;
  j["eta_max"] = r.eta_max;
  j["scale"] = r.scale;
  j["nnz"] = count_nonzeros(r.x_star);
  j["outer_iters"] = r.outer_iters;
  j["mvp_iters"] = r.mvp_iters;
  j["inner_steps"] = r.ac2cd_inner_steps;
  j["eliminated"] = r.eliminated;
  json removed = json::array();
  for (std::size_t i = 0; i < r.removed.size(); ++i) {
    if (r.removed[i]) removed.push_back(i);
  }
  j["removed"] = removed;
  json x = json::array();
  for (Index i = 0; i < r.x_star.size(); ++i) {
    if (r.x_star[i] != 0.0) x.push_back(json::array({i, r.x_star[i]}));
  }
  j["x"] = x;
  return j;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  if (a.lambda.has_value() == a.lambda_frac.has_value()) {
    throw UsageError("give exactly one of --lambda and --lambda-frac");
  }
  const Dataset ds = load_data(a.data);
  const double lmax = lambda_max(ds.x, ds.y);
  const double lambda = a.lambda ? *a.lambda : *a.lambda_frac * lmax;

  SolverConfig cfg;
  cfg.eps_opt = a.eps;
  cfg.seed = a.seed;
  cfg.max_outer_iters = a.max_iters;
  const Problem prob(ds.x, ds.y, lambda);
  const SolverResult r = solve(prob, cfg);

  const std::string text = result_json(ds, a.data, lambda, lmax, cfg, r).dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_text(a.out, text);
    out << "status=" << status_name(r.status) << " objective=" << fmt17(r.objective)
        << " gap=" << fmt17(r.gap) << " nnz=" << count_nonzeros(r.x_star) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  DataArgs data;
  std::string solution;
  std::optional<double> lambda;
  std::optional<double> eps;
};

int cmd_check(CheckArgs a, std::ostream& out) {
  std::ifstream in(a.solution);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + a.solution);
  nlohmann::json sol;
  try {
    sol = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, a.solution + ": " + e.what());
  }
  // Transforms recorded with the solution apply unless overridden.
  a.data.log_transform = a.data.log_transform || sol.value("log_transform", false);
  a.data.center = a.data.center || sol.value("center", false);
  const Dataset ds = load_data(a.data);

  if (!a.lambda && !sol.contains("lambda")) {
    throw UsageError("--lambda missing and not recorded in the solution");
  }
  const double lambda = a.lambda ? *a.lambda : sol.at("lambda").get<double>();
  const double eps = a.eps ? *a.eps : sol.value("eps", 1e-6);

  Vector x = Vector::Zero(ds.cols());
  try {
    for (const auto& entry : sol.at("x")) {
      const auto i = entry.at(0).get<Index>();
      if (i < 0 || i >= ds.cols()) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "solution index " + std::to_string(i) + " out of range");
      }
      x[i] = entry.at(1).get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, a.solution + ": " + e.what());
  }

  const Problem prob(ds.x, ds.y, lambda);
  const Vector r = residual(prob, x);
  const Vector grad = full_gradient(prob, r);
  const EtaBounds eb = eta_bounds(x, grad, lambda);
  const double scale = optimality_scale(eb);
  const bool zero = (x.array() == 0.0).all();
  const double mu = zero ? 0.5 * (eb.eta_min + eb.eta_max) : multiplier(x, grad, lambda, 1.0);
  const KktReport kkt = kkt_check(x, grad, lambda, mu);
  const bool optimal = eb.gap <= eps * scale;

  out << "objective=" << fmt17(objective(prob, x, r)) << "\n"
      << "eta_min=" << fmt17(eb.eta_min) << "\n"
      << "eta_max=" << fmt17(eb.eta_max) << "\n"
      << "gap=" << fmt17(eb.gap) << "\n"
      << "scale=" << fmt17(scale) << "\n"
      << "mu=" << fmt17(kkt.mu) << "\n"
      << "kkt_max_violation=" << fmt17(kkt.max_violation) << "\n"
      << "feasibility=" << fmt17(feasibility_violation(x)) << "\n"
      << "optimal=" << (optimal ? "true" : "false") << "\n";
  return optimal ? kOk : kNotOptimal;
}

// ---------------------------------------------------------------- path

struct PathArgs {
  DataArgs data;
  int grid_count = 10;
  double hi_frac = 0.95;
  double lo_frac = 1e-3;
  bool cold = false;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  std::string out;
  std::string json_out;
};

int cmd_path(const PathArgs& a, std::ostream& out) {
  const Dataset ds = load_data(a.data);
  const double lmax = lambda_max(ds.x, ds.y);
  const LambdaGrid grid = lambda_grid(lmax, a.grid_count, a.hi_frac, a.lo_frac);
  SolverConfig cfg;
  cfg.eps_opt = a.eps;
  cfg.seed = a.seed;
  const PathReport report = solve_path(ds.x, ds.y, grid, cfg, !a.cold);
  write_path_csv(a.out, report);
  const fs::path json_path =
      a.json_out.empty() ? fs::path(a.out).replace_extension(".json") : fs::path(a.json_out);
  write_path_json(json_path, report);
  out << "lambda_max=" << fmt17(lmax) << " points=" << report.points.size()
      << " warm=" << (report.warm_start ? "true" : "false")
      << " cumulative_inner_steps=" << report.cumulative_inner_steps << "\n";
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite = "synthetic";
  std::vector<std::string> sizes{"m=200:n=200,400,1000"};
  int seeds = 10;
  std::string coef = "paper6";
  int grid_count = 5;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  std::string out;
};

struct SizeSpec {
  long m;
  std::vector<long> ns;
};

SizeSpec parse_sizes(const std::string& s) {
  // m=200:n=200,400,1000
  const auto colon = s.find(':');
  if (s.rfind("m=", 0) != 0 || colon == std::string::npos ||
      s.compare(colon + 1, 2, "n=") != 0) {
    throw UsageError("--sizes must look like m=200:n=200,400,1000");
  }
  SizeSpec spec;
  try {
    spec.m = std::stol(s.substr(2, colon - 2));
    std::stringstream ns(s.substr(colon + 3));
    std::string item;
    while (std::getline(ns, item, ',')) spec.ns.push_back(std::stol(item));
  } catch (const std::exception&) {
    throw UsageError("cannot parse --sizes '" + s + "'");
  }
  if (spec.ns.empty()) throw UsageError("--sizes lists no n values");
  return spec;
}

bool alternates(const std::vector<IterationRecord>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k].strategy == Strategy::kMvp && trace[k - 1].strategy == Strategy::kMvp) {
      return false;
    }
  }
  return true;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.suite != "synthetic") throw UsageError("only --suite synthetic is available");
  if (a.seeds < 1) throw UsageError("--seeds must be >= 1");
  std::vector<SizeSpec> sizes;
  for (const auto& s : a.sizes) sizes.push_back(parse_sizes(s));

  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) throw Error(ErrorCode::kIo, "cannot write " + a.out);
  csv << "m,n,seed,lambda_index,lambda,objective,gap,status,nnz,outer_iters,"
         "mvp_iters,inner_steps,alternation_ok,time_s\n";

  bool all_alternate = true;
  for (const auto& size : sizes) {
    for (long n : size.ns) {
      for (int s = 0; s < a.seeds; ++s) {
        const std::uint64_t inst_seed = a.seed + static_cast<std::uint64_t>(s);
        const SyntheticData gen =
            gen_synthetic(parse_spec(size.m, n, a.coef, 0.5, inst_seed));
        const Dataset ds = log_transform(gen.data);
        const double lmax = lambda_max(ds.x, ds.y);
        const LambdaGrid grid = lambda_grid(lmax, a.grid_count);
        const Problem base(ds.x, ds.y, grid.values.front());
        SolverConfig cfg;
        cfg.eps_opt = a.eps;
        cfg.seed = inst_seed;
        cfg.record_trace = true;
        for (std::size_t k = 0; k < grid.values.size(); ++k) {
          const auto t0 = std::chrono::steady_clock::now();
          const SolverResult r = solve(base.with_lambda(grid.values[k]), cfg);
          const double secs =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          const bool alt = alternates(r.trace);
          all_alternate = all_alternate && alt;
          csv << size.m << ',' << n << ',' << inst_seed << ',' << k + 1 << ','
              << fmt17(grid.values[k]) << ',' << fmt17(r.objective) << ','
              << fmt17(r.gap) << ',' << status_name(r.status) << ','
              << count_nonzeros(r.x_star) << ',' << r.outer_iters << ','
              << r.mvp_iters << ',' << r.ac2cd_inner_steps << ','
              << (alt ? 1 : 0) << ',' << secs << '\n';
        }
      }
      out << "m=" << size.m << " n=" << n << " done (" << a.seeds << " seeds)\n";
    }
  }
  out << "alternation_ok=" << (all_alternate ? "true" : "false") << "\n";
  return kOk;
}

void report_error(std::ostream& err, std::string_view code, const std::string& msg) {
  json j;
  j["error"] = code;
  j["message"] = msg;
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Zero-sum constrained lasso solver"};
  app.name("zsl");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic log-contrast dataset");
  gen_cmd->add_option("--m", gen.m, "samples")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "features")->check(CLI::Range(2L, 100000000L));
  gen_cmd->add_option("--coef", gen.coef, "paper6 | frac=<fraction>");
  gen_cmd->add_option("--noise-sd", gen.noise_sd, "noise standard deviation");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_flag("--design", gen.design, "write log(Z) instead of Z");

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "solve one problem instance");
  add_data_options(solve_cmd, sol.data);
  solve_cmd->add_option("--lambda", sol.lambda, "regularization weight")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--lambda-frac", sol.lambda_frac, "lambda as a fraction of lambda_max")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--eps", sol.eps, "relative optimality tolerance");
  solve_cmd->add_option("--seed", sol.seed, "random seed");
  solve_cmd->add_option("--max-iters", sol.max_iters, "outer iteration limit");
  solve_cmd->add_option("--out", sol.out, "result JSON path (stdout if omitted)");

  PathArgs path;
  auto* path_cmd = app.add_subcommand("path", "solve along a geometric lambda grid");
  add_data_options(path_cmd, path.data);
  path_cmd->add_option("--grid-count", path.grid_count, "number of grid points");
  path_cmd->add_option("--hi-frac", path.hi_frac, "largest lambda / lambda_max");
  path_cmd->add_option("--lo-frac", path.lo_frac, "smallest lambda / lambda_max");
  auto* warm = path_cmd->add_flag("--warm", "warm start from the previous solution (default)");
  auto* cold = path_cmd->add_flag("--cold", path.cold, "solve every point from x = 0");
  warm->excludes(cold);
  path_cmd->add_option("--eps", path.eps, "relative optimality tolerance");
  path_cmd->add_option("--seed", path.seed, "random seed");
  path_cmd->add_option("--out", path.out, "report CSV path")->required();
  path_cmd->add_option("--json", path.json_out, "report JSON path (default: CSV path with .json)");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "verify optimality of a stored solution");
  add_data_options(check_cmd, chk.data);
  check_cmd->add_option("--solution", chk.solution, "result JSON")->required();
  check_cmd->add_option("--lambda", chk.lambda, "override the recorded lambda");
  check_cmd->add_option("--eps", chk.eps, "override the recorded tolerance");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "run the synthetic benchmark grid");
  bench_cmd->add_option("--suite", bench.suite, "benchmark suite (synthetic)");
  bench_cmd->add_option("--sizes", bench.sizes, "m=<m>:n=<n1>,<n2>,...");
  bench_cmd->add_option("--seeds", bench.seeds, "instances per size");
  bench_cmd->add_option("--coef", bench.coef, "paper6 | frac=<fraction>");
  bench_cmd->add_option("--grid-count", bench.grid_count, "lambda values per instance");
  bench_cmd->add_option("--eps", bench.eps, "relative optimality tolerance");
  bench_cmd->add_option("--seed", bench.seed, "base seed; instance s uses seed + s");
  bench_cmd->add_option("--out", bench.out, "table CSV path")->required();

  std::vector<std::string> argv_store{"zsl"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return kUsageError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(sol, out);
    if (*path_cmd) return cmd_path(path, out);
    if (*check_cmd) return cmd_check(chk, out);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const UsageError& e) {
    report_error(err, "Usage", e.what());
    return kUsageError;
  } catch (const Error& e) {
    report_error(err, error_code_name(e.code()), e.what());
    return kDataError;
  } catch (const std::exception& e) {
    report_error(err, "Internal", e.what());
    return kDataError;
  }
  return kUsageError;
}

}  // namespace zsl::cli
