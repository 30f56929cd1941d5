#include "experiment.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string_view>

#include "sketchsolve/error.hpp"
#include "sketchsolve/matrix_io.hpp"
#include "sketchsolve/parallel.hpp"
#include "sketchsolve/solver.hpp"
#include "sketchsolve/spectra.hpp"
#include "sketchsolve/synthetic.hpp"
#include "sketchsolve/theory.hpp"

namespace sketchsolve::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string config_header(const Json& cfg) { return "# config: " + cfg.dump() + "\n"; }

/// Collects output files in memory and writes them together; if any write
/// fails, every file written by this set is removed again.
class Outputs {
 public:
  void add(fs::path path, std::string content) {
    files_.emplace_back(std::move(path), std::move(content));
  }

  void commit() {
    std::vector<fs::path> written;
    try {
      for (const auto& [path, content] : files_) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorCode::Io, "cannot write '" + path.string() + "'");
        written.push_back(path);
        out << content;
        out.close();
        require(static_cast<bool>(out), ErrorCode::Io, "write failed for '" + path.string() + "'");
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : written) fs::remove(p, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

template <typename T>
std::vector<T> parse_number_list(const std::string& text, std::string_view what) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      if constexpr (std::is_floating_point_v<T>) {
        out.push_back(static_cast<T>(std::stod(item, &used)));
      } else {
        out.push_back(static_cast<T>(std::stoll(item, &used)));
      }
      require(used == item.size(), ErrorCode::BadConfig, "");
    } catch (const std::exception&) {
      fail(ErrorCode::BadConfig, std::string(what) + ": bad list entry '" + item + "'");
    }
  }
  return out;
}

bool is_ihs(const std::string& solver) { return solver.rfind("ihs-", 0) == 0; }

SketchKind ihs_kind(const std::string& solver) {
  if (solver == "ihs-gauss") return SketchKind::Gaussian;
  if (solver == "ihs-haar") return SketchKind::Haar;
  if (solver == "ihs-srht") return SketchKind::Srht;
  fail(ErrorCode::BadConfig, "unknown solver '" + solver + "'");
}

void validate_solver(const std::string& solver) {
  if (is_ihs(solver)) {
    ihs_kind(solver);
    return;
  }
  require(solver == "cg" || solver == "pcg" || solver == "direct", ErrorCode::BadConfig,
          "unknown solver '" + solver +
              "' (expected ihs-gauss, ihs-haar, ihs-srht, cg, pcg or direct)");
}

InitMode parse_init(const std::string& name) {
  if (name == "zero") return InitMode::Zero;
  if (name == "isotropic") return InitMode::IsotropicDelta;
  fail(ErrorCode::BadConfig, "unknown init '" + name + "' (expected zero or isotropic)");
}

SketchKind pcg_kind(Index n) { return is_power_of_two(n) ? SketchKind::Srht : SketchKind::Gaussian; }

struct SolverRequest {
  std::string solver;
  Index m = 0;
  Index iters = 10;
  Index refresh_period = 1;
  double tol = 0.0;
  std::uint64_t seed = 0;
  InitMode init = InitMode::Zero;
  std::optional<SolverSchedule> schedule;
};

SolveTrace dispatch(const Problem& p, const SolverRequest& req, const Vector& x_star) {
  std::optional<Vector> x0;
  if (req.init == InitMode::IsotropicDelta && !is_ihs(req.solver) && req.solver != "direct") {
    RngStream init_rng = RngStream(req.seed).substream(0);
    x0 = isotropic_start(p, x_star, init_rng);
  }
  if (is_ihs(req.solver)) {
    IhsConfig cfg;
    cfg.kind = ihs_kind(req.solver);
    cfg.m = req.m;
    require(cfg.m > 0, ErrorCode::BadConfig, "--m is required for IHS solvers");
    cfg.refresh_period = req.refresh_period;
    cfg.max_iters = req.iters;
    cfg.seed = req.seed;
    cfg.init = req.init;
    cfg.tol = req.tol;
    const SolverSchedule sched = req.schedule ? *req.schedule : SolverSchedule::optimal_for(cfg.kind);
    return ihs_solve(p, cfg, sched, x_star);
  }
  if (req.solver == "cg") return cg_solve(p, req.iters, req.tol, x_star, x0);
  if (req.solver == "pcg") {
    return pcg_solve(p, req.m, pcg_kind(p.n()), req.iters, req.tol, req.seed, x_star, x0);
  }
  if (req.solver == "direct") return direct_solve(p, x_star);
  fail(ErrorCode::BadConfig, "unknown solver '" + req.solver + "'");
}

Json json_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

// ---------------------------------------------------------------- configs

Json to_json(const TheoryArgs& a) {
  return {{"command", "theory"}, {"gamma", a.gamma}, {"xi", a.xi}, {"n", a.n}, {"eps", a.eps}};
}

Json to_json(const SpectraArgs& a) {
  return {{"command", "spectra"}, {"kind", a.kind}, {"n", a.n}, {"d", a.d}, {"m", a.m},
          {"trials", a.trials}, {"bins", a.bins}, {"seed", a.seed}, {"out", a.out.string()}};
}

Json to_json(const SolveArgs& a) {
  return {{"command", "solve"}, {"matrix", a.matrix.string()}, {"rhs", a.rhs.string()},
          {"solver", a.solver}, {"m", a.m}, {"iters", a.iters},
          {"refresh_period", a.refresh_period}, {"seed", a.seed}, {"tol", a.tol},
          {"init", a.init}, {"mu", a.mu}, {"beta", a.beta}, {"no_timing", a.no_timing},
          {"out", a.out.string()}, {"x_out", a.x_out.string()}};
}

Json to_json(const BenchArgs& a) {
  return {{"command", "bench"}, {"preset", a.preset}, {"n", a.n}, {"d", a.d},
          {"decay", a.decay}, {"m_list", a.m_list}, {"solvers", a.solvers},
          {"trials", a.trials}, {"iters", a.iters}, {"refresh_period", a.refresh_period},
          {"seed", a.seed}, {"out", a.out.string()}};
}

Json to_json(const GenerateArgs& a) {
  return {{"command", "generate"}, {"n", a.n}, {"d", a.d}, {"decay", a.decay},
          {"seed", a.seed}, {"format", a.format}, {"matrix", a.matrix.string()},
          {"rhs", a.rhs.string()}};
}

// ---------------------------------------------------------------- theory

std::string theory_report(const TheoryArgs& args) {
  const AspectRatios r(args.gamma, args.xi);
  const TheoryPoint point = closed_forms(r);
  const double d = std::max(1.0, std::round(args.gamma * static_cast<double>(args.n)));
  const CostModel cost = cost_model(static_cast<double>(args.n), d, args.eps);

  const std::vector<std::pair<std::string, double>> rows = {
      {"theta1", point.theta1},
      {"theta2", point.theta2},
      {"mu", point.mu_star},
      {"rho_g", point.rho_g},
      {"rho_h", point.rate},
      {"support_lower_bound", support_lower_bound(r)},
      {"cost_ratio", cost.ratio},
  };
  if (args.json) {
    Json out = {{"gamma", args.gamma}, {"xi", args.xi}};
    for (const auto& [key, value] : rows) out[key] = json_or_null(value);
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out.precision(12);
  for (const auto& [key, value] : rows) out << key << '=' << value << '\n';
  return out.str();
}

// ---------------------------------------------------------------- spectra

void run_spectra(const SpectraArgs& args) {
  require(!args.out.empty(), ErrorCode::BadConfig, "spectra: --out is required");
  const SketchKind kind = parse_sketch_kind(args.kind);
  RngStream rng(args.seed);
  const SpectralReport rep = empirical_spectrum(kind, args.n, args.d, args.m, args.trials, args.bins, rng);

  const double shape = static_cast<double>(args.d) / static_cast<double>(args.m);
  std::optional<HaarTheoryCdf> theory;
  if (args.m < args.n) {
    theory.emplace(static_cast<double>(args.d) / static_cast<double>(args.n),
                   static_cast<double>(args.m) / static_cast<double>(args.n));
  }

  const Json cfg = to_json(args);
  std::string csv = config_header(cfg);
  csv += "bin_left,bin_right,density_empirical,density_mp,density_haar_theory\n";
  for (std::size_t i = 0; i < rep.histogram_density.size(); ++i) {
    const double left = rep.histogram_edges[i];
    const double right = rep.histogram_edges[i + 1];
    const double mid = 0.5 * (left + right);
    const double haar = theory ? theory->density(mid) : std::numeric_limits<double>::quiet_NaN();
    csv += fmt_double(left) + ',' + fmt_double(right) + ',' + fmt_double(rep.histogram_density[i]) +
           ',' + fmt_double(mp_density(mid, shape)) + ',' + fmt_double(haar) + '\n';
  }

  Json side = {{"config", cfg},
               {"scale", rep.scale},
               {"eigenvalue_count", rep.eigenvalues.size()},
               {"min_eigenvalue_unscaled", rep.min_unscaled},
               {"max_eigenvalue_unscaled", rep.max_unscaled},
               {"theta1_hat", rep.theta1_hat},
               {"theta2_hat", rep.theta2_hat},
               {"ks_to_mp", rep.ks_to_mp},
               {"ks_to_haar_theory", json_or_null(rep.ks_to_haar_theory)}};
  const AspectRatios r = AspectRatios::from_sizes(args.n, args.d, args.m);
  const TheoryPoint point =
      kind == SketchKind::Gaussian ? gaussian_closed_forms(r) : closed_forms(r);
  side["theta1_theory"] = point.theta1;
  side["theta2_theory"] = point.theta2;
  if (kind != SketchKind::Gaussian) side["support_lower_bound"] = support_lower_bound(r);

  Outputs outputs;
  outputs.add(args.out, std::move(csv));
  outputs.add(fs::path(args.out.string() + ".json"), side.dump(2) + "\n");
  outputs.commit();
}

// ---------------------------------------------------------------- solve

void run_solve(const SolveArgs& args) {
  require(!args.out.empty(), ErrorCode::BadConfig, "solve: --out is required");
  validate_solver(args.solver);
  Problem p(read_matrix(args.matrix), read_vector(args.rhs));
  const Vector x_star = direct_lstsq(p.a(), p.b());

  SolverRequest req;
  req.solver = args.solver;
  req.m = args.m;
  req.iters = args.iters;
  req.refresh_period = args.refresh_period;
  req.tol = args.tol;
  req.seed = args.seed;
  req.init = parse_init(args.init);
  if (!args.mu.empty()) {
    req.schedule = SolverSchedule::custom(args.mu, args.beta.empty() ? std::vector<double>{0.0} : args.beta);
  } else {
    require(args.beta.empty(), ErrorCode::BadSchedule, "--beta needs --mu");
  }
  const SolveTrace trace = dispatch(p, req, x_star);

  std::string csv = config_header(to_json(args));
  csv += "iter,sq_error_or_residual,cum_seconds\n";
  for (std::size_t t = 0; t < trace.errors.size(); ++t) {
    const double secs = args.no_timing ? 0.0 : trace.cum_seconds[t];
    csv += std::to_string(t) + ',' + fmt_double(trace.errors[t]) + ',' + fmt_double(secs) + '\n';
  }
  Outputs outputs;
  outputs.add(args.out, std::move(csv));
  if (!args.x_out.empty()) {
    std::string x_csv;
    for (Index i = 0; i < trace.x.size(); ++i) x_csv += fmt_double(trace.x[i]) + '\n';
    outputs.add(args.x_out, std::move(x_csv));
  }
  outputs.commit();
}

// ---------------------------------------------------------------- bench

Json run_bench(const BenchArgs& args) {
  require(args.preset == "synthetic", ErrorCode::BadConfig,
          "bench: unknown preset '" + args.preset + "' (expected synthetic)");
  require(!args.out.empty(), ErrorCode::BadConfig, "bench: --out is required");
  require(!args.solvers.empty(), ErrorCode::BadConfig, "bench: --solvers is empty");
  require(args.trials >= 1, ErrorCode::BadConfig, "bench: --trials must be >= 1");
  require(args.iters >= 1, ErrorCode::BadConfig, "bench: --iters must be >= 1");

  struct Run {
    std::string solver;
    Index m;
  };
  std::vector<Run> runs;
  for (const auto& solver : args.solvers) {
    validate_solver(solver);
    require(solver != "ihs-srht" || is_power_of_two(args.n), ErrorCode::NotPowerOfTwo,
            "bench: SRHT needs n a power of two");
    if (solver == "cg" || solver == "direct") {
      runs.push_back({solver, 0});
      continue;
    }
    require(!args.m_list.empty(), ErrorCode::BadConfig, "bench: --m-list is empty");
    for (Index m : args.m_list) runs.push_back({solver, m});
  }

  const RngStream root(args.seed);
  const SyntheticProblem sp = generate_problem(args.n, args.d, args.decay, root.substream(0).key());
  const Problem& p = sp.problem;
  const Vector x_star = direct_lstsq(p.a(), p.b());
  const RngStream trial_root = root.substream(1);

  // curves[run][trial]: ||Delta_t||^2 / ||Delta_0||^2
  std::vector<std::vector<std::vector<double>>> curves(
      runs.size(), std::vector<std::vector<double>>(static_cast<std::size_t>(args.trials)));
  parallel_for(static_cast<std::size_t>(args.trials), [&](std::size_t t) {
    const std::uint64_t trial_seed = trial_root.substream(t).key();
    for (std::size_t k = 0; k < runs.size(); ++k) {
      SolverRequest req;
      req.solver = runs[k].solver;
      req.m = runs[k].m;
      req.iters = args.iters;
      req.refresh_period = args.refresh_period;
      req.seed = trial_seed;
      req.init = runs[k].solver == "direct" ? InitMode::Zero : InitMode::IsotropicDelta;
      const SolveTrace trace = dispatch(p, req, x_star);
      auto& curve = curves[k][t];
      curve.reserve(trace.errors.size());
      for (double e : trace.errors) curve.push_back(e / trace.errors.front());
    }
  });

  const Json cfg = to_json(args);
  Json summary = {{"config", cfg}, {"runs", Json::array()}};
  Outputs outputs;
  std::error_code ec;
  fs::create_directories(args.out, ec);
  require(!ec, ErrorCode::Io, "cannot create '" + args.out.string() + "'");

  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::size_t len = std::numeric_limits<std::size_t>::max();
    for (const auto& c : curves[k]) len = std::min(len, c.size());
    std::vector<double> mean(len, 0.0), stdev(len, 0.0);
    const double count = static_cast<double>(args.trials);
    for (std::size_t i = 0; i < len; ++i) {
      for (const auto& c : curves[k]) mean[i] += c[i];
      mean[i] /= count;
      double ss = 0.0;
      for (const auto& c : curves[k]) ss += (c[i] - mean[i]) * (c[i] - mean[i]);
      stdev[i] = args.trials > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    }

    const Run& run = runs[k];
    const std::string name = run.m > 0 ? run.solver + "_m" + std::to_string(run.m) : run.solver;
    std::string csv = config_header(cfg);
    csv += "iter,mean,std\n";
    for (std::size_t i = 0; i < len; ++i) {
      csv += std::to_string(i) + ',' + fmt_double(mean[i]) + ',' + fmt_double(stdev[i]) + '\n';
    }
    outputs.add(args.out / (name + ".csv"), std::move(csv));

    Json entry = {{"solver", run.solver}, {"m", run.m}, {"file", name + ".csv"}};
    const std::size_t horizon = std::min<std::size_t>(10, len - 1);
    double rate = std::numeric_limits<double>::quiet_NaN();
    if (horizon >= 1) {
      rate = mean[horizon] > 0.0 ? std::pow(mean[horizon], 1.0 / static_cast<double>(horizon)) : 0.0;
    }
    entry["empirical_rate"] = json_or_null(rate);
    entry["rate_iterations"] = horizon;
    if (run.m > 0 && is_ihs(run.solver)) {
      const AspectRatios r = AspectRatios::from_sizes(args.n, args.d, run.m);
      entry["rho_h"] = closed_forms(r).rate;
      entry["rho_g"] = r.rho_g();
    }
    entry["final_mean"] = mean.back();
    summary["runs"].push_back(std::move(entry));
  }
  outputs.add(args.out / "summary.json", summary.dump(2) + "\n");
  outputs.commit();
  return summary;
}

// ---------------------------------------------------------------- generate

void run_generate(const GenerateArgs& args) {
  require(!args.matrix.empty() && !args.rhs.empty(), ErrorCode::BadConfig,
          "generate: --matrix and --rhs are required");
  MatrixFormat format;
  if (args.format == "binary") {
    format = MatrixFormat::Binary;
  } else if (args.format == "csv") {
    format = MatrixFormat::Csv;
  } else {
    fail(ErrorCode::BadConfig, "generate: unknown format '" + args.format + "'");
  }
  const SyntheticProblem sp = generate_problem(args.n, args.d, args.decay, args.seed);
  try {
    write_matrix(args.matrix, sp.problem.a(), format);
    write_matrix(args.rhs, DenseMatrix(sp.problem.b()), format);
  } catch (...) {
    std::error_code ec;
    fs::remove(args.matrix, ec);
    fs::remove(args.rhs, ec);
    throw;
  }
}

// ---------------------------------------------------------------- entry

namespace {

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' ? ' ' : c);
  }
  return out;
}

void print_error(std::string_view code, std::string_view message) {
  std::cerr << "error code=" << code << " message=\"" << escape(message) << "\"\n";
}

/// Replaces `--config FILE` by the flags it encodes, so that flags given
/// after it on the command line override the file.
std::vector<std::string> expand_config(const std::vector<std::string>& argv) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    std::string path;
    if (argv[i] == "--config") {
      require(i + 1 < argv.size(), ErrorCode::BadConfig, "--config needs a file");
      path = argv[++i];
    } else if (argv[i].rfind("--config=", 0) == 0) {
      path = argv[i].substr(9);
    } else {
      out.push_back(argv[i]);
      continue;
    }
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open config '" + path + "'");
    Json cfg;
    try {
      cfg = Json::parse(in);
    } catch (const std::exception& e) {
      fail(ErrorCode::Parse, "config '" + path + "': " + e.what());
    }
    require(cfg.is_object(), ErrorCode::BadConfig, "config '" + path + "' must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      if (key == "command") continue;
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (value.is_boolean()) {
        if (value.get<bool>()) out.push_back(flag);
        continue;
      }
      std::string text;
      if (value.is_array()) {
        for (const auto& item : value) {
          if (!text.empty()) text += ',';
          text += item.is_string() ? item.get<std::string>() : item.dump();
        }
      } else {
        text = value.is_string() ? value.get<std::string>() : value.dump();
      }
      out.push_back(flag);
      out.push_back(text);
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Sketched least-squares solvers and random-matrix diagnostics", "sketchsolve"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  TheoryArgs theory;
  auto* theory_cmd = app.add_subcommand("theory", "Closed-form rates and step sizes");
  theory_cmd->add_option("--gamma", theory.gamma, "d/n")->required();
  theory_cmd->add_option("--xi", theory.xi, "m/n")->required();
  theory_cmd->add_option("--n", theory.n, "n used for the cost-model ratio");
  theory_cmd->add_option("--eps", theory.eps, "target accuracy for the cost model");
  theory_cmd->add_flag("--json", theory.json, "print JSON");

  SpectraArgs spectra;
  auto* spectra_cmd = app.add_subcommand("spectra", "Empirical spectrum of U^T S^T S U");
  spectra_cmd->add_option("--kind", spectra.kind, "gaussian, haar or srht");
  spectra_cmd->add_option("--n", spectra.n)->required();
  spectra_cmd->add_option("--d", spectra.d)->required();
  spectra_cmd->add_option("--m", spectra.m)->required();
  spectra_cmd->add_option("--trials", spectra.trials);
  spectra_cmd->add_option("--bins", spectra.bins);
  spectra_cmd->add_option("--seed", spectra.seed);
  spectra_cmd->add_option("--out", spectra.out, "histogram CSV; <out>.json gets the summary");

  SolveArgs solve;
  std::string solve_mu, solve_beta;
  auto* solve_cmd = app.add_subcommand("solve", "Solve min ||Ax - b|| from matrix files");
  solve_cmd->add_option("--matrix", solve.matrix)->required();
  solve_cmd->add_option("--rhs", solve.rhs)->required();
  solve_cmd->add_option("--solver", solve.solver, "ihs-gauss|ihs-haar|ihs-srht|cg|pcg|direct");
  solve_cmd->add_option("--m", solve.m, "sketch size (pcg: 0 selects ceil(d log d))");
  solve_cmd->add_option("--iters", solve.iters);
  solve_cmd->add_option("--refresh-period", solve.refresh_period, "0 = never refresh");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--tol", solve.tol, "relative normal-equation residual to stop at");
  solve_cmd->add_option("--init", solve.init, "zero or isotropic");
  solve_cmd->add_option("--mu", solve_mu, "custom step sizes, comma-separated");
  solve_cmd->add_option("--beta", solve_beta, "custom momentum, comma-separated");
  solve_cmd->add_flag("--no-timing", solve.no_timing, "write zeros in cum_seconds");
  solve_cmd->add_option("--out", solve.out);
  solve_cmd->add_option("--x-out", solve.x_out, "write the final iterate");

  BenchArgs bench;
  std::string bench_m_list, bench_solvers = "ihs-gauss,ihs-haar,ihs-srht";
  auto* bench_cmd = app.add_subcommand("bench", "Synthetic convergence benchmark");
  bench_cmd->add_option("--preset", bench.preset);
  bench_cmd->add_option("--n", bench.n);
  bench_cmd->add_option("--d", bench.d);
  bench_cmd->add_option("--decay", bench.decay);
  bench_cmd->add_option("--m-list", bench_m_list)->required();
  bench_cmd->add_option("--solvers", bench_solvers);
  bench_cmd->add_option("--trials", bench.trials);
  bench_cmd->add_option("--iters", bench.iters);
  bench_cmd->add_option("--refresh-period", bench.refresh_period);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", bench.out, "output directory");

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic problem to disk");
  generate_cmd->add_option("--n", generate.n)->required();
  generate_cmd->add_option("--d", generate.d)->required();
  generate_cmd->add_option("--decay", generate.decay);
  generate_cmd->add_option("--seed", generate.seed);
  generate_cmd->add_option("--format", generate.format, "binary or csv");
  generate_cmd->add_option("--matrix", generate.matrix)->required();
  generate_cmd->add_option("--rhs", generate.rhs)->required();

  try {
    std::vector<std::string> args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return app.exit(e);
      print_error("BadConfig", e.what());
      return 2;
    }

    if (*theory_cmd) {
      std::cout << theory_report(theory);
    } else if (*spectra_cmd) {
      run_spectra(spectra);
    } else if (*solve_cmd) {
      solve.mu = parse_number_list<double>(solve_mu, "--mu");
      solve.beta = parse_number_list<double>(solve_beta, "--beta");
      run_solve(solve);
    } else if (*bench_cmd) {
      bench.m_list = parse_number_list<Index>(bench_m_list, "--m-list");
      bench.solvers = split_list(bench_solvers);
      run_bench(bench);
    } else if (*generate_cmd) {
      run_generate(generate);
    }
  } catch (const Error& e) {
    print_error(to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace sketchsolve::cli
