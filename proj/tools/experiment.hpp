#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sketchsolve/linalg.hpp"

namespace sketchsolve::cli {

using Json = nlohmann::ordered_json;

struct TheoryArgs {
  double gamma = 0.0;
  double xi = 0.0;
  /// Sizes used for the cost-model ratio: d = round(gamma * n).
  Index n = 4096;
  double eps = 1e-6;
  bool json = false;
};

struct SpectraArgs {
  std::string kind = "haar";
  Index n = 0, d = 0, m = 0;
  Index trials = 10;
  Index bins = 60;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct SolveArgs {
  std::filesystem::path matrix;
  std::filesystem::path rhs;
  std::string solver = "ihs-srht";
  Index m = 0;
  Index iters = 10;
  Index refresh_period = 1;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string init = "zero";
  std::vector<double> mu;
  std::vector<double> beta;
  bool no_timing = false;
  std::filesystem::path out;
  std::filesystem::path x_out;
};

struct BenchArgs {
  std::string preset = "synthetic";
  Index n = 4096, d = 200;
  double decay = 0.98;
  std::vector<Index> m_list;
  std::vector<std::string> solvers;
  Index trials = 50;
  Index iters = 10;
  Index refresh_period = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct GenerateArgs {
  Index n = 0, d = 0;
  double decay = 0.98;
  std::uint64_t seed = 0;
  std::string format = "binary";
  std::filesystem::path matrix;
  std::filesystem::path rhs;
};

Json to_json(const TheoryArgs& a);
Json to_json(const SpectraArgs& a);
Json to_json(const SolveArgs& a);
Json to_json(const BenchArgs& a);
Json to_json(const GenerateArgs& a);

/// Rendered `theory` output (key=value lines or a JSON object).
std::string theory_report(const TheoryArgs& args);
void run_spectra(const SpectraArgs& args);
void run_solve(const SolveArgs& args);
/// Returns the summary written to <out>/summary.json.
Json run_bench(const BenchArgs& args);
void run_generate(const GenerateArgs& args);

/// Full command-line entry point; returns the process exit code.
/// Failures print one line `error code=<Code> message="..."` to stderr.
int run(int argc, const char* const* argv);

}  // namespace sketchsolve::cli
