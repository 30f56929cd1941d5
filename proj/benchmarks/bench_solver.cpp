#include <benchmark/benchmark.h>

#include "sketchsolve/solver.hpp"
#include "sketchsolve/synthetic.hpp"

using namespace sketchsolve;

namespace {

const SyntheticProblem& shared_problem() {
  static const SyntheticProblem sp = generate_problem(4096, 200, 0.98, 1);
  return sp;
}

}  // namespace

// One refreshed IHS iteration: sketch, Gram + Cholesky, one step.
static void BM_IhsIteration(benchmark::State& state) {
  const auto kind = static_cast<SketchKind>(state.range(0));
  const Problem& p = shared_problem().problem;
  IhsConfig cfg;
  cfg.kind = kind;
  cfg.m = 1000;
  cfg.max_iters = 1;
  for (auto _ : state) {
    const SolveTrace tr = ihs_solve(p, cfg, SolverSchedule::optimal_for(kind));
    benchmark::DoNotOptimize(tr.x.data());
    ++cfg.seed;
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_IhsIteration)
    ->Arg(static_cast<int>(SketchKind::Gaussian))
    ->Arg(static_cast<int>(SketchKind::Haar))
    ->Arg(static_cast<int>(SketchKind::Srht))
    ->Unit(benchmark::kMillisecond);

static void BM_PcgToTolerance(benchmark::State& state) {
  const Problem& p = shared_problem().problem;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const SolveTrace tr = pcg_solve(p, 0, SketchKind::Srht, 100, 1e-10, seed++);
    benchmark::DoNotOptimize(tr.x.data());
  }
}
BENCHMARK(BM_PcgToTolerance)->Unit(benchmark::kMillisecond);

static void BM_DirectSolve(benchmark::State& state) {
  const Problem& p = shared_problem().problem;
  for (auto _ : state) {
    const Vector x = direct_lstsq(p.a(), p.b());
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_DirectSolve)->Unit(benchmark::kMillisecond);
