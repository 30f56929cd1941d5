#include <benchmark/benchmark.h>

#include <vector>

#include "sketchsolve/linalg.hpp"
#include "sketchsolve/rng.hpp"
#include "sketchsolve/sketch.hpp"

using namespace sketchsolve;

static void BM_Fwht(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  RngStream rng(1);
  Vector v = gaussian_vector(n, rng);
  for (auto _ : state) {
    fwht_inplace(std::span<double>(v.data(), static_cast<std::size_t>(n)));
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Fwht)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

static void BM_SampleAndApply(benchmark::State& state) {
  const auto kind = static_cast<SketchKind>(state.range(0));
  const Index n = 4096, d = 200, m = 1000;
  RngStream rng(2);
  const DenseMatrix a = gaussian_matrix(n, d, rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const DenseMatrix sa = apply(sample(kind, m, n, seed++), a);
    benchmark::DoNotOptimize(sa.data());
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_SampleAndApply)
    ->Arg(static_cast<int>(SketchKind::Gaussian))
    ->Arg(static_cast<int>(SketchKind::Haar))
    ->Arg(static_cast<int>(SketchKind::Srht))
    ->Unit(benchmark::kMillisecond);

static void BM_ApplyOnly(benchmark::State& state) {
  const auto kind = static_cast<SketchKind>(state.range(0));
  const Index n = 4096, d = 200, m = 1000;
  RngStream rng(3);
  const DenseMatrix a = gaussian_matrix(n, d, rng);
  const SketchOperator op = sample(kind, m, n, std::uint64_t{7});
  for (auto _ : state) {
    const DenseMatrix sa = apply(op, a);
    benchmark::DoNotOptimize(sa.data());
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_ApplyOnly)
    ->Arg(static_cast<int>(SketchKind::Gaussian))
    ->Arg(static_cast<int>(SketchKind::Haar))
    ->Arg(static_cast<int>(SketchKind::Srht))
    ->Unit(benchmark::kMillisecond);
