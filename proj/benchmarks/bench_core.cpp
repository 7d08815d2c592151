#include <benchmark/benchmark.h>

#include "tetralab/bidisc.hpp"
#include "tetralab/blh.hpp"
#include "tetralab/charfn.hpp"
#include "tetralab/fundamental.hpp"
#include "tetralab/generators.hpp"
#include "tetralab/triples.hpp"

using namespace tetra;

static void BM_SolveFundamentalBidisc(benchmark::State& state) {
  const TetrablockTriple t = build(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_fundamental(t.adjoint()));
}
BENCHMARK(BM_SolveFundamentalBidisc)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_SolveFundamentalRandom(benchmark::State& state) {
  const TetrablockTriple t = generate_instance(42, 2, 8, 8).triple;
  for (auto _ : state) benchmark::DoNotOptimize(solve_fundamental(t));
}
BENCHMARK(BM_SolveFundamentalRandom)->Unit(benchmark::kMicrosecond);

static void BM_BuildModel(benchmark::State& state) {
  // dim 8 compression at the degree where the Taylor tail drops below 1e-10
  const TetrablockTriple t = generate_instance(42, 1, 8, 8).triple;
  const Index N = suggest_degree(t.P(), 1e-10);
  state.counters["degree"] = static_cast<double>(N);
  for (auto _ : state) benchmark::DoNotOptimize(build_model(t.contraction(), N));
}
BENCHMARK(BM_BuildModel)->Unit(benchmark::kMillisecond);

static void BM_VerifyExample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_example(state.range(0)));
}
BENCHMARK(BM_VerifyExample)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ExtractSymbols(benchmark::State& state) {
  const Index N = state.range(0);
  const TetrablockTriple t = build(N);
  const FundamentalPair f = solve_fundamental(t);
  const AnalyticSymbol theta = theta_taylor(t.contraction().adjoint(), N + 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract_symbols(theta, f.F1, f.F2, N + 6));
}
BENCHMARK(BM_ExtractSymbols)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
