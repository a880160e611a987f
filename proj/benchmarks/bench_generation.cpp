#include <benchmark/benchmark.h>

#include "markgame/graph.hpp"
#include "markgame/lattice.hpp"

using namespace markgame;

static void BM_Generate(benchmark::State& state, const char* family) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(family, n, n).graph->edge_count());
}
BENCHMARK_CAPTURE(BM_Generate, T, "T")->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Generate, R, "R")->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Generate, C, "C")->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Generate, Tp, "Tp")->Arg(8)->Arg(32);

static void BM_Apollonian(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_apollonian(static_cast<int>(state.range(0)), seed++).graph);
}
BENCHMARK(BM_Apollonian)->Arg(100)->Arg(1000);

static void BM_Validate(benchmark::State& state) {
  auto b = generate("T", static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_theorem_conditions(*b.graph, *b.scheme).passed());
}
BENCHMARK(BM_Validate)->Arg(8)->Arg(32);

static void BM_GrayCover(benchmark::State& state) {
  auto b = generate("T", static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_gray_cover(*b.graph).has_value());
}
BENCHMARK(BM_GrayCover)->Arg(3)->Arg(6);
