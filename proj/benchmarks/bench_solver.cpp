#include <benchmark/benchmark.h>

#include "markgame/catalog.hpp"
#include "markgame/lattice.hpp"
#include "markgame/solver.hpp"

using namespace markgame;

static void BM_SolveCatalogue(benchmark::State& state) {
  const auto graphs = connected_graphs(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& g : graphs) benchmark::DoNotOptimize(solve_colve(g).value);
  state.counters["graphs"] = static_cast<double>(graphs.size());
}
BENCHMARK(BM_SolveCatalogue)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_SolveWindow(benchmark::State& state) {
  auto b = generate(state.range(0) == 0 ? "T" : "R", 1, state.range(0) == 0 ? 2 : 1);
  SolverOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto r = solve_colve(*b.graph, opt);
    nodes = r.stats.nodes;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.counters["edges"] = static_cast<double>(b.graph->edge_count());
}
BENCHMARK(BM_SolveWindow)->Args({0, 1})->Args({0, 2})->Args({1, 1})->Unit(benchmark::kMillisecond);

static void BM_SolveT2x2(benchmark::State& state) {
  auto b = generate("T", 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_colve(*b.graph).value);
}
BENCHMARK(BM_SolveT2x2)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_Orientation(benchmark::State& state) {
  auto b = generate("Tp", static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orientation_bound(*b.graph).d);
  state.counters["edges"] = static_cast<double>(b.graph->edge_count());
}
BENCHMARK(BM_Orientation)->Arg(4)->Arg(8)->Arg(16);
