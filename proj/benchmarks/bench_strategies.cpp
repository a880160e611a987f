#include <benchmark/benchmark.h>

#include "markgame/lattice.hpp"
#include "markgame/match.hpp"
#include "markgame/session.hpp"
#include "markgame/strategy.hpp"

using namespace markgame;

static void BM_AngleMatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto b = generate("T", n, n);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto alice = alice_angle(b.graph, *b.scheme);
    auto bob = baseline_strategy(BaselineKind::BobRandom, seed++);
    benchmark::DoNotOptimize(play_match(b.graph, *alice, *bob).final_score);
  }
  state.counters["edges"] = static_cast<double>(b.graph->edge_count());
}
BENCHMARK(BM_AngleMatch)->Arg(4)->Arg(8)->Arg(16);

static void BM_ExtensionMatch(benchmark::State& state) {
  auto b = generate("Tp", 3, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto alice = make_strategy("alice:extension:n=4", context_for(b, seed));
    auto bob = baseline_strategy(BaselineKind::BobRandom, seed++);
    benchmark::DoNotOptimize(play_match(b.graph, *alice, *bob).final_score);
  }
}
BENCHMARK(BM_ExtensionMatch);

// free-path detection on random mid-game positions
static void BM_FreePaths(benchmark::State& state) {
  auto b = generate("T", 4, 4);
  std::vector<GameState> positions;
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    auto alice = baseline_strategy(BaselineKind::AliceRandom, seed);
    auto bob = baseline_strategy(BaselineKind::BobRandom, seed + 100);
    auto r = play_match(b.graph, *alice, *bob, 6);
    positions.push_back(replay_state(b.graph, r.history));
  }
  const int max_len = static_cast<int>(state.range(0));
  for (auto _ : state)
    for (const auto& s : positions) benchmark::DoNotOptimize(find_free_paths(s, 0, max_len).size());
}
BENCHMARK(BM_FreePaths)->Arg(4)->Arg(6)->Arg(8);

static void BM_GreedyBobMove(benchmark::State& state) {
  auto b = generate("C", 4, 4);
  auto s = new_game(b.graph).apply({Side::Alice, 0});
  for (auto _ : state) benchmark::DoNotOptimize(bob_greedy_move(s).object);
}
BENCHMARK(BM_GreedyBobMove);
