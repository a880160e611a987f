#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "markgame/catalog.hpp"
#include "markgame/lattice.hpp"
#include "markgame/match.hpp"
#include "markgame/solver.hpp"
#include "oracles.hpp"

using namespace markgame;

namespace {

std::shared_ptr<const PlanarGraph> shared(PlanarGraph g) { return std::make_shared<const PlanarGraph>(std::move(g)); }

bool valid_witness(const PlanarGraph& g, const Orientation& o) {
  if (o.tail.size() != g.edge_count()) return false;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (!g.edge(e).touches(o.tail[e])) return false;
  const auto out = o.out_degrees(g);
  const int worst = out.empty() ? 0 : *std::max_element(out.begin(), out.end());
  return worst == o.d;
}

}  // namespace

TEST_CASE("threshold game on tiny graphs") {
  auto k2 = complete_graph(2);
  CHECK(bob_can_force(k2, 1).verdict == Verdict::BobWins);
  CHECK(bob_can_force(k2, 2).verdict == Verdict::AliceHolds);
  auto k3 = complete_graph(3);
  CHECK(bob_can_force(k3, 2).verdict == Verdict::BobWins);
  CHECK(bob_can_force(k3, 3).verdict == Verdict::AliceHolds);
  CHECK_THROWS_AS(bob_can_force(k3, 0), SolverError);
}

TEST_CASE("col_ve of named graphs") {
  CHECK(solve_colve(complete_graph(2)).value == 2);
  CHECK(solve_colve(complete_graph(3)).value == 3);
  CHECK(solve_colve(cycle_graph(4)).value == 3);
  CHECK(solve_colve(graph_from_edges(3, {})).value == 1);
  CHECK(solve_colve(graph_from_edges(1, {})).value == 1);
  // the oracle agrees on each
  CHECK(oracle::game_value(complete_graph(2)) + 1 == 2);
  CHECK(oracle::game_value(complete_graph(3)) + 1 == 3);
  CHECK(oracle::game_value(cycle_graph(4)) + 1 == 3);
}

TEST_CASE("catalogue sizes") {
  auto all = connected_graphs(8);
  std::vector<int> per_size(9, 0);
  for (const auto& g : all) ++per_size[g.edge_count()];
  CHECK(per_size == std::vector<int>{0, 1, 1, 3, 5, 12, 30, 79, 227});
  // no two representatives are isomorphic
  std::set<std::uint64_t> codes;
  for (const auto& g : all) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(e.u, e.v);
    codes.insert(canonical_code(static_cast<int>(g.vertex_count()), edges));
  }
  CHECK(codes.size() == all.size());
}

TEST_CASE("canonical code is invariant under relabeling") {
  std::mt19937_64 rng(12);
  for (const auto& g : connected_graphs(7)) {
    const int n = static_cast<int>(g.vertex_count());
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(e.u, e.v);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<int, int>> relabeled;
    for (auto [a, b] : edges) relabeled.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
    CHECK(canonical_code(n, edges) == canonical_code(n, relabeled));
  }
}

TEST_CASE("solver agrees with full enumeration on every graph up to 8 edges") {
  int graphs = 0;
  for (const auto& g : connected_graphs(8)) {
    const int value = oracle::game_value(g);
    const auto res = solve_colve(g);
    REQUIRE(res.value);
    CHECK(*res.value == value + 1);
    for (int s = 1; s <= g.max_degree(); ++s) {
      const auto t = bob_can_force(g, s);
      CHECK(t.verdict == (value >= s ? Verdict::BobWins : Verdict::AliceHolds));
      CHECK(res.verdict(s) == t.verdict);
    }
    // monotone thresholds, value inside the bracket
    for (std::size_t i = 1; i < res.thresholds.size(); ++i)
      if (res.thresholds[i].verdict == Verdict::BobWins) CHECK(res.thresholds[i - 1].verdict == Verdict::BobWins);
    const auto br = bounds_report(g);
    CHECK(br.lo <= *res.value);
    CHECK(*res.value <= br.hi);
    ++graphs;
  }
  CHECK(graphs == 358);
}

TEST_CASE("principal variations replay to a win") {
  for (const auto& g : connected_graphs(6)) {
    const auto res = solve_colve(g);
    auto gp = shared(g);
    for (const auto& t : res.thresholds) {
      if (t.verdict != Verdict::BobWins) continue;
      REQUIRE_FALSE(t.principal_variation.empty());
      auto r = replay(gp, t.principal_variation);
      CHECK(r.final_score >= t.s);
      CHECK(t.principal_variation.back().side == Side::Bob);
    }
  }
}

TEST_CASE("search from a given position") {
  auto g = shared(star_graph(3));
  // center unmarked with two marked edges, Bob to move: one more edge gives 3
  std::vector<Move> moves = {{Side::Alice, 1}, {Side::Bob, 0}, {Side::Alice, 2}, {Side::Bob, 1}};
  auto s = GameState::from_moves(g, moves, Side::Bob);
  CHECK(bob_can_force(s, 3).verdict == Verdict::BobWins);
  // Alice to move can take the center
  auto a = GameState::from_moves(g, moves, Side::Alice);
  CHECK(bob_can_force(a, 3).verdict == Verdict::AliceHolds);
  // a score already on the board counts once Bob has moved
  CHECK(bob_can_force(a, 2).verdict == Verdict::BobWins);
}

TEST_CASE("node budget gives unknown, never a wrong answer") {
  auto t = generate("T", 2, 2);
  SolverOptions tiny;
  tiny.node_budget = 10;
  const auto r = bob_can_force(*t.graph, 3, tiny);
  CHECK(r.verdict == Verdict::Unknown);
  const auto res = solve_colve(*t.graph, tiny);
  CHECK_FALSE(res.value);
  CHECK(res.lo <= res.hi);
  CHECK(res.hi <= t.graph->max_degree() + 1);

  const auto full = solve_colve(*t.graph);
  REQUIRE(full.value);
  CHECK(res.lo <= *full.value);
  CHECK(*full.value <= res.hi);
  CHECK(*full.value <= 4);  // the angle strategy caps the score at 3 on this window
}

TEST_CASE("parallel and sequential search agree") {
  SolverOptions par;
  par.threads = 4;
  for (const auto& g : connected_graphs(7)) {
    for (int s = 1; s <= g.max_degree(); ++s) CHECK(bob_can_force(g, s, par).verdict == bob_can_force(g, s).verdict);
  }
  for (auto fam : {"T", "R", "H"}) {
    auto b = generate(fam, 1, 2);
    const auto a = solve_colve(*b.graph);
    const auto p = solve_colve(*b.graph, par);
    CHECK(a.value == p.value);
    for (int s = 1; s <= b.graph->max_degree(); ++s) CHECK(a.verdict(s) == p.verdict(s));
  }
}

TEST_CASE("orientations") {
  CHECK(orientation_bound(complete_graph(3)).d == 1);
  CHECK(orientation_bound(star_graph(3)).d == 1);
  CHECK(orientation_bound(graph_from_edges(2, {})).d == 0);
  CHECK(orientation_bound(complete_graph(4)).d == 2);
  CHECK(orientation_bound(complete_graph(5)).d == 2);

  for (auto fam : {"T", "R", "C", "H", "Tp", "D"})
    for (int r = 1; r <= 3; ++r) {
      auto b = generate(fam, r, r);
      const auto o = orientation_bound(*b.graph);
      CAPTURE(fam);
      CHECK(o.d <= 3);
      CHECK(valid_witness(*b.graph, o));
    }

  // minimality by exhaustive enumeration on small graphs
  for (const auto& g : connected_graphs(7)) {
    const auto o = orientation_bound(g);
    CHECK(valid_witness(g, o));
    CHECK(o.d == oracle::brute_orientation(g));
  }
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    auto g = build_graph(oracle::random_triangulation(static_cast<int>(rng() % 4), rng));  // at most 12 edges
    REQUIRE(g.edge_count() <= 12);
    const auto o = orientation_bound(g);
    CHECK(valid_witness(g, o));
    CHECK(o.d == oracle::brute_orientation(g));
  }
  auto t = generate("T", 2, 2);
  CHECK(orientation_bound(*t.graph).d == oracle::brute_orientation(*t.graph));
}

TEST_CASE("bounds report") {
  auto k2 = complete_graph(2);
  auto br = bounds_report(k2);
  CHECK(br.lo == 2);
  CHECK(br.hi == 2);

  br = bounds_report(graph_from_edges(4, {}));
  CHECK(br.lo == 1);
  CHECK(br.hi == 1);

  auto t = generate("T", 3, 3);
  auto tri = generate("T", 1, 1);
  const PlanarGraph* subs[] = {tri.graph.get()};
  br = bounds_report(*t.graph, subs, SubgraphMatch::ByCoordinates);
  CHECK(br.lo >= 3);
  CHECK(br.hi <= 5);
  CHECK(br.consistent);
  REQUIRE(br.subgraphs.size() == 1);
  CHECK(br.subgraphs[0].value == 3);
  const auto j = to_json(br);
  CHECK(j["lo"] == br.lo);
  CHECK(j["hi"] == br.hi);

  auto k4 = complete_graph(4);
  const PlanarGraph* wrong[] = {&k4};
  CHECK_THROWS_AS(bounds_report(*t.graph, wrong), SolverError);
}

TEST_CASE("solver json") {
  const auto res = solve_colve(complete_graph(3));
  const auto j = to_json(complete_graph(3), res);
  CHECK(j["value"] == 3);
  CHECK(j["thresholds"].size() == res.thresholds.size());
  CHECK(j["stats"].contains("nodes"));
  CHECK(j["stats"].contains("memo_hits"));
  CHECK(j["stats"].contains("seconds"));
}
