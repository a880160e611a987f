#include "markgame/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "flow.hpp"

namespace markgame {

using nlohmann::json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::BobWins: return "bob_wins";
    case Verdict::AliceHolds: return "alice_holds";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  nodes += o.nodes;
  memo_hits += o.memo_hits;
  memo_entries += o.memo_entries;
  seconds += o.seconds;
  return *this;
}

namespace {

using Bits = std::uint64_t;

Bits bit(int i) { return Bits{1} << i; }

struct Board {
  int nv = 0;
  int ne = 0;
  std::vector<Bits> inc;  // incident edges per vertex
  std::vector<int> eu, ev, deg;
  Bits all_v = 0;
  Bits all_e = 0;

  explicit Board(const PlanarGraph& g) : nv(static_cast<int>(g.vertex_count())), ne(static_cast<int>(g.edge_count())) {
    if (nv > 64 || ne > 64)
      throw SolverError("exact solver handles at most 64 vertices and 64 edges (got " + std::to_string(nv) + ", " +
                        std::to_string(ne) + ")");
    inc.assign(nv, 0);
    deg.assign(nv, 0);
    for (int e = 0; e < ne; ++e) {
      const Edge& edge = g.edge(e);
      eu.push_back(edge.u);
      ev.push_back(edge.v);
      inc[edge.u] |= bit(e);
      inc[edge.v] |= bit(e);
    }
    for (int v = 0; v < nv; ++v) deg[v] = std::popcount(inc[v]);
    all_v = nv == 64 ? ~Bits{0} : bit(nv) - 1;
    all_e = ne == 64 ? ~Bits{0} : ne == 0 ? 0 : bit(ne) - 1;
  }
};

struct Key {
  Bits vm;
  Bits em;
  bool alice;
  bool operator==(const Key&) const = default;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct KeyHash {
  std::size_t operator()(const Key& k) const { return mix(k.vm ^ mix(k.em ^ (k.alice ? 0x5555ULL : 0))); }
};

// Sharded table; entries are exact verdicts, so concurrent writers always agree.
class Memo {
 public:
  std::optional<bool> find(const Key& k) {
    Shard& s = shard(k);
    std::lock_guard lock(s.mutex);
    auto it = s.map.find(k);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }
  void store(const Key& k, bool v) {
    Shard& s = shard(k);
    std::lock_guard lock(s.mutex);
    s.map.emplace(k, v);
  }
  std::uint64_t size() {
    std::uint64_t n = 0;
    for (Shard& s : shards_) {
      std::lock_guard lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

 private:
  struct Shard {
    std::mutex mutex;
    std::unordered_map<Key, bool, KeyHash> map;
  };
  Shard& shard(const Key& k) { return shards_[KeyHash{}(k) >> 58]; }
  std::array<Shard, 64> shards_;
};

struct BudgetExhausted {};
struct Cancelled {};

struct Shared {
  Memo memo;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> hits{0};
  std::atomic<bool> cancel{false};
  std::uint64_t budget = 0;
};

class Search {
 public:
  Search(const Board& b, int s, Shared& shared) : b_(b), s_(s), sh_(shared) {}

  int marked_count(Bits em, int v) const { return std::popcount(em & b_.inc[v]); }

  bool threshold_reached(Bits vm, Bits em) const {
    for (Bits u = b_.all_v & ~vm; u; u &= u - 1)
      if (marked_count(em, std::countr_zero(u)) >= s_) return true;
    return false;
  }

  bool wins_immediately(Bits vm, Bits em, int e) const {
    const Bits em2 = em | bit(e);
    return (!(vm & bit(b_.eu[e])) && marked_count(em2, b_.eu[e]) >= s_) ||
           (!(vm & bit(b_.ev[e])) && marked_count(em2, b_.ev[e]) >= s_);
  }

  // Decided without expanding children, if possible.
  std::optional<bool> quick(Bits vm, Bits em, bool alice) const {
    const Bits uv = b_.all_v & ~vm;
    const Bits ue = b_.all_e & ~em;
    if (alice ? !uv : !ue) return false;
    bool reachable = false;
    for (Bits u = uv; u && !reachable; u &= u - 1) reachable = b_.deg[std::countr_zero(u)] >= s_;
    if (!reachable) return false;
    if (!alice)
      for (Bits u = ue; u; u &= u - 1)
        if (wins_immediately(vm, em, std::countr_zero(u))) return true;
    return std::nullopt;
  }

  // Children in search order: Alice tries the most loaded vertices first,
  // Bob the edges raising the most loaded endpoints.
  std::vector<int> children(Bits vm, Bits em, bool alice) const {
    std::vector<std::pair<int, int>> order;
    if (alice) {
      for (Bits u = b_.all_v & ~vm; u; u &= u - 1) {
        const int v = std::countr_zero(u);
        order.emplace_back(-marked_count(em, v), v);
      }
    } else {
      for (Bits u = b_.all_e & ~em; u; u &= u - 1) {
        const int e = std::countr_zero(u);
        int gain = 0;
        for (int w : {b_.eu[e], b_.ev[e]})
          if (!(vm & bit(w))) gain = std::max(gain, marked_count(em, w) + 1);
        order.emplace_back(-gain, e);
      }
    }
    std::sort(order.begin(), order.end());
    std::vector<int> out;
    for (const auto& p : order) out.push_back(p.second);
    return out;
  }

  bool child_wins(Bits vm, Bits em, bool alice, int c) {
    return alice ? win(vm | bit(c), em, false) : win(vm, em | bit(c), true);
  }

  bool win(Bits vm, Bits em, bool alice) {
    if (sh_.nodes.fetch_add(1, std::memory_order_relaxed) >= sh_.budget) throw BudgetExhausted{};
    if (sh_.cancel.load(std::memory_order_relaxed)) throw Cancelled{};
    if (auto q = quick(vm, em, alice)) return *q;
    const Key key{vm, em, alice};
    if (auto m = sh_.memo.find(key)) {
      sh_.hits.fetch_add(1, std::memory_order_relaxed);
      return *m;
    }
    bool result = alice;  // Alice node: Bob wins unless a reply holds
    for (int c : children(vm, em, alice)) {
      const bool w = child_wins(vm, em, alice, c);
      if (alice && !w) {
        result = false;
        break;
      }
      if (!alice && w) {
        result = true;
        break;
      }
    }
    sh_.memo.store(key, result);
    return result;
  }

  const Board& board() const { return b_; }
  int threshold() const { return s_; }

 private:
  const Board& b_;
  int s_;
  Shared& sh_;
};

bool solve_root(Search& search, Shared& shared, Bits vm, Bits em, bool alice, int threads) {
  if (threads <= 1) return search.win(vm, em, alice);
  if (auto q = search.quick(vm, em, alice)) return *q;

  const std::vector<int> kids = search.children(vm, em, alice);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> decided{false};
  std::atomic<bool> exhausted{false};
  std::mutex mutex;
  std::vector<std::optional<bool>> results(kids.size());

  auto worker = [&] {
    Search local(search.board(), search.threshold(), shared);
    while (!decided.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= kids.size()) break;
      try {
        const bool w = local.child_wins(vm, em, alice, kids[i]);
        std::lock_guard lock(mutex);
        results[i] = w;
        if (w != alice) {
          decided = true;
          shared.cancel = true;
        }
      } catch (const BudgetExhausted&) {
        exhausted = true;
        shared.cancel = true;
        break;
      } catch (const Cancelled&) {
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  shared.cancel = false;

  for (const auto& r : results)
    if (r && *r != alice) return !alice;
  if (exhausted) throw BudgetExhausted{};
  return alice;
}

std::vector<Move> principal_variation(Search& search, Bits vm, Bits em, bool alice, bool bob_wins) {
  const Board& b = search.board();
  std::vector<Move> pv;
  while (true) {
    const Bits uv = b.all_v & ~vm;
    const Bits ue = b.all_e & ~em;
    if (alice) {
      if (!uv) break;
      int pick = std::countr_zero(uv);
      if (!bob_wins)
        for (Bits u = uv; u; u &= u - 1)
          if (!search.win(vm | bit(std::countr_zero(u)), em, false)) {
            pick = std::countr_zero(u);
            break;
          }
      pv.push_back({Side::Alice, pick});
      vm |= bit(pick);
    } else {
      if (!ue) break;
      int pick = std::countr_zero(ue);
      if (bob_wins)
        for (Bits u = ue; u; u &= u - 1) {
          const int e = std::countr_zero(u);
          if (search.wins_immediately(vm, em, e) || search.win(vm, em | bit(e), true)) {
            pick = e;
            break;
          }
        }
      pv.push_back({Side::Bob, pick});
      em |= bit(pick);
      if (bob_wins && search.threshold_reached(vm, em)) break;
    }
    alice = !alice;
  }
  return pv;
}

ThresholdResult run_threshold(const PlanarGraph& g, Bits vm, Bits em, bool alice, bool post_bob, int s,
                              const SolverOptions& options) {
  if (s < 1) throw SolverError("threshold must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const Board board(g);
  Shared shared;
  shared.budget = options.node_budget;
  Search search(board, s, shared);

  ThresholdResult r;
  r.s = s;
  try {
    bool wins = false;
    if (post_bob && search.threshold_reached(vm, em)) wins = true;
    else wins = solve_root(search, shared, vm, em, alice, options.threads);
    r.verdict = wins ? Verdict::BobWins : Verdict::AliceHolds;
    const std::uint64_t used = shared.nodes.load();
    shared.budget = ~std::uint64_t{0};
    if (!(post_bob && wins)) r.principal_variation = principal_variation(search, vm, em, alice, wins);
    shared.nodes = used;
  } catch (const BudgetExhausted&) {
    r.verdict = Verdict::Unknown;
  }
  r.stats.nodes = shared.nodes.load();
  r.stats.memo_hits = shared.hits.load();
  r.stats.memo_entries = shared.memo.size();
  r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

ThresholdResult bob_can_force(const PlanarGraph& graph, int s, const SolverOptions& options) {
  return run_threshold(graph, 0, 0, true, false, s, options);
}

ThresholdResult bob_can_force(const GameState& from, int s, const SolverOptions& options) {
  const PlanarGraph& g = from.graph();
  if (g.vertex_count() > 64 || g.edge_count() > 64) throw SolverError("exact solver handles at most 64 vertices and 64 edges");
  Bits vm = 0;
  Bits em = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (from.vertex_marked(static_cast<VertexIndex>(v))) vm |= bit(static_cast<int>(v));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (from.edge_marked(static_cast<EdgeIndex>(e))) em |= bit(static_cast<int>(e));
  const bool alice = from.to_move() == Side::Alice;
  return run_threshold(g, vm, em, alice, alice && from.round() > 0, s, options);
}

Verdict SolveResult::verdict(int s) const {
  if (s < 1) return Verdict::BobWins;
  for (const auto& t : thresholds)
    if (t.s == s) return t.verdict;
  if (value) return s < *value ? Verdict::BobWins : Verdict::AliceHolds;
  if (s >= hi) return Verdict::AliceHolds;
  return s < lo ? Verdict::BobWins : Verdict::Unknown;
}

SolveResult solve_colve(const PlanarGraph& graph, const SolverOptions& options) {
  SolveResult out;
  const int delta = graph.max_degree();
  if (graph.edge_count() == 0) {
    out.value = 1;
    out.lo = out.hi = 1;
    return out;
  }
  Board check(graph);  // size guard
  const Orientation o = orientation_bound(graph);
  out.lo = 2;
  out.hi = std::min(delta + 1, o.d + 2);
  for (int s = 1; s <= delta; ++s) {
    ThresholdResult r = bob_can_force(graph, s, options);
    out.stats += r.stats;
    const Verdict v = r.verdict;
    out.thresholds.push_back(std::move(r));
    if (v == Verdict::BobWins) {
      out.lo = std::max(out.lo, s + 1);
      continue;
    }
    if (v == Verdict::AliceHolds) out.value = s;
    break;
  }
  if (!out.value && !out.thresholds.empty() && out.thresholds.back().verdict == Verdict::BobWins)
    out.value = delta + 1;
  if (out.value) out.lo = out.hi = *out.value;
  return out;
}

std::vector<int> Orientation::out_degrees(const PlanarGraph& graph) const {
  std::vector<int> out(graph.vertex_count(), 0);
  for (VertexIndex t : tail) ++out.at(t);
  return out;
}

namespace {

std::optional<std::vector<VertexIndex>> orient_with(const PlanarGraph& g, int d) {
  const int ne = static_cast<int>(g.edge_count());
  const int nv = static_cast<int>(g.vertex_count());
  const int source = 0;
  const int sink = 1 + ne + nv;
  detail::MaxFlow flow(sink + 1);
  std::vector<std::pair<int, int>> arcs(ne);
  for (int e = 0; e < ne; ++e) {
    flow.add_arc(source, 1 + e, 1);
    arcs[e] = {flow.add_arc(1 + e, 1 + ne + g.edge(e).u, 1), flow.add_arc(1 + e, 1 + ne + g.edge(e).v, 1)};
  }
  for (int v = 0; v < nv; ++v) flow.add_arc(1 + ne + v, sink, d);
  if (flow.run(source, sink) != ne) return std::nullopt;
  std::vector<VertexIndex> tail(ne);
  for (int e = 0; e < ne; ++e) tail[e] = flow.flow_on(arcs[e].first) ? g.edge(e).u : g.edge(e).v;
  return tail;
}

}  // namespace

Orientation orientation_bound(const PlanarGraph& graph) {
  Orientation o;
  if (graph.edge_count() == 0) return o;
  int lo = 0;
  int hi = graph.max_degree();  // always feasible
  std::vector<VertexIndex> best = *orient_with(graph, hi);
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (auto t = orient_with(graph, mid)) {
      hi = mid;
      best = std::move(*t);
    } else {
      lo = mid + 1;
    }
  }
  o.tail = std::move(best);
  const auto outs = o.out_degrees(graph);
  o.d = *std::max_element(outs.begin(), outs.end());
  return o;
}

BoundsReport bounds_report(const PlanarGraph& graph, std::span<const PlanarGraph* const> subgraphs, SubgraphMatch match,
                           const SolverOptions& options) {
  BoundsReport r;
  r.max_degree = graph.max_degree();
  r.orientation_d = orientation_bound(graph).d;
  const bool has_edge = graph.edge_count() > 0;
  r.hi = has_edge ? std::min(r.max_degree + 1, r.orientation_d + 2) : 1;
  r.lo = has_edge ? 2 : 1;
  for (std::size_t i = 0; i < subgraphs.size(); ++i) {
    const PlanarGraph& h = *subgraphs[i];
    if (!is_subgraph(h, graph, match))
      throw SolverError("supplied graph #" + std::to_string(i) + " is not a subgraph");
    SubgraphBound sb;
    if (h.vertex_count() <= 64 && h.edge_count() <= 64) {
      const SolveResult s = solve_colve(h, options);
      sb.value = s.value;
      sb.lo = s.lo;
      sb.hi = s.hi;
    } else {
      const BoundsReport inner = bounds_report(h, {}, match, options);
      sb.lo = inner.lo;
      sb.hi = inner.hi;
    }
    r.lo = std::max(r.lo, sb.lo);
    r.subgraphs.push_back(sb);
  }
  r.consistent = r.lo <= r.hi;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

json moves_json(const PlanarGraph& g, const std::vector<Move>& moves) {
  json out = json::array();
  for (const Move& m : moves) out.push_back(describe(g, m));
  return out;
}

json stats_json(const SearchStats& s) {
  return {{"nodes", s.nodes}, {"memo_hits", s.memo_hits}, {"memo_entries", s.memo_entries}, {"seconds", s.seconds}};
}

}  // namespace

json to_json(const PlanarGraph& graph, const ThresholdResult& r) {
  return {{"s", r.s},
          {"verdict", to_string(r.verdict)},
          {"principal_variation", moves_json(graph, r.principal_variation)},
          {"stats", stats_json(r.stats)}};
}

json to_json(const PlanarGraph& graph, const SolveResult& r) {
  json thresholds = json::array();
  for (const auto& t : r.thresholds) thresholds.push_back(to_json(graph, t));
  return {{"value", r.value ? json(*r.value) : json(nullptr)},
          {"bracket", {r.lo, r.hi}},
          {"thresholds", std::move(thresholds)},
          {"stats", stats_json(r.stats)}};
}

json to_json(const PlanarGraph& graph, const Orientation& o) {
  json arcs = json::array();
  for (std::size_t e = 0; e < o.tail.size(); ++e) {
    const Edge& edge = graph.edge(static_cast<EdgeIndex>(e));
    const VertexIndex head = edge.other(o.tail[e]);
    arcs.push_back({graph.vertex(o.tail[e]).id, graph.vertex(head).id});
  }
  return {{"d", o.d}, {"arcs", std::move(arcs)}};
}

json to_json(const BoundsReport& r) {
  json subs = json::array();
  for (const auto& s : r.subgraphs)
    subs.push_back({{"value", s.value ? json(*s.value) : json(nullptr)}, {"bracket", {s.lo, s.hi}}});
  return {{"lo", r.lo},
          {"hi", r.hi},
          {"bracket", {r.lo, r.hi}},
          {"max_degree", r.max_degree},
          {"orientation_d", r.orientation_d},
          {"subgraphs", std::move(subs)},
          {"consistent", r.consistent}};
}

}  // namespace markgame
