#include "markgame/strategy.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <unordered_set>

namespace markgame {

namespace {

std::vector<VertexIndex> unmarked_vertices(const GameState& state) {
  std::vector<VertexIndex> out;
  for (std::size_t v = 0; v < state.graph().vertex_count(); ++v)
    if (!state.vertex_marked(static_cast<VertexIndex>(v))) out.push_back(static_cast<VertexIndex>(v));
  return out;
}

void require_turn(const GameState& state, Side side) {
  if (state.to_move() != side)
    throw StrategyError(std::string("strategy for ") + std::string(to_string(side)) + " asked to move for " +
                        std::string(to_string(state.to_move())));
  if (state.game_over()) throw StrategyError("no legal move left");
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw StrategyError("bad value for " + std::string(key) + ": \"" + std::string(text) + "\"");
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
    throw StrategyError("bad value for " + std::string(key) + ": \"" + std::string(text) + "\"");
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

FaceIndex corresponding_triangle(const PlanarGraph& g, const MarkingScheme& scheme, EdgeIndex e) {
  std::optional<FaceIndex> owner;
  for (FaceIndex f : g.faces_of_edge(e)) {
    if (!scheme.is_gray(f)) continue;
    if (owner) throw StrategyError("edge " + std::to_string(e) + " lies on two gray faces");
    owner = f;
  }
  if (!owner) throw StrategyError("edge " + std::to_string(e) + " has no gray owner");
  return *owner;
}

int marked_edge_rank(const GameState& state, const MarkingScheme& scheme, EdgeIndex e) {
  const PlanarGraph& g = state.graph();
  const FaceIndex t = corresponding_triangle(g, scheme, e);
  const auto edges = g.face_edges(t);
  int rank = 0;
  for (const Move& m : state.history()) {
    if (m.side != Side::Bob) continue;
    if (std::find(edges.begin(), edges.end(), m.object) == edges.end()) continue;
    ++rank;
    if (m.object == e) return rank;
  }
  throw StrategyError("edge " + std::to_string(e) + " is not marked");
}

AngleStrategy::AngleStrategy(std::shared_ptr<const PlanarGraph> graph, MarkingScheme scheme,
                             std::optional<std::uint64_t> seed)
    : graph_(std::move(graph)), scheme_(std::move(scheme)), seed_(seed), rng_(seed.value_or(0)) {
  if (!graph_) throw StrategyError("angle strategy needs a graph");
  if (scheme_.color.size() != graph_->face_count() || scheme_.marked_angle.size() != graph_->face_count())
    throw StrategyError("scheme/graph mismatch: face counts differ");
  const ValidationReport report = validate_theorem_conditions(*graph_, scheme_);
  if (!report.passed()) {
    for (const auto& c : report.checks)
      if (!c.passed) throw StrategyError("scheme/graph mismatch: " + std::string(to_string(c.which)) + " fails");
  }
  owner_ = gray_owners(*graph_, scheme_);
}

VertexIndex AngleStrategy::pick(const GameState&, std::vector<VertexIndex> candidates) {
  if (!seed_) return *std::min_element(candidates.begin(), candidates.end());
  std::sort(candidates.begin(), candidates.end());
  return candidates[rng_() % candidates.size()];
}

Move AngleStrategy::choose(const GameState& state) {
  require_turn(state, Side::Alice);
  if (state.graph().vertex_count() != graph_->vertex_count() || state.graph().edge_count() != graph_->edge_count())
    throw StrategyError("scheme/graph mismatch: state belongs to another graph");

  const auto last = state.last_move_by(Side::Bob);
  if (!last) {
    last_rule_ = Rule::Opening;
    return {Side::Alice, pick(state, unmarked_vertices(state))};
  }

  const EdgeIndex e = last->object;
  if (!owner_.at(e)) throw StrategyError("edge " + std::to_string(e) + " has no gray owner");
  const FaceIndex t = *owner_[e];
  const int rank = marked_edge_rank(state, scheme_, e);
  const auto& corners = graph_->face(t).cycle;

  std::optional<VertexIndex> target;
  if (rank == 1) {
    target = scheme_.marked_angle[t];
  } else if (rank == 2) {
    // vertex shared by the two marked edges of T
    for (EdgeIndex other : graph_->face_edges(t)) {
      if (other == e || !state.edge_marked(other)) continue;
      const Edge& a = graph_->edge(e);
      const Edge& b = graph_->edge(other);
      target = b.touches(a.u) ? a.u : a.v;
    }
  }

  std::vector<VertexIndex> in_t;
  for (VertexIndex c : corners)
    if (!state.vertex_marked(c)) in_t.push_back(c);

  const Rule rule = rank == 1 ? Rule::R1 : rank == 2 ? Rule::R2 : Rule::R3;
  if (rank < 3 && target && !state.vertex_marked(*target)) {
    last_rule_ = rule;
    return {Side::Alice, *target};
  }
  if (!in_t.empty()) {
    // R3 takes the remaining vertex of T; R1/R2 fall back to another one in T
    last_rule_ = rank == 3 ? Rule::R3 : Rule::FallbackTriangle;
    return {Side::Alice, pick(state, in_t)};
  }
  last_rule_ = Rule::FallbackAny;
  return {Side::Alice, pick(state, unmarked_vertices(state))};
}

std::string AngleStrategy::descriptor() const {
  return seed_ ? "alice:angle:seed=" + std::to_string(*seed_) : "alice:angle";
}

std::unique_ptr<Strategy> alice_angle(std::shared_ptr<const PlanarGraph> graph, const MarkingScheme& scheme,
                                      std::optional<std::uint64_t> seed) {
  return std::make_unique<AngleStrategy>(std::move(graph), scheme, seed);
}

// ---------------------------------------------------------------------------

ExtensionStrategy::ExtensionStrategy(std::shared_ptr<const PlanarGraph> big, std::shared_ptr<const PlanarGraph> core,
                                     std::unique_ptr<Strategy> inner, int n)
    : big_(std::move(big)), core_(std::move(core)), inner_(std::move(inner)), n_(n) {
  if (!big_ || !core_ || !inner_) throw StrategyError("extension strategy needs a graph, a core and an inner strategy");
  if (inner_->side() != Side::Alice) throw StrategyError("inner strategy must play Alice");
  if (n_ < 1) throw StrategyError("extension strategy needs n >= 1");

  to_core_vertex_.assign(big_->vertex_count(), std::nullopt);
  from_core_vertex_.resize(core_->vertex_count());
  for (std::size_t c = 0; c < core_->vertex_count(); ++c) {
    const int id = core_->vertex(c).id;
    const auto v = big_->find_vertex(id);
    if (!v) throw StrategyError("core vertex " + std::to_string(id) + " is not in the graph");
    to_core_vertex_[*v] = static_cast<VertexIndex>(c);
    from_core_vertex_[c] = *v;
  }
  to_core_edge_.assign(big_->edge_count(), std::nullopt);
  for (std::size_t e = 0; e < big_->edge_count(); ++e) {
    const Edge& edge = big_->edge(e);
    const auto cu = to_core_vertex_[edge.u];
    const auto cv = to_core_vertex_[edge.v];
    if (!cu || !cv) continue;
    const auto ce = core_->find_edge(*cu, *cv);
    if (!ce)
      throw StrategyError("core is not vertex-induced: edge " + std::to_string(big_->vertex(edge.u).id) + "-" +
                          std::to_string(big_->vertex(edge.v).id) + " missing");
    to_core_edge_[e] = *ce;
  }
  for (std::size_t e = 0; e < core_->edge_count(); ++e) {
    const Edge& edge = core_->edge(e);
    if (!big_->find_edge(from_core_vertex_[edge.u], from_core_vertex_[edge.v]))
      throw StrategyError("core edge " + std::to_string(core_->vertex(edge.u).id) + "-" +
                          std::to_string(core_->vertex(edge.v).id) + " is not in the graph");
  }
  for (std::size_t v = 0; v < big_->vertex_count(); ++v)
    if (!to_core_vertex_[v] && big_->degree(static_cast<VertexIndex>(v)) >= n_)
      throw StrategyError("vertex " + std::to_string(big_->vertex(v).id) + " outside the core has degree " +
                          std::to_string(big_->degree(static_cast<VertexIndex>(v))) + " >= " + std::to_string(n_));
}

GameState ExtensionStrategy::project(const GameState& state) const {
  std::vector<Move> moves;
  for (const Move& m : state.history()) {
    if (m.side == Side::Alice) {
      if (const auto c = to_core_vertex_.at(m.object)) moves.push_back({Side::Alice, *c});
    } else if (const auto c = to_core_edge_.at(m.object)) {
      moves.push_back({Side::Bob, *c});
    }
  }
  return GameState::from_moves(core_, moves, Side::Alice);
}

Move ExtensionStrategy::free_move(const GameState& state) const {
  for (VertexIndex c : from_core_vertex_)
    if (!state.vertex_marked(c)) return {Side::Alice, c};
  return {Side::Alice, unmarked_vertices(state).front()};
}

Move ExtensionStrategy::choose(const GameState& state) {
  require_turn(state, Side::Alice);
  const auto last = state.last_move_by(Side::Bob);

  Move move;
  auto delegate = [&] {
    const GameState sub = project(state);
    if (sub.game_over()) return free_move(state);
    const Move inner = inner_->choose(sub);
    return Move{Side::Alice, from_core_vertex_.at(inner.object)};
  };

  if (!last) {
    last_case_ = Case::Opening;
    move = delegate();
  } else if (to_core_edge_.at(last->object)) {
    last_case_ = Case::CoreEdge;
    move = delegate();
  } else {
    const Edge& e = big_->edge(last->object);
    const bool u_in = to_core_vertex_[e.u].has_value();
    const bool v_in = to_core_vertex_[e.v].has_value();
    if (!u_in && !v_in) {
      last_case_ = Case::BothOutside;
      move = free_move(state);
    } else {
      const VertexIndex w = u_in ? e.u : e.v;
      if (!state.vertex_marked(w)) {
        last_case_ = Case::SpokeToUnmarked;
        move = {Side::Alice, w};
      } else {
        last_case_ = Case::SpokeToMarked;
        move = free_move(state);
      }
    }
  }
  check_invariant(state, move);
  return move;
}

void ExtensionStrategy::check_invariant(const GameState& state, const Move& move) const {
  std::vector<int> core_marked(core_->vertex_count(), 0);
  for (std::size_t e = 0; e < big_->edge_count(); ++e) {
    if (!to_core_edge_[e] || !state.edge_marked(static_cast<EdgeIndex>(e))) continue;
    const Edge& edge = core_->edge(*to_core_edge_[e]);
    ++core_marked[edge.u];
    ++core_marked[edge.v];
  }
  for (std::size_t c = 0; c < core_->vertex_count(); ++c) {
    const VertexIndex v = from_core_vertex_[c];
    if (v == move.object || state.vertex_marked(v)) continue;
    if (core_marked[c] >= n_ - 1) {
      std::vector<Move> history(state.history().begin(), state.history().end());
      history.push_back(move);
      throw ExtensionAssertion("inner strategy left vertex " + std::to_string(big_->vertex(v).id) + " unmarked with " +
                                   std::to_string(core_marked[c]) + " marked core edges",
                               big_->vertex(v).id, std::move(history));
    }
  }
}

std::string ExtensionStrategy::descriptor() const {
  return "alice:extension:n=" + std::to_string(n_) + ":inner=" + inner_->descriptor();
}

std::unique_ptr<Strategy> alice_extension(std::shared_ptr<const PlanarGraph> big, std::span<const int> core_ids,
                                          std::unique_ptr<Strategy> inner, std::shared_ptr<const PlanarGraph> core,
                                          int n) {
  if (!core) {
    if (!big) throw StrategyError("extension strategy needs a graph");
    core = std::make_shared<PlanarGraph>(induced_subgraph(*big, core_ids));
  } else {
    std::vector<int> want(core_ids.begin(), core_ids.end());
    std::vector<int> have;
    for (const Vertex& v : core->vertices()) have.push_back(v.id);
    std::sort(want.begin(), want.end());
    if (want != have) throw StrategyError("core graph does not match the core vertex set");
  }
  return std::make_unique<ExtensionStrategy>(std::move(big), std::move(core), std::move(inner), n);
}

// ---------------------------------------------------------------------------

namespace {

// Outside-edge condition for an interior vertex given its two path edges.
bool interior_ok(const GameState& s, VertexIndex v, EdgeIndex in, EdgeIndex out, int n) {
  if (s.vertex_marked(v)) return false;
  const PlanarGraph& g = s.graph();
  const int outside = g.degree(v) - 2;
  const int outside_marked = s.marked_degree(v) - (s.edge_marked(in) ? 1 : 0) - (s.edge_marked(out) ? 1 : 0);
  return outside >= n + 1 && outside_marked >= n;
}

// Depth-first enumeration of n-free paths with exactly `len` edges, in
// lexicographic order of the vertex sequence.
class PathSearch {
 public:
  PathSearch(const GameState& s, int n) : s_(s), g_(s.graph()), n_(n), on_path_(g_.vertex_count(), false) {}

  void run(int len, const std::function<bool(const std::vector<VertexIndex>&)>& visit) {
    len_ = len;
    visit_ = &visit;
    stop_ = false;
    for (std::size_t v0 = 0; v0 < g_.vertex_count() && !stop_; ++v0) {
      path_.assign(1, static_cast<VertexIndex>(v0));
      edges_.clear();
      on_path_[v0] = true;
      extend();
      on_path_[v0] = false;
    }
  }

 private:
  void extend() {
    const VertexIndex tail = path_.back();
    const int have = static_cast<int>(edges_.size());
    std::vector<Incidence> next(g_.incident(tail).begin(), g_.incident(tail).end());
    std::sort(next.begin(), next.end(), [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    for (const Incidence& inc : next) {
      if (stop_) return;
      const VertexIndex w = inc.neighbor;
      if (on_path_[w]) continue;
      if (have == 0) {
        // first edge must be marked and v1 must be able to serve as an interior vertex
        if (!s_.edge_marked(inc.edge) || s_.vertex_marked(w) || g_.degree(w) - 2 < n_ + 1) continue;
      } else {
        if (!interior_ok(s_, tail, edges_.back(), inc.edge, n_)) continue;
        if (have + 1 == len_) {
          if (!s_.edge_marked(inc.edge)) continue;
        } else if (s_.vertex_marked(w) || g_.degree(w) - 2 < n_ + 1) {
          continue;
        }
      }
      path_.push_back(w);
      edges_.push_back(inc.edge);
      if (have + 1 == len_) {
        if (!(*visit_)(path_)) stop_ = true;
      } else {
        on_path_[w] = true;
        extend();
        on_path_[w] = false;
      }
      path_.pop_back();
      edges_.pop_back();
    }
  }

  const GameState& s_;
  const PlanarGraph& g_;
  int n_;
  int len_ = 2;
  bool stop_ = false;
  const std::function<bool(const std::vector<VertexIndex>&)>* visit_ = nullptr;
  std::vector<bool> on_path_;
  std::vector<VertexIndex> path_;
  std::vector<EdgeIndex> edges_;
};

}  // namespace

bool is_free_path(const GameState& state, std::span<const VertexIndex> path, int n) {
  const PlanarGraph& g = state.graph();
  const std::size_t k = path.size() - 1;
  if (path.size() < 3) return false;
  std::unordered_set<VertexIndex> seen(path.begin(), path.end());
  if (seen.size() != path.size()) return false;
  std::vector<EdgeIndex> edges;
  for (std::size_t i = 0; i < k; ++i) {
    const auto e = g.find_edge(path[i], path[i + 1]);
    if (!e) return false;
    edges.push_back(*e);
  }
  if (!state.edge_marked(edges.front()) || !state.edge_marked(edges.back())) return false;
  for (std::size_t i = 1; i < k; ++i)
    if (!interior_ok(state, path[i], edges[i - 1], edges[i], n)) return false;
  return true;
}

std::vector<FreePath> find_free_paths(const GameState& state, int n, int max_len) {
  std::vector<FreePath> out;
  PathSearch search(state, n);
  for (int len = 2; len <= max_len; ++len)
    search.run(len, [&](const std::vector<VertexIndex>& p) {
      out.push_back({p, n});
      return true;
    });
  std::sort(out.begin(), out.end(), [](const FreePath& a, const FreePath& b) { return a.vertices < b.vertices; });
  return out;
}

std::optional<FreePath> shortest_free_path(const GameState& state, int n, int max_len) {
  PathSearch search(state, n);
  std::optional<FreePath> found;
  for (int len = 2; len <= max_len && !found; ++len)
    search.run(len, [&](const std::vector<VertexIndex>& p) {
      found = FreePath{p, n};
      return false;
    });
  return found;
}

FreePathBob::FreePathBob(int n, int max_len) : n_(n), max_len_(max_len) {
  if (n < 0) throw StrategyError("free-path level must be >= 0");
  if (max_len < 2) throw StrategyError("maxlen must be >= 2");
}

Move FreePathBob::choose(const GameState& state) {
  require_turn(state, Side::Bob);
  last_path_ = shortest_free_path(state, n_, max_len_);
  if (last_path_) {
    const PlanarGraph& g = state.graph();
    const auto& p = last_path_->vertices;
    const VertexIndex v1 = p[1];
    if (last_path_->length() == 2) {
      // any unmarked edge at v1 off the path completes the score
      std::optional<EdgeIndex> best;
      for (const Incidence& inc : g.incident(v1)) {
        if (inc.neighbor == p[0] || inc.neighbor == p[2] || state.edge_marked(inc.edge)) continue;
        if (!best || inc.edge < *best) best = inc.edge;
      }
      if (best) return {Side::Bob, *best};
    } else {
      const EdgeIndex e12 = *g.find_edge(v1, p[2]);
      if (!state.edge_marked(e12)) return {Side::Bob, e12};
    }
    // v1 already carries the target score; any edge keeps it
  }
  return bob_greedy_move(state);
}

std::string FreePathBob::descriptor() const {
  return "bob:freepath:n=" + std::to_string(n_) + ":maxlen=" + std::to_string(max_len_);
}

std::unique_ptr<Strategy> bob_free_path(int n, int max_len) { return std::make_unique<FreePathBob>(n, max_len); }

// ---------------------------------------------------------------------------

Move alice_greedy_move(const GameState& state) {
  require_turn(state, Side::Alice);
  std::optional<VertexIndex> best;
  for (std::size_t v = 0; v < state.graph().vertex_count(); ++v) {
    const auto vi = static_cast<VertexIndex>(v);
    if (state.vertex_marked(vi)) continue;
    if (!best || state.marked_degree(vi) > state.marked_degree(*best)) best = vi;
  }
  return {Side::Alice, *best};
}

Move bob_greedy_move(const GameState& state) {
  require_turn(state, Side::Bob);
  const PlanarGraph& g = state.graph();
  const int current = state.round_score().score;
  std::optional<EdgeIndex> best;
  int best_score = -1;
  int best_raised = -1;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto ei = static_cast<EdgeIndex>(e);
    if (state.edge_marked(ei)) continue;
    const Edge& edge = g.edge(ei);
    int score = current;
    int raised = 0;
    for (VertexIndex w : {edge.u, edge.v}) {
      if (state.vertex_marked(w)) continue;
      ++raised;
      score = std::max(score, state.marked_degree(w) + 1);
    }
    if (score > best_score || (score == best_score && raised > best_raised)) {
      best = ei;
      best_score = score;
      best_raised = raised;
    }
  }
  return {Side::Bob, *best};
}

namespace {

class GreedyStrategy final : public Strategy {
 public:
  explicit GreedyStrategy(Side side) : side_(side) {}
  Side side() const override { return side_; }
  Move choose(const GameState& state) override {
    return side_ == Side::Alice ? alice_greedy_move(state) : bob_greedy_move(state);
  }
  std::string descriptor() const override { return std::string(to_string(side_)) + ":greedy"; }

 private:
  Side side_;
};

class RandomStrategy final : public Strategy {
 public:
  RandomStrategy(Side side, std::uint64_t seed) : side_(side), seed_(seed), rng_(seed) {}
  Side side() const override { return side_; }
  Move choose(const GameState& state) override {
    require_turn(state, side_);
    const auto moves = state.legal_moves();
    return moves[rng_() % moves.size()];
  }
  std::string descriptor() const override {
    return std::string(to_string(side_)) + ":random:seed=" + std::to_string(seed_);
  }

 private:
  Side side_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace

std::unique_ptr<Strategy> baseline_strategy(BaselineKind kind, std::uint64_t seed) {
  switch (kind) {
    case BaselineKind::AliceGreedy: return std::make_unique<GreedyStrategy>(Side::Alice);
    case BaselineKind::BobGreedy: return std::make_unique<GreedyStrategy>(Side::Bob);
    case BaselineKind::AliceRandom: return std::make_unique<RandomStrategy>(Side::Alice, seed);
    case BaselineKind::BobRandom: return std::make_unique<RandomStrategy>(Side::Bob, seed);
  }
  throw StrategyError("unknown baseline");
}

// ---------------------------------------------------------------------------

std::optional<std::string> StrategyDescriptor::get(std::string_view key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return std::nullopt;
}

std::string StrategyDescriptor::str() const {
  std::string out = std::string(to_string(side)) + ":" + kind;
  for (const auto& [k, v] : params) out += ":" + k + "=" + v;
  return out;
}

StrategyDescriptor parse_descriptor(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() < 2) throw StrategyError("strategy descriptor must look like side:kind[:key=value]...");
  StrategyDescriptor d;
  const auto side = parse_side(parts[0]);
  if (!side) throw StrategyError("unknown side \"" + std::string(parts[0]) + "\"");
  d.side = *side;
  d.kind = std::string(parts[1]);
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw StrategyError("bad strategy parameter \"" + std::string(parts[i]) + "\"");
    d.params.emplace_back(std::string(parts[i].substr(0, eq)), std::string(parts[i].substr(eq + 1)));
  }
  return d;
}

std::unique_ptr<Strategy> make_strategy(std::string_view text, const StrategyContext& ctx) {
  const StrategyDescriptor d = parse_descriptor(text);
  auto allow = [&](std::initializer_list<std::string_view> keys) {
    for (const auto& [k, v] : d.params)
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        throw StrategyError("unknown parameter \"" + k + "\" for " + std::string(to_string(d.side)) + ":" + d.kind);
  };
  auto seed_or_default = [&] {
    const auto s = d.get("seed");
    return s ? parse_u64("seed", *s) : ctx.default_seed;
  };

  if (d.kind == "random") {
    allow({"seed"});
    return baseline_strategy(d.side == Side::Alice ? BaselineKind::AliceRandom : BaselineKind::BobRandom,
                             seed_or_default());
  }
  if (d.kind == "greedy") {
    allow({});
    return baseline_strategy(d.side == Side::Alice ? BaselineKind::AliceGreedy : BaselineKind::BobGreedy);
  }
  if (d.side == Side::Bob && d.kind == "freepath") {
    allow({"n", "maxlen"});
    const auto n = d.get("n");
    const auto maxlen = d.get("maxlen");
    return bob_free_path(n ? parse_int("n", *n) : 0, maxlen ? parse_int("maxlen", *maxlen) : 8);
  }
  if (d.side == Side::Alice && d.kind == "angle") {
    allow({"seed"});
    if (!ctx.graph || !ctx.scheme) throw StrategyError("alice:angle needs a graph with a marking scheme");
    std::optional<std::uint64_t> seed;
    if (const auto s = d.get("seed")) seed = parse_u64("seed", *s);
    return alice_angle(ctx.graph, *ctx.scheme, seed);
  }
  if (d.side == Side::Alice && d.kind == "extension") {
    allow({"n", "seed"});
    if (!ctx.graph || !ctx.core || !ctx.core_scheme)
      throw StrategyError("alice:extension needs a core graph with a marking scheme");
    const auto n = d.get("n");
    std::optional<std::uint64_t> seed;
    if (const auto s = d.get("seed")) seed = parse_u64("seed", *s);
    auto inner = alice_angle(ctx.core, *ctx.core_scheme, seed);
    return std::make_unique<ExtensionStrategy>(ctx.graph, ctx.core, std::move(inner), n ? parse_int("n", *n) : 4);
  }
  throw StrategyError("unknown strategy \"" + std::string(text) + "\"");
}

}  // namespace markgame
