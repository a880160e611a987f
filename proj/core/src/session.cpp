#include "markgame/session.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "markgame/match.hpp"

namespace markgame {

using nlohmann::json;

SessionConfig SessionConfig::from_json(const json& body) {
  if (!body.is_object()) throw ServiceError(400, "request body must be a JSON object");
  SessionConfig c;
  try {
    c.family = body.value("family", c.family);
    c.rows = body.value("rows", c.rows);
    c.cols = body.value("cols", c.cols);
    c.base = body.value("base", c.base);
    c.insertions = body.value("insertions", c.insertions);
    c.machine = body.value("machine", c.machine);
    c.seed = body.value("seed", c.seed);
    const std::string human = body.value("human", std::string("bob"));
    const auto side = parse_side(human);
    if (!side) throw ServiceError(400, "human must be \"alice\" or \"bob\"");
    c.human = *side;
  } catch (const json::exception& e) {
    throw ServiceError(400, std::string("bad session request: ") + e.what());
  }
  return c;
}

json SessionConfig::to_json() const {
  return {{"family", family}, {"rows", rows},       {"cols", cols},         {"base", base},
          {"insertions", insertions}, {"human", to_string(human)}, {"machine", machine}, {"seed", seed}};
}

Move parse_object(const PlanarGraph& graph, std::string_view text) {
  if (text.size() < 3 || text[1] != ':' || (text[0] != 'v' && text[0] != 'e'))
    throw ServiceError(400, "object must look like \"v:<vertex id>\" or \"e:<edge id>\"");
  int id = 0;
  const auto digits = text.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw ServiceError(400, "object must look like \"v:<vertex id>\" or \"e:<edge id>\"");
  if (text[0] == 'v') {
    const auto v = graph.find_vertex(id);
    return {Side::Alice, v ? *v : -1};
  }
  return {Side::Bob, id};
}

StrategyContext context_for(const LatticeBundle& bundle, std::uint64_t seed) {
  StrategyContext ctx;
  ctx.graph = bundle.graph;
  ctx.scheme = bundle.scheme;
  ctx.default_seed = seed;
  if (bundle.core && bundle.core->scheme) {
    ctx.core = bundle.core->graph;
    ctx.core_scheme = bundle.core->scheme;
  }
  return ctx;
}

namespace {

struct Snapshot {
  GameState state;
  std::vector<int> trace;
  std::vector<int> alice_trace;
  int final_score = 0;
  std::vector<Move> last_moves;  // applied by the request that produced this snapshot
};

Snapshot advance(const Snapshot& from, const Move& m) {
  Snapshot s = from;
  s.state = from.state.apply(m);
  const int score = s.state.round_score().score;
  if (m.side == Side::Alice) {
    s.alice_trace.push_back(score);
  } else {
    s.trace.push_back(score);
    s.final_score = std::max(s.final_score, score);
  }
  s.last_moves.push_back(m);
  return s;
}

json legal_json(const GameState& state) {
  json out = json::array();
  for (const Move& m : state.legal_moves()) out.push_back(describe(state.graph(), m));
  return out;
}

}  // namespace

struct SessionManager::Session {
  std::string id;
  SessionConfig config;
  LatticeBundle bundle;
  StrategyContext ctx;
  std::unique_ptr<Strategy> machine;
  std::mutex mutex;  // serializes mutations
  std::shared_ptr<const Snapshot> current;

  std::shared_ptr<const Snapshot> load() const { return std::atomic_load(&current); }
  void store(Snapshot s) { std::atomic_store(&current, std::shared_ptr<const Snapshot>(std::make_shared<Snapshot>(std::move(s)))); }

  json view(const Snapshot& snap) const {
    const PlanarGraph& g = *bundle.graph;
    const GameState& st = snap.state;
    json vertices = json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const Vertex& vx = g.vertex(v);
      const auto vi = static_cast<VertexIndex>(v);
      vertices.push_back({{"id", vx.id},
                          {"x", vx.x},
                          {"y", vx.y},
                          {"marked", st.vertex_marked(vi)},
                          {"score", st.vertex_score(vi)},
                          {"marked_edges", st.marked_degree(vi)}});
    }
    json edges = json::array();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      edges.push_back({{"id", static_cast<int>(e)},
                       {"u", g.vertex(ed.u).id},
                       {"v", g.vertex(ed.v).id},
                       {"marked", st.edge_marked(static_cast<EdgeIndex>(e))}});
    }
    json faces = json::array();
    for (std::size_t f = 0; f < g.face_count(); ++f) {
      json cycle = json::array();
      for (VertexIndex v : g.face(f).cycle) cycle.push_back(g.vertex(v).id);
      json face = {{"id", g.face(f).id}, {"cycle", cycle}, {"color", nullptr}, {"marked_angle", nullptr}};
      if (bundle.scheme) {
        if (const auto c = bundle.scheme->color[f]) face["color"] = to_string(*c);
        if (const auto a = bundle.scheme->marked_angle[f]) face["marked_angle"] = g.vertex(*a).id;
      }
      faces.push_back(std::move(face));
    }
    json last = json::array();
    for (const Move& m : snap.last_moves) last.push_back({{"side", to_string(m.side)}, {"object", describe(g, m)}});
    const bool over = st.game_over();
    return {{"id", id},
            {"config", config.to_json()},
            {"family", to_string(bundle.family)},
            {"human", to_string(config.human)},
            {"machine", machine->descriptor()},
            {"to_move", to_string(st.to_move())},
            {"round", st.round()},
            {"ply", static_cast<int>(st.history().size())},
            {"game_over", over},
            {"score", st.round_score().score},
            {"final_score", snap.final_score},
            {"trace", snap.trace},
            {"alice_trace", snap.alice_trace},
            {"vertices", std::move(vertices)},
            {"edges", std::move(edges)},
            {"faces", std::move(faces)},
            {"legal", over ? json::array() : legal_json(st)},
            {"last_moves", std::move(last)}};
  }
};

SessionManager::SessionManager(std::optional<std::uint64_t> id_seed) : id_rng_(id_seed.value_or(0)) {
  if (!id_seed) {
    std::random_device rd;
    id_rng_.seed((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    seeded_from_device_ = true;
  }
}

SessionManager::~SessionManager() = default;

std::string SessionManager::new_id() {
  std::lock_guard lock(id_mutex_);
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  if (seeded_from_device_) {
    std::random_device rd;
    hi = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    lo = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  } else {
    hi = id_rng_();
    lo = id_rng_();
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown session \"" + id + "\"");
  return it->second;
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

json SessionManager::create(const SessionConfig& config) {
  if (config.rows < 1 || config.cols < 1 || config.rows > 40 || config.cols > 40)
    throw ServiceError(400, "rows and cols must be in 1..40");
  auto s = std::make_shared<Session>();
  s->config = config;
  try {
    s->bundle = generate(config.family, config.rows, config.cols, config.seed, config.base, config.insertions);
  } catch (const std::exception& e) {
    throw ServiceError(400, e.what());
  }
  s->ctx = context_for(s->bundle, config.seed);
  try {
    s->machine = make_strategy(config.machine, s->ctx);
  } catch (const StrategyError& e) {
    throw ServiceError(400, e.what());
  }
  if (s->machine->side() != opponent(config.human))
    throw ServiceError(400, "machine strategy must play " + std::string(to_string(opponent(config.human))));

  Snapshot snap{GameState::new_game(s->bundle.graph), {}, {}, 0, {}};
  if (config.human == Side::Bob) snap = advance(snap, s->machine->choose(snap.state));
  s->store(std::move(snap));

  std::string id;
  {
    std::unique_lock lock(mutex_);
    do id = new_id();
    while (sessions_.count(id));
    s->id = id;
    sessions_.emplace(id, s);
  }
  return s->view(*s->load());
}

json SessionManager::get(const std::string& id) const {
  auto s = find(id);
  return s->view(*s->load());
}

json SessionManager::submit(const std::string& id, const std::string& object, std::optional<int> expected_ply) {
  auto s = find(id);
  std::unique_lock lock(s->mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw ServiceError(409, "another move for this session is in progress", {{"reason", "conflict"}});

  const auto snap = s->load();
  const GameState& st = snap->state;
  if (expected_ply && *expected_ply != static_cast<int>(st.history().size()))
    throw ServiceError(409, "stale move: the game has advanced", {{"reason", "stale"}, {"ply", st.history().size()}});
  if (st.game_over()) throw ServiceError(409, "game is over", {{"reason", "game_over"}, {"legal", json::array()}});

  const Move m = parse_object(*s->bundle.graph, object);
  if (m.side != s->config.human || !st.is_legal(m))
    throw ServiceError(409, "illegal move " + object, {{"reason", "illegal"}, {"legal", legal_json(st)}});

  Snapshot next = advance(*snap, m);
  next.last_moves = {m};
  if (!next.state.game_over()) {
    try {
      const Move reply = s->machine->choose(next.state);
      if (!next.state.is_legal(reply)) throw StrategyError("machine returned an illegal move");
      next = advance(next, reply);
    } catch (const StrategyError& e) {
      throw ServiceError(500, std::string("machine strategy failed: ") + e.what());
    }
  }
  s->store(std::move(next));
  return s->view(*s->load());
}

json SessionManager::hint(const std::string& id) const {
  auto s = find(id);
  const auto snap = s->load();
  const GameState& st = snap->state;
  if (st.game_over() || st.to_move() != s->config.human)
    throw ServiceError(409, "no move to suggest", {{"reason", st.game_over() ? "game_over" : "not_your_turn"}});

  std::string desc;
  if (s->config.human == Side::Bob) desc = "bob:freepath:n=0";
  else if (s->ctx.scheme) desc = "alice:angle";
  else if (s->ctx.core) desc = "alice:extension";
  else desc = "alice:greedy";
  auto strategy = make_strategy(desc, s->ctx);
  const Move m = strategy->choose(st);
  json out = {{"object", describe(st.graph(), m)}, {"strategy", strategy->descriptor()}};
  if (auto* fp = dynamic_cast<FreePathBob*>(strategy.get())) {
    if (fp->last_path()) {
      json path = json::array();
      for (VertexIndex v : fp->last_path()->vertices) path.push_back(st.graph().vertex(v).id);
      out["free_path"] = std::move(path);
    } else {
      out["free_path"] = nullptr;
    }
  }
  return out;
}

json SessionManager::transcript(const std::string& id) const {
  auto s = find(id);
  const auto snap = s->load();
  const std::vector<Move> moves(snap->state.history().begin(), snap->state.history().end());
  const MatchResult r = replay(s->bundle.graph, moves);
  const std::string ref = s->config.family + ":" + std::to_string(s->config.rows) + "x" + std::to_string(s->config.cols);
  json t = transcript_to_json(*s->bundle.graph, r, ref, s->config.to_json());
  t["session"] = s->id;
  return t;
}

void SessionManager::snapshot(const std::string& id, const std::filesystem::path& path) const {
  const json t = transcript(id);
  std::ofstream out(path);
  if (!out) throw ServiceError(500, "cannot write snapshot to " + path.string());
  out << t.dump(2) << "\n";
}

}  // namespace markgame
