#include "markgame/match.hpp"

namespace markgame {

using nlohmann::json;

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::VerticesExhausted: return "vertices_exhausted";
    case Termination::EdgesExhausted: return "edges_exhausted";
    case Termination::RoundCap: return "round_cap";
  }
  return "?";
}

namespace {

void record_bob(MatchResult& r, const GameState& s) {
  const RoundScore rs = s.round_score();
  r.trace.push_back(rs.score);
  if (r.trace.size() == 1 || rs.score > r.final_score) {
    r.final_score = rs.score;
    r.witness = rs.witness;
    r.witness_round = static_cast<int>(r.trace.size());
  }
}

}  // namespace

MatchResult play_from(const GameState& start, Strategy& alice, Strategy& bob, int round_cap,
                      const MatchObserver& observer) {
  if (alice.side() != Side::Alice || bob.side() != Side::Bob) throw GameError("strategies assigned to the wrong sides");
  MatchResult r;
  GameState state = start;
  int rounds = 0;
  while (true) {
    if (state.to_move() == Side::Alice && rounds >= round_cap) {
      r.termination = Termination::RoundCap;
      break;
    }
    if (state.game_over()) {
      r.termination = state.to_move() == Side::Alice ? Termination::VerticesExhausted : Termination::EdgesExhausted;
      break;
    }
    Strategy& mover = state.to_move() == Side::Alice ? alice : bob;
    const Move m = mover.choose(state);
    if (!state.is_legal(m)) {
      std::vector<Move> h(state.history().begin(), state.history().end());
      throw MatchAborted(mover.descriptor() + " returned illegal move " + std::string(to_string(m.side)) + " " +
                             std::to_string(m.object) + " at half-move " + std::to_string(h.size() + 1),
                         std::move(h), m);
    }
    state = state.apply(m);
    r.history.push_back(m);
    if (m.side == Side::Alice) {
      r.alice_trace.push_back(state.round_score().score);
    } else {
      record_bob(r, state);
      ++rounds;
    }
    if (observer) observer(state);
  }
  return r;
}

MatchResult play_match(std::shared_ptr<const PlanarGraph> graph, Strategy& alice, Strategy& bob, int round_cap,
                       const MatchObserver& observer) {
  return play_from(GameState::new_game(std::move(graph)), alice, bob, round_cap, observer);
}

GameState replay_state(std::shared_ptr<const PlanarGraph> graph, std::span<const Move> moves) {
  GameState s = GameState::new_game(std::move(graph));
  for (const Move& m : moves) s = s.apply(m);
  return s;
}

MatchResult replay(std::shared_ptr<const PlanarGraph> graph, std::span<const Move> moves) {
  MatchResult r;
  GameState s = GameState::new_game(std::move(graph));
  for (const Move& m : moves) {
    s = s.apply(m);
    r.history.push_back(m);
    if (m.side == Side::Alice) r.alice_trace.push_back(s.round_score().score);
    else record_bob(r, s);
  }
  r.termination = s.game_over() ? (s.to_move() == Side::Alice ? Termination::VerticesExhausted
                                                              : Termination::EdgesExhausted)
                                : Termination::RoundCap;
  return r;
}

json transcript_to_json(const PlanarGraph& graph, const MatchResult& result, const std::string& graph_ref,
                        const json& config) {
  json moves = json::array();
  for (const Move& m : result.history) {
    const int object_id = m.side == Side::Alice ? graph.vertex(m.object).id : m.object;
    moves.push_back({{"side", to_string(m.side)}, {"object_id", object_id}, {"object", describe(graph, m)}});
  }
  json doc = {
      {"graph_ref", graph_ref},
      {"moves", std::move(moves)},
      {"trace", result.trace},
      {"alice_trace", result.alice_trace},
      {"final_score", result.final_score},
      {"witness_round", result.witness_round},
      {"rounds", result.rounds()},
      {"termination", to_string(result.termination)},
  };
  doc["witness"] = result.witness ? json(graph.vertex(*result.witness).id) : json(nullptr);
  if (!config.is_null()) doc["config"] = config;
  return doc;
}

std::vector<Move> moves_from_json(const PlanarGraph& graph, const json& transcript) {
  std::vector<Move> out;
  try {
    for (const auto& m : transcript.at("moves")) {
      const auto side = parse_side(m.at("side").get<std::string>());
      if (!side) throw GameError("unknown side in transcript");
      const int id = m.at("object_id").get<int>();
      if (*side == Side::Alice) {
        const auto v = graph.find_vertex(id);
        if (!v) throw GameError("transcript refers to unknown vertex " + std::to_string(id));
        out.push_back({Side::Alice, *v});
      } else {
        out.push_back({Side::Bob, id});
      }
    }
  } catch (const json::exception& e) {
    throw GameError(std::string("malformed transcript: ") + e.what());
  }
  return out;
}

}  // namespace markgame
