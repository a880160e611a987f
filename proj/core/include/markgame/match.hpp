#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "markgame/game.hpp"
#include "markgame/strategy.hpp"

namespace markgame {

enum class Termination { VerticesExhausted, EdgesExhausted, RoundCap };
std::string_view to_string(Termination t);

struct MatchResult {
  int final_score = 0;                  // max of post-Bob round scores
  std::optional<VertexIndex> witness;   // vertex attaining final_score
  int witness_round = 0;                // first round (1-based) attaining it, 0 if none played
  std::vector<int> trace;               // round score after each Bob half-move
  std::vector<int> alice_trace;         // round score after each Alice half-move (diagnostic)
  std::vector<Move> history;
  Termination termination = Termination::VerticesExhausted;

  int rounds() const { return static_cast<int>(trace.size()); }
};

/// Thrown when a strategy returns an illegal move; carries the position it was asked about.
class MatchAborted : public std::runtime_error {
 public:
  MatchAborted(const std::string& what, std::vector<Move> history, Move offending)
      : std::runtime_error(what), history(std::move(history)), offending(offending) {}
  std::vector<Move> history;
  Move offending;
};

/// Called after every half-move with the new state.
using MatchObserver = std::function<void(const GameState&)>;

constexpr int kNoRoundCap = std::numeric_limits<int>::max();

MatchResult play_match(std::shared_ptr<const PlanarGraph> graph, Strategy& alice, Strategy& bob,
                       int round_cap = kNoRoundCap, const MatchObserver& observer = {});

/// Continues a match from an arbitrary position (trace covers only the remaining rounds).
MatchResult play_from(const GameState& start, Strategy& alice, Strategy& bob, int round_cap = kNoRoundCap,
                      const MatchObserver& observer = {});

/// Re-applies a half-move list from a fresh game, recomputing traces; throws GameError on illegal moves.
MatchResult replay(std::shared_ptr<const PlanarGraph> graph, std::span<const Move> moves);
GameState replay_state(std::shared_ptr<const PlanarGraph> graph, std::span<const Move> moves);

/// {"graph_ref","moves":[{"side","object_id"}],"trace","final_score",...}.
/// object_id is the vertex id for Alice and the edge position for Bob.
nlohmann::json transcript_to_json(const PlanarGraph& graph, const MatchResult& result, const std::string& graph_ref,
                                  const nlohmann::json& config = nullptr);
std::vector<Move> moves_from_json(const PlanarGraph& graph, const nlohmann::json& transcript);

}  // namespace markgame
