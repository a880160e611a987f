#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "markgame/graph.hpp"

namespace markgame {

enum class Side { Alice, Bob };

std::string_view to_string(Side s);
std::optional<Side> parse_side(std::string_view s);
inline Side opponent(Side s) { return s == Side::Alice ? Side::Bob : Side::Alice; }

/// A half-move: Alice marks a vertex (object = VertexIndex), Bob an edge (object = EdgeIndex).
struct Move {
  Side side = Side::Alice;
  int object = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RoundScore {
  int score = 0;
  std::optional<VertexIndex> witness;  // lowest-index vertex attaining the score
};

/**
 * Immutable snapshot of a game: MV, ME, completed rounds, side to move and the
 * half-move history. Every transition returns a fresh value; the graph is
 * shared between all states of a game.
 */
class GameState {
 public:
  static GameState new_game(std::shared_ptr<const PlanarGraph> graph);

  /**
   * Builds an arbitrary position from a chronological list of marks, without
   * requiring the moves to alternate. Used for constructed test positions and
   * for projecting a game onto a subgraph. round() counts Bob's moves.
   */
  static GameState from_moves(std::shared_ptr<const PlanarGraph> graph, std::span<const Move> moves, Side to_move);

  const PlanarGraph& graph() const { return *graph_; }
  const std::shared_ptr<const PlanarGraph>& graph_ptr() const { return graph_; }

  bool vertex_marked(VertexIndex v) const { return vertex_marked_.at(v); }
  bool edge_marked(EdgeIndex e) const { return edge_marked_.at(e); }
  /// Marked edges incident to v, whether or not v itself is marked.
  int marked_degree(VertexIndex v) const { return marked_degree_.at(v); }

  int round() const { return round_; }
  Side to_move() const { return to_move_; }
  std::span<const Move> history() const { return history_; }
  std::optional<Move> last_move_by(Side side) const;

  int marked_vertex_count() const { return marked_vertices_; }
  int marked_edge_count() const { return marked_edges_; }

  std::vector<Move> legal_moves() const;
  bool is_legal(const Move& m) const;
  bool game_over() const;

  /// Throws GameError on a wrong side, an already marked or nonexistent object.
  GameState apply(const Move& m) const;

  int vertex_score(VertexIndex v) const;
  RoundScore round_score() const;

 private:
  explicit GameState(std::shared_ptr<const PlanarGraph> graph);
  void mark(const Move& m);

  std::shared_ptr<const PlanarGraph> graph_;
  std::vector<bool> vertex_marked_;
  std::vector<bool> edge_marked_;
  std::vector<int> marked_degree_;
  std::vector<Move> history_;
  int marked_vertices_ = 0;
  int marked_edges_ = 0;
  int round_ = 0;
  Side to_move_ = Side::Alice;
};

inline GameState new_game(std::shared_ptr<const PlanarGraph> graph) { return GameState::new_game(std::move(graph)); }
inline std::vector<Move> legal_moves(const GameState& s) { return s.legal_moves(); }
inline GameState apply_move(const GameState& s, const Move& m) { return s.apply(m); }
inline int vertex_score(const GameState& s, VertexIndex v) { return s.vertex_score(v); }
inline RoundScore round_score(const GameState& s) { return s.round_score(); }

/// "v:12" / "e:7" using external vertex ids and edge positions.
std::string describe(const PlanarGraph& g, const Move& m);

}  // namespace markgame
