#include "markgame/game.hpp"

#include <algorithm>

namespace markgame {

std::string_view to_string(Side s) { return s == Side::Alice ? "alice" : "bob"; }

std::optional<Side> parse_side(std::string_view s) {
  if (s == "alice" || s == "Alice" || s == "A") return Side::Alice;
  if (s == "bob" || s == "Bob" || s == "B") return Side::Bob;
  return std::nullopt;
}

GameState::GameState(std::shared_ptr<const PlanarGraph> graph)
    : graph_(std::move(graph)),
      vertex_marked_(graph_->vertex_count(), false),
      edge_marked_(graph_->edge_count(), false),
      marked_degree_(graph_->vertex_count(), 0) {}

GameState GameState::new_game(std::shared_ptr<const PlanarGraph> graph) {
  if (!graph || graph->vertex_count() == 0) throw GameError("cannot play on an empty graph");
  return GameState(std::move(graph));
}

GameState GameState::from_moves(std::shared_ptr<const PlanarGraph> graph, std::span<const Move> moves, Side to_move) {
  GameState s = new_game(std::move(graph));
  for (const Move& m : moves) {
    const bool vertex = m.side == Side::Alice;
    const int limit = static_cast<int>(vertex ? s.graph_->vertex_count() : s.graph_->edge_count());
    if (m.object < 0 || m.object >= limit) throw GameError("position refers to a nonexistent object");
    if (vertex ? s.vertex_marked_[m.object] : s.edge_marked_[m.object]) throw GameError("position marks an object twice");
    s.mark(m);
  }
  s.to_move_ = to_move;
  return s;
}

void GameState::mark(const Move& m) {
  if (m.side == Side::Alice) {
    vertex_marked_[m.object] = true;
    ++marked_vertices_;
  } else {
    edge_marked_[m.object] = true;
    ++marked_edges_;
    const Edge& e = graph_->edge(m.object);
    ++marked_degree_[e.u];
    ++marked_degree_[e.v];
    ++round_;
  }
  history_.push_back(m);
}

std::optional<Move> GameState::last_move_by(Side side) const {
  for (auto it = history_.rbegin(); it != history_.rend(); ++it)
    if (it->side == side) return *it;
  return std::nullopt;
}

std::vector<Move> GameState::legal_moves() const {
  std::vector<Move> out;
  if (to_move_ == Side::Alice) {
    for (std::size_t v = 0; v < vertex_marked_.size(); ++v)
      if (!vertex_marked_[v]) out.push_back({Side::Alice, static_cast<int>(v)});
  } else {
    for (std::size_t e = 0; e < edge_marked_.size(); ++e)
      if (!edge_marked_[e]) out.push_back({Side::Bob, static_cast<int>(e)});
  }
  return out;
}

bool GameState::is_legal(const Move& m) const {
  if (m.side != to_move_) return false;
  if (m.side == Side::Alice)
    return m.object >= 0 && m.object < static_cast<int>(vertex_marked_.size()) && !vertex_marked_[m.object];
  return m.object >= 0 && m.object < static_cast<int>(edge_marked_.size()) && !edge_marked_[m.object];
}

bool GameState::game_over() const {
  if (to_move_ == Side::Alice) return marked_vertices_ == static_cast<int>(vertex_marked_.size());
  return marked_edges_ == static_cast<int>(edge_marked_.size());
}

GameState GameState::apply(const Move& m) const {
  if (m.side != to_move_)
    throw GameError(std::string("wrong side: ") + std::string(to_string(to_move_)) + " is to move");
  const bool vertex = m.side == Side::Alice;
  const int limit = static_cast<int>(vertex ? vertex_marked_.size() : edge_marked_.size());
  if (m.object < 0 || m.object >= limit)
    throw GameError(std::string("nonexistent ") + (vertex ? "vertex" : "edge") + " " + std::to_string(m.object));
  if (vertex ? vertex_marked_[m.object] : edge_marked_[m.object])
    throw GameError(std::string(vertex ? "vertex " : "edge ") + std::to_string(m.object) + " is already marked");
  GameState next = *this;
  next.mark(m);
  next.to_move_ = opponent(to_move_);
  return next;
}

int GameState::vertex_score(VertexIndex v) const {
  if (v < 0 || v >= static_cast<int>(vertex_marked_.size())) throw GameError("unknown vertex " + std::to_string(v));
  return vertex_marked_[v] ? 0 : marked_degree_[v];
}

RoundScore GameState::round_score() const {
  RoundScore best;
  for (std::size_t v = 0; v < vertex_marked_.size(); ++v) {
    if (vertex_marked_[v]) continue;
    if (!best.witness || marked_degree_[v] > best.score) best = {marked_degree_[v], static_cast<VertexIndex>(v)};
  }
  return best;
}

std::string describe(const PlanarGraph& g, const Move& m) {
  if (m.side == Side::Alice) return "v:" + std::to_string(g.vertex(m.object).id);
  return "e:" + std::to_string(m.object);
}

}  // namespace markgame
