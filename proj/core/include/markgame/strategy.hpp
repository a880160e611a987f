#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "markgame/game.hpp"
#include "markgame/graph.hpp"

namespace markgame {

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual Side side() const = 0;
  /// Must return a member of state.legal_moves() whenever that list is nonempty.
  virtual Move choose(const GameState& state) = 0;
  virtual std::string descriptor() const = 0;
};

// ---------------------------------------------------------------------------
// Angle strategy (rules R1-R3 keyed on Bob's last edge)

/// Gray face owning edge e; throws StrategyError if the edge has none.
FaceIndex corresponding_triangle(const PlanarGraph& g, const MarkingScheme& scheme, EdgeIndex e);

/// Position (1..3) of e in the chronological order in which its gray triangle's edges were marked.
int marked_edge_rank(const GameState& state, const MarkingScheme& scheme, EdgeIndex e);

class AngleStrategy final : public Strategy {
 public:
  /// Without a seed every "any vertex" choice takes the lowest id; with one it is drawn uniformly.
  AngleStrategy(std::shared_ptr<const PlanarGraph> graph, MarkingScheme scheme,
                std::optional<std::uint64_t> seed = std::nullopt);

  Side side() const override { return Side::Alice; }
  Move choose(const GameState& state) override;
  std::string descriptor() const override;

  enum class Rule { Opening, R1, R2, R3, FallbackTriangle, FallbackAny };
  /// Rule applied by the most recent choose() call.
  Rule last_rule() const { return last_rule_; }

 private:
  VertexIndex pick(const GameState& state, std::vector<VertexIndex> candidates);

  std::shared_ptr<const PlanarGraph> graph_;
  MarkingScheme scheme_;
  std::vector<std::optional<FaceIndex>> owner_;
  std::optional<std::uint64_t> seed_;
  std::mt19937_64 rng_;
  Rule last_rule_ = Rule::Opening;
};

std::unique_ptr<Strategy> alice_angle(std::shared_ptr<const PlanarGraph> graph, const MarkingScheme& scheme,
                                      std::optional<std::uint64_t> seed = std::nullopt);

// ---------------------------------------------------------------------------
// Extension combinator

/// Thrown when the inner strategy leaves an unmarked core vertex with >= n-1 marked core edges.
class ExtensionAssertion : public StrategyError {
 public:
  ExtensionAssertion(const std::string& what, int vertex_id, std::vector<Move> history)
      : StrategyError(what), vertex_id(vertex_id), history(std::move(history)) {}
  int vertex_id;
  std::vector<Move> history;  // of the big game, including the offending Alice move
};

class ExtensionStrategy final : public Strategy {
 public:
  /**
   * `core` must be the subgraph of `big` induced by its own vertex ids and
   * `inner` an Alice strategy for games on `core`. Every vertex of `big`
   * outside the core must have degree < n.
   */
  ExtensionStrategy(std::shared_ptr<const PlanarGraph> big, std::shared_ptr<const PlanarGraph> core,
                    std::unique_ptr<Strategy> inner, int n);

  Side side() const override { return Side::Alice; }
  Move choose(const GameState& state) override;
  std::string descriptor() const override;

  enum class Case { Opening, BothOutside, SpokeToUnmarked, SpokeToMarked, CoreEdge };
  Case last_case() const { return last_case_; }

  /// The big-game position restricted to core vertices and core edges, in chronological order.
  GameState project(const GameState& state) const;

 private:
  Move free_move(const GameState& state) const;
  void check_invariant(const GameState& state, const Move& move) const;

  std::shared_ptr<const PlanarGraph> big_;
  std::shared_ptr<const PlanarGraph> core_;
  std::unique_ptr<Strategy> inner_;
  int n_;
  std::vector<std::optional<VertexIndex>> to_core_vertex_;
  std::vector<VertexIndex> from_core_vertex_;
  std::vector<std::optional<EdgeIndex>> to_core_edge_;
  Case last_case_ = Case::Opening;
};

std::unique_ptr<Strategy> alice_extension(std::shared_ptr<const PlanarGraph> big, std::span<const int> core_ids,
                                          std::unique_ptr<Strategy> inner, std::shared_ptr<const PlanarGraph> core,
                                          int n);

// ---------------------------------------------------------------------------
// n-free paths

struct FreePath {
  std::vector<VertexIndex> vertices;  // v0..vk, k >= 2
  int n = 0;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const FreePath&, const FreePath&) = default;
};

/// Checks the three defining conditions of an n-free path directly.
bool is_free_path(const GameState& state, std::span<const VertexIndex> path, int n);

/// All n-free paths with at most max_len edges, ordered by vertex sequence.
/// A path and its reversal are both reported.
std::vector<FreePath> find_free_paths(const GameState& state, int n, int max_len = 8);

/// Shortest n-free path (lexicographically first among the shortest), if any up to max_len.
std::optional<FreePath> shortest_free_path(const GameState& state, int n, int max_len = 8);

class FreePathBob final : public Strategy {
 public:
  FreePathBob(int n, int max_len = 8);
  Side side() const override { return Side::Bob; }
  Move choose(const GameState& state) override;
  std::string descriptor() const override;

  /// Path used by the last choose() call, empty when the greedy fallback was taken.
  const std::optional<FreePath>& last_path() const { return last_path_; }

 private:
  int n_;
  int max_len_;
  std::optional<FreePath> last_path_;
};

std::unique_ptr<Strategy> bob_free_path(int n, int max_len = 8);

// ---------------------------------------------------------------------------
// Baselines

/// Unmarked vertex with the most marked incident edges; lowest id on ties.
Move alice_greedy_move(const GameState& state);
/// Edge maximizing the resulting round score, then the number of unmarked
/// endpoints it raises, then lowest index.
Move bob_greedy_move(const GameState& state);

enum class BaselineKind { AliceGreedy, AliceRandom, BobGreedy, BobRandom };

std::unique_ptr<Strategy> baseline_strategy(BaselineKind kind, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Descriptors: "side:kind[:key=value]...", e.g. "alice:angle", "alice:angle:seed=7",
// "bob:freepath:n=3:maxlen=8", "bob:random:seed=42", "alice:extension:n=4".

struct StrategyContext {
  std::shared_ptr<const PlanarGraph> graph;
  std::optional<MarkingScheme> scheme;
  /// For alice:extension, the core graph and its scheme.
  std::shared_ptr<const PlanarGraph> core;
  std::optional<MarkingScheme> core_scheme;
  /// Used by random strategies whose descriptor has no seed.
  std::uint64_t default_seed = 0;
};

struct StrategyDescriptor {
  Side side = Side::Alice;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;

  std::optional<std::string> get(std::string_view key) const;
  std::string str() const;
};

StrategyDescriptor parse_descriptor(std::string_view text);
std::unique_ptr<Strategy> make_strategy(std::string_view descriptor, const StrategyContext& ctx);

}  // namespace markgame
