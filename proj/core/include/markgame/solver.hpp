#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "markgame/game.hpp"
#include "markgame/graph.hpp"

namespace markgame {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { BobWins, AliceHolds, Unknown };
std::string_view to_string(Verdict v);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t memo_entries = 0;
  double seconds = 0.0;

  SearchStats& operator+=(const SearchStats& o);
};

struct SolverOptions {
  std::uint64_t node_budget = 50'000'000;
  int threads = 1;  // >1 splits the root's children across worker threads
};

struct ThresholdResult {
  int s = 1;
  Verdict verdict = Verdict::Unknown;
  /// Line of play from the starting position: the winner's first good move
  /// (lowest index) against the loser's lowest-index replies.
  std::vector<Move> principal_variation;
  SearchStats stats;
};

/// Can Bob force a post-Bob round score >= s from a fresh game? Limited to 64 vertices and 64 edges.
ThresholdResult bob_can_force(const PlanarGraph& graph, int s, const SolverOptions& options = {});
/// Same, from an arbitrary position; a position already showing score >= s after Bob's move counts as won.
ThresholdResult bob_can_force(const GameState& from, int s, const SolverOptions& options = {});

struct SolveResult {
  std::optional<int> value;  // col_ve when every needed threshold was decided
  int lo = 1;                // bracket, valid even when value is absent
  int hi = 1;
  std::vector<ThresholdResult> thresholds;  // s = 1.. up to the first non-win
  SearchStats stats;

  /// Verdict for threshold s, implied by monotonicity beyond the searched range.
  Verdict verdict(int s) const;
};

SolveResult solve_colve(const PlanarGraph& graph, const SolverOptions& options = {});

struct Orientation {
  std::vector<VertexIndex> tail;  // by EdgeIndex; the edge points away from its tail
  int d = 0;

  std::vector<int> out_degrees(const PlanarGraph& graph) const;
};

/// Orientation with the smallest possible maximum out-degree.
Orientation orientation_bound(const PlanarGraph& graph);

struct SubgraphBound {
  std::optional<int> value;
  int lo = 1;
  int hi = 1;
};

struct BoundsReport {
  int lo = 1;
  int hi = 1;
  int max_degree = 0;
  int orientation_d = 0;
  std::vector<SubgraphBound> subgraphs;
  bool consistent = true;
};

/**
 * hi = min(max degree + 1, d + 2); lo = the best of 2 (1 without edges) and the
 * solved values of the supplied subgraphs. Throws SolverError when a claimed
 * subgraph does not embed.
 */
BoundsReport bounds_report(const PlanarGraph& graph, std::span<const PlanarGraph* const> subgraphs = {},
                           SubgraphMatch match = SubgraphMatch::ById, const SolverOptions& options = {});

nlohmann::json to_json(const PlanarGraph& graph, const ThresholdResult& r);
nlohmann::json to_json(const PlanarGraph& graph, const SolveResult& r);
nlohmann::json to_json(const PlanarGraph& graph, const Orientation& o);
nlohmann::json to_json(const BoundsReport& r);

}  // namespace markgame
