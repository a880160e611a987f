#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "markgame/graph.hpp"

namespace markgame {

// Abstract small graphs for solver work. Vertices get ids 0..n-1 and are laid
// out on a circle; no faces are recorded.

PlanarGraph graph_from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);

PlanarGraph complete_graph(int n);
PlanarGraph cycle_graph(int n);
PlanarGraph path_graph(int vertex_count);
PlanarGraph star_graph(int leaves);

/// "K3", "C4", "P5" (5 vertices), "S3" (star with 3 leaves).
PlanarGraph named_graph(std::string_view name);

/**
 * One representative per isomorphism class of connected graphs with
 * 1..max_edges edges (no isolated vertices), ordered by edge count then
 * canonical code. Canonical forms are exact: minimum adjacency code over all
 * degree-respecting relabelings.
 */
std::vector<PlanarGraph> connected_graphs(int max_edges);

/// Canonical code of an abstract graph on n <= 11 vertices (edge list over 0..n-1).
std::uint64_t canonical_code(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace markgame
