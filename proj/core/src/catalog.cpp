#include "markgame/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace markgame {

PlanarGraph graph_from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  GraphSpec spec;
  for (int v = 0; v < vertex_count; ++v) {
    const double a = 2.0 * std::numbers::pi * v / std::max(1, vertex_count);
    spec.vertices.push_back({v, std::cos(a), std::sin(a)});
  }
  spec.edges = edges;
  return PlanarGraph::build(spec);
}

PlanarGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return graph_from_edges(n, edges);
}

PlanarGraph cycle_graph(int n) {
  if (n < 3) throw GraphError("a cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) edges.emplace_back(a, (a + 1) % n);
  return graph_from_edges(n, edges);
}

PlanarGraph path_graph(int vertex_count) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a + 1 < vertex_count; ++a) edges.emplace_back(a, a + 1);
  return graph_from_edges(vertex_count, edges);
}

PlanarGraph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 1; a <= leaves; ++a) edges.emplace_back(0, a);
  return graph_from_edges(leaves + 1, edges);
}

PlanarGraph named_graph(std::string_view name) {
  if (name.size() < 2) throw GraphError("unknown graph name");
  int n = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9') throw GraphError("unknown graph name \"" + std::string(name) + "\"");
    n = n * 10 + (c - '0');
  }
  switch (name[0]) {
    case 'K': return complete_graph(n);
    case 'C': return cycle_graph(n);
    case 'P': return path_graph(n);
    case 'S': return star_graph(n);
  }
  throw GraphError("unknown graph name \"" + std::string(name) + "\"");
}

std::uint64_t canonical_code(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n > 11) throw GraphError("canonical_code supports at most 11 vertices");
  std::vector<int> deg(n, 0);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
    adj[a][b] = adj[b][a] = true;
  }
  // Vertices are relabeled in order of degree; only orderings inside each
  // degree class are enumerated.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] != deg[b] ? deg[a] < deg[b] : a < b; });
  std::vector<std::pair<int, int>> classes;  // [begin, end) ranges in order
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && deg[order[j]] == deg[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }

  std::uint64_t best = ~std::uint64_t{0};
  auto encode = [&] {
    std::uint64_t code = 0;
    int pos = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b, ++pos)
        if (adj[order[a]][order[b]]) code |= std::uint64_t{1} << pos;
    best = std::min(best, code);
  };
  // odometer over the per-class permutations
  while (true) {
    encode();
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [b, e] = classes[c];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
      // wrapped around to sorted order; carry into the next class
    }
    if (c == classes.size()) break;
  }
  // at most 55 code bits; the vertex count sits above them
  return best | (static_cast<std::uint64_t>(n) << 60);
}

std::vector<PlanarGraph> connected_graphs(int max_edges) {
  struct Abstract {
    int n;
    std::vector<std::pair<int, int>> edges;
  };
  std::vector<PlanarGraph> out;
  std::vector<Abstract> layer = {{2, {{0, 1}}}};
  for (int m = 1; m <= max_edges; ++m) {
    for (const Abstract& g : layer) out.push_back(graph_from_edges(g.n, g.edges));
    if (m == max_edges) break;
    // every connected graph with m+1 edges arises from one with m edges by
    // adding a pendant edge or an edge between existing vertices
    std::map<std::uint64_t, Abstract> next;
    for (const Abstract& g : layer) {
      std::set<std::pair<int, int>> present(g.edges.begin(), g.edges.end());
      auto consider = [&](Abstract h) {
        const std::uint64_t code = canonical_code(h.n, h.edges);
        next.emplace(code, std::move(h));
      };
      for (int a = 0; a < g.n; ++a) {
        Abstract h = g;
        h.edges.emplace_back(a, g.n);
        ++h.n;
        consider(std::move(h));
        for (int b = a + 1; b < g.n; ++b) {
          if (present.count({a, b})) continue;
          Abstract h2 = g;
          h2.edges.emplace_back(a, b);
          consider(std::move(h2));
        }
      }
    }
    layer.clear();
    for (auto& [code, g] : next) layer.push_back(std::move(g));
  }
  return out;
}

}  // namespace markgame
