#include "markgame/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "flow.hpp"

namespace markgame {
namespace {

std::uint64_t pair_key(VertexIndex a, VertexIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

template <typename... Args>
std::string concat(Args&&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

}  // namespace

PlanarGraph PlanarGraph::build(const GraphSpec& spec) {
  PlanarGraph g;
  g.faces_complete_ = spec.faces_complete;

  // Vertices, sorted by id.
  std::vector<GraphSpec::VertexSpec> vs = spec.vertices;
  std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0 && vs[i].id == vs[i - 1].id) throw GraphError(concat("duplicate vertex id ", vs[i].id));
    if (!std::isfinite(vs[i].x) || !std::isfinite(vs[i].y))
      throw GraphError(concat("vertex ", vs[i].id, " has non-finite coordinates"));
    g.vertices_.push_back({vs[i].id, vs[i].x, vs[i].y});
    g.vertex_by_id_.emplace(vs[i].id, static_cast<VertexIndex>(i));
  }

  // Edges, normalized and sorted.
  std::vector<std::pair<VertexIndex, VertexIndex>> es;
  es.reserve(spec.edges.size());
  for (const auto& [a, b] : spec.edges) {
    const auto ia = g.find_vertex(a);
    const auto ib = g.find_vertex(b);
    if (!ia || !ib) throw GraphError(concat("edge (", a, ",", b, ") has a dangling endpoint"));
    if (*ia == *ib) throw GraphError(concat("edge (", a, ",", b, ") is a loop"));
    es.emplace_back(std::min(*ia, *ib), std::max(*ia, *ib));
  }
  std::sort(es.begin(), es.end());
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0 && es[i] == es[i - 1])
      throw GraphError(concat("duplicate edge (", g.vertices_[es[i].first].id, ",",
                              g.vertices_[es[i].second].id, ")"));
    g.edges_.push_back({es[i].first, es[i].second});
    g.edge_by_pair_.emplace(pair_key(es[i].first, es[i].second), static_cast<EdgeIndex>(i));
  }

  g.adjacency_.assign(g.vertices_.size(), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const Edge& ed = g.edges_[e];
    g.adjacency_[ed.u].push_back({ed.v, static_cast<EdgeIndex>(e)});
    g.adjacency_[ed.v].push_back({ed.u, static_cast<EdgeIndex>(e)});
  }
  for (auto& adj : g.adjacency_)
    std::sort(adj.begin(), adj.end(), [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });

  // Faces, sorted by id.
  std::vector<GraphSpec::FaceSpec> fs = spec.faces;
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  g.edge_faces_.assign(g.edges_.size(), {});
  g.vertex_faces_.assign(g.vertices_.size(), {});
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    if (i > 0 && f.id == fs[i - 1].id) throw GraphError(concat("duplicate face id ", f.id));
    if (f.cycle.size() < 3) throw GraphError(concat("face ", f.id, " has fewer than 3 vertices"));
    Face face{f.id, {}};
    std::set<VertexIndex> seen;
    for (int vid : f.cycle) {
      const auto v = g.find_vertex(vid);
      if (!v) throw GraphError(concat("face ", f.id, " uses unknown vertex ", vid));
      if (!seen.insert(*v).second) throw GraphError(concat("face ", f.id, " is not a simple cycle"));
      face.cycle.push_back(*v);
    }
    std::vector<EdgeIndex> fe;
    for (std::size_t k = 0; k < face.cycle.size(); ++k) {
      const VertexIndex a = face.cycle[k];
      const VertexIndex b = face.cycle[(k + 1) % face.cycle.size()];
      const auto e = g.find_edge(a, b);
      if (!e)
        throw GraphError(concat("face ", f.id, " walks over missing edge (", g.vertices_[a].id, ",",
                                g.vertices_[b].id, ")"));
      fe.push_back(*e);
    }
    const auto fi = static_cast<FaceIndex>(g.faces_.size());
    for (EdgeIndex e : fe) g.edge_faces_[e].push_back(fi);
    for (VertexIndex v : face.cycle) g.vertex_faces_[v].push_back(fi);
    g.face_by_id_.emplace(f.id, fi);
    g.faces_.push_back(std::move(face));
    g.face_edges_.push_back(std::move(fe));
  }
  for (std::size_t e = 0; e < g.edge_faces_.size(); ++e) {
    if (g.edge_faces_[e].size() > 2)
      throw GraphError(concat("edge (", g.vertices_[g.edges_[e].u].id, ",", g.vertices_[g.edges_[e].v].id,
                              ") lies on more than two bounded faces"));
  }

  if (spec.faces_complete && !g.vertices_.empty()) {
    // V - E + (F + 1) = 1 + C, which is the familiar 2 for connected graphs.
    const long lhs = static_cast<long>(g.vertices_.size()) - static_cast<long>(g.edges_.size()) +
                     static_cast<long>(g.faces_.size()) + 1;
    const long rhs = 1 + g.component_count();
    if (lhs != rhs)
      throw GraphError(concat("Euler check failed: V - E + (F + 1) = ", lhs, ", expected ", rhs));
  }
  return g;
}

std::optional<VertexIndex> PlanarGraph::find_vertex(int id) const {
  const auto it = vertex_by_id_.find(id);
  if (it == vertex_by_id_.end()) return std::nullopt;
  return it->second;
}

VertexIndex PlanarGraph::index_of(int id) const {
  if (auto v = find_vertex(id)) return *v;
  throw GraphError(concat("unknown vertex id ", id));
}

std::optional<FaceIndex> PlanarGraph::find_face(int id) const {
  const auto it = face_by_id_.find(id);
  if (it == face_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> PlanarGraph::find_edge(VertexIndex a, VertexIndex b) const {
  const auto it = edge_by_pair_.find(pair_key(a, b));
  if (it == edge_by_pair_.end()) return std::nullopt;
  return it->second;
}

int PlanarGraph::max_degree() const {
  int best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, static_cast<int>(adj.size()));
  return best;
}

int PlanarGraph::component_count() const {
  std::vector<int> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int components = static_cast<int>(vertices_.size());
  for (const Edge& e : edges_) {
    const int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

GraphSpec PlanarGraph::to_spec() const {
  GraphSpec spec;
  spec.faces_complete = faces_complete_;
  for (const Vertex& v : vertices_) spec.vertices.push_back({v.id, v.x, v.y});
  for (const Edge& e : edges_) spec.edges.emplace_back(vertices_[e.u].id, vertices_[e.v].id);
  for (const Face& f : faces_) {
    GraphSpec::FaceSpec fs{f.id, {}};
    for (VertexIndex v : f.cycle) fs.cycle.push_back(vertices_[v].id);
    spec.faces.push_back(std::move(fs));
  }
  return spec;
}

PlanarGraph induced_subgraph(const PlanarGraph& graph, std::span<const int> vertex_ids) {
  std::vector<bool> keep(graph.vertex_count(), false);
  for (int id : vertex_ids) keep[graph.index_of(id)] = true;
  GraphSpec spec;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    if (keep[v]) spec.vertices.push_back({graph.vertex(v).id, graph.vertex(v).x, graph.vertex(v).y});
  for (const Edge& e : graph.edges())
    if (keep[e.u] && keep[e.v]) spec.edges.emplace_back(graph.vertex(e.u).id, graph.vertex(e.v).id);
  for (const Face& f : graph.faces()) {
    if (!std::all_of(f.cycle.begin(), f.cycle.end(), [&](VertexIndex v) { return keep[v]; })) continue;
    GraphSpec::FaceSpec fs{f.id, {}};
    for (VertexIndex v : f.cycle) fs.cycle.push_back(graph.vertex(v).id);
    spec.faces.push_back(std::move(fs));
  }
  return PlanarGraph::build(spec);
}

bool is_subgraph(const PlanarGraph& sub, const PlanarGraph& host, SubgraphMatch match) {
  std::vector<VertexIndex> image(sub.vertex_count(), -1);
  if (match == SubgraphMatch::ById) {
    for (std::size_t v = 0; v < sub.vertex_count(); ++v) {
      const auto h = host.find_vertex(sub.vertex(v).id);
      if (!h) return false;
      image[v] = *h;
    }
  } else {
    constexpr double kGrid = 1e6;
    std::map<std::pair<long long, long long>, VertexIndex> by_coord;
    for (std::size_t v = 0; v < host.vertex_count(); ++v)
      by_coord.emplace(std::make_pair(std::llround(host.vertex(v).x * kGrid), std::llround(host.vertex(v).y * kGrid)),
                       static_cast<VertexIndex>(v));
    for (std::size_t v = 0; v < sub.vertex_count(); ++v) {
      const auto it = by_coord.find({std::llround(sub.vertex(v).x * kGrid), std::llround(sub.vertex(v).y * kGrid)});
      if (it == by_coord.end()) return false;
      image[v] = it->second;
    }
  }
  return std::all_of(sub.edges().begin(), sub.edges().end(),
                     [&](const Edge& e) { return host.find_edge(image[e.u], image[e.v]).has_value(); });
}

std::string_view to_string(FaceColor c) { return c == FaceColor::Gray ? "gray" : "white"; }

std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::TwoColorable: return "bounded faces 2-colorable (gray/white)";
    case Hypothesis::GrayFacesAreTriangles: return "all gray faces are triangles";
    case Hypothesis::EdgeInExactlyOneGray: return "every edge belongs to exactly one gray triangle";
    case Hypothesis::OneMarkedAnglePerGray: return "exactly one angle marked per gray triangle";
    case Hypothesis::AtMostTwoUnmarkedAngles: return "each vertex has at most two unmarked gray angles";
  }
  return "?";
}

MarkingScheme MarkingScheme::empty_for(const PlanarGraph& g) {
  MarkingScheme s;
  s.color.assign(g.face_count(), std::nullopt);
  s.marked_angle.assign(g.face_count(), std::nullopt);
  return s;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.passed; });
}

std::vector<std::optional<FaceIndex>> gray_owners(const PlanarGraph& graph, const MarkingScheme& scheme) {
  std::vector<std::optional<FaceIndex>> owner(graph.edge_count());
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    int count = 0;
    FaceIndex last = -1;
    for (FaceIndex f : graph.faces_of_edge(static_cast<EdgeIndex>(e))) {
      if (scheme.color.at(f) == FaceColor::Gray && graph.face(f).cycle.size() == 3) {
        ++count;
        last = f;
      }
    }
    if (count == 1) owner[e] = last;
  }
  return owner;
}

ValidationReport validate_theorem_conditions(const PlanarGraph& graph, const MarkingScheme& scheme) {
  if (scheme.color.size() != graph.face_count() || scheme.marked_angle.size() != graph.face_count())
    throw GraphError("marking scheme does not match the graph's face count");

  ValidationReport report;
  for (int i = 0; i < 5; ++i) report.checks[i].which = static_cast<Hypothesis>(i);
  auto& coloring = report.checks[0];
  auto& triangles = report.checks[1];
  auto& cover = report.checks[2];
  auto& marks = report.checks[3];
  auto& unmarked = report.checks[4];

  for (std::size_t f = 0; f < graph.face_count(); ++f)
    if (!scheme.color[f]) coloring.faces.push_back(static_cast<FaceIndex>(f));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto fs = graph.faces_of_edge(static_cast<EdgeIndex>(e));
    if (fs.size() == 2 && scheme.color[fs[0]] && scheme.color[fs[0]] == scheme.color[fs[1]])
      coloring.edges.push_back(static_cast<EdgeIndex>(e));
  }

  for (std::size_t f = 0; f < graph.face_count(); ++f)
    if (scheme.is_gray(static_cast<FaceIndex>(f)) && graph.face(f).cycle.size() != 3)
      triangles.faces.push_back(static_cast<FaceIndex>(f));

  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    int owners = 0;
    for (FaceIndex f : graph.faces_of_edge(static_cast<EdgeIndex>(e)))
      if (scheme.is_gray(f) && graph.face(f).cycle.size() == 3) ++owners;
    if (owners != 1) cover.edges.push_back(static_cast<EdgeIndex>(e));
  }

  for (std::size_t f = 0; f < graph.face_count(); ++f) {
    const auto& mark = scheme.marked_angle[f];
    const auto& cycle = graph.face(f).cycle;
    if (scheme.is_gray(static_cast<FaceIndex>(f))) {
      if (!mark || std::find(cycle.begin(), cycle.end(), *mark) == cycle.end())
        marks.faces.push_back(static_cast<FaceIndex>(f));
    } else if (mark) {
      marks.faces.push_back(static_cast<FaceIndex>(f));
    }
  }

  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    int count = 0;
    for (FaceIndex f : graph.faces_of_vertex(static_cast<VertexIndex>(v)))
      if (scheme.is_gray(f) && scheme.marked_angle[f] != static_cast<VertexIndex>(v)) ++count;
    if (count > 2) unmarked.vertices.push_back(static_cast<VertexIndex>(v));
  }

  for (auto& c : report.checks) c.passed = c.faces.empty() && c.edges.empty() && c.vertices.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Exact cover of the edges by triangular faces.

namespace {

struct CoverSearch {
  const PlanarGraph& g;
  std::vector<std::vector<FaceIndex>> candidates;  // triangular faces per edge
  std::vector<bool> covered;
  std::vector<bool> chosen;

  bool available(FaceIndex f) const {
    for (EdgeIndex e : g.face_edges(f))
      if (covered[e]) return false;
    return true;
  }

  bool solve() {
    int best_edge = -1;
    int best_count = 3;
    for (std::size_t e = 0; e < covered.size(); ++e) {
      if (covered[e]) continue;
      int count = 0;
      for (FaceIndex f : candidates[e]) count += available(f) ? 1 : 0;
      if (count < best_count) {
        best_count = count;
        best_edge = static_cast<int>(e);
        if (count == 0) return false;
      }
    }
    if (best_edge < 0) return true;
    for (FaceIndex f : candidates[best_edge]) {
      if (!available(f)) continue;
      chosen[f] = true;
      for (EdgeIndex e : g.face_edges(f)) covered[e] = true;
      if (solve()) return true;
      chosen[f] = false;
      for (EdgeIndex e : g.face_edges(f)) covered[e] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<FaceColor>> find_gray_cover(const PlanarGraph& graph) {
  CoverSearch search{graph, std::vector<std::vector<FaceIndex>>(graph.edge_count()),
                     std::vector<bool>(graph.edge_count(), false), std::vector<bool>(graph.face_count(), false)};
  for (std::size_t e = 0; e < graph.edge_count(); ++e)
    for (FaceIndex f : graph.faces_of_edge(static_cast<EdgeIndex>(e)))
      if (graph.face(f).cycle.size() == 3) search.candidates[e].push_back(f);
  if (!search.solve()) return std::nullopt;
  std::vector<FaceColor> colors(graph.face_count(), FaceColor::White);
  for (std::size_t f = 0; f < graph.face_count(); ++f)
    if (search.chosen[f]) colors[f] = FaceColor::Gray;
  return colors;
}

// ---------------------------------------------------------------------------
// Angle marking: vertex v in g(v) gray faces needs at least g(v) - 2 marks.

namespace {

bool marking_feasible(const PlanarGraph& graph, const std::vector<FaceIndex>& open_faces,
                      const std::vector<int>& demand) {
  const int need = std::accumulate(demand.begin(), demand.end(), 0, [](int acc, int d) { return acc + std::max(d, 0); });
  if (need == 0) return true;
  const int nv = static_cast<int>(graph.vertex_count());
  const int nf = static_cast<int>(open_faces.size());
  const int source = nv + nf, sink = source + 1;
  detail::MaxFlow flow(nv + nf + 2);
  for (int v = 0; v < nv; ++v)
    if (demand[v] > 0) flow.add_arc(source, v, demand[v]);
  for (int i = 0; i < nf; ++i) {
    for (VertexIndex v : graph.face(open_faces[i]).cycle)
      if (demand[v] > 0) flow.add_arc(v, nv + i, 1);
    flow.add_arc(nv + i, sink, 1);
  }
  return flow.run(source, sink) == need;
}

}  // namespace

std::optional<MarkingScheme> find_angle_marking(const PlanarGraph& graph, std::span<const FaceColor> coloring) {
  if (coloring.size() != graph.face_count()) throw GraphError("coloring does not match the graph's face count");
  MarkingScheme scheme = MarkingScheme::empty_for(graph);
  std::vector<FaceIndex> gray;
  std::vector<int> demand(graph.vertex_count(), -2);
  for (std::size_t f = 0; f < graph.face_count(); ++f) {
    scheme.color[f] = coloring[f];
    if (coloring[f] != FaceColor::Gray) continue;
    gray.push_back(static_cast<FaceIndex>(f));
    for (VertexIndex v : graph.face(f).cycle) ++demand[v];
  }

  std::vector<FaceIndex> open(gray.rbegin(), gray.rend());  // back() is the lowest open face
  if (!marking_feasible(graph, open, demand)) return std::nullopt;
  while (!open.empty()) {
    const FaceIndex f = open.back();
    open.pop_back();
    std::vector<VertexIndex> cands = graph.face(f).cycle;
    std::sort(cands.begin(), cands.end());
    bool placed = false;
    for (VertexIndex v : cands) {
      --demand[v];
      if (marking_feasible(graph, open, demand)) {
        scheme.marked_angle[f] = v;
        placed = true;
        break;
      }
      ++demand[v];
    }
    if (!placed) return std::nullopt;  // unreachable when the initial check passed
  }
  return scheme;
}

}  // namespace markgame
