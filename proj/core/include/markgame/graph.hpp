#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace markgame {

// Dense positions into PlanarGraph's vertex/edge/face arrays. External
// (JSON) ids are kept on the objects; game logic only sees indices.
using VertexIndex = int;
using EdgeIndex = int;
using FaceIndex = int;

struct Vertex {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

/// Undirected edge, stored with u < v (by vertex index).
struct Edge {
  VertexIndex u = 0;
  VertexIndex v = 0;

  VertexIndex other(VertexIndex w) const { return w == u ? v : u; }
  bool touches(VertexIndex w) const { return w == u || w == v; }
};

/// Bounded face as a cyclic vertex sequence. The unbounded face is never stored.
struct Face {
  int id = 0;
  std::vector<VertexIndex> cycle;
};

struct Incidence {
  VertexIndex neighbor;
  EdgeIndex edge;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input description for build_graph; everything refers to external ids.
struct GraphSpec {
  struct VertexSpec {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
  };
  struct FaceSpec {
    int id = 0;
    std::vector<int> cycle;
  };

  std::vector<VertexSpec> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<FaceSpec> faces;
  // When set, the face list claims to be every bounded face and Euler's
  // formula is enforced.
  bool faces_complete = false;
};

/**
 * Embedded planar graph with explicit bounded faces.
 *
 * Vertices are ordered by id, edges lexicographically by endpoint index and
 * faces by id, so "lowest id" and "lowest index" coincide everywhere. The
 * object is immutable once built.
 */
class PlanarGraph {
 public:
  PlanarGraph() = default;

  static PlanarGraph build(const GraphSpec& spec);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Face> faces() const { return faces_; }

  const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const Face& face(FaceIndex f) const { return faces_.at(f); }

  std::optional<VertexIndex> find_vertex(int id) const;
  VertexIndex index_of(int id) const;
  std::optional<FaceIndex> find_face(int id) const;
  std::optional<EdgeIndex> find_edge(VertexIndex a, VertexIndex b) const;

  std::span<const Incidence> incident(VertexIndex v) const { return adjacency_.at(v); }
  int degree(VertexIndex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  int max_degree() const;

  /// Bounded faces whose boundary uses the edge (at most two in a valid embedding).
  std::span<const FaceIndex> faces_of_edge(EdgeIndex e) const { return edge_faces_.at(e); }
  std::span<const EdgeIndex> face_edges(FaceIndex f) const { return face_edges_.at(f); }
  std::span<const FaceIndex> faces_of_vertex(VertexIndex v) const { return vertex_faces_.at(v); }

  bool faces_complete() const { return faces_complete_; }
  int component_count() const;

  /// Re-emits the graph as a spec (ids preserved).
  GraphSpec to_spec() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<std::vector<FaceIndex>> edge_faces_;
  std::vector<std::vector<EdgeIndex>> face_edges_;
  std::vector<std::vector<FaceIndex>> vertex_faces_;
  std::unordered_map<int, VertexIndex> vertex_by_id_;
  std::unordered_map<int, FaceIndex> face_by_id_;
  std::unordered_map<std::uint64_t, EdgeIndex> edge_by_pair_;
  bool faces_complete_ = false;
};

inline PlanarGraph build_graph(const GraphSpec& spec) { return PlanarGraph::build(spec); }

/// Vertex-induced subgraph on the given external ids; faces fully inside are kept.
PlanarGraph induced_subgraph(const PlanarGraph& graph, std::span<const int> vertex_ids);

enum class SubgraphMatch { ById, ByCoordinates };

/// True when every vertex/edge of `sub` is present in `host` under the chosen matching.
bool is_subgraph(const PlanarGraph& sub, const PlanarGraph& host,
                 SubgraphMatch match = SubgraphMatch::ById);

enum class FaceColor { Gray, White };

std::string_view to_string(FaceColor c);

/// Face 2-coloring plus one marked angle (a vertex) per gray face.
struct MarkingScheme {
  std::vector<std::optional<FaceColor>> color;          // by FaceIndex
  std::vector<std::optional<VertexIndex>> marked_angle;  // by FaceIndex

  static MarkingScheme empty_for(const PlanarGraph& g);
  bool is_gray(FaceIndex f) const { return color.at(f) == FaceColor::Gray; }
};

enum class Hypothesis : int {
  TwoColorable = 0,
  GrayFacesAreTriangles = 1,
  EdgeInExactlyOneGray = 2,
  OneMarkedAnglePerGray = 3,
  AtMostTwoUnmarkedAngles = 4,
};

std::string_view to_string(Hypothesis h);

struct HypothesisCheck {
  Hypothesis which = Hypothesis::TwoColorable;
  bool passed = true;
  std::vector<FaceIndex> faces;
  std::vector<EdgeIndex> edges;
  std::vector<VertexIndex> vertices;
};

struct ValidationReport {
  std::array<HypothesisCheck, 5> checks;

  bool passed() const;
  const HypothesisCheck& operator[](Hypothesis h) const { return checks[static_cast<int>(h)]; }
};

/// Exact-cover search: gray triangles covering every edge exactly once.
std::optional<std::vector<FaceColor>> find_gray_cover(const PlanarGraph& graph);

/**
 * Picks one marked vertex per gray face so that no vertex keeps more than two
 * unmarked gray angles. Returns the lexicographically smallest assignment
 * (gray faces by id, candidate vertices by id); nullopt when infeasible.
 */
std::optional<MarkingScheme> find_angle_marking(const PlanarGraph& graph,
                                                std::span<const FaceColor> coloring);

ValidationReport validate_theorem_conditions(const PlanarGraph& graph,
                                             const MarkingScheme& scheme);

/// Gray face owning each edge (nullopt where there is none or more than one).
std::vector<std::optional<FaceIndex>> gray_owners(const PlanarGraph& graph,
                                                  const MarkingScheme& scheme);

}  // namespace markgame
