#include "markgame/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace markgame {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt3 = 1.7320508075688772935;

// Exact lattice position; the meaning of the four integers is family specific.
using Key = std::array<long long, 4>;

struct Point {
  double x;
  double y;
};

/**
 * Collects lattice triangles (or polygons) for a window and assembles the
 * PlanarGraph. With trimming on, only gray triangles contribute edges and a
 * white face survives only when all of its edges are gray-owned.
 */
class PatchBuilder {
 public:
  void point(const Key& k, Point p) { points_.emplace(k, p); }
  bool empty() const { return faces_.empty(); }

  void face(std::vector<Key> corners, std::optional<FaceColor> color, std::optional<Key> mark = std::nullopt) {
    std::vector<Key> sorted = corners;
    std::sort(sorted.begin(), sorted.end());
    if (!seen_.insert(sorted).second) return;
    faces_.push_back({std::move(corners), color, mark});
  }

  LatticeBundle finish(Family family, WindowParams params, bool trim, bool with_scheme) const {
    std::set<std::pair<Key, Key>> edges;
    auto add_edges = [&](const std::vector<Key>& cyc) {
      for (std::size_t i = 0; i < cyc.size(); ++i) edges.insert(ordered(cyc[i], cyc[(i + 1) % cyc.size()]));
    };
    for (const auto& f : faces_)
      if (!trim || f.color == FaceColor::Gray) add_edges(f.corners);

    std::vector<const PatchFace*> kept;
    for (const auto& f : faces_) {
      bool ok = true;
      for (std::size_t i = 0; i < f.corners.size() && ok; ++i)
        ok = edges.count(ordered(f.corners[i], f.corners[(i + 1) % f.corners.size()])) > 0;
      if (ok) kept.push_back(&f);
    }

    std::set<Key> used;
    for (const auto& [a, b] : edges) {
      used.insert(a);
      used.insert(b);
    }
    std::vector<Key> order(used.begin(), used.end());
    std::sort(order.begin(), order.end(), [&](const Key& a, const Key& b) {
      const Point& pa = points_.at(a);
      const Point& pb = points_.at(b);
      if (std::abs(pa.y - pb.y) > 1e-9) return pa.y < pb.y;
      return pa.x < pb.x;
    });
    std::map<Key, int> id;
    GraphSpec spec;
    spec.faces_complete = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      id[order[i]] = static_cast<int>(i);
      const Point& p = points_.at(order[i]);
      spec.vertices.push_back({static_cast<int>(i), p.x, p.y});
    }
    for (const auto& [a, b] : edges) spec.edges.emplace_back(id.at(a), id.at(b));

    auto centroid = [&](const PatchFace* f) {
      Point c{0, 0};
      for (const Key& k : f->corners) {
        c.x += points_.at(k).x;
        c.y += points_.at(k).y;
      }
      const double n = static_cast<double>(f->corners.size());
      return Point{c.x / n, c.y / n};
    };
    std::sort(kept.begin(), kept.end(), [&](const PatchFace* a, const PatchFace* b) {
      const Point ca = centroid(a), cb = centroid(b);
      if (std::abs(ca.y - cb.y) > 1e-9) return ca.y < cb.y;
      return ca.x < cb.x;
    });
    for (std::size_t i = 0; i < kept.size(); ++i) {
      GraphSpec::FaceSpec fs{static_cast<int>(i), {}};
      for (const Key& k : kept[i]->corners) fs.cycle.push_back(id.at(k));
      spec.faces.push_back(std::move(fs));
    }

    LatticeBundle bundle;
    auto graph = std::make_shared<PlanarGraph>(PlanarGraph::build(spec));
    if (with_scheme) {
      MarkingScheme scheme = MarkingScheme::empty_for(*graph);
      for (std::size_t i = 0; i < kept.size(); ++i) {
        scheme.color[i] = kept[i]->color;
        if (kept[i]->mark) scheme.marked_angle[i] = graph->index_of(id.at(*kept[i]->mark));
      }
      bundle.scheme = std::move(scheme);
    }
    bundle.graph = std::move(graph);
    bundle.family = family;
    bundle.params = params;
    return bundle;
  }

 private:
  struct PatchFace {
    std::vector<Key> corners;
    std::optional<FaceColor> color;
    std::optional<Key> mark;
  };

  static std::pair<Key, Key> ordered(const Key& a, const Key& b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

  std::map<Key, Point> points_;
  std::vector<PatchFace> faces_;
  std::set<std::vector<Key>> seen_;
};

void require_window(int rows, int cols) {
  if (rows < 1 || cols < 1) throw LatticeError("window too small: rows and cols must be at least 1");
}

// Triangular lattice: integer (i, j) with i + j even, unit edges.
Key tri_key(long long i, long long j) { return {i, j, 0, 0}; }
Point tri_point(long long i, long long j) { return {static_cast<double>(i) * kSqrt3 / 2.0, static_cast<double>(j) / 2.0}; }

void tri_face(PatchBuilder& b, std::array<std::pair<long long, long long>, 3> c, FaceColor color,
              std::optional<std::pair<long long, long long>> mark) {
  std::vector<Key> keys;
  for (const auto& [i, j] : c) {
    b.point(tri_key(i, j), tri_point(i, j));
    keys.push_back(tri_key(i, j));
  }
  std::optional<Key> mk;
  if (mark) mk = tri_key(mark->first, mark->second);
  b.face(std::move(keys), color, mk);
}

// Square-octagon lattice coordinates are exact in Z[sqrt 2]: 2x = a + b*sqrt2.
Key oct_key(long long ax, long long bx, long long ay, long long by) { return {ax, bx, ay, by}; }
Point oct_point(const Key& k) {
  return {(static_cast<double>(k[0]) + static_cast<double>(k[1]) * kSqrt2) / 2.0,
          (static_cast<double>(k[2]) + static_cast<double>(k[3]) * kSqrt2) / 2.0};
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Triangular: return "T";
    case Family::CenteredSquare: return "R";
    case Family::SquareOctagon: return "C";
    case Family::Hexagonal: return "H";
    case Family::TrianglePrime: return "Tp";
    case Family::Centered: return "D";
    case Family::Apollonian: return "apollonian";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "T") return Family::Triangular;
  if (name == "R") return Family::CenteredSquare;
  if (name == "C") return Family::SquareOctagon;
  if (name == "H") return Family::Hexagonal;
  if (name == "Tp" || name == "T'" || name == "T-prime") return Family::TrianglePrime;
  if (name == "D") return Family::Centered;
  if (name == "apollonian" || name == "A") return Family::Apollonian;
  return std::nullopt;
}

nlohmann::json LatticeBundle::meta() const {
  nlohmann::json m{{"family", std::string(to_string(family))}};
  if (base) m["base"] = std::string(to_string(*base));
  if (family == Family::Apollonian) {
    m["insertions"] = params.insertions;
    m["seed"] = params.seed;
  } else {
    m["rows"] = params.rows;
    m["cols"] = params.cols;
  }
  return m;
}

LatticeBundle gen_triangular(int rows, int cols) {
  require_window(rows, cols);
  PatchBuilder b;
  for (long long a = 0; a < cols; ++a) {
    for (long long r = 0; r < rows; ++r) {
      const long long i = -a, j = a + 2 * r;
      // Gray: right-pointing, marked at the apex.
      tri_face(b, {{{i, j}, {i + 1, j + 1}, {i, j + 2}}}, FaceColor::Gray, std::make_pair(i + 1, j + 1));
      // Left-pointing neighbours across each edge; the builder keeps the enclosed ones.
      tri_face(b, {{{i, j}, {i, j + 2}, {i - 1, j + 1}}}, FaceColor::White, std::nullopt);
      tri_face(b, {{{i, j}, {i + 1, j - 1}, {i + 1, j + 1}}}, FaceColor::White, std::nullopt);
      tri_face(b, {{{i, j + 2}, {i + 1, j + 1}, {i + 1, j + 3}}}, FaceColor::White, std::nullopt);
    }
  }
  return b.finish(Family::Triangular, {rows, cols, 0, 0}, /*trim=*/true, /*with_scheme=*/true);
}

LatticeBundle gen_centered_square(int rows, int cols) {
  require_window(rows, cols);
  PatchBuilder b;
  auto key = [](long long x2, long long y2) { return Key{x2, y2, 0, 0}; };
  for (long long cy = 0; cy < rows; ++cy) {
    for (long long cx = 0; cx < cols; ++cx) {
      const Key bl = key(2 * cx, 2 * cy), br = key(2 * cx + 2, 2 * cy);
      const Key tr = key(2 * cx + 2, 2 * cy + 2), tl = key(2 * cx, 2 * cy + 2);
      const Key c = key(2 * cx + 1, 2 * cy + 1);
      for (const Key& k : {bl, br, tr, tl, c}) b.point(k, {static_cast<double>(k[0]) / 2.0, static_cast<double>(k[1]) / 2.0});
      const bool vertical = (cx + cy) % 2 == 0;
      if (vertical) {
        b.face({bl, br, c}, FaceColor::Gray, br);   // marked to the right
        b.face({tr, tl, c}, FaceColor::Gray, tr);
        b.face({br, tr, c}, FaceColor::White);
        b.face({tl, bl, c}, FaceColor::White);
      } else {
        b.face({tl, bl, c}, FaceColor::Gray, tl);   // marked upwards
        b.face({br, tr, c}, FaceColor::Gray, tr);
        b.face({bl, br, c}, FaceColor::White);
        b.face({tr, tl, c}, FaceColor::White);
      }
    }
  }
  return b.finish(Family::CenteredSquare, {rows, cols, 0, 0}, true, true);
}

LatticeBundle gen_square_octagon(int rows, int cols) {
  require_window(rows, cols);
  PatchBuilder b;
  auto add = [&](const Key& k) {
    b.point(k, oct_point(k));
    return k;
  };
  // Octagon (p, q) vertex k, counterclockwise from the left end of the bottom edge.
  auto oct_vertex = [&](long long p, long long q, int k) {
    static constexpr int sx[8][2] = {{-1, 0}, {1, 0}, {1, 1}, {1, 1}, {1, 0}, {-1, 0}, {-1, -1}, {-1, -1}};
    static constexpr int sy[8][2] = {{-1, -1}, {-1, -1}, {-1, 0}, {1, 0}, {1, 1}, {1, 1}, {1, 0}, {-1, 0}};
    // offsets in units of 2x: 1 -> (+-1, 0), s -> (+-1, +-1)
    const long long ax = 2 * p + sx[k][0], bx = 2 * p + sx[k][1];
    const long long ay = 2 * q + sy[k][0], by = 2 * q + sy[k][1];
    return add(oct_key(ax, bx, ay, by));
  };
  auto oct_center = [&](long long p, long long q) { return add(oct_key(2 * p, 2 * p, 2 * q, 2 * q)); };
  auto axis_type = [](long long p, long long q) { return ((p + q) % 2 + 2) % 2 == 0; };

  for (long long q = 0; q < rows; ++q) {
    for (long long p = 0; p < cols; ++p) {
      const Key c = oct_center(p, q);
      const bool axis = axis_type(p, q);
      for (int k = 0; k < 8; ++k) {
        const Key v0 = oct_vertex(p, q, k), v1 = oct_vertex(p, q, (k + 1) % 8);
        const bool axis_edge = k % 2 == 0;
        if (axis_edge != axis) {
          b.face({v0, v1, c}, FaceColor::White);
          continue;
        }
        // Edges 0 (bottom) and 4 (top) are marked at their right end, 1 and 3 at
        // their rightmost corner; the remaining gray ones at the center.
        std::optional<Key> mark;
        switch (k) {
          case 0: mark = v1; break;
          case 1: mark = v1; break;
          case 3: mark = v0; break;
          case 4: mark = v0; break;
          default: mark = c; break;
        }
        b.face({v0, v1, c}, FaceColor::Gray, mark);
      }
    }
  }
  // Squares (p, q) sit between octagons (p..p+1, q..q+1).
  for (long long q = -1; q < rows; ++q) {
    for (long long p = -1; p < cols; ++p) {
      const Key center = add(oct_key(2 * p + 1, 2 * p + 1, 2 * q + 1, 2 * q + 1));
      const Key left = oct_vertex(p, q, 4), bottom = oct_vertex(p, q, 3);
      const Key right = oct_vertex(p + 1, q, 5), top = oct_vertex(p, q + 1, 2);
      struct Side {
        Key a, b;
        long long op, oq;
        Key mark;
      };
      const Side sides[4] = {{left, bottom, p, q, bottom},
                             {bottom, right, p + 1, q, right},
                             {right, top, p + 1, q + 1, right},
                             {top, left, p, q + 1, top}};
      for (const Side& s : sides) {
        if (axis_type(s.op, s.oq)) b.face({s.a, s.b, center}, FaceColor::Gray, s.mark);
        else b.face({s.a, s.b, center}, FaceColor::White);
      }
    }
  }
  return b.finish(Family::SquareOctagon, {rows, cols, 0, 0}, true, true);
}

LatticeBundle gen_hexagonal(int rows, int cols) {
  require_window(rows, cols);
  // Hexagons of the honeycomb whose rings lie in the triangular window
  // T(rows+2, cols+2). Hexagon centers are the sites (-1,5) + m(-2,0) + n(-1,3),
  // one class of the proper 3-coloring of the triangular lattice.
  const LatticeBundle host = gen_triangular(rows + 2, cols + 2);
  const PlanarGraph& t = *host.graph;
  std::map<std::pair<long long, long long>, VertexIndex> site;
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    const long long i = std::llround(t.vertex(v).x * 2.0 / kSqrt3);
    const long long j = std::llround(t.vertex(v).y * 2.0);
    site[{i, j}] = static_cast<VertexIndex>(v);
  }
  static constexpr int ring[6][2] = {{1, 1}, {0, 2}, {-1, 1}, {-1, -1}, {0, -2}, {1, -1}};
  auto inside = [&](long long i, long long j) {
    for (int k = 0; k < 6; ++k) {
      auto a = site.find({i + ring[k][0], j + ring[k][1]});
      auto c = site.find({i + ring[(k + 1) % 6][0], j + ring[(k + 1) % 6][1]});
      if (a == site.end() || c == site.end() || !t.find_edge(a->second, c->second)) return false;
    }
    return true;
  };
  // flood over edge-adjacent hexagons from the origin one, so the window is connected
  static constexpr int step[6][2] = {{2, 0}, {-2, 0}, {1, 3}, {-1, 3}, {1, -3}, {-1, -3}};
  std::set<std::pair<long long, long long>> centers;
  std::vector<std::pair<long long, long long>> todo;
  if (inside(-1, 5)) {
    centers.insert({-1, 5});
    todo.push_back({-1, 5});
  }
  while (!todo.empty()) {
    const auto [i, j] = todo.back();
    todo.pop_back();
    for (const auto& d : step) {
      const std::pair<long long, long long> next{i + d[0], j + d[1]};
      if (!centers.count(next) && inside(next.first, next.second)) {
        centers.insert(next);
        todo.push_back(next);
      }
    }
  }
  PatchBuilder b;
  for (const auto& [i, j] : centers) {
    std::vector<Key> cyc;
    for (const auto& d : ring) {
      b.point(tri_key(i + d[0], j + d[1]), tri_point(i + d[0], j + d[1]));
      cyc.push_back(tri_key(i + d[0], j + d[1]));
    }
    b.face(std::move(cyc), std::nullopt);
  }
  if (b.empty()) throw LatticeError("window too small to contain a hexagon");
  return b.finish(Family::Hexagonal, {rows, cols, 0, 0}, false, false);
}

LatticeBundle gen_apollonian(int insertions, std::uint64_t seed) {
  if (insertions < 0) throw LatticeError("insertions must be non-negative");
  struct P {
    double x, y;
  };
  std::vector<P> pts = {{0.0, 0.0}, {1.0, 0.0}, {0.5, kSqrt3 / 2.0}};
  std::vector<std::array<int, 3>> faces = {{0, 1, 2}};
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {0, 2}};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < insertions; ++k) {
    const std::size_t pick = static_cast<std::size_t>(rng() % faces.size());
    const auto [a, b, c] = faces[pick];
    const int v = static_cast<int>(pts.size());
    pts.push_back({(pts[a].x + pts[b].x + pts[c].x) / 3.0, (pts[a].y + pts[b].y + pts[c].y) / 3.0});
    edges.emplace_back(a, v);
    edges.emplace_back(b, v);
    edges.emplace_back(c, v);
    faces[pick] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({c, a, v});
  }
  GraphSpec spec;
  spec.faces_complete = true;
  for (std::size_t i = 0; i < pts.size(); ++i) spec.vertices.push_back({static_cast<int>(i), pts[i].x, pts[i].y});
  spec.edges = edges;
  for (std::size_t f = 0; f < faces.size(); ++f)
    spec.faces.push_back({static_cast<int>(f), {faces[f][0], faces[f][1], faces[f][2]}});
  LatticeBundle bundle;
  bundle.graph = std::make_shared<PlanarGraph>(PlanarGraph::build(spec));
  bundle.family = Family::Apollonian;
  bundle.params.insertions = insertions;
  bundle.params.seed = seed;
  return bundle;
}

namespace {

LatticeBundle center_faces(const LatticeBundle& bundle, const std::vector<bool>& selected) {
  const PlanarGraph& g = *bundle.graph;
  GraphSpec spec = g.to_spec();
  int next_vertex = 0, next_face = 0;
  for (const Vertex& v : g.vertices()) next_vertex = std::max(next_vertex, v.id + 1);
  for (const Face& f : g.faces()) next_face = std::max(next_face, f.id + 1);

  spec.faces.clear();
  for (std::size_t f = 0; f < g.face_count(); ++f) {
    const Face& face = g.face(f);
    if (!selected[f]) {
      GraphSpec::FaceSpec fs{face.id, {}};
      for (VertexIndex v : face.cycle) fs.cycle.push_back(g.vertex(v).id);
      spec.faces.push_back(std::move(fs));
      continue;
    }
    double cx = 0, cy = 0;
    for (VertexIndex v : face.cycle) {
      cx += g.vertex(v).x;
      cy += g.vertex(v).y;
    }
    const double n = static_cast<double>(face.cycle.size());
    const int center = next_vertex++;
    spec.vertices.push_back({center, cx / n, cy / n});
    for (std::size_t k = 0; k < face.cycle.size(); ++k) {
      const int a = g.vertex(face.cycle[k]).id;
      const int b = g.vertex(face.cycle[(k + 1) % face.cycle.size()]).id;
      spec.edges.emplace_back(a, center);
      spec.faces.push_back({next_face++, {a, b, center}});
    }
  }
  LatticeBundle out;
  out.graph = std::make_shared<PlanarGraph>(PlanarGraph::build(spec));
  out.params = bundle.params;
  const bool all = std::all_of(selected.begin(), selected.end(), [](bool s) { return s; });
  if (bundle.family == Family::Triangular && all) {
    out.family = Family::TrianglePrime;
  } else {
    out.family = Family::Centered;
  }
  out.base = bundle.family;
  out.core = std::make_shared<LatticeBundle>(bundle);
  return out;
}

}  // namespace

LatticeBundle add_centers(const LatticeBundle& bundle, CenterSelection which) {
  const PlanarGraph& g = *bundle.graph;
  std::vector<bool> selected(g.face_count(), false);
  for (std::size_t f = 0; f < g.face_count(); ++f) {
    const bool triangle = g.face(f).cycle.size() == 3;
    switch (which) {
      case CenterSelection::AllFaces: selected[f] = true; break;
      case CenterSelection::TriangularFaces: selected[f] = triangle; break;
      case CenterSelection::GrayOnly:
        if (!bundle.scheme) throw LatticeError("gray-only centering needs a coloring");
        selected[f] = bundle.scheme->is_gray(static_cast<FaceIndex>(f));
        if (selected[f] && !triangle) throw LatticeError("gray face " + std::to_string(g.face(f).id) + " is not a triangle");
        break;
    }
  }
  return center_faces(bundle, selected);
}

LatticeBundle add_centers(const LatticeBundle& bundle, std::span<const int> face_ids) {
  const PlanarGraph& g = *bundle.graph;
  std::vector<bool> selected(g.face_count(), false);
  for (int id : face_ids) {
    const auto f = g.find_face(id);
    if (!f) throw LatticeError("unknown face id " + std::to_string(id));
    if (g.face(*f).cycle.size() != 3) throw LatticeError("face " + std::to_string(id) + " is not a triangle");
    selected[*f] = true;
  }
  return center_faces(bundle, selected);
}

LatticeBundle generate(std::string_view family, int rows, int cols, std::uint64_t seed, std::string_view base,
                       int insertions) {
  const auto fam = parse_family(family);
  if (!fam) throw LatticeError("unknown family \"" + std::string(family) + "\"");
  switch (*fam) {
    case Family::Triangular: return gen_triangular(rows, cols);
    case Family::CenteredSquare: return gen_centered_square(rows, cols);
    case Family::SquareOctagon: return gen_square_octagon(rows, cols);
    case Family::Hexagonal: return gen_hexagonal(rows, cols);
    case Family::TrianglePrime: return add_centers(gen_triangular(rows, cols), CenterSelection::AllFaces);
    case Family::Centered: {
      const auto b = parse_family(base);
      if (!b || (*b != Family::Triangular && *b != Family::CenteredSquare && *b != Family::SquareOctagon))
        throw LatticeError("D needs a base family among T, R, C");
      return add_centers(generate(base, rows, cols), CenterSelection::TriangularFaces);
    }
    case Family::Apollonian: return gen_apollonian(insertions >= 0 ? insertions : rows, seed);
  }
  throw LatticeError("unreachable family");
}

}  // namespace markgame
