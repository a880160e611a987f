#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "markgame/graph_io.hpp"
#include "markgame/lattice.hpp"
#include "oracles.hpp"

using namespace markgame;

namespace {

int gray_count(const LatticeBundle& b) {
  int n = 0;
  for (std::size_t f = 0; f < b.graph->face_count(); ++f) n += b.scheme->is_gray(static_cast<int>(f));
  return n;
}

// all incident edges lie on two bounded faces
bool interior(const PlanarGraph& g, VertexIndex v) {
  for (const Incidence& inc : g.incident(v))
    if (g.faces_of_edge(inc.edge).size() != 2) return false;
  return g.degree(v) > 0;
}

std::set<int> interior_degrees(const PlanarGraph& g) {
  std::set<int> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (interior(g, static_cast<int>(v))) out.insert(g.degree(static_cast<int>(v)));
  return out;
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

}  // namespace

TEST_CASE("triangular windows") {
  auto one = gen_triangular(1, 1);
  CHECK(one.graph->vertex_count() == 3);
  CHECK(one.graph->edge_count() == 3);
  CHECK(gray_count(one) == 1);
  int marks = 0;
  for (const auto& m : one.scheme->marked_angle) marks += m.has_value();
  CHECK(marks == 1);

  auto two = gen_triangular(2, 2);
  CHECK(gray_count(two) == 4);
  for (std::size_t e = 0; e < two.graph->edge_count(); ++e) {
    int owners = 0;
    for (FaceIndex f : two.graph->faces_of_edge(static_cast<int>(e))) owners += two.scheme->is_gray(f);
    CHECK(owners == 1);
  }
  // the marked angle of every gray triangle is its rightmost corner
  for (std::size_t f = 0; f < two.graph->face_count(); ++f) {
    if (!two.scheme->is_gray(static_cast<int>(f))) continue;
    const auto& c = two.graph->face(f).cycle;
    double best = -1e9;
    for (int v : c) best = std::max(best, two.graph->vertex(v).x);
    CHECK(two.graph->vertex(*two.scheme->marked_angle[f]).x == doctest::Approx(best));
  }
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) {
      auto b = gen_triangular(r, c);
      CHECK(gray_count(b) == r * c);
      auto degs = interior_degrees(*b.graph);
      for (int d : degs) CHECK(d == 6);
    }
  CHECK(interior_degrees(*gen_triangular(3, 3).graph) == std::set<int>{6});
}

TEST_CASE("centered square windows") {
  auto one = gen_centered_square(1, 1);
  // the two boundary edges without a gray owner are trimmed with their white faces
  CHECK(one.graph->vertex_count() == 5);
  CHECK(one.graph->edge_count() == 6);
  CHECK(gray_count(one) == 2);
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) {
      auto b = gen_centered_square(r, c);
      CAPTURE(r);
      CAPTURE(c);
      int centers = 0;
      for (const auto& v : b.graph->vertices()) {
        if (near_integer(v.x) || near_integer(v.y)) continue;  // grid points have integer coordinates
        ++centers;
        CHECK(b.graph->degree(b.graph->index_of(v.id)) == 4);
      }
      CHECK(centers == r * c);
      for (int d : interior_degrees(*b.graph)) CHECK((d == 4 || d == 8));
    }
}

TEST_CASE("square-octagon windows") {
  const double h = (1 + std::sqrt(2.0)) / 2;
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) {
      auto b = gen_square_octagon(r, c);
      CAPTURE(r);
      CAPTURE(c);
      for (std::size_t e = 0; e < b.graph->edge_count(); ++e) {
        int owners = 0;
        for (FaceIndex f : b.graph->faces_of_edge(static_cast<int>(e))) owners += b.scheme->is_gray(f);
        CHECK(owners == 1);
      }
      int octagons = 0;
      for (const auto& v : b.graph->vertices()) {
        const double i = v.x / h, j = v.y / h;
        if (!near_integer(i) || !near_integer(j)) continue;
        const long a = std::lround(i), bb = std::lround(j);
        const int deg = b.graph->degree(b.graph->index_of(v.id));
        if (a % 2 == 0 && bb % 2 == 0) {
          CHECK(deg == 8);
          ++octagons;
        } else if (a % 2 != 0 && bb % 2 != 0) {
          CHECK(deg == 4);
        }
      }
      CHECK(octagons == r * c);
      for (int d : interior_degrees(*b.graph)) CHECK((d == 4 || d == 6 || d == 8));
    }
}

TEST_CASE("every scheme passes the five conditions for window sizes 1..4") {
  for (auto fam : {"T", "R", "C"})
    for (int r = 1; r <= 4; ++r)
      for (int c = 1; c <= 4; ++c) {
        auto b = generate(fam, r, c);
        REQUIRE(b.scheme);
        CAPTURE(fam);
        CAPTURE(r);
        CAPTURE(c);
        const auto rep = validate_theorem_conditions(*b.graph, *b.scheme);
        CHECK(rep.passed());
        const auto naive = oracle::naive_hypotheses(*b.graph, *b.scheme);
        for (bool ok : naive) CHECK(ok);
        CHECK(b.graph->component_count() == 1);
      }
}

TEST_CASE("windows nest") {
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      for (auto fam : {"T", "R", "C"}) {
        auto small = generate(fam, r, c);
        for (auto [dr, dc] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
          auto big = generate(fam, r + dr, c + dc);
          CAPTURE(fam);
          CHECK(is_subgraph(*small.graph, *big.graph, SubgraphMatch::ByCoordinates));
        }
      }
      // triangular windows are vertex-induced in the larger ones
      auto small = gen_triangular(r, c);
      auto big = gen_triangular(r + 1, c + 1);
      std::vector<int> ids;
      for (const auto& v : small.graph->vertices())
        for (const auto& w : big.graph->vertices())
          if (std::abs(v.x - w.x) < 1e-9 && std::abs(v.y - w.y) < 1e-9) ids.push_back(w.id);
      REQUIRE(ids.size() == small.graph->vertex_count());
      CHECK(induced_subgraph(*big.graph, ids).edge_count() == small.graph->edge_count());
    }
}

TEST_CASE("hexagonal windows") {
  auto one = gen_hexagonal(1, 1);
  CHECK(one.graph->vertex_count() == 6);
  CHECK(one.graph->edge_count() == 6);
  CHECK_FALSE(one.scheme);
  auto two = gen_hexagonal(2, 2);
  bool has_three = false;
  for (std::size_t v = 0; v < two.graph->vertex_count(); ++v) {
    if (two.graph->faces_of_vertex(static_cast<int>(v)).size() >= 2) {
      CHECK(two.graph->degree(static_cast<int>(v)) == 3);
      has_three = true;
    }
  }
  CHECK(has_three);
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) {
      auto h = gen_hexagonal(r, c);
      CHECK(h.graph->max_degree() <= 3);
      CHECK(h.graph->component_count() == 1);
      for (const auto& f : h.graph->faces()) CHECK(f.cycle.size() == 6);
      CHECK(is_subgraph(*h.graph, *gen_triangular(r + 2, c + 2).graph, SubgraphMatch::ByCoordinates));
    }
}

TEST_CASE("centering faces") {
  SUBCASE("single triangle becomes K4") {
    auto k4 = add_centers(gen_triangular(1, 1), CenterSelection::AllFaces);
    CHECK(k4.graph->vertex_count() == 4);
    CHECK(k4.graph->edge_count() == 6);
    CHECK(k4.graph->face_count() == 3);
    CHECK_FALSE(k4.scheme);
  }
  SUBCASE("triangular window, every face") {
    auto base = gen_triangular(3, 3);
    auto tp = add_centers(base, CenterSelection::AllFaces);
    const std::size_t F = base.graph->face_count();
    CHECK(tp.graph->vertex_count() == base.graph->vertex_count() + F);
    CHECK(tp.graph->edge_count() == base.graph->edge_count() + 3 * F);
    std::vector<int> old_ids;
    for (const auto& v : base.graph->vertices()) old_ids.push_back(v.id);
    for (const auto& v : tp.graph->vertices())
      if (!base.graph->find_vertex(v.id)) CHECK(tp.graph->degree(tp.graph->index_of(v.id)) == 3);
    auto restricted = induced_subgraph(*tp.graph, old_ids);
    CHECK(graph_to_json(restricted)["edges"] == graph_to_json(*base.graph)["edges"]);
    CHECK(graph_to_json(restricted)["vertices"] == graph_to_json(*base.graph)["vertices"]);
    REQUIRE(tp.core);
    CHECK(tp.core->graph == base.graph);

    auto via_factory = generate("Tp", 3, 3);
    CHECK(graph_to_json(*via_factory.graph) == graph_to_json(*tp.graph));
  }
  SUBCASE("gray only") {
    auto base = gen_centered_square(2, 2);
    auto d = add_centers(base, CenterSelection::GrayOnly);
    CHECK(d.graph->vertex_count() == base.graph->vertex_count() + gray_count(base));
  }
  SUBCASE("D over each base") {
    for (auto base : {"T", "R", "C"}) {
      auto d = generate("D", 2, 2, 0, base);
      REQUIRE(d.base);
      REQUIRE(d.core);
      CHECK(d.graph->vertex_count() == d.core->graph->vertex_count() + d.core->graph->face_count());
    }
    CHECK_THROWS_AS(generate("D", 2, 2, 0, "H"), LatticeError);
  }
  SUBCASE("errors") {
    auto hex = gen_hexagonal(1, 1);
    const int hex_face = hex.graph->face(0).id;
    CHECK_THROWS_WITH_AS(add_centers(hex, std::vector<int>{hex_face}), doctest::Contains("not a triangle"),
                         LatticeError);
    CHECK_THROWS_WITH_AS(add_centers(hex, std::vector<int>{999}), doctest::Contains("unknown face"), LatticeError);
    CHECK_THROWS_AS(add_centers(hex, CenterSelection::GrayOnly), LatticeError);
    // triangular-faces selection skips the hexagon instead of failing
    CHECK(add_centers(hex, CenterSelection::TriangularFaces).graph->vertex_count() == 6);
  }
}

TEST_CASE("apollonian networks") {
  auto k3 = gen_apollonian(0, 1);
  CHECK(k3.graph->vertex_count() == 3);
  CHECK(k3.graph->edge_count() == 3);
  for (int k : {1, 2, 5, 17, 60}) {
    auto a = gen_apollonian(k, 99);
    const long n = static_cast<long>(a.graph->vertex_count());
    CHECK(n == 3 + k);
    CHECK(static_cast<long>(a.graph->edge_count()) == 3 * n - 6);
  }
  // same seed, same bytes
  CHECK(graph_to_json(*gen_apollonian(40, 5).graph).dump() == graph_to_json(*gen_apollonian(40, 5).graph).dump());
  CHECK(graph_to_json(*gen_apollonian(40, 5).graph).dump() != graph_to_json(*gen_apollonian(40, 6).graph).dump());

  // the documented face-choice rule, replayed independently
  const std::uint64_t seed = 31337;
  const int k = 25;
  std::mt19937_64 rng(seed);
  std::vector<std::array<int, 3>> faces = {{0, 1, 2}};
  for (int i = 0; i < k; ++i) {
    const std::size_t pick = rng() % faces.size();
    const auto [p, q, r] = faces[pick];
    const int v = 3 + i;
    faces[pick] = {p, q, v};
    faces.push_back({q, r, v});
    faces.push_back({r, p, v});
  }
  auto a = gen_apollonian(k, seed);
  std::multiset<std::set<int>> expected, got;
  for (const auto& f : faces) expected.insert({f[0], f[1], f[2]});
  for (const auto& f : a.graph->faces()) {
    std::set<int> ids;
    for (int v : f.cycle) ids.insert(a.graph->vertex(v).id);
    got.insert(ids);
  }
  CHECK(got == expected);

  CHECK_THROWS_AS(gen_apollonian(-1, 0), LatticeError);
  auto via = generate("apollonian", 0, 0, 7, "T", 12);
  CHECK(via.graph->vertex_count() == 15);
  CHECK(via.meta()["insertions"] == 12);
}

TEST_CASE("factory errors and metadata") {
  CHECK_THROWS_AS(gen_triangular(0, 3), LatticeError);
  CHECK_THROWS_AS(gen_centered_square(2, 0), LatticeError);
  CHECK_THROWS_AS(gen_square_octagon(-1, 1), LatticeError);
  CHECK_THROWS_AS(gen_hexagonal(0, 0), LatticeError);
  CHECK_THROWS_WITH_AS(generate("Q", 1, 1), doctest::Contains("unknown family"), LatticeError);
  auto b = generate("R", 2, 3);
  CHECK(b.meta() == nlohmann::json{{"family", "R"}, {"rows", 2}, {"cols", 3}});
  for (auto name : {"T", "R", "C", "H", "Tp", "D", "apollonian"}) CHECK(parse_family(name).has_value());
}
