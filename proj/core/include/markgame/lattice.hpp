#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "markgame/graph.hpp"

namespace markgame {

enum class Family {
  Triangular,      // T
  CenteredSquare,  // R
  SquareOctagon,   // C
  Hexagonal,       // H
  TrianglePrime,   // T', every face of a T window centered
  Centered,        // D, a base family with centered triangular faces
  Apollonian,
};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WindowParams {
  int rows = 0;
  int cols = 0;
  int insertions = 0;
  std::uint64_t seed = 0;
};

struct LatticeBundle {
  std::shared_ptr<const PlanarGraph> graph;
  std::optional<MarkingScheme> scheme;
  Family family = Family::Triangular;
  std::optional<Family> base;  // for Centered / TrianglePrime
  WindowParams params;
  /// The bundle centers were added to; its vertices induce it inside `graph`.
  std::shared_ptr<const LatticeBundle> core;

  nlohmann::json meta() const;
};

/**
 * Window of the triangular lattice made of rows x cols right-pointing gray
 * triangles, each marked at its rightmost corner. Columns of gray triangles
 * extend to the left of the origin triangle and shift up by half a step per
 * column, so each window is a vertex-induced subgraph of every larger one.
 */
LatticeBundle gen_triangular(int rows, int cols);

/// Square lattice with face centers; vertical/horizontal cells alternate in a checkerboard.
LatticeBundle gen_centered_square(int rows, int cols);

/// Square-octagon lattice with face centers: rows x cols octagons plus every square touching them.
LatticeBundle gen_square_octagon(int rows, int cols);

/// Honeycomb window in triangular-lattice coordinates (no scheme): the
/// hexagons lying inside the T(rows+2, cols+2) window that are connected to
/// the origin hexagon through shared edges.
LatticeBundle gen_hexagonal(int rows, int cols);

/**
 * Apollonian network: start from one triangle and insert `insertions` centered
 * vertices. Face choice: a std::mt19937_64 seeded with `seed` draws r, and the
 * face at position r % face_count is split; the first child triangle replaces
 * it in place and the other two are appended.
 */
LatticeBundle gen_apollonian(int insertions, std::uint64_t seed);

enum class CenterSelection { AllFaces, GrayOnly, TriangularFaces };

/// Adds a degree-k vertex inside each selected face, joined to its k corners.
LatticeBundle add_centers(const LatticeBundle& bundle, CenterSelection which);

/// Centers the listed faces (by face id); every listed face must be a triangle.
LatticeBundle add_centers(const LatticeBundle& bundle, std::span<const int> face_ids);

/// Name-based factory used by the CLI and the play service.
/// Accepts T, R, C, H, Tp (T'), D (base given by `base`), apollonian.
LatticeBundle generate(std::string_view family, int rows, int cols, std::uint64_t seed = 0,
                       std::string_view base = "T", int insertions = -1);

}  // namespace markgame
