#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mutkit {

using Permutation4 = std::array<int, 4>;

/// Edges of a tetrahedron in the fixed order 01 02 03 12 13 23.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Index into kTetEdges of the edge joining vertices a != b.
int edge_index(int a, int b);

/// Which of the three shape parameters sits on an edge: 0 for z (edges 02
/// and 13), 1 for 1/(1-z) (edges 12 and 03), 2 for 1-1/z (edges 01 and 23),
/// where z = cross_ratio(P0, P1, P2, P3).
int edge_parameter(int edge);

struct Tetrahedron {
  /// neighbors[f]: tetrahedron glued to face f (the face opposite vertex f).
  std::array<int, 4> neighbors{};
  /// gluings[f][v]: vertex of the neighbor matched with vertex v.
  std::array<Permutation4, 4> gluings{};
  /// Group word (in a representation's generators) of each face pairing;
  /// "1" for the empty word.
  std::array<std::string, 4> face_words{"1", "1", "1", "1"};
  /// Edge classes in kTetEdges order, as declared in the file (optional).
  std::optional<std::array<int, 6>> declared_edges;
  /// Cusp of each vertex, as declared in the file (optional).
  std::optional<std::array<int, 4>> declared_cusps;
  int orientation = 1;
};

/// Ideal triangulation of a cusped 3-manifold with face-pairing words.
struct IdealTriangulation {
  std::vector<Tetrahedron> tetrahedra;
  /// Cusp-completeness equations: 3 integer coefficients per tetrahedron
  /// for log z, log 1/(1-z), log(1-1/z); right-hand side 0.
  std::vector<std::vector<int>> cusp_equations;
};

struct EdgeIncidence {
  int tet = 0;
  int edge = 0;
};

/// Edge and vertex classes derived from the gluings.
struct TriangulationCombinatorics {
  std::vector<std::array<int, 6>> edge_class;  ///< per tetrahedron
  std::vector<std::array<int, 4>> cusp;        ///< per tetrahedron vertex
  std::vector<std::vector<EdgeIncidence>> edges;
  int cusp_count = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
  /// Coefficient rows of the edge equations (sum of logs = 2 pi i).
  std::vector<std::vector<int>> edge_equations() const;
};

/// Checks the triangulation and derives its combinatorics. Problems are
/// appended to `errors` (one line each) instead of throwing.
std::optional<TriangulationCombinatorics> analyze_triangulation(const IdealTriangulation& tri,
                                                               std::vector<std::string>& errors);

/// analyze_triangulation that throws ValidationError with every problem.
TriangulationCombinatorics require_valid(const IdealTriangulation& tri);

}  // namespace mutkit
