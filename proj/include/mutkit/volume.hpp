#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mutkit/gluing.hpp"
#include "mutkit/moebius.hpp"
#include "mutkit/representation.hpp"
#include "mutkit/triangulation.hpp"

namespace mutkit {

struct DecoratedSimplex {
  std::array<SpherePoint, 4> vertices;
  int sign = 1;
};

/// Formal signed sum of ideal simplices with sphere-point vertices.
struct DecoratedCycle {
  std::vector<DecoratedSimplex> simplices;
};

struct CycleVolume {
  double volume = 0.0;
  std::size_t degenerate = 0;  ///< simplices with coincident vertices (contribute 0)
};

/// Sum of sign * D(cross_ratio) over the simplices. Per-simplex terms are
/// combined by pairwise summation, so the result does not depend on how the
/// terms are computed.
CycleVolume volume_of_decorated_cycle(const DecoratedCycle& cycle, double dedup_tol = 1e-10);

/// Applies g to every decoration.
DecoratedCycle transform_cycle(const DecoratedCycle& cycle, const MoebiusMatrix& g);
/// Flips every sign.
DecoratedCycle reverse_orientation(const DecoratedCycle& cycle);
/// Formal sum of the given cycles.
DecoratedCycle disjoint_union(std::span<const DecoratedCycle> cycles);

struct DevelopOptions {
  /// Loops at a cusp must fix the cone point to this chordal accuracy.
  double fixed_point_tol = 1e-8;
  /// Maximum allowed decoration disagreement across a face.
  double mismatch_tol = 1e-8;
};

struct DevelopedCycle {
  DecoratedCycle cycle;
  std::vector<SpherePoint> cone_points;  ///< one per cusp, at its base corner
  std::vector<int> peripheral_loops;     ///< non-central loop holonomies found per cusp
  double max_mismatch = 0.0;
};

/// Pseudo-develops the triangulation with its face-pairing words evaluated
/// in `rep`: every ideal vertex is sent to the common fixed point of the
/// peripheral holonomy of its cusp, transported along the face pairings.
///
/// Throws CheckFailure "NoCommonFixedPoint" (cusp holonomy has no common
/// fixed point, e.g. a trivial representation) or "PropagationMismatch"
/// (naming the face) and ValidationError for malformed input.
DevelopedCycle develop_cycle(const IdealTriangulation& tri, const MatrixRepresentation& rep,
                             const DevelopOptions& options = {});

struct SurfaceTriangle {
  std::array<int, 3> vertices{};
  int sign = 1;
};

/// Decorated 2-cycle: triangles over a table of sphere points.
struct SurfaceCycle {
  std::vector<SpherePoint> points;
  std::vector<SurfaceTriangle> triangles;
};

/// Throws ValidationError unless the boundary of the 2-chain vanishes.
void require_closed_surface(const SurfaceCycle& surface);

/// Product cycle Surface x S^1 with circle holonomy generated by A:
/// level s of the circle (s in [0, degree]) is decorated by A^s applied
/// to the surface points, sampled at circle_steps levels; each prism
/// Triangle x [s_j, s_j+1] is split into three simplices. Requires
/// A^degree = 1 (CheckFailure otherwise).
DecoratedCycle product_cycle(const SurfaceCycle& surface, const MoebiusMatrix& circle_generator,
                             int degree, int circle_steps, double holonomy_tol = 1e-10);

/// Volume of product_cycle; ~0 because the class factors through a surface.
double product_cycle_volume(const SurfaceCycle& surface, const MoebiusMatrix& circle_generator,
                            int degree, int circle_steps, double holonomy_tol = 1e-10);

struct CoverVolumeReport {
  double base_volume = 0.0;
  double cover_volume = 0.0;
  int degree = 1;
  double difference = 0.0;  ///< |cover - degree * base|
  bool passes = false;
};

CoverVolumeReport cover_volume_check(double base_volume, int degree, const DecoratedCycle& cover_cycle,
                                     double tol = 1e-10);

struct ManifoldVolume {
  double cycle_volume = 0.0;
  std::size_t degenerate = 0;
  double max_mismatch = 0.0;
  std::optional<ShapeSolution> shapes;  ///< present when the Newton solver converged
  std::optional<std::string> gluing_failure;
  double cross_check_difference = 0.0;  ///< |cycle volume - shape volume| when shapes exist
};

ManifoldVolume manifold_volume(const IdealTriangulation& tri, const MatrixRepresentation& rep,
                               const DevelopOptions& options = {}, const NewtonOptions& newton = {});

struct MutationVolumeReport {
  ManifoldVolume original;
  ManifoldVolume mutant;
  double difference = 0.0;
  double tol = 0.0;
  bool passes = false;
};

/// vol(M) and vol(M^tau) from the decorated-cycle pairing, each cross-
/// checked against the gluing-equation solution when it converges.
MutationVolumeReport verify_mutation_volume(const IdealTriangulation& tri_m, const MatrixRepresentation& rep_m,
                                            const IdealTriangulation& tri_mtau,
                                            const MatrixRepresentation& rep_mtau, double tol = 1e-9,
                                            const DevelopOptions& options = {});

/// Pairwise (tree) summation in input order.
double pairwise_sum(std::span<const double> values);

}  // namespace mutkit
