#pragma once

#include <optional>
#include <vector>

#include "mutkit/moebius.hpp"
#include "mutkit/presentation.hpp"

namespace mutkit {

/// How relator images are compared with the identity. Projective accepts
/// +-1 per relator (a lift of a PSL(2,C) representation); Strict requires +1.
enum class LiftMode { Projective, Strict };

const char* to_string(LiftMode mode);

struct RepresentationTolerances {
  double residual = 1e-8;
  LiftMode lift = LiftMode::Projective;
};

class MatrixRepresentation {
 public:
  MatrixRepresentation() = default;
  /// Throws ValidationError if the image count differs from the generator count.
  MatrixRepresentation(FinitePresentation presentation, std::vector<MoebiusMatrix> images);

  const FinitePresentation& presentation() const { return presentation_; }
  const std::vector<MoebiusMatrix>& images() const { return images_; }
  const MoebiusMatrix& image(int generator) const { return images_.at(generator); }

 private:
  FinitePresentation presentation_;
  std::vector<MoebiusMatrix> images_;
};

MoebiusMatrix evaluate_word(const MatrixRepresentation& rep, const GroupWord& w);
MoebiusMatrix evaluate_word(std::span<const MoebiusMatrix> images, const GroupWord& w);

struct RelatorResidual {
  double residual = 0.0;
  int sign = 1;  ///< which of +-1 the relator image is closest to (always +1 in strict mode)
};

struct ResidualReport {
  std::vector<RelatorResidual> relators;
  double max_residual = 0.0;
  bool ok = true;
  LiftMode mode = LiftMode::Projective;
};

ResidualReport relator_residuals(const MatrixRepresentation& rep, const RepresentationTolerances& tol = {});
/// Throws CheckFailure naming the worst relator when the residual exceeds tol.
ResidualReport require_residuals(const MatrixRepresentation& rep, const RepresentationTolerances& tol,
                                 const char* context);

/// Separating surface: the ambient presentation is an amalgam of the
/// subgroups on the complementary generator sets.
struct AmalgamData {
  std::vector<int> side2_generators;  ///< ambient indices generating pi_1 M_2
  std::vector<GroupWord> phi2;        ///< one ambient word per surface generator, in side-2 letters
};

/// Non-separating surface: the ambient presentation is an HNN extension
/// with stable letter v.
struct HnnData {
  int stable_generator = -1;       ///< ambient index of v
  std::vector<GroupWord> phi2;     ///< ambient words (without v)
  std::vector<GroupWord> alpha;    ///< alpha on surface generators, words in surface generators
};

struct MutationSpec {
  MatrixRepresentation ambient;
  SurfaceInclusion inclusion;
  bool separating = true;
  std::optional<AmalgamData> amalgam;
  std::optional<HnnData> hnn;
  std::optional<MoebiusMatrix> conjugator;
  std::optional<FiniteOrderCertificate> certificate;
  std::optional<ConjugatorDiagnostics> diagnostics;
  RepresentationTolerances tolerances;
};

/// Throws ValidationError on inconsistent splitting data.
void validate_mutation_spec(const MutationSpec& spec);

struct SurfaceImages {
  std::vector<MoebiusMatrix> source;  ///< rho(h_j)
  std::vector<MoebiusMatrix> target;  ///< rho(tau_* h_j)
};
SurfaceImages surface_images(const MutationSpec& spec);

/// Solves for the conjugator and certifies A^m = +-1.
/// Propagates ConjugatorError; each failure mode is a violated hypothesis.
MutationSpec solve_assumption(MutationSpec spec, const MoebiusTolerances& tol = {});

/// rho_X on build_extended_presentation's output, t -> A.
MatrixRepresentation build_rho_X(const MutationSpec& spec);

/// rho^tau on the mutant amalgam (M_2 side conjugated by A) or on the
/// mutant HNN extension (stable letter u -> rho(v) A).
MatrixRepresentation build_mutant_representation(const MutationSpec& spec);

/// Presentations of the two amalgam factors / of the HNN base, with the
/// surface words rewritten in their generators.
struct AmalgamFactors {
  FinitePresentation p1, p2;
  std::vector<int> p1_to_ambient, p2_to_ambient;
  std::vector<GroupWord> phi1, phi2;
};
AmalgamFactors amalgam_factors(const MutationSpec& spec);

struct HnnBase {
  FinitePresentation pN;
  std::vector<int> to_ambient;
  std::vector<GroupWord> phi1, phi2;
  std::vector<GroupWord> alpha_then_tau;
};
HnnBase hnn_base(const MutationSpec& spec);

/// Images of the kernel generators under rho_X. The t^degree image must be
/// the identity (A^{2m} = 1); otherwise CheckFailure.
MatrixRepresentation build_cover_representation(const MutationSpec& spec, const CoverData& cover,
                                                double tol = 1e-10);

struct JorgensenResult {
  double lhs = 0.0;
  bool passes = false;
};

/// |tr^2 g - 4| + |tr[g,h] - 2| >= 1 is necessary for <g,h> discrete and
/// non-elementary. A failing pair is a witness against discreteness.
JorgensenResult jorgensen_test(const MoebiusMatrix& g, const MoebiusMatrix& h, double tol = 1e-12);

}  // namespace mutkit
