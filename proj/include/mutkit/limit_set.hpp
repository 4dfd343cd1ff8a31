#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mutkit/moebius.hpp"
#include "mutkit/presentation.hpp"

namespace mutkit {

struct LimitSetSample {
  std::vector<SpherePoint> points;
  /// Word (in the sampled generators) whose attracting fixed point gave each point.
  std::vector<GroupWord> words;
  int max_word_length = 0;
  std::vector<MoebiusMatrix> generators;
  double dedup_radius = 0.0;
  std::size_t words_enumerated = 0;
};

/// Attracting fixed points of all loxodromic or parabolic images of reduced
/// words of length 1..max_word_length, deduplicated in the chordal metric.
/// Points are in enumeration order (by length, then letter order
/// g0, g0^-1, g1, ...). Throws CheckFailure ("EmptySample") if every
/// word image is elliptic or central.
LimitSetSample sample_limit_set(std::span<const MoebiusMatrix> generators, int max_word_length,
                                double dedup_radius = 1e-9);

/// All reduced words of length 1..max_length in `generator_count` letters,
/// in the enumeration order of sample_limit_set.
std::vector<GroupWord> enumerate_reduced_words(int generator_count, int max_length);

/// Stereographic chart in which a chosen pole goes to infinity. The map is
/// unitary, so chordal distances are preserved.
struct Chart {
  SpherePoint pole = SpherePoint::infinity();
  MoebiusMatrix to_chart;  ///< sends pole to infinity

  Complex coordinate(const SpherePoint& p) const;
};

/// Unitary chart with the given pole at infinity.
Chart chart_with_pole(const SpherePoint& pole);
/// Chart whose pole maximizes the chordal distance to `points` among a
/// fixed spread of candidate poles.
Chart chart_avoiding(std::span<const SpherePoint> points);

struct CurveOptions {
  int neighbor_count = 10;   ///< candidate list size for 2-opt repair
  int max_two_opt_passes = 50;
};

struct CurveModel {
  std::vector<SpherePoint> loop;  ///< cyclic order; the chain closes back to loop[0]
  double max_gap = 0.0;           ///< largest chordal distance between neighbours
  std::size_t two_opt_moves = 0;
  Chart chart;
};

/// Orders the sample into a closed polygonal chain (greedy nearest
/// neighbour plus 2-opt repair). Throws ValidationError for fewer than 3
/// points and CheckFailure ("ChainingFailed") if the chain self-intersects
/// in the chart.
CurveModel build_curve_model(const LimitSetSample& sample, const CurveOptions& options = {});
CurveModel build_curve_model(std::span<const SpherePoint> points, const CurveOptions& options = {});

/// Curve model with a prescribed cyclic order (no reordering); still
/// checked for self-intersection.
CurveModel curve_from_loop(std::vector<SpherePoint> loop);

/// Moebius image of a curve model, keeping the order.
CurveModel transform_curve(const CurveModel& curve, const MoebiusMatrix& g);

enum class Side { Side1, Side2, OnCurve };

const char* to_string(Side side);

/// Labels points by the side of an oriented closed curve: Side1 is to the
/// left of the chain's direction. The label does not depend on the chart.
class SideClassifier {
 public:
  SideClassifier(CurveModel curve, double band_tol = 1e-6);
  SideClassifier(CurveModel curve, Chart chart, double band_tol);

  const CurveModel& curve() const { return curve_; }
  const Chart& chart() const { return chart_; }
  double band_tol() const { return band_tol_; }

  Side classify(const SpherePoint& p) const;
  /// Chordal distance from p to the chordal polygonal chain.
  double distance_to_curve(const SpherePoint& p) const;
  /// Distance to the curve, negated unless p is on `expected`.
  double signed_margin(const SpherePoint& p, Side expected) const;

 private:
  CurveModel curve_;
  Chart chart_;
  double band_tol_;
  std::vector<Complex> planar_;
  std::vector<std::array<double, 3>> spatial_;
  bool counterclockwise_ = true;

  int winding(Complex z) const;
};

struct ProbeOptions {
  int per_region = 64;
  int candidates = 2048;
  std::uint64_t seed = 0;
  /// Probes must stay this far (chordal) from every curve.
  double min_clearance = 1e-4;
};

/// Probe points in a region, by farthest-point sampling among seeded
/// uniform candidates: each pick maximizes the distance to the curves and
/// the earlier picks. `in_region` selects admissible candidates;
/// `distance` is the distance to the region's boundary curves.
std::vector<SpherePoint> farthest_point_probes(const std::function<bool(const SpherePoint&)>& in_region,
                                               const std::function<double(const SpherePoint&)>& distance,
                                               const ProbeOptions& options);

/// Probes on both sides of a single curve.
struct SideProbes {
  std::vector<SpherePoint> side1;
  std::vector<SpherePoint> side2;
};
SideProbes probe_sides(const SideClassifier& classifier, const ProbeOptions& options = {});

struct ConditionResult {
  std::string name;
  std::string description;
  bool passes = true;
  bool vacuous = false;      ///< nothing to check (empty sample)
  double worst_margin = 0.0; ///< smallest signed distance of an image from the wrong side
  std::size_t checked = 0;
  std::size_t ambiguous = 0; ///< images within band_tol of a curve (not counted)
  std::optional<SpherePoint> witness;  ///< first failing probe
  std::optional<SpherePoint> witness_image;
  std::string note;
};

enum class SideAction { Preserves, Swaps, Mixed, Undetermined };

const char* to_string(SideAction action);

struct MaskitOptions {
  double band_tol = 1e-6;
  double sep_tol = 1e-4;
  /// Tolerance for A(W) = W; 0 means "use the curve's max_gap".
  double curve_tol = 0.0;
  ProbeOptions probes;
};

struct MaskitReport {
  std::vector<ConditionResult> conditions;
  SideAction a_action = SideAction::Undetermined;
  bool passes = true;
  std::size_t curve_points = 0;
  double max_gap = 0.0;
  double curve_tol = 0.0;
  std::size_t probes_side1 = 0;
  std::size_t probes_side2 = 0;
  std::size_t probes_region_r = 0;
  double curve_separation = 0.0;  ///< HNN only: min distance between W and W_2
};

/// Sampled check of the precise-invariance conditions for the mutant
/// amalgam: (i) H preserves each side, (ii) G_1 - H moves side 1 into
/// side 2, (iii) A and A^-1 map the curve to itself, (iv) whether A
/// preserves or swaps the sides (measured), (v) A g A^-1 moves side 2 into
/// side 1 for g in G_2 - H.
MaskitReport check_precise_invariance_amalgam(const SideClassifier& classifier,
                                              std::span<const MoebiusMatrix> h_sample,
                                              std::span<const MoebiusMatrix> g1_minus_h,
                                              std::span<const MoebiusMatrix> g2_minus_h, const MoebiusMatrix& a,
                                              const MaskitOptions& options = {});

/// Sampled check of the HNN hypotheses: W_2 = f(W) is disjoint from W,
/// f(R u B_2) lies in B_2 and so does fA(R u B_2); H preserves B_1;
/// G_0 - H moves B_1 off itself; A preserves W (side action measured).
/// Throws CheckFailure ("CurvesIntersect") if W and W_2 come within sep_tol.
MaskitReport check_precise_invariance_hnn(const CurveModel& curve_w, const MoebiusMatrix& f, const MoebiusMatrix& a,
                                          std::span<const MoebiusMatrix> h_sample,
                                          std::span<const MoebiusMatrix> g0_minus_h,
                                          const MaskitOptions& options = {});

/// Largest distance from g applied to (at most `max_points` evenly spaced)
/// curve points to the curve: 0 when g maps the sampled curve into itself.
double curve_invariance_defect(const SideClassifier& classifier, const MoebiusMatrix& g,
                               std::size_t max_points = 2000);

/// Static SVG of the curve(s) and probes in the chart.
std::string render_svg(const SideClassifier& classifier, const SideProbes& probes,
                       const CurveModel* second_curve = nullptr);

}  // namespace mutkit
