#include "mutkit/limit_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <unordered_map>

#include "mutkit/errors.hpp"

namespace mutkit {

namespace {

using Vec3 = std::array<double, 3>;

double dist3(const Vec3& x, const Vec3& y) {
  return std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) + (x[2] - y[2]) * (x[2] - y[2]));
}

double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const Vec3 ap = {p[0] - a[0], p[1] - a[1], p[2] - a[2]};
  const double len2 = ab[0] * ab[0] + ab[1] * ab[1] + ab[2] * ab[2];
  double t = len2 > 0.0 ? (ap[0] * ab[0] + ap[1] * ab[1] + ap[2] * ab[2]) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec3 q = {a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]};
  return dist3(p, q);
}

// Grid hash on R^3 for chordal deduplication.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}

  bool near(const Vec3& x, double radius, const std::vector<Vec3>& pts) const {
    const auto c = key(x);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = cells_.find(hash({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == cells_.end()) continue;
          for (std::size_t k : it->second) {
            if (dist3(pts[k], x) < radius) return true;
          }
        }
      }
    }
    return false;
  }

  void insert(const Vec3& x, std::size_t index) { cells_[hash(key(x))].push_back(index); }

 private:
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;

  std::array<std::int64_t, 3> key(const Vec3& x) const {
    return {static_cast<std::int64_t>(std::floor(x[0] / cell_)), static_cast<std::int64_t>(std::floor(x[1] / cell_)),
            static_cast<std::int64_t>(std::floor(x[2] / cell_))};
  }
  static std::uint64_t hash(const std::array<std::int64_t, 3>& k) {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

// Letter l of the enumeration: generator l / 2, exponent +1 for even l.
Letter letter(int l) { return {l / 2, l % 2 == 0 ? 1 : -1}; }

}  // namespace

std::vector<GroupWord> enumerate_reduced_words(int generator_count, int max_length) {
  std::vector<GroupWord> out;
  if (generator_count < 1 || max_length < 1) return out;
  std::vector<std::vector<int>> frontier;
  for (int l = 0; l < 2 * generator_count; ++l) frontier.push_back({l});
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier) {
      std::vector<Letter> letters;
      for (int l : w) letters.push_back(letter(l));
      out.emplace_back(std::move(letters));
      if (len == max_length) continue;
      for (int l = 0; l < 2 * generator_count; ++l) {
        if ((l ^ 1) == w.back()) continue;
        auto ext = w;
        ext.push_back(l);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

LimitSetSample sample_limit_set(std::span<const MoebiusMatrix> generators, int max_word_length,
                                double dedup_radius) {
  if (generators.empty()) throw ValidationError("sample_limit_set: no generators");
  if (max_word_length < 1) throw ValidationError("sample_limit_set: max_word_length must be positive");
  if (!(dedup_radius > 0.0)) throw ValidationError("sample_limit_set: dedup_radius must be positive");
  LimitSetSample out;
  out.max_word_length = max_word_length;
  out.generators.assign(generators.begin(), generators.end());
  out.dedup_radius = dedup_radius;

  const int k = static_cast<int>(generators.size());
  std::vector<MoebiusMatrix> letter_images;
  for (int l = 0; l < 2 * k; ++l) {
    letter_images.push_back(l % 2 == 0 ? generators[l / 2] : generators[l / 2].inverse());
  }

  struct Node {
    std::vector<int> word;
    MoebiusMatrix image;
  };
  std::vector<Node> frontier;
  for (int l = 0; l < 2 * k; ++l) frontier.push_back({{l}, letter_images[l]});
  std::vector<Vec3> coords;
  PointGrid grid(dedup_radius);
  for (int len = 1; len <= max_word_length; ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      ++out.words_enumerated;
      // Scale-free classification: word images can have large entries.
      const auto fp = attracting_fixed_point(node.image, 1e-10 * std::max(1.0, node.image.norm()));
      if (fp) {
        const Vec3 x = fp->to_r3();
        if (!grid.near(x, dedup_radius, coords)) {
          grid.insert(x, coords.size());
          coords.push_back(x);
          out.points.push_back(*fp);
          std::vector<Letter> letters;
          for (int l : node.word) letters.push_back(letter(l));
          out.words.emplace_back(std::move(letters));
        }
      }
      if (len == max_word_length) continue;
      for (int l = 0; l < 2 * k; ++l) {
        if ((l ^ 1) == node.word.back()) continue;
        Node child{node.word, node.image * letter_images[l]};
        child.word.push_back(l);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  if (out.points.empty()) {
    throw CheckFailure("EmptySample: no loxodromic or parabolic word image up to length " +
                       std::to_string(max_word_length));
  }
  return out;
}

Complex Chart::coordinate(const SpherePoint& p) const {
  const auto z = moebius_apply(to_chart, p).affine();
  if (!z) return {std::numeric_limits<double>::infinity(), 0.0};
  return *z;
}

Chart chart_with_pole(const SpherePoint& pole) {
  const Complex qu = pole.u();
  const Complex qv = pole.v();
  const double n = std::sqrt(std::norm(qu) + std::norm(qv));
  return {pole, MoebiusMatrix(std::conj(qu) / n, std::conj(qv) / n, -qv / n, qu / n)};
}

Chart chart_avoiding(std::span<const SpherePoint> points) {
  // Fibonacci spread of candidate poles.
  constexpr int kCandidates = 256;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> sample;
  sample.reserve(points.size());
  for (const auto& p : points) sample.push_back(p.to_r3());
  Vec3 best{0, 0, 1};
  double best_d = -1.0;
  for (int i = 0; i < kCandidates; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / kCandidates;
    const double r = std::sqrt(1.0 - z * z);
    const Vec3 c = {r * std::cos(golden * i), r * std::sin(golden * i), z};
    double d = std::numeric_limits<double>::infinity();
    for (const auto& x : sample) d = std::min(d, dist3(c, x));
    if (d > best_d) {
      best_d = d;
      best = c;
    }
  }
  return chart_with_pole(SpherePoint::from_r3(best));
}

namespace {

double cross(Complex a, Complex b, Complex c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
}

bool segments_cross(Complex p1, Complex p2, Complex q1, Complex q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// First pair of non-adjacent crossing edges of the closed polygon, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(const std::vector<Complex>& poly) {
  const std::size_t n = poly.size();
  if (n < 4) return std::nullopt;
  struct Seg {
    double xmin, xmax, ymin, ymax;
    std::size_t index;
  };
  std::vector<Seg> segs;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = poly[k];
    const Complex b = poly[(k + 1) % n];
    segs.push_back({std::min(a.real(), b.real()), std::max(a.real(), b.real()), std::min(a.imag(), b.imag()),
                    std::max(a.imag(), b.imag()), k});
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) {
    return x.xmin != y.xmin ? x.xmin < y.xmin : x.index < y.index;
  });
  std::vector<const Seg*> active;
  for (const auto& s : segs) {
    std::erase_if(active, [&](const Seg* a) { return a->xmax < s.xmin; });
    for (const Seg* a : active) {
      if (a->ymax < s.ymin || s.ymax < a->ymin) continue;
      const std::size_t i = a->index;
      const std::size_t j = s.index;
      const std::size_t diff = i > j ? i - j : j - i;
      if (diff <= 1 || diff == n - 1) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        return std::make_pair(std::min(i, j), std::max(i, j));
      }
    }
    active.push_back(&s);
  }
  return std::nullopt;
}

double loop_max_gap(const std::vector<SpherePoint>& loop) {
  double gap = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    gap = std::max(gap, chordal_distance(loop[k], loop[(k + 1) % loop.size()]));
  }
  return gap;
}

void require_simple(const CurveModel& curve) {
  std::vector<Complex> poly;
  for (const auto& p : curve.loop) poly.push_back(curve.chart.coordinate(p));
  if (const auto hit = find_self_intersection(poly)) {
    throw CheckFailure("ChainingFailed: chain edges " + std::to_string(hit->first) + " and " +
                       std::to_string(hit->second) +
                       " cross in the chart; the sample is too coarse (increase max_word_length)");
  }
}

}  // namespace

CurveModel build_curve_model(const LimitSetSample& sample, const CurveOptions& options) {
  return build_curve_model(std::span<const SpherePoint>(sample.points), options);
}

CurveModel build_curve_model(std::span<const SpherePoint> points, const CurveOptions& options) {
  const std::size_t n = points.size();
  if (n < 3) throw ValidationError("build_curve_model: need at least 3 points");
  std::vector<Vec3> x;
  x.reserve(n);
  for (const auto& p : points) x.push_back(p.to_r3());

  // Greedy nearest-neighbour tour from the first point.
  std::vector<std::size_t> tour{0};
  std::vector<bool> used(n, false);
  used[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    const Vec3& cur = x[tour.back()];
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = dist3(cur, x[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    tour.push_back(best);
  }

  // Candidate lists for 2-opt.
  const std::size_t kn = std::min<std::size_t>(static_cast<std::size_t>(std::max(options.neighbor_count, 1)), n - 1);
  std::vector<std::vector<std::size_t>> neighbors(n);
  {
    std::vector<std::pair<double, std::size_t>> buf;
    for (std::size_t i = 0; i < n; ++i) {
      buf.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) buf.emplace_back(dist3(x[i], x[j]), j);
      }
      std::partial_sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(kn), buf.end());
      for (std::size_t k = 0; k < kn; ++k) neighbors[i].push_back(buf[k].second);
    }
  }

  CurveModel curve;
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[tour[k]] = k;
  for (int pass = 0; pass < options.max_two_opt_passes; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = tour[i];
      const std::size_t b = tour[(i + 1) % n];
      for (std::size_t c : neighbors[a]) {
        const std::size_t j = pos[c];
        const std::size_t d = tour[(j + 1) % n];
        if (c == b || d == a) continue;
        const double gain = dist3(x[a], x[b]) + dist3(x[c], x[d]) - dist3(x[a], x[c]) - dist3(x[b], x[d]);
        if (gain <= 1e-15) continue;
        const std::size_t lo = std::min(i, j);
        const std::size_t hi = std::max(i, j);
        std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(lo + 1),
                     tour.begin() + static_cast<std::ptrdiff_t>(hi + 1));
        for (std::size_t k = lo + 1; k <= hi; ++k) pos[tour[k]] = k;
        ++curve.two_opt_moves;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  for (std::size_t k : tour) curve.loop.push_back(points[k]);
  curve.max_gap = loop_max_gap(curve.loop);
  curve.chart = chart_avoiding(curve.loop);
  require_simple(curve);
  return curve;
}

CurveModel curve_from_loop(std::vector<SpherePoint> loop) {
  if (loop.size() < 3) throw ValidationError("curve_from_loop: need at least 3 points");
  CurveModel curve;
  curve.loop = std::move(loop);
  curve.max_gap = loop_max_gap(curve.loop);
  curve.chart = chart_avoiding(curve.loop);
  require_simple(curve);
  return curve;
}

CurveModel transform_curve(const CurveModel& curve, const MoebiusMatrix& g) {
  CurveModel out;
  for (const auto& p : curve.loop) out.loop.push_back(moebius_apply(g, p));
  out.max_gap = loop_max_gap(out.loop);
  out.chart = chart_avoiding(out.loop);
  return out;
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Side1: return "side1";
    case Side::Side2: return "side2";
    case Side::OnCurve: return "on-curve";
  }
  return "unknown";
}

const char* to_string(SideAction action) {
  switch (action) {
    case SideAction::Preserves: return "preserves";
    case SideAction::Swaps: return "swaps";
    case SideAction::Mixed: return "mixed";
    case SideAction::Undetermined: return "undetermined";
  }
  return "unknown";
}

SideClassifier::SideClassifier(CurveModel curve, double band_tol)
    : SideClassifier(curve, curve.chart, band_tol) {}

SideClassifier::SideClassifier(CurveModel curve, Chart chart, double band_tol)
    : curve_(std::move(curve)), chart_(std::move(chart)), band_tol_(band_tol) {
  if (curve_.loop.size() < 3) throw ValidationError("SideClassifier: curve needs at least 3 points");
  double area = 0.0;
  for (const auto& p : curve_.loop) {
    planar_.push_back(chart_.coordinate(p));
    spatial_.push_back(p.to_r3());
  }
  for (std::size_t k = 0; k < planar_.size(); ++k) {
    const Complex a = planar_[k];
    const Complex b = planar_[(k + 1) % planar_.size()];
    area += a.real() * b.imag() - b.real() * a.imag();
  }
  if (!std::isfinite(area)) throw ValidationError("SideClassifier: chart pole lies on the curve");
  counterclockwise_ = area > 0.0;
}

int SideClassifier::winding(Complex z) const {
  int w = 0;
  const std::size_t n = planar_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = planar_[k];
    const Complex b = planar_[(k + 1) % n];
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross(a, b, z) > 0) ++w;
    } else if (b.imag() <= z.imag() && cross(a, b, z) < 0) {
      --w;
    }
  }
  return w;
}

double SideClassifier::distance_to_curve(const SpherePoint& p) const {
  const Vec3 x = p.to_r3();
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = spatial_.size();
  for (std::size_t k = 0; k < n; ++k) d = std::min(d, segment_distance(x, spatial_[k], spatial_[(k + 1) % n]));
  return d;
}

Side SideClassifier::classify(const SpherePoint& p) const {
  if (distance_to_curve(p) <= band_tol_) return Side::OnCurve;
  const Complex z = chart_.coordinate(p);
  const bool inside = std::isfinite(z.real()) && winding(z) != 0;
  return inside == counterclockwise_ ? Side::Side1 : Side::Side2;
}

double SideClassifier::signed_margin(const SpherePoint& p, Side expected) const {
  const double d = distance_to_curve(p);
  return classify(p) == expected ? d : -d;
}

double curve_invariance_defect(const SideClassifier& classifier, const MoebiusMatrix& g, std::size_t max_points) {
  const auto& loop = classifier.curve().loop;
  const std::size_t stride = std::max<std::size_t>(1, (loop.size() + max_points - 1) / std::max<std::size_t>(max_points, 1));
  double worst = 0.0;
  for (std::size_t k = 0; k < loop.size(); k += stride) {
    worst = std::max(worst, classifier.distance_to_curve(moebius_apply(g, loop[k])));
  }
  return worst;
}

namespace {

// Uniform point on the sphere from two 53-bit uniforms; portable across
// standard libraries, unlike the <random> distributions.
SpherePoint uniform_sphere_point(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double z = 2.0 * u - 1.0;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * std::numbers::pi * v;
  return SpherePoint::from_r3({r * std::cos(phi), r * std::sin(phi), z});
}

}  // namespace

std::vector<SpherePoint> farthest_point_probes(const std::function<bool(const SpherePoint&)>& in_region,
                                               const std::function<double(const SpherePoint&)>& distance,
                                               const ProbeOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<SpherePoint> cands;
  std::vector<double> score;
  for (int k = 0; k < options.candidates; ++k) {
    const auto p = uniform_sphere_point(rng);
    if (!in_region(p)) continue;
    const double d = distance(p);
    if (d < options.min_clearance) continue;
    cands.push_back(p);
    score.push_back(d);
  }
  std::vector<SpherePoint> picked;
  std::vector<bool> taken(cands.size(), false);
  const std::size_t want = std::min(cands.size(), static_cast<std::size_t>(std::max(options.per_region, 0)));
  while (picked.size() < want) {
    std::size_t best = cands.size();
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (!taken[k] && (best == cands.size() || score[k] > score[best])) best = k;
    }
    taken[best] = true;
    picked.push_back(cands[best]);
    const Vec3 b = cands[best].to_r3();
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (!taken[k]) score[k] = std::min(score[k], dist3(cands[k].to_r3(), b));
    }
  }
  return picked;
}

SideProbes probe_sides(const SideClassifier& classifier, const ProbeOptions& options) {
  // Classify every candidate once.
  std::mt19937_64 rng(options.seed);
  struct Cand {
    SpherePoint p;
    double d;
    Side side;
  };
  std::vector<Cand> cands;
  for (int k = 0; k < options.candidates; ++k) {
    const auto p = uniform_sphere_point(rng);
    const double d = classifier.distance_to_curve(p);
    if (d < std::max(options.min_clearance, classifier.band_tol())) continue;
    cands.push_back({p, d, classifier.classify(p)});
  }
  SideProbes out;
  for (Side side : {Side::Side1, Side::Side2}) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (cands[k].side == side) idx.push_back(k);
    }
    std::vector<double> score;
    for (auto k : idx) score.push_back(cands[k].d);
    std::vector<bool> taken(idx.size(), false);
    auto& dst = side == Side::Side1 ? out.side1 : out.side2;
    const std::size_t want = std::min(idx.size(), static_cast<std::size_t>(std::max(options.per_region, 0)));
    while (dst.size() < want) {
      std::size_t best = idx.size();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (!taken[k] && (best == idx.size() || score[k] > score[best])) best = k;
      }
      taken[best] = true;
      dst.push_back(cands[idx[best]].p);
      const Vec3 b = cands[idx[best]].p.to_r3();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (!taken[k]) score[k] = std::min(score[k], dist3(cands[idx[k]].p.to_r3(), b));
      }
    }
  }
  return out;
}

namespace {

// Margin of an image: positive distance when it lies where expected,
// negative when not, nullopt when ambiguous (inside a band).
using MarginFn = std::function<std::optional<double>(const SpherePoint&)>;

ConditionResult map_condition(std::string name, std::string description, std::span<const SpherePoint> probes,
                              std::span<const MoebiusMatrix> maps, const MarginFn& margin) {
  ConditionResult r;
  r.name = std::move(name);
  r.description = std::move(description);
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& g : maps) {
    for (const auto& p : probes) {
      const auto img = moebius_apply(g, p);
      const auto m = margin(img);
      if (!m) {
        ++r.ambiguous;
        continue;
      }
      ++r.checked;
      if (*m < r.worst_margin) r.worst_margin = *m;
      if (*m < 0.0 && r.passes) {
        r.passes = false;
        r.witness = p;
        r.witness_image = img;
      }
    }
  }
  if (r.checked == 0) {
    r.vacuous = true;
    r.worst_margin = 0.0;
    r.note = maps.empty() ? "empty element sample" : "no unambiguous probe images";
  }
  return r;
}

MarginFn side_margin(const SideClassifier& c, Side expected) {
  return [&c, expected](const SpherePoint& p) -> std::optional<double> {
    const double d = c.distance_to_curve(p);
    if (d <= c.band_tol()) return std::nullopt;
    return c.classify(p) == expected ? d : -d;
  };
}

ConditionResult invariance_condition(std::string name, const SideClassifier& c, const MoebiusMatrix& a,
                                     double curve_tol) {
  ConditionResult r;
  r.name = std::move(name);
  r.description = "A and A^-1 map the sampled curve to within curve_tol of itself";
  const double defect = std::max(curve_invariance_defect(c, a), curve_invariance_defect(c, a.inverse()));
  r.checked = 2 * std::min<std::size_t>(c.curve().loop.size(), 2000);
  r.worst_margin = curve_tol - defect;
  r.passes = defect <= curve_tol;
  r.note = "max distance of image to curve: " + std::to_string(defect);
  return r;
}

struct ActionCount {
  std::size_t preserve = 0, swap = 0, ambiguous = 0;
};

void count_action(const SideClassifier& c, const MoebiusMatrix& a, std::span<const SpherePoint> probes, Side from,
                  ActionCount& count) {
  const Side other = from == Side::Side1 ? Side::Side2 : Side::Side1;
  for (const auto& p : probes) {
    const Side s = c.classify(moebius_apply(a, p));
    if (s == from) ++count.preserve;
    else if (s == other) ++count.swap;
    else ++count.ambiguous;
  }
}

ConditionResult action_condition(const ActionCount& count, SideAction& action) {
  ConditionResult r;
  r.name = "side_action";
  r.description = "whether A preserves or swaps the two sides (measured, not assumed)";
  r.checked = count.preserve + count.swap;
  r.ambiguous = count.ambiguous;
  if (r.checked == 0) {
    action = SideAction::Undetermined;
    r.vacuous = true;
  } else if (count.swap == 0) {
    action = SideAction::Preserves;
  } else if (count.preserve == 0) {
    action = SideAction::Swaps;
  } else {
    action = SideAction::Mixed;
    r.passes = false;
  }
  r.note = std::string(to_string(action)) + " (" + std::to_string(count.preserve) + " preserved, " +
           std::to_string(count.swap) + " swapped)";
  return r;
}

void finish(MaskitReport& report) {
  report.passes = true;
  for (const auto& c : report.conditions) report.passes = report.passes && c.passes;
}

}  // namespace

MaskitReport check_precise_invariance_amalgam(const SideClassifier& classifier, std::span<const MoebiusMatrix> h_sample,
                                              std::span<const MoebiusMatrix> g1_minus_h,
                                              std::span<const MoebiusMatrix> g2_minus_h, const MoebiusMatrix& a,
                                              const MaskitOptions& options) {
  MaskitReport report;
  report.curve_points = classifier.curve().loop.size();
  report.max_gap = classifier.curve().max_gap;
  report.curve_tol = options.curve_tol > 0.0 ? options.curve_tol : report.max_gap;
  const auto probes = probe_sides(classifier, options.probes);
  report.probes_side1 = probes.side1.size();
  report.probes_side2 = probes.side2.size();

  auto i1 = map_condition("i_side1", "h(B_1) in B_1 for h in the H sample", probes.side1, h_sample,
                          side_margin(classifier, Side::Side1));
  auto i2 = map_condition("i_side2", "h(B_2) in B_2 for h in the H sample", probes.side2, h_sample,
                          side_margin(classifier, Side::Side2));
  report.conditions.push_back(std::move(i1));
  report.conditions.push_back(std::move(i2));
  report.conditions.push_back(map_condition("ii", "g(B_1) in B_2 for g in the G_1 - H sample", probes.side1,
                                            g1_minus_h, side_margin(classifier, Side::Side2)));
  report.conditions.push_back(invariance_condition("iii", classifier, a, report.curve_tol));

  ActionCount count;
  count_action(classifier, a, probes.side1, Side::Side1, count);
  count_action(classifier, a, probes.side2, Side::Side2, count);
  auto iv = action_condition(count, report.a_action);
  iv.name = "iv";
  report.conditions.push_back(std::move(iv));

  std::vector<MoebiusMatrix> conjugated;
  for (const auto& g : g2_minus_h) conjugated.push_back(conjugate(a, g));
  report.conditions.push_back(map_condition("v", "A g A^-1 (B_2) in B_1 for g in the G_2 - H sample", probes.side2,
                                            conjugated, side_margin(classifier, Side::Side1)));
  finish(report);
  return report;
}

MaskitReport check_precise_invariance_hnn(const CurveModel& curve_w, const MoebiusMatrix& f, const MoebiusMatrix& a,
                                          std::span<const MoebiusMatrix> h_sample,
                                          std::span<const MoebiusMatrix> g0_minus_h, const MaskitOptions& options) {
  MaskitReport report;
  const SideClassifier cw(curve_w, options.band_tol);
  const CurveModel curve_w2 = transform_curve(curve_w, f);
  const SideClassifier cw2(curve_w2, options.band_tol);
  report.curve_points = curve_w.loop.size();
  report.max_gap = curve_w.max_gap;
  report.curve_tol = options.curve_tol > 0.0 ? options.curve_tol : report.max_gap;

  double sep = std::numeric_limits<double>::infinity();
  for (const auto& p : curve_w.loop) sep = std::min(sep, cw2.distance_to_curve(p));
  for (const auto& p : curve_w2.loop) sep = std::min(sep, cw.distance_to_curve(p));
  report.curve_separation = sep;
  if (!(sep > options.sep_tol)) {
    throw CheckFailure("CurvesIntersect: W and f(W) come within " + std::to_string(sep) + " (sep_tol " +
                       std::to_string(options.sep_tol) + ")");
  }

  // Sides of W facing W_2 and of W_2 facing W.
  const Side w_toward = cw.classify(curve_w2.loop.front());
  const Side w2_toward = cw2.classify(curve_w.loop.front());
  if (w_toward == Side::OnCurve || w2_toward == Side::OnCurve) {
    throw CheckFailure("region identification failed: curves too close to label their sides");
  }
  const auto opposite = [](Side s) { return s == Side::Side1 ? Side::Side2 : Side::Side1; };
  const Side b1_side = opposite(w_toward);
  const Side b2_side = opposite(w2_toward);

  const auto boundary_distance = [&](const SpherePoint& p) {
    return std::min(cw.distance_to_curve(p), cw2.distance_to_curve(p));
  };
  const auto in_b1 = [&](const SpherePoint& p) { return cw.classify(p) == b1_side; };
  const auto in_b2 = [&](const SpherePoint& p) { return cw2.classify(p) == b2_side; };
  const auto in_r = [&](const SpherePoint& p) {
    return cw.classify(p) == w_toward && cw2.classify(p) == w2_toward;
  };
  ProbeOptions po = options.probes;
  po.min_clearance = std::max(po.min_clearance, options.band_tol);
  const auto b1 = farthest_point_probes(in_b1, boundary_distance, po);
  const auto b2 = farthest_point_probes(in_b2, boundary_distance, po);
  const auto r = farthest_point_probes(in_r, boundary_distance, po);
  report.probes_side1 = b1.size();
  report.probes_side2 = b2.size();
  report.probes_region_r = r.size();
  std::vector<SpherePoint> r_b2 = r;
  r_b2.insert(r_b2.end(), b2.begin(), b2.end());

  ConditionResult disjoint;
  disjoint.name = "disjoint";
  disjoint.description = "W and W_2 = f(W) are disjoint";
  disjoint.worst_margin = sep - options.sep_tol;
  disjoint.checked = curve_w.loop.size() + curve_w2.loop.size();
  disjoint.note = "min chordal distance " + std::to_string(sep);
  report.conditions.push_back(std::move(disjoint));

  const MoebiusMatrix fs[] = {f};
  const MoebiusMatrix fas[] = {f * a};
  report.conditions.push_back(
      map_condition("f", "f(R u B_2) in B_2", r_b2, fs, side_margin(cw2, b2_side)));
  report.conditions.push_back(
      map_condition("fA", "fA(R u B_2) in B_2", r_b2, fas, side_margin(cw2, b2_side)));
  report.conditions.push_back(
      map_condition("h", "h(B_1) in B_1 for h in the H sample", b1, h_sample, side_margin(cw, b1_side)));
  report.conditions.push_back(map_condition("g0", "g(B_1) off B_1 for g in the G_0 - H sample", b1, g0_minus_h,
                                            side_margin(cw, w_toward)));
  report.conditions.push_back(invariance_condition("A_invariance", cw, a, report.curve_tol));

  ActionCount count;
  count_action(cw, a, b1, b1_side, count);
  count_action(cw, a, r_b2, w_toward, count);
  report.conditions.push_back(action_condition(count, report.a_action));
  finish(report);
  return report;
}

std::string render_svg(const SideClassifier& classifier, const SideProbes& probes, const CurveModel* second_curve) {
  const Chart& chart = classifier.chart();
  std::vector<Complex> curve1;
  for (const auto& p : classifier.curve().loop) curve1.push_back(chart.coordinate(p));
  std::vector<Complex> curve2;
  if (second_curve) {
    for (const auto& p : second_curve->loop) curve2.push_back(chart.coordinate(p));
  }
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto* c : {&curve1, &curve2}) {
    for (Complex z : *c) {
      if (!std::isfinite(z.real())) continue;
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  }
  const double pad = 0.25 * std::max({xmax - xmin, ymax - ymin, 1e-9});
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  const double size = 800.0;
  const double scale = size / std::max(xmax - xmin, ymax - ymin);
  char buf[160];
  auto px = [&](Complex z) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", (z.real() - xmin) * scale, (ymax - z.imag()) * scale);
    return std::string(buf);
  };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  auto polyline = [&](const std::vector<Complex>& pts, const char* colour) {
    out += "<polygon fill=\"none\" stroke=\"";
    out += colour;
    out += "\" stroke-width=\"1\" points=\"";
    for (Complex z : pts) {
      if (std::isfinite(z.real())) out += px(z) + " ";
    }
    out += "\"/>\n";
  };
  polyline(curve1, "black");
  if (second_curve) polyline(curve2, "gray");
  auto dots = [&](const std::vector<SpherePoint>& pts, const char* colour) {
    for (const auto& p : pts) {
      const Complex z = chart.coordinate(p);
      if (!std::isfinite(z.real()) || z.real() < xmin || z.real() > xmax || z.imag() < ymin || z.imag() > ymax) {
        continue;
      }
      const auto xy = px(z);
      const auto comma = xy.find(',');
      out += "<circle cx=\"" + xy.substr(0, comma) + "\" cy=\"" + xy.substr(comma + 1) + "\" r=\"3\" fill=\"" +
             colour + "\"/>\n";
    }
  };
  dots(probes.side1, "#1f77b4");
  dots(probes.side2, "#d62728");
  out += "</svg>\n";
  return out;
}

}  // namespace mutkit
