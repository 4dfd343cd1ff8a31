// Acceptance runner: one PASS/FAIL line per criterion, with runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mutkit/cli.hpp"
#include "mutkit/dilog.hpp"
#include "mutkit/errors.hpp"
#include "mutkit/gluing.hpp"
#include "mutkit/io.hpp"
#include "mutkit/limit_set.hpp"
#include "mutkit/moebius.hpp"
#include "mutkit/representation.hpp"
#include "mutkit/volume.hpp"

using namespace mutkit;

namespace {

const std::string kFixtures = MUTKIT_FIXTURES;
const Complex kI(0, 1);
constexpr double kFigureEight = 2.029883212819;

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Criterion {
  std::string name;
  double budget_s;  // 0 means no runtime bound
  std::function<Outcome()> body;
};

Outcome conjugator_pipeline() {
  Outcome o;
  struct Case {
    const char* file;
    MoebiusMatrix expected;
  };
  const std::vector<Case> cases = {{"sanov_involution.mut", MoebiusMatrix(kI, 0, 0, -kI)},
                                   {"sanov_swap.mut", MoebiusMatrix(0, kI, kI, 0)}};
  for (const auto& c : cases) {
    const auto spec = solve_assumption(load_mutation(fx(c.file)).spec);
    const auto& a = *spec.conjugator;
    const double dist = std::min(distance(a, c.expected), distance(a, -1.0 * c.expected));
    o.require(dist < 1e-10, std::string(c.file) + " A off by " + num(dist));
    const auto imgs = surface_images(spec);
    double residual = 0.0;
    for (std::size_t j = 0; j < imgs.source.size(); ++j) {
      residual = std::max(residual, distance(imgs.target[j], conjugate(a, imgs.source[j])));
    }
    o.require(residual < 1e-10, std::string(c.file) + " residual " + num(residual));
    const double sq = distance(a * a, -1.0 * MoebiusMatrix::identity());
    const double fourth = distance(power(a, 4), MoebiusMatrix::identity());
    o.require(sq < 1e-10 && fourth < 1e-10, std::string(c.file) + " A^2/A^4 " + num(sq) + "/" + num(fourth));
    o.require(spec.certificate && spec.certificate->sign == -1, std::string(c.file) + " certificate sign");
  }
  return o;
}

Outcome conjugator_round_trip() {
  Outcome o;
  std::mt19937_64 gen(20240);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_int_distribution<int> order(2, 7);
  auto random_matrix = [&] {
    for (;;) {
      const Complex a(n(gen), n(gen)), b(n(gen), n(gen)), c(n(gen), n(gen)), d(n(gen), n(gen));
      if (std::abs(a * d - b * c) > 0.1) return MoebiusMatrix::normalized(a, b, c, d);
    }
  };
  constexpr double kPi = 3.14159265358979323846;
  int worst_case = -1;
  double worst = 0.0;
  int certificate_mismatches = 0;
  for (int k = 0; k < 100; ++k) {
    std::vector<MoebiusMatrix> src;
    for (;;) {
      src = {random_matrix(), random_matrix()};
      // Nonelementary: the commutator is not parabolic or trivial.
      if (std::abs(commutator(src[0], src[1]).trace() - Complex(2)) > 1e-3) break;
    }
    const int m = order(gen);
    const auto p = random_matrix();
    const auto g = conjugate(p, MoebiusMatrix(std::polar(1.0, kPi / m), 0, 0, std::polar(1.0, -kPi / m)));
    const std::vector<MoebiusMatrix> dst = {conjugate(g, src[0]), conjugate(g, src[1])};
    const auto sol = solve_conjugator(src, dst);
    double residual = 0.0;
    for (int j = 0; j < 2; ++j) residual = std::max(residual, distance(dst[j], conjugate(sol.conjugator, src[j])));
    if (residual > worst) {
      worst = residual;
      worst_case = k;
    }
    // The certificate must hold at the planted order and at no smaller one.
    bool matches = false;
    try {
      const auto cert = finite_order_certificate(sol.conjugator, m, 1e-8);
      matches = cert.double_order_residual < 1e-8;
    } catch (const ConjugatorError&) {
    }
    for (int d = 1; d < m && matches; ++d) {
      try {
        finite_order_certificate(sol.conjugator, d, 1e-8);
        matches = false;
      } catch (const ConjugatorError&) {
      }
    }
    if (!matches) ++certificate_mismatches;
  }
  o.require(worst < 1e-8, "worst residual " + num(worst) + " at instance " + std::to_string(worst_case));
  o.require(certificate_mismatches == 0, std::to_string(certificate_mismatches) + " certificate mismatches");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst residual ") + num(worst);
  return o;
}

Outcome volume_engine() {
  Outcome o;
  const auto tri = load_triangulation(fx("figure_eight.tri"));
  const auto rep = load_representation(fx("figure_eight.rep"));
  const auto mv = manifold_volume(tri, rep);
  o.require(mv.shapes.has_value(), "gluing solver did not converge");
  if (!mv.shapes) return o;
  const Complex omega(0.5, std::sqrt(3.0) / 2);
  double shape_err = 0.0;
  for (const auto& z : mv.shapes->shapes) shape_err = std::max(shape_err, std::abs(z - omega));
  o.require(shape_err < 1e-10, "shape error " + num(shape_err));
  const double gluing = mv.shapes->volume;
  const double cycle = mv.cycle_volume;
  o.require(std::abs(gluing - kFigureEight) < 1e-9, "gluing volume " + std::to_string(gluing));
  o.require(std::abs(cycle - kFigureEight) < 1e-9, "cycle volume " + std::to_string(cycle));
  o.require(std::abs(gluing - cycle) < 1e-9, "paths differ by " + num(std::abs(gluing - cycle)));
  char buf[64];
  std::snprintf(buf, sizeof buf, "vol %.12f, paths differ by %.1e", cycle, std::abs(gluing - cycle));
  if (o.pass) o.detail = buf;
  return o;
}

Outcome dilog_suite() {
  Outcome o;
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto upper = [&] {
    for (;;) {
      const Complex z(3 * u(gen), 3 * std::abs(u(gen)));
      if (z.imag() > 1e-3) return z;
    }
  };
  auto generic = [&] {
    for (;;) {
      const Complex z(4 * u(gen), 4 * u(gen));
      if (std::abs(z) > 1e-3 && std::abs(1.0 - z) > 1e-3 && std::abs(z.imag()) > 1e-3) return z;
    }
  };
  double five = 0.0, six = 0.0, real = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Complex x = upper(), y = upper();
    const Complex xy = 1.0 - x * y;
    five = std::max(five, std::abs(bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / xy) +
                                   bloch_wigner(xy) + bloch_wigner((1.0 - y) / xy)));
  }
  for (int k = 0; k < 1000; ++k) {
    const Complex z = generic();
    const double d = bloch_wigner(z);
    six = std::max({six, std::abs(bloch_wigner(1.0 - 1.0 / z) - d), std::abs(bloch_wigner(1.0 / (1.0 - z)) - d),
                    std::abs(bloch_wigner(1.0 / z) + d), std::abs(bloch_wigner(1.0 - z) + d),
                    std::abs(bloch_wigner(z / (z - 1.0)) + d), std::abs(bloch_wigner(std::conj(z)) + d)});
  }
  for (int k = 0; k < 1000; ++k) real = std::max(real, std::abs(bloch_wigner(50.0 * u(gen))));
  o.require(five < 1e-10, "five-term " + num(five));
  o.require(six < 1e-10, "symmetry " + num(six));
  o.require(real < 1e-10, "reality " + num(real));
  if (o.pass) o.detail = "max defects " + num(five) + ", " + num(six) + ", " + num(real);
  return o;
}

Outcome product_and_cover() {
  Outcome o;
  const auto tri = load_triangulation(fx("figure_eight.tri"));
  const auto rep = load_representation(fx("figure_eight.rep"));
  const auto developed = develop_cycle(tri, rep);

  // Surface: boundary of a tetrahedron on four distinct developed vertices.
  std::vector<SpherePoint> pts;
  for (const auto& s : developed.cycle.simplices) {
    for (const auto& v : s.vertices) {
      bool fresh = true;
      for (const auto& q : pts) fresh = fresh && chordal_distance(q, v) > 1e-6;
      if (fresh && pts.size() < 4) pts.push_back(v);
    }
  }
  SurfaceCycle surface;
  surface.points = pts;
  surface.triangles = {{{1, 2, 3}, 1}, {{0, 2, 3}, -1}, {{0, 1, 3}, 1}, {{0, 1, 2}, -1}};
  double worst_product = 0.0;
  for (int steps : {1, 2, 4, 8}) {
    worst_product = std::max(worst_product, std::abs(product_cycle_volume(surface, MoebiusMatrix::identity(), 1, steps)));
  }
  o.require(pts.size() == 4, "fewer than four distinct developed vertices");
  o.require(worst_product < 1e-8, "identity product volume " + num(worst_product));

  const double base = volume_of_decorated_cycle(developed.cycle).volume;
  const MoebiusMatrix a(kI, 0, 0, -kI);
  double worst_cover = 0.0;
  for (int m : {1, 2, 3}) {
    const int degree = 2 * m;
    std::vector<DecoratedCycle> copies;
    for (int k = 0; k < degree; ++k) copies.push_back(transform_cycle(developed.cycle, power(a, k)));
    const auto cover = disjoint_union(copies);
    const auto report = cover_volume_check(base, degree, cover, 1e-10);
    worst_cover = std::max(worst_cover, report.difference);
    o.require(report.passes, "degree " + std::to_string(degree) + " difference " + num(report.difference));
  }
  if (o.pass) o.detail = "|v| " + num(worst_product) + ", cover difference " + num(worst_cover);
  return o;
}

JobConfig job(std::string command, std::vector<std::string> inputs) {
  JobConfig c;
  c.command = std::move(command);
  c.inputs = std::move(inputs);
  c.write_report = false;
  return c;
}

Outcome mutation_smoke() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> pairs = {{"figure_eight.rep", "figure_eight_conjugated.rep"},
                                                                  {"figure_eight.rep", "figure_eight.rep"}};
  for (const auto& [m, mt] : pairs) {
    const auto r = run(job("verify-mutation", {fx("figure_eight.tri"), fx(m), fx("figure_eight.tri"), fx(mt)}));
    const double diff = r.report.value("difference", 1.0);
    o.require(r.exit_code == 0, mt + " exit " + std::to_string(r.exit_code));
    o.require(diff < 1e-9, mt + " difference " + num(diff));
  }
  return o;
}

Outcome maskit_checks() {
  Outcome o;
  const auto rep = load_representation(fx("sanov.rep"));
  const std::vector<MoebiusMatrix> gens(rep.images().begin(), rep.images().end());

  const auto s6 = sample_limit_set(gens, 6);
  double off_circle = 0.0;
  for (const auto& p : s6.points) off_circle = std::max(off_circle, std::abs(p.to_r3()[1]));
  o.require(off_circle < 1e-8, "distance from real circle " + num(off_circle));

  const auto s8 = sample_limit_set(gens, 8);
  const SideClassifier classifier(build_curve_model(s8));
  const double gap = classifier.curve().max_gap;
  const MoebiusMatrix negate(kI, 0, 0, -kI), swap(0, kI, kI, 0), neg_inverse(0, -1, 1, 0);
  for (const auto& [label, a] : {std::pair{"diag(i,-i)", negate}, std::pair{"[[0,i],[i,0]]", swap}}) {
    const double defect = curve_invariance_defect(classifier, a);
    o.require(defect <= gap, std::string(label) + " moves W by " + num(defect));
  }

  std::vector<MoebiusMatrix> h;
  for (const auto& w : enumerate_reduced_words(2, 2)) h.push_back(evaluate_word(gens, w));
  const auto keep = check_precise_invariance_amalgam(classifier, h, {}, {}, neg_inverse);
  const auto flip = check_precise_invariance_amalgam(classifier, h, {}, {}, negate);
  o.require(keep.a_action == SideAction::Preserves, "-1/z does not preserve sides");
  o.require(flip.a_action == SideAction::Swaps, "-z does not swap sides");
  if (o.pass) o.detail = std::to_string(s8.points.size()) + " points at length 8, gap " + num(gap);
  return o;
}

Outcome jorgensen_suite() {
  Outcome o;
  const auto sanov = jorgensen_test(MoebiusMatrix(1, 2, 0, 1), MoebiusMatrix(1, 0, 2, 1));
  o.require(sanov.passes && std::abs(sanov.lhs - 16.0) < 1e-12, "Sanov lhs " + num(sanov.lhs));
  const double theta = 0.05;
  const MoebiusMatrix rotation(std::polar(1.0, theta / 2), 0, 0, std::polar(1.0, -theta / 2));
  const auto small = jorgensen_test(rotation, MoebiusMatrix(2, 1, 1, 1));
  o.require(!small.passes, "small rotation lhs " + num(small.lhs) + " passes");
  if (o.pass) o.detail = "Sanov lhs 16, rotation lhs " + num(small.lhs);
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  std::vector<JobConfig> jobs;
  for (const char* m : {"sanov_involution.mut", "sanov_swap.mut", "sanov_negative_inverse.mut",
                        "sanov_identity.mut", "hnn_circle.mut"}) {
    jobs.push_back(job("solve-conjugator", {fx(m)}));
    jobs.push_back(job("build-mutant", {fx(m)}));
    jobs.push_back(job("check-maskit", {fx(m)}));
    jobs.push_back(job("classify", {fx(m)}));
  }
  jobs.push_back(job("volume", {fx("figure_eight.tri"), fx("figure_eight.rep")}));
  jobs.push_back(job("volume", {fx("figure_eight.tri"), fx("figure_eight_conjugated.rep")}));
  jobs.push_back(job("verify-mutation", {fx("figure_eight.tri"), fx("figure_eight.rep"), fx("figure_eight.tri"),
                                         fx("figure_eight_conjugated.rep")}));
  jobs.push_back(job("cover-check", {fx("figure_eight.tri"), fx("figure_eight.rep")}));
  auto with_mutation = jobs.back();
  with_mutation.mutation = fx("sanov_involution.mut");
  jobs.push_back(with_mutation);
  for (const char* f : {"figure_eight.tri", "figure_eight.rep", "sanov.rep", "sanov_extended.pres",
                        "invalid/unknown_generator.pres", "invalid/non_involutive.tri"}) {
    jobs.push_back(job("validate", {fx(f)}));
  }
  jobs.push_back(job("volume", {fx("single_tet_inconsistent.tri"), fx("figure_eight.rep")}));

  const auto root = std::filesystem::temp_directory_path() / "mutkit-acceptance";
  std::filesystem::remove_all(root);
  int mismatches = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    std::string texts[2];
    for (int pass = 0; pass < 2; ++pass) {
      auto c = jobs[k];
      c.write_report = true;
      c.seed = 11;
      c.out_dir = (root / ("run" + std::to_string(pass))).string();
      const auto r = run(c);
      texts[pass] = r.report_path.empty() ? std::string() : slurp(r.report_path);
      o.require(!texts[pass].empty(), c.command + " wrote no report");
    }
    if (texts[0] != texts[1]) {
      ++mismatches;
      o.require(false, jobs[k].command + " " + jobs[k].inputs.front() + " differs between runs");
    }
  }
  std::filesystem::remove_all(root);
  if (o.pass) o.detail = std::to_string(jobs.size()) + " jobs, byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"conjugator pipeline on Sanov fixtures", 1.0, conjugator_pipeline},
      {"conjugator round trip and planted finite order (100 instances)", 10.0, conjugator_round_trip},
      {"figure-eight volume by gluing and cycle paths", 1.0, volume_engine},
      {"dilogarithm identities (1000 inputs each)", 5.0, dilog_suite},
      {"product cycle vanishing and cover multiplicativity", 0.0, product_and_cover},
      {"verify-mutation on conjugated and identity pairs", 0.0, mutation_smoke},
      {"Maskit sampled checks on the Fuchsian fixture", 30.0, maskit_checks},
      {"Jorgensen inequality pass and failure", 0.0, jorgensen_suite},
      {"CLI reports byte-identical across runs", 0.0, determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& c = criteria[k];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && elapsed > c.budget_s) {
      o.require(false, "runtime " + num(elapsed) + " s over budget " + num(c.budget_s) + " s");
    }
    if (!o.pass) ++failures;
    std::printf("%s  [%zu] %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", k + 1, c.name.c_str(), elapsed,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
