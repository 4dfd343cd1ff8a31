#include "mutkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "mutkit/dilog.hpp"
#include "mutkit/errors.hpp"
#include "mutkit/io.hpp"
#include "mutkit/limit_set.hpp"
#include "mutkit/representation.hpp"
#include "mutkit/volume.hpp"

namespace mutkit {

using json = nlohmann::ordered_json;

namespace {

constexpr double kRepTol = 1e-8;
constexpr double kVolumeTol = 1e-9;
constexpr double kCoverTol = 1e-10;
constexpr double kProductTol = 1e-8;
constexpr double kChainTol = 1e-8;

double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

// Volumes are printed with 12 decimals.
double fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  const double v = std::strtod(buf, nullptr);
  return v == 0.0 ? 0.0 : v;
}

json point_json(const SpherePoint& p) {
  const auto z = p.affine();
  if (!z || std::abs(*z) > 1e15) return "inf";
  return json::array({sig12(z->real()), sig12(z->imag())});
}

json complex_json(Complex z) { return json::array({sig12(z.real()), sig12(z.imag())}); }

struct Job {
  const JobConfig& config;
  json report;
  json checks = json::array();
  bool all_pass = true;

  void check(const std::string& name, bool passes, double margin, const std::string& note = "") {
    json c;
    c["name"] = name;
    c["passes"] = passes;
    c["margin"] = sig12(margin);
    if (!note.empty()) c["note"] = note;
    checks.push_back(std::move(c));
    all_pass = all_pass && passes;
  }

  void require_inputs(std::size_t n, const char* usage) const {
    if (config.inputs.size() != n) throw ValidationError(std::string("usage: ") + usage);
  }

  RepresentationTolerances rep_tolerances(LiftMode file_lift) const {
    RepresentationTolerances t;
    t.residual = kRepTol;
    t.lift = config.strict_sl_lift ? LiftMode::Strict : file_lift;
    return t;
  }

  // Residual check on load; refuses bad files unless --force.
  void check_residuals(const MatrixRepresentation& rep, const RepresentationTolerances& tol, const std::string& label) {
    const auto res = relator_residuals(rep, tol);
    json r;
    r["lift"] = to_string(res.mode);
    r["max_residual"] = sig12(res.max_residual);
    r["ok"] = res.ok;
    report["residuals"][label] = r;
    if (!res.ok && !config.force) {
      throw ValidationError(label + ": relator residual " + std::to_string(res.max_residual) + " exceeds rep_tol " +
                            std::to_string(tol.residual) + " (" + to_string(res.mode) + "); use --force to override");
    }
  }

  MutationFile load_mutation_checked(const std::string& path) {
    auto file = load_mutation(path);
    file.spec.tolerances = rep_tolerances(file.spec.tolerances.lift);
    check_residuals(file.spec.ambient, file.spec.tolerances, "ambient");
    return file;
  }

  MatrixRepresentation load_rep_checked(const std::string& path, const std::string& label) {
    LiftMode lift = LiftMode::Projective;
    auto rep = load_representation(path, &lift);
    check_residuals(rep, rep_tolerances(lift), label);
    return rep;
  }
};

json conjugator_json(const MutationSpec& spec) {
  json j;
  const auto& a = *spec.conjugator;
  j["A"] = format_matrix(a);
  const auto cls = classify(a);
  j["kind"] = to_string(cls.kind);
  j["trace"] = complex_json(cls.trace);
  const auto& d = *spec.diagnostics;
  json diag;
  diag["nullspace_dimension"] = d.nullspace_dimension;
  json sv = json::array();
  for (double s : d.relative_singular_values) sv.push_back(sig12(s));
  diag["relative_singular_values"] = sv;
  diag["smallest_retained"] = sig12(d.smallest_retained);
  diag["largest_discarded"] = sig12(d.largest_discarded);
  diag["conjugation_residual"] = sig12(d.residual);
  diag["residual_warning"] = d.residual_warning;
  j["diagnostics"] = diag;
  const auto& c = *spec.certificate;
  json cert;
  cert["m"] = spec.inclusion.order_m;
  cert["sign"] = c.sign;
  cert["residual"] = sig12(c.residual);
  cert["A^2m_residual"] = sig12(c.double_order_residual);
  j["certificate"] = cert;
  return j;
}

// max_j |A^m s_j A^-m - s_j|
double power_commutation(const MutationSpec& spec) {
  const auto am = power(*spec.conjugator, spec.inclusion.order_m);
  double worst = 0.0;
  for (const auto& s : surface_images(spec).source) worst = std::max(worst, distance(conjugate(am, s), s));
  return worst;
}

MutationSpec solve(Job& job, const MutationFile& file) {
  auto spec = solve_assumption(file.spec);
  job.report["conjugator"] = conjugator_json(spec);
  job.check("conjugation_residual", !spec.diagnostics->residual_warning,
            MoebiusTolerances{}.residual_warning - spec.diagnostics->residual);
  job.check("finite_order_certificate", true, 1e-10 - spec.certificate->residual,
            "A^" + std::to_string(spec.inclusion.order_m) + " = " + (spec.certificate->sign > 0 ? "+1" : "-1"));
  const double chain = power_commutation(spec);
  job.check("power_commutation", chain < kChainTol, kChainTol - chain);
  return spec;
}

void cmd_solve_conjugator(Job& job) {
  job.require_inputs(1, "solve-conjugator <mutation file>");
  solve(job, job.load_mutation_checked(job.config.inputs[0]));
}

void cmd_build_mutant(Job& job) {
  job.require_inputs(1, "build-mutant <mutation file>");
  const auto file = job.load_mutation_checked(job.config.inputs[0]);
  const auto spec = solve(job, file);
  const auto lift = spec.tolerances.lift;

  const auto rho_x = build_rho_X(spec);
  const auto rx = relator_residuals(rho_x, spec.tolerances);
  job.check("rho_X_residual", rx.ok, spec.tolerances.residual - rx.max_residual);
  job.report["extended"] = print_representation(rho_x, lift);

  const auto mutant = build_mutant_representation(spec);
  const auto rm = relator_residuals(mutant, spec.tolerances);
  job.check("mutant_residual", rm.ok, spec.tolerances.residual - rm.max_residual,
            spec.separating ? "amalgam" : "HNN extension");
  job.report["mutant"] = print_representation(mutant, lift);

  const auto& ext = rho_x.presentation();
  const int t_index = static_cast<int>(ext.generator_count()) - 1;
  const auto cover = kernel_presentation_generators(ext, t_index, 2 * spec.inclusion.order_m);
  const auto cover_rep = build_cover_representation(spec, cover);
  const auto t_power = cover_rep.images().back();
  const double residual = distance(t_power, MoebiusMatrix::identity());
  job.check("cover_t_power_identity", residual < kCoverTol, kCoverTol - residual,
            "rho(t^" + std::to_string(cover.degree) + ") = 1");
  json c;
  c["degree"] = cover.degree;
  c["kernel_generators"] = cover.kernel_generators.size();
  job.report["cover"] = c;
}

std::vector<MoebiusMatrix> evaluate_all(const MatrixRepresentation& rep, const std::vector<GroupWord>& words) {
  std::vector<MoebiusMatrix> out;
  for (const auto& w : words) out.push_back(evaluate_word(rep, w));
  return out;
}

// Heuristic coset sample: short words in `gens` whose images do not map
// the curve to itself (curve invariance is used as an H-membership test).
std::vector<MoebiusMatrix> heuristic_coset(const MatrixRepresentation& rep, const std::vector<int>& gens,
                                           const SideClassifier& c, double curve_tol) {
  std::vector<MoebiusMatrix> out;
  const int k = static_cast<int>(gens.size());
  for (const auto& local : enumerate_reduced_words(k, 2)) {
    std::vector<Letter> letters;
    for (const auto& l : local.letters()) letters.push_back({gens[l.generator], l.exponent});
    const auto g = evaluate_word(rep, GroupWord(std::move(letters)));
    if (curve_invariance_defect(c, g, 200) > curve_tol) out.push_back(g);
  }
  return out;
}

json condition_json(const ConditionResult& c) {
  json j;
  j["name"] = c.name;
  j["description"] = c.description;
  j["passes"] = c.passes;
  j["vacuous"] = c.vacuous;
  j["worst_margin"] = sig12(c.worst_margin);
  j["checked"] = c.checked;
  j["ambiguous"] = c.ambiguous;
  if (c.witness) j["witness"] = point_json(*c.witness);
  if (c.witness_image) j["witness_image"] = point_json(*c.witness_image);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

void cmd_check_maskit(Job& job) {
  job.require_inputs(1, "check-maskit <mutation file>");
  const auto file = job.load_mutation_checked(job.config.inputs[0]);
  const auto spec = solve(job, file);
  const auto& rep = spec.ambient;
  const auto h_gens = surface_images(spec).source;
  const auto& a = *spec.conjugator;

  for (std::size_t i = 0; i < h_gens.size(); ++i) {
    for (std::size_t j = i + 1; j < h_gens.size(); ++j) {
      const auto jt = jorgensen_test(h_gens[i], h_gens[j]);
      const auto& nm = spec.inclusion.surface_names;
      auto label = [&](std::size_t k) { return k < nm.size() ? nm[k] : "h" + std::to_string(k + 1); };
      job.check("jorgensen_" + label(i) + "_" + label(j), jt.passes,
                jt.lhs - 1.0, "lhs " + std::to_string(jt.lhs));
    }
  }

  const auto sample = sample_limit_set(h_gens, job.config.max_word_length);
  const auto curve = build_curve_model(sample);
  json s;
  s["max_word_length"] = sample.max_word_length;
  s["words_enumerated"] = sample.words_enumerated;
  s["points"] = sample.points.size();
  s["max_gap"] = sig12(curve.max_gap);
  s["two_opt_moves"] = curve.two_opt_moves;
  job.report["limit_set"] = s;

  MaskitOptions opts;
  opts.probes.seed = job.config.seed;
  if (job.config.tol) opts.curve_tol = *job.config.tol;
  const SideClassifier classifier(curve, opts.band_tol);
  const double curve_tol = opts.curve_tol > 0.0 ? opts.curve_tol : curve.max_gap;

  // H sample: reduced words of length <= 2 in the surface generators.
  std::vector<MoebiusMatrix> h_sample;
  for (const auto& w : enumerate_reduced_words(static_cast<int>(h_gens.size()), 2)) {
    h_sample.push_back(evaluate_word(rep, substitute(w, spec.inclusion.surface_generators)));
  }

  MaskitReport mr;
  json coset_source;
  const int n = static_cast<int>(rep.presentation().generator_count());
  if (spec.separating) {
    std::vector<int> side1, side2 = spec.amalgam->side2_generators;
    for (int g = 0; g < n; ++g) {
      if (std::find(side2.begin(), side2.end(), g) == side2.end()) side1.push_back(g);
    }
    auto g1 = evaluate_all(rep, file.coset1);
    auto g2 = evaluate_all(rep, file.coset2);
    coset_source["G1-H"] = file.coset1.empty() ? "heuristic" : "supplied";
    coset_source["G2-H"] = file.coset2.empty() ? "heuristic" : "supplied";
    if (g1.empty()) g1 = heuristic_coset(rep, side1, classifier, curve_tol);
    if (g2.empty()) g2 = heuristic_coset(rep, side2, classifier, curve_tol);
    mr = check_precise_invariance_amalgam(classifier, h_sample, g1, g2, a, opts);
  } else {
    const int v = spec.hnn->stable_generator;
    std::vector<int> base;
    for (int g = 0; g < n; ++g) {
      if (g != v) base.push_back(g);
    }
    auto g0 = evaluate_all(rep, file.coset0);
    coset_source["G0-H"] = file.coset0.empty() ? "heuristic" : "supplied";
    if (g0.empty()) g0 = heuristic_coset(rep, base, classifier, curve_tol);
    mr = check_precise_invariance_hnn(curve, rep.image(v), a, h_sample, g0, opts);
  }
  job.report["coset_samples"] = coset_source;

  json m;
  m["case"] = spec.separating ? "amalgam" : "hnn";
  m["side_action"] = to_string(mr.a_action);
  m["curve_tol"] = sig12(mr.curve_tol);
  m["probes"] = {{"side1", mr.probes_side1}, {"side2", mr.probes_side2}, {"R", mr.probes_region_r}};
  if (!spec.separating) m["curve_separation"] = sig12(mr.curve_separation);
  json conds = json::array();
  for (const auto& c : mr.conditions) {
    conds.push_back(condition_json(c));
    job.check("maskit_" + c.name, c.passes, c.worst_margin);
  }
  m["conditions"] = conds;
  m["note"] = "sampled one-sided checks: a failure is a counterexample on the sample, a pass is evidence only";
  job.report["maskit"] = m;

  if (job.config.emit_image) {
    const auto probes = probe_sides(classifier, opts.probes);
    CurveModel w2;
    if (!spec.separating) w2 = transform_curve(curve, rep.image(spec.hnn->stable_generator));
    std::ofstream out(*job.config.emit_image, std::ios::binary);
    if (!out) throw ValidationError("cannot write image " + *job.config.emit_image);
    out << render_svg(classifier, probes, spec.separating ? nullptr : &w2);
    job.report["image"] = *job.config.emit_image;
  }
}

json volume_json(const ManifoldVolume& v) {
  json j;
  j["volume"] = fixed12(v.cycle_volume);
  j["degenerate_simplices"] = v.degenerate;
  j["max_mismatch"] = sig12(v.max_mismatch);
  if (v.shapes) {
    json s;
    json zs = json::array();
    for (auto z : v.shapes->shapes) zs.push_back(complex_json(z));
    s["shapes"] = zs;
    s["volume"] = fixed12(v.shapes->volume);
    s["max_residual"] = sig12(v.shapes->max_residual);
    s["iterations"] = v.shapes->iterations;
    s["flat_or_negative"] = v.shapes->flat_or_negative;
    j["gluing"] = s;
    j["cross_check_difference"] = sig12(v.cross_check_difference);
  } else if (v.gluing_failure) {
    j["gluing_failure"] = *v.gluing_failure;
  }
  return j;
}

void cmd_volume(Job& job) {
  job.require_inputs(2, "volume <triangulation> <representation>");
  const auto tri = load_triangulation(job.config.inputs[0]);
  const auto rep = job.load_rep_checked(job.config.inputs[1], "representation");
  const double tol = job.config.tol.value_or(kVolumeTol);
  const auto v = manifold_volume(tri, rep);
  job.report["volume"] = volume_json(v);
  if (v.shapes) {
    job.check("gluing_cross_check", v.cross_check_difference <= tol, tol - v.cross_check_difference);
  }
}

void cmd_verify_mutation(Job& job) {
  job.require_inputs(4, "verify-mutation <tri M> <rep M> <tri M^tau> <rep M^tau>");
  const auto tri_m = load_triangulation(job.config.inputs[0]);
  const auto rep_m = job.load_rep_checked(job.config.inputs[1], "M");
  const auto tri_t = load_triangulation(job.config.inputs[2]);
  const auto rep_t = job.load_rep_checked(job.config.inputs[3], "M^tau");
  const double tol = job.config.tol.value_or(kVolumeTol);
  const auto r = verify_mutation_volume(tri_m, rep_m, tri_t, rep_t, tol);
  job.report["M"] = volume_json(r.original);
  job.report["M^tau"] = volume_json(r.mutant);
  job.report["difference"] = fixed12(r.difference);
  job.report["difference_raw"] = sig12(r.difference);
  job.check("volume_difference", r.difference <= tol, tol - r.difference);
  for (const auto* side : {&r.original, &r.mutant}) {
    if (side->shapes) {
      job.check(side == &r.original ? "cross_check_M" : "cross_check_M^tau", side->cross_check_difference <= tol,
                tol - side->cross_check_difference);
    }
  }
}

void cmd_cover_check(Job& job) {
  job.require_inputs(2, "cover-check <triangulation> <representation> [--mutation file]");
  const auto tri = load_triangulation(job.config.inputs[0]);
  const auto rep = job.load_rep_checked(job.config.inputs[1], "representation");
  const auto developed = develop_cycle(tri, rep);
  const double base = volume_of_decorated_cycle(developed.cycle).volume;

  int degree = job.config.degree;
  MoebiusMatrix deck = rep.image(0);
  // Without a mutation file the circle carries a rotation of order 2 * degree.
  const double angle = std::acos(-1.0) / degree;
  MoebiusMatrix circle(std::polar(1.0, angle), 0.0, 0.0, std::polar(1.0, -angle));
  int circle_degree = 2 * degree;
  if (job.config.mutation) {
    const auto file = job.load_mutation_checked(*job.config.mutation);
    const auto spec = solve(job, file);
    degree = 2 * spec.inclusion.order_m;
    deck = *spec.conjugator;
    circle = *spec.conjugator;
    circle_degree = degree;
  }
  if (degree < 1) throw ValidationError("cover degree must be positive");

  std::vector<DecoratedCycle> copies;
  for (int k = 0; k < degree; ++k) copies.push_back(transform_cycle(developed.cycle, power(deck, k)));
  const auto cover = disjoint_union(copies);
  const double tol = job.config.tol.value_or(kCoverTol);
  const auto cr = cover_volume_check(base, degree, cover, tol);
  json c;
  c["base_volume"] = fixed12(cr.base_volume);
  c["degree"] = cr.degree;
  c["cover_volume"] = fixed12(cr.cover_volume);
  c["difference"] = sig12(cr.difference);
  job.report["cover"] = c;
  job.check("cover_multiplicativity", cr.passes, tol - cr.difference);

  // Surface x S^1 over the boundary of a decorated simplex.
  std::vector<SpherePoint> pts;
  for (const auto& s : developed.cycle.simplices) {
    for (const auto& p : s.vertices) {
      bool fresh = true;
      for (const auto& q : pts) fresh = fresh && chordal_distance(p, q) > 1e-8;
      if (fresh && pts.size() < 4) pts.push_back(p);
    }
  }
  if (pts.size() == 4) {
    SurfaceCycle surface;
    surface.points = pts;
    surface.triangles = {{{1, 2, 3}, 1}, {{0, 2, 3}, -1}, {{0, 1, 3}, 1}, {{0, 1, 2}, -1}};
    const int steps = job.config.circle_steps > 0 ? job.config.circle_steps : 2 * circle_degree;
    const double pv = product_cycle_volume(surface, circle, circle_degree, steps);
    json p;
    p["circle_generator"] = format_matrix(circle);
    p["circle_degree"] = circle_degree;
    p["circle_steps"] = steps;
    p["volume"] = fixed12(pv);
    p["volume_raw"] = sig12(pv);
    job.report["product_cycle"] = p;
    job.check("product_cycle_zero", std::abs(pv) < kProductTol, kProductTol - std::abs(pv));
  }
}

void cmd_classify(Job& job) {
  job.require_inputs(1, "classify <representation or mutation file>");
  const auto& path = job.config.inputs[0];
  const auto kind = detect_kind(read_text_file(path));
  MatrixRepresentation rep;
  std::optional<MutationSpec> spec;
  if (kind && *kind == FileKind::Mutation) {
    const auto file = job.load_mutation_checked(path);
    rep = file.spec.ambient;
    spec = solve(job, file);
  } else {
    rep = job.load_rep_checked(path, "representation");
  }
  const double tol = job.config.tol.value_or(1e-10);
  auto describe = [tol](const MoebiusMatrix& m) {
    json j;
    const auto cls = classify(m, tol);
    j["kind"] = to_string(cls.kind);
    j["trace"] = complex_json(cls.trace);
    if (cls.kind != ElementKind::Identity) {
      json fps = json::array();
      for (const auto& p : fixed_points(m, tol)) fps.push_back(point_json(p));
      j["fixed_points"] = fps;
    }
    return j;
  };
  json gens;
  const auto& names = rep.presentation().generators();
  for (std::size_t g = 0; g < names.size(); ++g) gens[names[g]] = describe(rep.image(static_cast<int>(g)));
  job.report["generators"] = gens;
  if (spec) job.report["conjugator_class"] = describe(*spec->conjugator);
  json jp = json::array();
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const auto jt = jorgensen_test(rep.image(static_cast<int>(i)), rep.image(static_cast<int>(j)));
      jp.push_back({{"pair", names[i] + "," + names[j]}, {"lhs", sig12(jt.lhs)}, {"passes", jt.passes}});
    }
  }
  job.report["jorgensen"] = jp;
}

int cmd_validate(Job& job) {
  job.require_inputs(1, "validate <file>");
  const auto diags = validate_file(job.config.inputs[0]);
  json d = json::array();
  for (const auto& x : diags) d.push_back({{"line", x.line}, {"message", x.message}});
  job.report["diagnostics"] = d;
  return diags.empty() ? 0 : 2;
}

const std::map<std::string, std::function<void(Job&)>>& commands() {
  static const std::map<std::string, std::function<void(Job&)>> table = {
      {"solve-conjugator", cmd_solve_conjugator}, {"build-mutant", cmd_build_mutant},
      {"check-maskit", cmd_check_maskit},         {"volume", cmd_volume},
      {"verify-mutation", cmd_verify_mutation},   {"cover-check", cmd_cover_check},
      {"classify", cmd_classify},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names = {"solve-conjugator", "build-mutant", "check-maskit", "volume",
                                                 "verify-mutation",  "cover-check",  "classify",     "validate"};
  return names;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult run(const JobConfig& config) {
  Job job{config, json::object()};
  RunResult result;
  json& r = job.report;
  r["tool"] = "mutkit";
  r["report_format"] = 1;
  r["command"] = config.command;
  json inputs = json::array();
  auto add_input = [&](const std::string& path) {
    json in;
    in["path"] = path;
    try {
      in["fnv1a"] = fnv1a_hex(read_text_file(path));
    } catch (const Error&) {
      in["fnv1a"] = nullptr;
    }
    inputs.push_back(std::move(in));
  };
  for (const auto& p : config.inputs) add_input(p);
  if (config.mutation) add_input(*config.mutation);
  r["inputs"] = inputs;
  r["seed"] = config.seed;
  json tol;
  tol["rep_tol"] = kRepTol;
  tol["lift"] = config.strict_sl_lift ? "strict-sl" : "from-file";
  tol["det_tol"] = MoebiusTolerances{}.det;
  tol["nullspace_cutoff"] = MoebiusTolerances{}.nullspace;
  if (config.tol) tol["override"] = *config.tol;
  tol["max_word_length"] = config.max_word_length;
  tol["force"] = config.force;
  r["tolerances"] = tol;

  int code = 0;
  try {
    if (config.command == "validate") {
      code = cmd_validate(job);
    } else {
      const auto it = commands().find(config.command);
      if (it == commands().end()) throw ValidationError("unknown command '" + config.command + "'");
      it->second(job);
      code = job.all_pass ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    code = 2;
    r["error"] = e.what();
  } catch (const CheckFailure& e) {
    code = 1;
    r["error"] = e.what();
  } catch (const std::exception& e) {
    code = 2;
    r["error"] = std::string("internal: ") + e.what();
  }
  r["checks"] = job.checks;
  r["status"] = code == 0 ? "pass" : code == 1 ? "fail" : "invalid";
  r["exit_code"] = code;

  result.exit_code = code;
  result.report_text = r.dump(2) + "\n";
  result.report = r;
  std::string summary = config.command + ": " + r["status"].get<std::string>();
  if (r.contains("error")) summary += " (" + r["error"].get<std::string>() + ")";
  result.summary = summary;

  if (config.write_report) {
    try {
      std::filesystem::create_directories(config.out_dir);
      const auto path = std::filesystem::path(config.out_dir) / ("report-" + fnv1a_hex(result.report_text) + ".json");
      std::ofstream out(path, std::ios::binary);
      out << result.report_text;
      if (!out) throw std::runtime_error("write failed");
      result.report_path = path.string();
    } catch (const std::exception& e) {
      result.summary += "; could not write report: " + std::string(e.what());
      if (result.exit_code == 0) result.exit_code = 2;
    }
  }
  return result;
}

}  // namespace mutkit
