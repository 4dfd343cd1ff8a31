#include "mutkit/representation.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "mutkit/errors.hpp"

namespace mutkit {

const char* to_string(LiftMode mode) {
  return mode == LiftMode::Strict ? "strict-sl" : "psl-lift";
}

MatrixRepresentation::MatrixRepresentation(FinitePresentation presentation,
                                           std::vector<MoebiusMatrix> images)
    : presentation_(std::move(presentation)), images_(std::move(images)) {
  if (images_.size() != presentation_.generator_count()) {
    throw ValidationError("representation has " + std::to_string(images_.size()) + " images for " +
                          std::to_string(presentation_.generator_count()) + " generators");
  }
}

MoebiusMatrix evaluate_word(std::span<const MoebiusMatrix> images, const GroupWord& w) {
  MoebiusMatrix out;
  for (const auto& x : w.letters()) {
    if (static_cast<std::size_t>(x.generator) >= images.size()) {
      throw ValidationError("evaluate_word: generator index out of range");
    }
    const auto& g = images[x.generator];
    out = out * (x.exponent > 0 ? g : g.inverse());
  }
  return out;
}

MoebiusMatrix evaluate_word(const MatrixRepresentation& rep, const GroupWord& w) {
  return evaluate_word(rep.images(), w);
}

ResidualReport relator_residuals(const MatrixRepresentation& rep, const RepresentationTolerances& tol) {
  ResidualReport report;
  report.mode = tol.lift;
  const MoebiusMatrix one;
  for (const auto& r : rep.presentation().relators()) {
    const MoebiusMatrix value = evaluate_word(rep, r);
    RelatorResidual res;
    const double plus = distance(value, one);
    const double minus = distance(value, -one);
    if (tol.lift == LiftMode::Strict || plus <= minus) {
      res.residual = plus;
      res.sign = 1;
    } else {
      res.residual = minus;
      res.sign = -1;
    }
    report.max_residual = std::max(report.max_residual, res.residual);
    report.relators.push_back(res);
  }
  report.ok = report.max_residual <= tol.residual;
  return report;
}

ResidualReport require_residuals(const MatrixRepresentation& rep, const RepresentationTolerances& tol,
                                 const char* context) {
  auto report = relator_residuals(rep, tol);
  if (!report.ok) {
    std::size_t worst = 0;
    for (std::size_t k = 0; k < report.relators.size(); ++k) {
      if (report.relators[k].residual > report.relators[worst].residual) worst = k;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, " has residual %.3e (tolerance %.1e, %s)", report.max_residual,
                  tol.residual, to_string(tol.lift));
    throw CheckFailure(std::string(context) + ": relator '" +
                       rep.presentation().print_word(rep.presentation().relators()[worst]) + "'" + buf);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

bool uses_only(const GroupWord& w, const std::set<int>& allowed) {
  return std::all_of(w.letters().begin(), w.letters().end(),
                     [&](const Letter& x) { return allowed.count(x.generator) != 0; });
}

GroupWord reindex(const GroupWord& w, const std::vector<int>& ambient_to_local) {
  std::vector<Letter> letters = w.letters();
  for (auto& x : letters) x.generator = ambient_to_local.at(x.generator);
  return GroupWord(std::move(letters));
}

// Sub-presentation on the given ambient generators: keeps the relators
// that only involve them.
FinitePresentation restrict_presentation(const FinitePresentation& ambient, const std::vector<int>& gens,
                                         std::vector<int>& ambient_to_local) {
  ambient_to_local.assign(ambient.generator_count(), -1);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    ambient_to_local[gens[k]] = static_cast<int>(k);
    names.push_back(ambient.generators()[gens[k]]);
  }
  const std::set<int> allowed(gens.begin(), gens.end());
  std::vector<GroupWord> relators;
  for (const auto& r : ambient.relators()) {
    if (uses_only(r, allowed)) relators.push_back(reindex(r, ambient_to_local));
  }
  return FinitePresentation(std::move(names), std::move(relators));
}

}  // namespace

AmalgamFactors amalgam_factors(const MutationSpec& spec) {
  if (!spec.amalgam) throw ValidationError("separating mutation spec lacks amalgam data");
  const auto& ambient = spec.ambient.presentation();
  const auto& data = *spec.amalgam;
  const auto n = static_cast<int>(ambient.generator_count());
  std::set<int> side2;
  for (int g : data.side2_generators) {
    if (g < 0 || g >= n) throw ValidationError("amalgam side-2 generator index out of range");
    side2.insert(g);
  }
  if (side2.empty() || static_cast<int>(side2.size()) == n) {
    throw ValidationError("amalgam splitting must put generators on both sides");
  }
  AmalgamFactors f;
  for (int g = 0; g < n; ++g) (side2.count(g) ? f.p2_to_ambient : f.p1_to_ambient).push_back(g);
  std::vector<int> to1, to2;
  f.p1 = restrict_presentation(ambient, f.p1_to_ambient, to1);
  f.p2 = restrict_presentation(ambient, f.p2_to_ambient, to2);
  const std::set<int> side1(f.p1_to_ambient.begin(), f.p1_to_ambient.end());
  for (std::size_t j = 0; j < spec.inclusion.surface_generators.size(); ++j) {
    const auto& w = spec.inclusion.surface_generators[j];
    if (!uses_only(w, side1)) {
      throw ValidationError("surface generator " + std::to_string(j) + " is not a word in the M_1 generators");
    }
    f.phi1.push_back(reindex(w, to1));
  }
  if (data.phi2.size() != spec.inclusion.surface_generators.size()) {
    throw ValidationError("phi2 needs one word per surface generator");
  }
  for (std::size_t j = 0; j < data.phi2.size(); ++j) {
    if (!uses_only(data.phi2[j], side2)) {
      throw ValidationError("phi2 word " + std::to_string(j) + " is not a word in the M_2 generators");
    }
    f.phi2.push_back(reindex(data.phi2[j], to2));
  }
  return f;
}

HnnBase hnn_base(const MutationSpec& spec) {
  if (!spec.hnn) throw ValidationError("non-separating mutation spec lacks HNN data");
  const auto& ambient = spec.ambient.presentation();
  const auto& data = *spec.hnn;
  const auto n = static_cast<int>(ambient.generator_count());
  if (data.stable_generator < 0 || data.stable_generator >= n) {
    throw ValidationError("HNN stable generator index out of range");
  }
  HnnBase base;
  for (int g = 0; g < n; ++g) {
    if (g != data.stable_generator) base.to_ambient.push_back(g);
  }
  std::vector<int> to_local;
  base.pN = restrict_presentation(ambient, base.to_ambient, to_local);
  const std::set<int> allowed(base.to_ambient.begin(), base.to_ambient.end());
  const auto g = spec.inclusion.surface_generators.size();
  if (data.phi2.size() != g || data.alpha.size() != g) {
    throw ValidationError("phi2 and alpha need one word per surface generator");
  }
  for (std::size_t j = 0; j < g; ++j) {
    const auto& w = spec.inclusion.surface_generators[j];
    if (!uses_only(w, allowed)) {
      throw ValidationError("surface generator " + std::to_string(j) + " involves the stable letter");
    }
    if (!uses_only(data.phi2[j], allowed)) {
      throw ValidationError("phi2 word " + std::to_string(j) + " involves the stable letter");
    }
    if (data.alpha[j].max_generator() >= static_cast<int>(g)) {
      throw ValidationError("alpha word " + std::to_string(j) + " references a surface generator out of range");
    }
    base.phi1.push_back(reindex(w, to_local));
    base.phi2.push_back(reindex(data.phi2[j], to_local));
  }
  for (std::size_t j = 0; j < g; ++j) {
    base.alpha_then_tau.push_back(substitute(spec.inclusion.tau_star[j], data.alpha));
  }
  return base;
}

void validate_mutation_spec(const MutationSpec& spec) {
  validate_inclusion(spec.ambient.presentation(), spec.inclusion);
  if (spec.separating) {
    amalgam_factors(spec);
  } else {
    hnn_base(spec);
  }
}

SurfaceImages surface_images(const MutationSpec& spec) {
  SurfaceImages out;
  const auto& inc = spec.inclusion;
  for (std::size_t j = 0; j < inc.surface_generators.size(); ++j) {
    out.source.push_back(evaluate_word(spec.ambient, inc.surface_generators[j]));
    out.target.push_back(evaluate_word(spec.ambient, substitute(inc.tau_star[j], inc.surface_generators)));
  }
  return out;
}

MutationSpec solve_assumption(MutationSpec spec, const MoebiusTolerances& tol) {
  validate_inclusion(spec.ambient.presentation(), spec.inclusion);
  const auto images = surface_images(spec);
  auto solution = solve_conjugator(images.source, images.target, tol);
  spec.certificate = finite_order_certificate(solution.conjugator, spec.inclusion.order_m,
                                              std::max(spec.tolerances.residual, 1e-10));
  spec.conjugator = solution.conjugator;
  spec.diagnostics = solution.diagnostics;
  return spec;
}

namespace {

const MoebiusMatrix& require_conjugator(const MutationSpec& spec) {
  if (!spec.conjugator) throw ValidationError("mutation spec has no solved conjugator");
  return *spec.conjugator;
}

}  // namespace

MatrixRepresentation build_rho_X(const MutationSpec& spec) {
  const auto& a = require_conjugator(spec);
  auto pres = build_extended_presentation(spec.ambient.presentation(), spec.inclusion);
  auto images = spec.ambient.images();
  images.push_back(a);
  MatrixRepresentation rep(std::move(pres), std::move(images));
  require_residuals(rep, spec.tolerances, "rho_X");
  return rep;
}

MatrixRepresentation build_mutant_representation(const MutationSpec& spec) {
  const auto& a = require_conjugator(spec);
  const auto& rho = spec.ambient.images();
  if (spec.separating) {
    const auto f = amalgam_factors(spec);
    auto pres = build_mutant_amalgam(f.p1, f.p2, f.phi1, f.phi2, spec.inclusion.tau_star);
    std::vector<MoebiusMatrix> images;
    for (int g : f.p1_to_ambient) images.push_back(rho[g]);
    for (int g : f.p2_to_ambient) images.push_back(conjugate(a, rho[g]));
    MatrixRepresentation rep(std::move(pres), std::move(images));
    require_residuals(rep, spec.tolerances, "mutant amalgam representation");
    return rep;
  }
  const auto base = hnn_base(spec);
  auto pres = build_mutant_hnn(base.pN, base.phi1, base.phi2, base.alpha_then_tau);
  std::vector<MoebiusMatrix> images;
  for (int g : base.to_ambient) images.push_back(rho[g]);
  images.push_back(rho[spec.hnn->stable_generator] * a);
  MatrixRepresentation rep(std::move(pres), std::move(images));
  require_residuals(rep, spec.tolerances, "mutant HNN representation");
  return rep;
}

MatrixRepresentation build_cover_representation(const MutationSpec& spec, const CoverData& cover,
                                                double tol) {
  const auto rho_x = build_rho_X(spec);
  const auto& xp = rho_x.presentation();
  if (cover.t_index != static_cast<int>(xp.generator_count()) - 1) {
    throw ValidationError("cover data was not built from the extended presentation");
  }
  std::vector<std::string> names;
  std::vector<MoebiusMatrix> images;
  for (int k = 0; k < cover.degree; ++k) {
    for (int s = 0; s < static_cast<int>(xp.generator_count()); ++s) {
      if (s != cover.t_index) names.push_back(xp.generators()[s] + "_" + std::to_string(k));
    }
  }
  names.push_back(xp.generators()[cover.t_index] + "_" + std::to_string(cover.degree));
  for (const auto& w : cover.kernel_generators) images.push_back(evaluate_word(rho_x, w));
  const double err = distance(images.back(), MoebiusMatrix::identity());
  if (err > tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "image of t^%d differs from the identity by %.3e", cover.degree, err);
    throw CheckFailure(buf);
  }
  return MatrixRepresentation(FinitePresentation(std::move(names), {}), std::move(images));
}

JorgensenResult jorgensen_test(const MoebiusMatrix& g, const MoebiusMatrix& h, double tol) {
  const Complex tr = g.trace();
  const double lhs = std::abs(tr * tr - Complex(4)) + std::abs(commutator(g, h).trace() - Complex(2));
  return {lhs, lhs >= 1.0 - tol};
}

}  // namespace mutkit
