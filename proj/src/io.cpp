#include "mutkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <json.hpp>
#include <regex>
#include <sstream>

#include "mutkit/errors.hpp"

namespace mutkit {

namespace {

struct Line {
  int number = 0;
  std::string keyword;
  std::vector<std::string> tokens;  ///< after the keyword
  std::string rest;                 ///< raw text after the keyword
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

constexpr const char* kHeaderPrefix = "% mutkit-";

// Splits the text into keyword lines, checking the header.
std::vector<Line> tokenize(const std::string& text, FileKind expected, std::vector<Diagnostic>& diags) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++number;
    std::string s = trim(raw);
    if (!header) {
      if (s.empty() || s[0] == '#') continue;
      const std::string want = std::string(kHeaderPrefix) + to_string(expected) + " ";
      if (s.rfind(want, 0) != 0) {
        diags.push_back({number, std::string("expected header '") + kHeaderPrefix + to_string(expected) + " 1'"});
        return {};
      }
      if (trim(s.substr(want.size())) != "1") {
        diags.push_back({number, "unsupported format version '" + trim(s.substr(want.size())) + "'"});
        return {};
      }
      header = true;
      continue;
    }
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    Line line;
    line.number = number;
    const auto sp = s.find_first_of(" \t");
    line.keyword = s.substr(0, sp);
    line.rest = sp == std::string::npos ? "" : trim(s.substr(sp));
    line.tokens = split_ws(line.rest);
    lines.push_back(std::move(line));
  }
  if (!header) diags.push_back({0, std::string("missing header '") + kHeaderPrefix + to_string(expected) + " 1'"});
  return lines;
}

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) return std::nullopt;
  return v;
}

struct PresentationLines {
  std::optional<std::vector<std::string>> generators;
  std::vector<const Line*> relators;
};

// Builds the presentation from generator and relator lines.
std::optional<FinitePresentation> assemble_presentation(const PresentationLines& pl, std::vector<Diagnostic>& diags) {
  if (!pl.generators) {
    diags.push_back({0, "missing 'generators' line"});
    return std::nullopt;
  }
  FinitePresentation bare;
  try {
    bare = FinitePresentation(*pl.generators, {});
  } catch (const ValidationError& e) {
    diags.push_back({0, e.what()});
    return std::nullopt;
  }
  std::vector<GroupWord> relators;
  bool ok = true;
  for (const Line* l : pl.relators) {
    try {
      auto w = bare.parse_word(l->rest);
      if (w.empty()) {
        diags.push_back({l->number, "relator is trivial after free reduction"});
        ok = false;
        continue;
      }
      relators.push_back(std::move(w));
    } catch (const ValidationError& e) {
      diags.push_back({l->number, std::string("relator: ") + e.what()});
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return FinitePresentation(*pl.generators, std::move(relators));
}

bool take_presentation_line(const Line& l, PresentationLines& pl, std::vector<Diagnostic>& diags) {
  if (l.keyword == "generators") {
    if (pl.generators) diags.push_back({l.number, "duplicate 'generators' line"});
    pl.generators = l.tokens;
    return true;
  }
  if (l.keyword == "relator") {
    pl.relators.push_back(&l);
    return true;
  }
  return false;
}

std::optional<MoebiusMatrix> parse_matrix(const std::string& text, int line, std::vector<Diagnostic>& diags) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    diags.push_back({line, "matrix is not of the form [[re,im],[re,im],[re,im],[re,im]]"});
    return std::nullopt;
  }
  if (!j.is_array() || j.size() != 4) {
    diags.push_back({line, "matrix needs 4 complex entries"});
    return std::nullopt;
  }
  std::array<Complex, 4> e{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& z = j[k];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      diags.push_back({line, "matrix entry " + std::to_string(k) + " must be [re,im]"});
      return std::nullopt;
    }
    e[k] = Complex(z[0].get<double>(), z[1].get<double>());
  }
  try {
    return MoebiusMatrix::checked(e[0], e[1], e[2], e[3]);
  } catch (const ValidationError& err) {
    diags.push_back({line, err.what()});
    return std::nullopt;
  }
}

struct RepresentationLines {
  PresentationLines presentation;
  std::vector<const Line*> images;
  std::optional<LiftMode> lift;
};

bool take_representation_line(const Line& l, RepresentationLines& rl, std::vector<Diagnostic>& diags) {
  if (take_presentation_line(l, rl.presentation, diags)) return true;
  if (l.keyword == "image") {
    rl.images.push_back(&l);
    return true;
  }
  if (l.keyword == "lift") {
    if (l.tokens.size() == 1 && l.tokens[0] == "psl") {
      rl.lift = LiftMode::Projective;
    } else if (l.tokens.size() == 1 && l.tokens[0] == "sl") {
      rl.lift = LiftMode::Strict;
    } else {
      diags.push_back({l.number, "lift must be 'psl' or 'sl'"});
    }
    return true;
  }
  return false;
}

std::optional<MatrixRepresentation> assemble_representation(const RepresentationLines& rl,
                                                            std::vector<Diagnostic>& diags) {
  const std::size_t before = diags.size();
  auto pres = assemble_presentation(rl.presentation, diags);
  if (!pres) return std::nullopt;
  std::vector<std::optional<MoebiusMatrix>> images(pres->generator_count());
  for (const Line* l : rl.images) {
    if (l->tokens.empty()) {
      diags.push_back({l->number, "image needs a generator name and a matrix"});
      continue;
    }
    const std::string& name = l->tokens[0];
    const int g = pres->index_of(name);
    if (g < 0) {
      diags.push_back({l->number, "image for unknown generator '" + name + "'"});
      continue;
    }
    if (images[g]) {
      diags.push_back({l->number, "duplicate image for generator '" + name + "'"});
      continue;
    }
    images[g] = parse_matrix(trim(l->rest.substr(name.size())), l->number, diags);
  }
  if (diags.size() != before) return std::nullopt;
  std::vector<MoebiusMatrix> mats;
  for (std::size_t g = 0; g < images.size(); ++g) {
    if (!images[g]) {
      diags.push_back({0, "missing image for generator '" + pres->generators()[g] + "'"});
      continue;
    }
    mats.push_back(*images[g]);
  }
  if (diags.size() != before) return std::nullopt;
  return MatrixRepresentation(std::move(*pres), std::move(mats));
}

std::optional<GroupWord> parse_word_at(const FinitePresentation& p, const std::string& text, int line,
                                       const char* what, std::vector<Diagnostic>& diags) {
  try {
    return p.parse_word(text);
  } catch (const ValidationError& e) {
    diags.push_back({line, std::string(what) + ": " + e.what()});
    return std::nullopt;
  }
}

template <std::size_t N>
std::optional<std::array<int, N>> parse_ints(const Line& l, std::vector<Diagnostic>& diags) {
  if (l.tokens.size() != N) {
    diags.push_back({l.number, "'" + l.keyword + "' needs " + std::to_string(N) + " integers"});
    return std::nullopt;
  }
  std::array<int, N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    const auto v = parse_int(l.tokens[k]);
    if (!v) {
      diags.push_back({l.number, "'" + l.keyword + "': '" + l.tokens[k] + "' is not an integer"});
      return std::nullopt;
    }
    out[k] = *v;
  }
  return out;
}

std::string lift_token(LiftMode m) { return m == LiftMode::Strict ? "sl" : "psl"; }

}  // namespace

const char* to_string(FileKind kind) {
  switch (kind) {
    case FileKind::Presentation: return "presentation";
    case FileKind::Representation: return "representation";
    case FileKind::Mutation: return "mutation";
    case FileKind::Triangulation: return "triangulation";
  }
  return "unknown";
}

std::string format_diagnostics(const std::string& path, const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "\n";
    out += path + ":" + std::to_string(d.line) + ": " + d.message;
  }
  return out;
}

std::optional<FinitePresentation> parse_presentation(const std::string& text, std::vector<Diagnostic>& diags) {
  const std::size_t before = diags.size();
  const auto lines = tokenize(text, FileKind::Presentation, diags);
  if (diags.size() != before) return std::nullopt;
  PresentationLines pl;
  for (const auto& l : lines) {
    if (!take_presentation_line(l, pl, diags)) diags.push_back({l.number, "unknown keyword '" + l.keyword + "'"});
  }
  if (diags.size() != before) return std::nullopt;
  return assemble_presentation(pl, diags);
}

std::optional<MatrixRepresentation> parse_representation(const std::string& text, std::vector<Diagnostic>& diags,
                                                         LiftMode* lift) {
  const std::size_t before = diags.size();
  const auto lines = tokenize(text, FileKind::Representation, diags);
  if (diags.size() != before) return std::nullopt;
  RepresentationLines rl;
  for (const auto& l : lines) {
    if (!take_representation_line(l, rl, diags)) {
      diags.push_back({l.number, "unknown keyword '" + l.keyword + "'"});
    }
  }
  if (diags.size() != before) return std::nullopt;
  auto rep = assemble_representation(rl, diags);
  if (rep && lift) *lift = rl.lift.value_or(LiftMode::Projective);
  return rep;
}

std::optional<MutationFile> parse_mutation(const std::string& text, std::vector<Diagnostic>& diags) {
  const std::size_t before = diags.size();
  const auto lines = tokenize(text, FileKind::Mutation, diags);
  if (diags.size() != before) return std::nullopt;

  RepresentationLines rl;
  std::vector<const Line*> surface, tau, phi2, alpha, coset1, coset2, coset0;
  const Line* order = nullptr;
  const Line* separating = nullptr;
  const Line* split = nullptr;
  const Line* stable = nullptr;
  for (const auto& l : lines) {
    if (take_representation_line(l, rl, diags)) continue;
    if (l.keyword == "surface") surface.push_back(&l);
    else if (l.keyword == "tau") tau.push_back(&l);
    else if (l.keyword == "phi2") phi2.push_back(&l);
    else if (l.keyword == "alpha") alpha.push_back(&l);
    else if (l.keyword == "coset1") coset1.push_back(&l);
    else if (l.keyword == "coset2") coset2.push_back(&l);
    else if (l.keyword == "coset0") coset0.push_back(&l);
    else if (l.keyword == "order") order = &l;
    else if (l.keyword == "separating") separating = &l;
    else if (l.keyword == "split") split = &l;
    else if (l.keyword == "stable") stable = &l;
    else diags.push_back({l.number, "unknown keyword '" + l.keyword + "'"});
  }
  if (diags.size() != before) return std::nullopt;
  auto rep = assemble_representation(rl, diags);
  if (!rep) return std::nullopt;
  const auto& pres = rep->presentation();

  MutationFile out;
  out.spec.ambient = *rep;
  out.spec.tolerances.lift = rl.lift.value_or(LiftMode::Projective);

  // Surface generators, in file order.
  std::vector<std::string> names;
  for (const Line* l : surface) {
    if (l->tokens.empty()) {
      diags.push_back({l->number, "surface needs a name and a word"});
      continue;
    }
    names.push_back(l->tokens[0]);
    auto w = parse_word_at(pres, trim(l->rest.substr(l->tokens[0].size())), l->number, "surface", diags);
    out.spec.inclusion.surface_generators.push_back(w.value_or(GroupWord{}));
  }
  if (names.empty()) diags.push_back({0, "no 'surface' lines"});
  FinitePresentation surface_pres;
  try {
    surface_pres = FinitePresentation(names, {});
  } catch (const ValidationError& e) {
    diags.push_back({surface.empty() ? 0 : surface[0]->number, std::string("surface names: ") + e.what()});
    return std::nullopt;
  }
  out.spec.inclusion.surface_names = names;

  // Per-surface-generator word tables keyed by name.
  auto keyed = [&](const std::vector<const Line*>& src, const FinitePresentation& in, const char* what,
                   bool required) -> std::vector<GroupWord> {
    std::vector<std::optional<GroupWord>> words(names.size());
    for (const Line* l : src) {
      if (l->tokens.empty()) {
        diags.push_back({l->number, std::string(what) + " needs a surface generator name and a word"});
        continue;
      }
      const int j = surface_pres.index_of(l->tokens[0]);
      if (j < 0) {
        diags.push_back({l->number, std::string(what) + " for unknown surface generator '" + l->tokens[0] + "'"});
        continue;
      }
      if (words[j]) {
        diags.push_back({l->number, std::string("duplicate ") + what + " for '" + l->tokens[0] + "'"});
        continue;
      }
      words[j] = parse_word_at(in, trim(l->rest.substr(l->tokens[0].size())), l->number, what, diags);
    }
    std::vector<GroupWord> out_words;
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (!words[j] && required && !src.empty()) {
        diags.push_back({0, std::string("missing ") + what + " for surface generator '" + names[j] + "'"});
      }
      out_words.push_back(words[j].value_or(GroupWord{}));
    }
    return out_words;
  };

  if (tau.empty()) diags.push_back({0, "no 'tau' lines"});
  out.spec.inclusion.tau_star = keyed(tau, surface_pres, "tau", true);

  if (!order) {
    diags.push_back({0, "missing 'order' line"});
  } else {
    const auto m = order->tokens.size() == 1 ? parse_int(order->tokens[0]) : std::nullopt;
    if (!m || *m < 1) diags.push_back({order->number, "order must be a positive integer"});
    else out.spec.inclusion.order_m = *m;
  }

  if (!separating || separating->tokens.size() != 1 ||
      (separating->tokens[0] != "yes" && separating->tokens[0] != "no")) {
    diags.push_back({separating ? separating->number : 0, "'separating yes' or 'separating no' is required"});
    return std::nullopt;
  }
  out.spec.separating = separating->tokens[0] == "yes";

  if (out.spec.separating) {
    AmalgamData data;
    if (!split || split->tokens.empty()) {
      diags.push_back({split ? split->number : 0, "separating mutation needs 'split <M2 generators>'"});
    } else {
      for (const auto& name : split->tokens) {
        const int g = pres.index_of(name);
        if (g < 0) diags.push_back({split->number, "split: unknown generator '" + name + "'"});
        else data.side2_generators.push_back(g);
      }
    }
    if (phi2.empty()) diags.push_back({0, "separating mutation needs 'phi2' lines"});
    data.phi2 = keyed(phi2, pres, "phi2", true);
    out.spec.amalgam = std::move(data);
    if (stable || !alpha.empty()) {
      diags.push_back({stable ? stable->number : alpha[0]->number, "'stable'/'alpha' only apply to separating no"});
    }
  } else {
    HnnData data;
    if (!stable || stable->tokens.size() != 1) {
      diags.push_back({stable ? stable->number : 0, "non-separating mutation needs 'stable <generator>'"});
    } else {
      data.stable_generator = pres.index_of(stable->tokens[0]);
      if (data.stable_generator < 0) {
        diags.push_back({stable->number, "stable: unknown generator '" + stable->tokens[0] + "'"});
      }
    }
    if (phi2.empty()) diags.push_back({0, "non-separating mutation needs 'phi2' lines"});
    if (alpha.empty()) diags.push_back({0, "non-separating mutation needs 'alpha' lines"});
    data.phi2 = keyed(phi2, pres, "phi2", true);
    data.alpha = keyed(alpha, surface_pres, "alpha", true);
    out.spec.hnn = std::move(data);
    if (split) diags.push_back({split->number, "'split' only applies to separating yes"});
  }

  auto words = [&](const std::vector<const Line*>& src, const char* what) {
    std::vector<GroupWord> ws;
    for (const Line* l : src) {
      if (auto w = parse_word_at(pres, l->rest, l->number, what, diags)) ws.push_back(std::move(*w));
    }
    return ws;
  };
  out.coset1 = words(coset1, "coset1");
  out.coset2 = words(coset2, "coset2");
  out.coset0 = words(coset0, "coset0");
  if (diags.size() != before) return std::nullopt;

  try {
    validate_inclusion(pres, out.spec.inclusion);
    validate_mutation_spec(out.spec);
  } catch (const ValidationError& e) {
    diags.push_back({0, e.what()});
    return std::nullopt;
  }
  return out;
}

std::optional<IdealTriangulation> parse_triangulation(const std::string& text, std::vector<Diagnostic>& diags) {
  const std::size_t before = diags.size();
  const auto lines = tokenize(text, FileKind::Triangulation, diags);
  if (diags.size() != before) return std::nullopt;

  IdealTriangulation tri;
  std::optional<int> declared_count;
  std::vector<int> tet_line;
  struct Seen {
    bool neighbors = false, gluings = false;
  };
  std::vector<Seen> seen;
  int current = -1;
  for (const auto& l : lines) {
    if (l.keyword == "tetrahedra") {
      const auto n = l.tokens.size() == 1 ? parse_int(l.tokens[0]) : std::nullopt;
      if (!n || *n < 1) diags.push_back({l.number, "tetrahedra needs a positive count"});
      else declared_count = *n;
      continue;
    }
    if (l.keyword == "tet") {
      const auto k = l.tokens.size() == 1 ? parse_int(l.tokens[0]) : std::nullopt;
      if (!k || *k != static_cast<int>(tri.tetrahedra.size())) {
        diags.push_back({l.number, "expected 'tet " + std::to_string(tri.tetrahedra.size()) + "'"});
        return std::nullopt;
      }
      current = *k;
      tri.tetrahedra.emplace_back();
      tet_line.push_back(l.number);
      seen.emplace_back();
      continue;
    }
    if (l.keyword == "cusp_equation") {
      std::vector<int> row;
      for (const auto& t : l.tokens) {
        const auto v = parse_int(t);
        if (!v) {
          diags.push_back({l.number, "cusp_equation: '" + t + "' is not an integer"});
          row.clear();
          break;
        }
        row.push_back(*v);
      }
      if (!row.empty()) tri.cusp_equations.push_back(std::move(row));
      continue;
    }
    if (current < 0) {
      diags.push_back({l.number, "'" + l.keyword + "' outside a tet block"});
      continue;
    }
    auto& tet = tri.tetrahedra[current];
    if (l.keyword == "neighbors") {
      if (auto v = parse_ints<4>(l, diags)) {
        tet.neighbors = *v;
        seen[current].neighbors = true;
      }
    } else if (l.keyword == "gluings") {
      bool ok = l.tokens.size() == 4;
      for (std::size_t f = 0; ok && f < 4; ++f) {
        const auto& tok = l.tokens[f];
        ok = tok.size() == 4;
        for (int k = 0; ok && k < 4; ++k) {
          ok = tok[k] >= '0' && tok[k] <= '3';
          if (ok) tet.gluings[f][k] = tok[k] - '0';
        }
      }
      if (!ok) diags.push_back({l.number, "gluings needs four permutations written as 4 digits 0-3"});
      else seen[current].gluings = true;
    } else if (l.keyword == "face_words") {
      if (l.tokens.size() != 4) {
        diags.push_back({l.number, "face_words needs 4 words (join letters with '.')"});
      } else {
        for (int f = 0; f < 4; ++f) {
          std::string w = l.tokens[f];
          std::replace(w.begin(), w.end(), '.', ' ');
          tet.face_words[f] = w;
        }
      }
    } else if (l.keyword == "edges") {
      if (auto v = parse_ints<6>(l, diags)) tet.declared_edges = *v;
    } else if (l.keyword == "cusps") {
      if (auto v = parse_ints<4>(l, diags)) tet.declared_cusps = *v;
    } else if (l.keyword == "orientation") {
      const auto v = l.tokens.size() == 1 ? parse_int(l.tokens[0]) : std::nullopt;
      if (!v || (*v != 1 && *v != -1)) diags.push_back({l.number, "orientation must be +1 or -1"});
      else tet.orientation = *v;
    } else {
      diags.push_back({l.number, "unknown keyword '" + l.keyword + "'"});
    }
  }
  for (std::size_t t = 0; t < seen.size(); ++t) {
    if (!seen[t].neighbors) diags.push_back({tet_line[t], "tet " + std::to_string(t) + " lacks 'neighbors'"});
    if (!seen[t].gluings) diags.push_back({tet_line[t], "tet " + std::to_string(t) + " lacks 'gluings'"});
  }
  if (declared_count && *declared_count != static_cast<int>(tri.tetrahedra.size())) {
    diags.push_back({0, "declared " + std::to_string(*declared_count) + " tetrahedra but found " +
                            std::to_string(tri.tetrahedra.size())});
  }
  if (diags.size() != before) return std::nullopt;

  std::vector<std::string> errors;
  if (!analyze_triangulation(tri, errors)) {
    static const std::regex tet_ref("tet ([0-9]+)");
    for (const auto& e : errors) {
      int line = 0;
      std::smatch m;
      if (std::regex_search(e, m, tet_ref)) {
        const auto t = static_cast<std::size_t>(std::stoul(m[1].str()));
        if (t < tet_line.size()) line = tet_line[t];
      }
      diags.push_back({line, e});
    }
    return std::nullopt;
  }
  return tri;
}

std::string print_presentation(const FinitePresentation& p) {
  std::string out = std::string(kHeaderPrefix) + "presentation 1\ngenerators";
  for (const auto& g : p.generators()) out += " " + g;
  out += "\n";
  for (const auto& r : p.relators()) out += "relator " + p.print_word(r) + "\n";
  return out;
}

std::string print_representation(const MatrixRepresentation& rep, LiftMode lift) {
  const auto& p = rep.presentation();
  std::string out = print_presentation(p);
  out.replace(0, out.find('\n'), std::string(kHeaderPrefix) + "representation 1");
  out += "lift " + lift_token(lift) + "\n";
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    out += "image " + p.generators()[g] + " " + format_matrix(rep.image(static_cast<int>(g))) + "\n";
  }
  return out;
}

std::string print_triangulation(const IdealTriangulation& tri) {
  std::ostringstream out;
  out << kHeaderPrefix << "triangulation 1\n";
  out << "tetrahedra " << tri.tetrahedra.size() << "\n";
  for (std::size_t t = 0; t < tri.tetrahedra.size(); ++t) {
    const auto& tet = tri.tetrahedra[t];
    out << "tet " << t << "\n  neighbors";
    for (int n : tet.neighbors) out << " " << n;
    out << "\n  gluings";
    for (const auto& p : tet.gluings) out << " " << p[0] << p[1] << p[2] << p[3];
    out << "\n  face_words";
    for (auto w : tet.face_words) {
      w = trim(w);
      if (w.empty()) w = "1";
      std::string joined;
      for (const auto& tok : split_ws(w)) joined += (joined.empty() ? "" : ".") + tok;
      out << " " << joined;
    }
    out << "\n";
    if (tet.declared_edges) {
      out << "  edges";
      for (int e : *tet.declared_edges) out << " " << e;
      out << "\n";
    }
    if (tet.declared_cusps) {
      out << "  cusps";
      for (int c : *tet.declared_cusps) out << " " << c;
      out << "\n";
    }
    out << "  orientation " << (tet.orientation > 0 ? "+1" : "-1") << "\n";
  }
  for (const auto& row : tri.cusp_equations) {
    out << "cusp_equation";
    for (int c : row) out << " " << c;
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

template <class T, class F>
T load_with(const std::filesystem::path& path, F&& parse) {
  const std::string text = read_text_file(path);
  std::vector<Diagnostic> diags;
  auto v = parse(text, diags);
  if (!v) {
    if (diags.empty()) diags.push_back({0, "could not be parsed"});
    throw ValidationError(format_diagnostics(path.string(), diags));
  }
  return std::move(*v);
}

}  // namespace

FinitePresentation load_presentation(const std::filesystem::path& path) {
  return load_with<FinitePresentation>(path, [](const std::string& t, auto& d) { return parse_presentation(t, d); });
}

MatrixRepresentation load_representation(const std::filesystem::path& path, LiftMode* lift) {
  return load_with<MatrixRepresentation>(
      path, [lift](const std::string& t, auto& d) { return parse_representation(t, d, lift); });
}

MutationFile load_mutation(const std::filesystem::path& path) {
  return load_with<MutationFile>(path, [](const std::string& t, auto& d) { return parse_mutation(t, d); });
}

IdealTriangulation load_triangulation(const std::filesystem::path& path) {
  return load_with<IdealTriangulation>(path,
                                       [](const std::string& t, auto& d) { return parse_triangulation(t, d); });
}

std::optional<FileKind> detect_kind(const std::string& text) {
  std::istringstream in(text);
  for (std::string raw; std::getline(in, raw);) {
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    for (auto kind : {FileKind::Presentation, FileKind::Representation, FileKind::Mutation, FileKind::Triangulation}) {
      if (s.rfind(std::string(kHeaderPrefix) + to_string(kind) + " ", 0) == 0) return kind;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Diagnostic> validate_text(const std::string& text) {
  std::vector<Diagnostic> diags;
  try {
    const auto kind = detect_kind(text);
    if (!kind) {
      diags.push_back({1, std::string("unrecognized header; expected '") + kHeaderPrefix + "<kind> 1'"});
      return diags;
    }
    switch (*kind) {
      case FileKind::Presentation: parse_presentation(text, diags); break;
      case FileKind::Representation: parse_representation(text, diags); break;
      case FileKind::Mutation: parse_mutation(text, diags); break;
      case FileKind::Triangulation: parse_triangulation(text, diags); break;
    }
  } catch (const std::exception& e) {
    diags.push_back({0, e.what()});
  }
  return diags;
}

std::vector<Diagnostic> validate_file(const std::filesystem::path& path) {
  try {
    return validate_text(read_text_file(path));
  } catch (const std::exception& e) {
    return {{0, e.what()}};
  }
}

}  // namespace mutkit
