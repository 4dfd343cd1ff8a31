#include "mutkit/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "mutkit/errors.hpp"

namespace mutkit {

std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const auto& x : letters) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

GroupWord::GroupWord(std::vector<Letter> letters) {
  for (const auto& x : letters) {
    if (x.exponent != 1 && x.exponent != -1) throw ValidationError("word letter exponent must be +-1");
    if (x.generator < 0) throw ValidationError("negative generator index in word");
  }
  letters_ = free_reduce(letters);
}

int GroupWord::max_generator() const {
  int best = -1;
  for (const auto& x : letters_) best = std::max(best, x.generator);
  return best;
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  GroupWord w;
  w.letters_ = std::move(out);
  return w;
}

GroupWord operator*(const GroupWord& x, const GroupWord& y) {
  std::vector<Letter> joined = x.letters_;
  joined.insert(joined.end(), y.letters_.begin(), y.letters_.end());
  return GroupWord(std::move(joined));
}

GroupWord power(const GroupWord& w, int n) {
  const GroupWord base = n < 0 ? w.inverse() : w;
  GroupWord out;
  for (int k = 0; k < std::abs(n); ++k) out = out * base;
  return out;
}

GroupWord substitute(const GroupWord& w, std::span<const GroupWord> images) {
  std::vector<Letter> out;
  for (const auto& x : w.letters()) {
    if (static_cast<std::size_t>(x.generator) >= images.size()) {
      throw ValidationError("substitute: generator index " + std::to_string(x.generator) +
                            " has no image");
    }
    const GroupWord& img = x.exponent > 0 ? images[x.generator] : images[x.generator].inverse();
    out.insert(out.end(), img.letters().begin(), img.letters().end());
  }
  return GroupWord(std::move(out));
}

// ---------------------------------------------------------------------------

bool is_valid_generator_name(std::string_view name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

FinitePresentation::FinitePresentation(std::vector<std::string> generators,
                                       std::vector<GroupWord> relators)
    : generators_(std::move(generators)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!is_valid_generator_name(g)) throw ValidationError("invalid generator name '" + g + "'");
    if (!seen.insert(g).second) throw ValidationError("duplicate generator name '" + g + "'");
  }
  for (std::size_t r = 0; r < relators_.size(); ++r) {
    if (relators_[r].empty()) {
      throw ValidationError("relator " + std::to_string(r) + " is empty after free reduction");
    }
    if (relators_[r].max_generator() >= static_cast<int>(generators_.size())) {
      throw ValidationError("relator " + std::to_string(r) + " references generator index " +
                            std::to_string(relators_[r].max_generator()) + " out of range");
    }
  }
}

int FinitePresentation::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (generators_[k] == name) return static_cast<int>(k);
  }
  return -1;
}

GroupWord FinitePresentation::parse_word(std::string_view text) const {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "1") continue;
    int exponent = 1;
    if (const auto caret = token.find('^'); caret != std::string_view::npos) {
      const auto exp_text = token.substr(caret + 1);
      const auto* first = exp_text.data();
      const auto* last = exp_text.data() + exp_text.size();
      const auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (ec != std::errc() || ptr != last || exponent == 0) {
        throw ValidationError("bad exponent in token '" + std::string(token) + "'");
      }
      token = token.substr(0, caret);
    }
    const int index = index_of(token);
    if (index < 0) throw ValidationError("unknown generator '" + std::string(token) + "'");
    const int step = exponent > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(exponent); ++k) letters.push_back({index, step});
  }
  return GroupWord(std::move(letters));
}

std::string FinitePresentation::print_word(const GroupWord& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& x : w.letters()) {
    if (x.generator >= static_cast<int>(generators_.size())) {
      throw ValidationError("print_word: generator index out of range");
    }
    if (!out.empty()) out += ' ';
    out += generators_[x.generator];
    if (x.exponent < 0) out += "^-1";
  }
  return out;
}

// ---------------------------------------------------------------------------

void validate_inclusion(const FinitePresentation& ambient, const SurfaceInclusion& inc) {
  const auto g = inc.surface_generators.size();
  if (g == 0) throw ValidationError("surface inclusion has no generators");
  if (inc.tau_star.size() != g) {
    throw ValidationError("tau_star has " + std::to_string(inc.tau_star.size()) + " images for " +
                          std::to_string(g) + " surface generators");
  }
  if (inc.order_m < 1) throw ValidationError("order_m must be positive");
  for (std::size_t j = 0; j < g; ++j) {
    if (inc.surface_generators[j].max_generator() >= static_cast<int>(ambient.generator_count())) {
      throw ValidationError("surface generator " + std::to_string(j) +
                            " references an ambient generator out of range");
    }
    if (inc.tau_star[j].max_generator() >= static_cast<int>(g)) {
      throw ValidationError("tau_star image " + std::to_string(j) +
                            " references a surface generator out of range");
    }
  }
  std::vector<GroupWord> iterate;
  for (std::size_t j = 0; j < g; ++j) iterate.push_back(GroupWord::generator(static_cast<int>(j)));
  for (int k = 0; k < inc.order_m; ++k) {
    for (auto& w : iterate) w = substitute(w, inc.tau_star);
  }
  for (std::size_t j = 0; j < g; ++j) {
    if (iterate[j] != GroupWord::generator(static_cast<int>(j))) {
      throw ValidationError("tau_star^" + std::to_string(inc.order_m) +
                            " is not the identity on surface generator " + std::to_string(j));
    }
  }
}

FinitePresentation build_extended_presentation(const FinitePresentation& m_pres,
                                               const SurfaceInclusion& inc,
                                               const std::string& t_name) {
  validate_inclusion(m_pres, inc);
  auto gens = m_pres.generators();
  if (m_pres.index_of(t_name) >= 0) throw ValidationError("generator name '" + t_name + "' already in use");
  gens.push_back(t_name);
  const int t = static_cast<int>(gens.size()) - 1;
  auto relators = m_pres.relators();
  const GroupWord tw = GroupWord::generator(t);
  for (std::size_t j = 0; j < inc.surface_generators.size(); ++j) {
    const GroupWord image = substitute(inc.tau_star[j], inc.surface_generators);
    relators.push_back(tw * inc.surface_generators[j] * tw.inverse() * image.inverse());
  }
  return FinitePresentation(std::move(gens), std::move(relators));
}

namespace {

GroupWord shift_generators(const GroupWord& w, int offset) {
  std::vector<Letter> letters = w.letters();
  for (auto& x : letters) x.generator += offset;
  return GroupWord(std::move(letters));
}

void check_words(std::span<const GroupWord> words, std::size_t count, std::size_t generators,
                 const char* what) {
  if (words.size() != count) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(count) + " words, got " +
                          std::to_string(words.size()));
  }
  for (const auto& w : words) {
    if (w.max_generator() >= static_cast<int>(generators)) {
      throw ValidationError(std::string(what) + ": generator index out of range");
    }
  }
}

}  // namespace

FinitePresentation build_mutant_amalgam(const FinitePresentation& p1, const FinitePresentation& p2,
                                        std::span<const GroupWord> phi1,
                                        std::span<const GroupWord> phi2,
                                        std::span<const GroupWord> tau_star) {
  const std::size_t g = phi1.size();
  check_words(phi1, g, p1.generator_count(), "phi1");
  check_words(phi2, g, p2.generator_count(), "phi2");
  check_words(tau_star, g, g, "tau_star");
  std::vector<std::string> gens = p1.generators();
  std::set<std::string> used(gens.begin(), gens.end());
  for (std::string name : p2.generators()) {
    while (used.count(name) != 0) name += "_2";
    used.insert(name);
    gens.push_back(name);
  }
  const int offset = static_cast<int>(p1.generator_count());
  std::vector<GroupWord> relators = p1.relators();
  for (const auto& r : p2.relators()) relators.push_back(shift_generators(r, offset));
  for (std::size_t j = 0; j < g; ++j) {
    const GroupWord lhs = substitute(tau_star[j], phi1);
    const GroupWord rhs = shift_generators(phi2[j], offset);
    const GroupWord rel = lhs * rhs.inverse();
    if (!rel.empty()) relators.push_back(rel);
  }
  return FinitePresentation(std::move(gens), std::move(relators));
}

FinitePresentation build_mutant_hnn(const FinitePresentation& pN, std::span<const GroupWord> phi1,
                                    std::span<const GroupWord> phi2,
                                    std::span<const GroupWord> alpha_then_tau,
                                    const std::string& stable_name) {
  const std::size_t g = phi1.size();
  check_words(phi1, g, pN.generator_count(), "phi1");
  check_words(phi2, g, pN.generator_count(), "phi2");
  check_words(alpha_then_tau, g, g, "alpha_then_tau");
  if (pN.index_of(stable_name) >= 0) {
    throw ValidationError("generator name '" + stable_name + "' already in use");
  }
  auto gens = pN.generators();
  gens.push_back(stable_name);
  const GroupWord u = GroupWord::generator(static_cast<int>(gens.size()) - 1);
  auto relators = pN.relators();
  for (std::size_t j = 0; j < g; ++j) {
    const GroupWord image = substitute(alpha_then_tau[j], phi2);
    relators.push_back(u * phi1[j] * u.inverse() * image.inverse());
  }
  return FinitePresentation(std::move(gens), std::move(relators));
}

int cover_homomorphism_value(const GroupWord& w, int t_index, int modulus) {
  if (modulus < 1) throw ValidationError("cover modulus must be positive");
  long sum = 0;
  for (const auto& x : w.letters()) {
    if (x.generator == t_index) sum += x.exponent;
  }
  return static_cast<int>(((sum % modulus) + modulus) % modulus);
}

CoverData kernel_presentation_generators(const FinitePresentation& x_pres, int t_index, int degree) {
  if (t_index < 0 || t_index >= static_cast<int>(x_pres.generator_count())) {
    throw ValidationError("NotSurjective: generator t is absent from the presentation");
  }
  if (degree < 1) throw ValidationError("cover degree must be positive");
  CoverData cover;
  cover.degree = degree;
  cover.t_index = t_index;
  const GroupWord t = GroupWord::generator(t_index);
  for (int k = 0; k < degree; ++k) cover.coset_representatives.push_back(power(t, k));
  const int n = static_cast<int>(x_pres.generator_count());
  for (int k = 0; k < degree; ++k) {
    std::vector<int> row(n, k);
    row[t_index] = (k + 1) % degree;
    cover.coset_table.push_back(std::move(row));
    for (int s = 0; s < n; ++s) {
      if (s == t_index) continue;
      const GroupWord& rep = cover.coset_representatives[k];
      cover.kernel_generators.push_back(rep * GroupWord::generator(s) * rep.inverse());
    }
  }
  cover.kernel_generators.push_back(power(t, degree));
  return cover;
}

}  // namespace mutkit
