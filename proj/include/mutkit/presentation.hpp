#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mutkit {

struct Letter {
  int generator = 0;
  int exponent = 1;  ///< +1 or -1

  Letter inverse() const { return {generator, -exponent}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the generators of some presentation.
class GroupWord {
 public:
  GroupWord() = default;
  /// Reduces the letter sequence freely.
  explicit GroupWord(std::vector<Letter> letters);
  static GroupWord generator(int index, int exponent = 1) { return GroupWord({{index, exponent}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int max_generator() const;

  GroupWord inverse() const;
  friend GroupWord operator*(const GroupWord& x, const GroupWord& y);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
std::vector<Letter> free_reduce(std::span<const Letter> letters);

GroupWord power(const GroupWord& w, int n);

/// Replaces each generator g by images[g] (an endomorphism of free groups).
GroupWord substitute(const GroupWord& w, std::span<const GroupWord> images);

class FinitePresentation {
 public:
  FinitePresentation() = default;
  /// Throws ValidationError on duplicate or malformed names, out-of-range
  /// indices, or empty relators.
  FinitePresentation(std::vector<std::string> generators, std::vector<GroupWord> relators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<GroupWord>& relators() const { return relators_; }
  std::size_t generator_count() const { return generators_.size(); }
  /// Index of a generator name, or -1.
  int index_of(std::string_view name) const;

  /// Parses "t a t^-1 a" style words; "1" or "" is the empty word.
  GroupWord parse_word(std::string_view text) const;
  std::string print_word(const GroupWord& w) const;

 private:
  std::vector<std::string> generators_;
  std::vector<GroupWord> relators_;
};

bool is_valid_generator_name(std::string_view name);

/// Data of the surface subgroup and the mutation symmetry on it.
///
/// surface_generators[j] is a word in the ambient presentation; tau_star[j]
/// is the image of surface generator j as a word in the surface generators.
struct SurfaceInclusion {
  std::vector<GroupWord> surface_generators;
  std::vector<GroupWord> tau_star;
  int order_m = 1;
  std::vector<std::string> surface_names;  ///< optional, for printing
};

/// Checks lengths, indices, and that tau_star^order_m is the identity on
/// free words. Throws ValidationError.
void validate_inclusion(const FinitePresentation& ambient, const SurfaceInclusion& inc);

/// pi_1 X = <S, t | R, t h_j t^-1 = tau_*(h_j)>. The new generator t is
/// appended last and named `t_name`.
FinitePresentation build_extended_presentation(const FinitePresentation& m_pres,
                                               const SurfaceInclusion& inc,
                                               const std::string& t_name = "t");

/// Abstract amalgam of p1 and p2 identifying phi1(tau_* h_j) with phi2(h_j).
/// Generators of p1 come first, then those of p2 (renamed on collision by
/// appending "_2").
FinitePresentation build_mutant_amalgam(const FinitePresentation& p1, const FinitePresentation& p2,
                                        std::span<const GroupWord> phi1,
                                        std::span<const GroupWord> phi2,
                                        std::span<const GroupWord> tau_star);

/// HNN extension of pN with stable letter u (appended last):
/// u phi1(h_j) u^-1 = phi2(alpha_then_tau(h_j)).
FinitePresentation build_mutant_hnn(const FinitePresentation& pN, std::span<const GroupWord> phi1,
                                    std::span<const GroupWord> phi2,
                                    std::span<const GroupWord> alpha_then_tau,
                                    const std::string& stable_name = "u");

/// Exponent sum of generator t_index in w, reduced into [0, modulus).
int cover_homomorphism_value(const GroupWord& w, int t_index, int modulus);

struct CoverData {
  int degree = 1;
  int t_index = 0;
  std::vector<GroupWord> coset_representatives;  ///< t^0 ... t^{degree-1}
  /// t^k s t^-k for each non-t generator s (k-major order), then t^degree.
  std::vector<GroupWord> kernel_generators;
  /// coset_table[k][g] = coset reached from coset k by generator g.
  std::vector<std::vector<int>> coset_table;
};

/// Reidemeister-Schreier generators of the kernel of a: t -> 1, s -> 0
/// (mod degree) with transversal {t^k}. Throws ValidationError
/// ("NotSurjective") if t_index is not a generator.
CoverData kernel_presentation_generators(const FinitePresentation& x_pres, int t_index, int degree);

}  // namespace mutkit
