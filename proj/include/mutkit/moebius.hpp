#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mutkit {

using Complex = std::complex<double>;

struct MoebiusTolerances {
  double det = 1e-10;
  /// Relative singular-value cutoff for the conjugator nullspace.
  double nullspace = 1e-9;
  /// Conjugation residual above which a solved conjugator is flagged.
  double residual_warning = 1e-8;
};

/// 2x2 complex matrix, nominally of determinant one, acting on the Riemann
/// sphere by linear fractional transformations.
///
/// The determinant invariant is enforced where matrices enter the library
/// (`checked`, `normalized`); products are not re-normalized.
class MoebiusMatrix {
 public:
  constexpr MoebiusMatrix() : m_{Complex(1), Complex(0), Complex(0), Complex(1)} {}
  constexpr MoebiusMatrix(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {}

  /// Throws ValidationError if an entry is not finite or |det - 1| > det_tol.
  static MoebiusMatrix checked(Complex a, Complex b, Complex c, Complex d,
                               double det_tol = MoebiusTolerances{}.det);
  /// Divides by a square root of the determinant. Throws on det == 0.
  static MoebiusMatrix normalized(Complex a, Complex b, Complex c, Complex d);
  static constexpr MoebiusMatrix identity() { return {}; }

  constexpr Complex a() const { return m_[0]; }
  constexpr Complex b() const { return m_[1]; }
  constexpr Complex c() const { return m_[2]; }
  constexpr Complex d() const { return m_[3]; }
  constexpr const std::array<Complex, 4>& entries() const { return m_; }

  Complex det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  Complex trace() const { return m_[0] + m_[3]; }
  /// Adjugate; equals the inverse when det == 1.
  MoebiusMatrix inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

  MoebiusMatrix operator-() const { return {-m_[0], -m_[1], -m_[2], -m_[3]}; }
  friend MoebiusMatrix operator*(const MoebiusMatrix& x, const MoebiusMatrix& y);
  friend MoebiusMatrix operator*(Complex s, const MoebiusMatrix& x) {
    return {s * x.m_[0], s * x.m_[1], s * x.m_[2], s * x.m_[3]};
  }
  MoebiusMatrix operator+(const MoebiusMatrix& o) const {
    return {m_[0] + o.m_[0], m_[1] + o.m_[1], m_[2] + o.m_[2], m_[3] + o.m_[3]};
  }
  MoebiusMatrix operator-(const MoebiusMatrix& o) const { return *this + (-o); }

  /// Frobenius norm.
  double norm() const;
  bool is_finite() const;

 private:
  std::array<Complex, 4> m_;
};

/// Frobenius distance.
double distance(const MoebiusMatrix& x, const MoebiusMatrix& y);
/// min over s in {+1,-1} of distance(x, s*y): the PSL(2,C) distance.
double projective_distance(const MoebiusMatrix& x, const MoebiusMatrix& y);
MoebiusMatrix conjugate(const MoebiusMatrix& g, const MoebiusMatrix& x);
/// x^n by repeated squaring; negative n uses the inverse.
MoebiusMatrix power(const MoebiusMatrix& x, std::int64_t n);
/// Commutator g h g^-1 h^-1.
MoebiusMatrix commutator(const MoebiusMatrix& g, const MoebiusMatrix& h);

/// Point u:v of the Riemann sphere, stored with max(|u|, |v|) == 1.
class SpherePoint {
 public:
  /// Throws ValidationError for (0, 0) or non-finite input.
  SpherePoint(Complex u, Complex v);
  static SpherePoint from_complex(Complex z) { return {z, Complex(1)}; }
  static SpherePoint infinity() { return {Complex(1), Complex(0)}; }

  Complex u() const { return u_; }
  Complex v() const { return v_; }
  bool is_infinity(double tol = 0.0) const { return std::abs(v_) <= tol; }
  /// Affine coordinate u/v; nullopt at infinity.
  std::optional<Complex> affine() const;
  /// Point on the unit sphere in R^3 under inverse stereographic projection.
  std::array<double, 3> to_r3() const;
  static SpherePoint from_r3(const std::array<double, 3>& x);

 private:
  Complex u_;
  Complex v_;
};

/// Chordal distance: Euclidean distance of the R^3 images, in [0, 2].
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

SpherePoint moebius_apply(const MoebiusMatrix& m, const SpherePoint& p);

enum class ElementKind { Identity, Parabolic, Elliptic, Loxodromic };

const char* to_string(ElementKind kind);

struct ElementClass {
  ElementKind kind;
  Complex trace;
};

ElementClass classify(const MoebiusMatrix& m, double tol = 1e-10);

bool is_plus_minus_identity(const MoebiusMatrix& m, double tol);

/// Fixed points of a non-central element. Parabolic elements yield one
/// point; for loxodromic elements the attracting point comes first.
/// Throws ValidationError if m = +-1.
std::vector<SpherePoint> fixed_points(const MoebiusMatrix& m, double tol = 1e-10);

/// Attracting fixed point of a loxodromic element or the fixed point of a
/// parabolic one; nullopt for elliptic and central elements.
std::optional<SpherePoint> attracting_fixed_point(const MoebiusMatrix& m, double tol = 1e-10);

struct ConjugatorDiagnostics {
  int nullspace_dimension = 0;
  /// Singular values of the stacked system, descending, relative to the largest.
  std::array<double, 4> relative_singular_values{};
  double smallest_retained = 0.0;
  double largest_discarded = 0.0;
  double residual = 0.0;
  bool residual_warning = false;
};

struct ConjugatorSolution {
  MoebiusMatrix conjugator;
  ConjugatorDiagnostics diagnostics;
};

/// Finds A in SL(2,C) with target[j] = A source[j] A^-1 for every j.
///
/// The equations target[j] A - A source[j] = 0 are linear in the entries of
/// A; their numerical nullspace must be one-dimensional. The returned
/// representative of +-A has its first non-negligible entry (in a, b, c, d
/// order) with argument in (-pi/2, pi/2].
///
/// Throws ConjugatorError (NoSolution, Ambiguous, Degenerate) and
/// ValidationError for mismatched or empty inputs.
ConjugatorSolution solve_conjugator(std::span<const MoebiusMatrix> source,
                                    std::span<const MoebiusMatrix> target,
                                    const MoebiusTolerances& tol = {});

/// Fixes the +-A sign ambiguity per the convention of solve_conjugator.
MoebiusMatrix canonical_sign(const MoebiusMatrix& m);

struct FiniteOrderCertificate {
  int sign = 1;             ///< A^m = sign * 1
  double residual = 0.0;    ///< |A^m - sign * 1|
  double double_order_residual = 0.0;  ///< |A^{2m} - 1|
};

/// Certifies A^m = +-1 within tol. Throws ConjugatorError(NotFiniteOrder).
FiniteOrderCertificate finite_order_certificate(const MoebiusMatrix& a, int m, double tol = 1e-10);

std::string format_matrix(const MoebiusMatrix& m);

}  // namespace mutkit
