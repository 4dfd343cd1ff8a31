#include "mutkit/moebius.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mutkit/errors.hpp"

namespace mutkit {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

MoebiusMatrix MoebiusMatrix::checked(Complex a, Complex b, Complex c, Complex d, double det_tol) {
  MoebiusMatrix m(a, b, c, d);
  if (!m.is_finite()) throw ValidationError("matrix has a non-finite entry");
  const double err = std::abs(m.det() - Complex(1));
  if (err > det_tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "matrix determinant differs from 1 by %.3e", err);
    throw ValidationError(buf);
  }
  return m;
}

MoebiusMatrix MoebiusMatrix::normalized(Complex a, Complex b, Complex c, Complex d) {
  MoebiusMatrix m(a, b, c, d);
  if (!m.is_finite()) throw ValidationError("matrix has a non-finite entry");
  const Complex det = m.det();
  if (std::abs(det) == 0.0) throw ValidationError("singular matrix cannot be normalized");
  return (Complex(1) / std::sqrt(det)) * m;
}

MoebiusMatrix operator*(const MoebiusMatrix& x, const MoebiusMatrix& y) {
  const auto& p = x.m_;
  const auto& q = y.m_;
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
          p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
}

double MoebiusMatrix::norm() const {
  double s = 0.0;
  for (const auto& z : m_) s += std::norm(z);
  return std::sqrt(s);
}

bool MoebiusMatrix::is_finite() const {
  return std::all_of(m_.begin(), m_.end(), finite);
}

double distance(const MoebiusMatrix& x, const MoebiusMatrix& y) { return (x - y).norm(); }

double projective_distance(const MoebiusMatrix& x, const MoebiusMatrix& y) {
  return std::min(distance(x, y), distance(x, -y));
}

MoebiusMatrix conjugate(const MoebiusMatrix& g, const MoebiusMatrix& x) {
  return g * x * g.inverse();
}

MoebiusMatrix power(const MoebiusMatrix& x, std::int64_t n) {
  MoebiusMatrix base = n < 0 ? x.inverse() : x;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  MoebiusMatrix result;
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

MoebiusMatrix commutator(const MoebiusMatrix& g, const MoebiusMatrix& h) {
  return g * h * g.inverse() * h.inverse();
}

// ---------------------------------------------------------------------------

SpherePoint::SpherePoint(Complex u, Complex v) {
  if (!finite(u) || !finite(v)) throw ValidationError("sphere point has a non-finite coordinate");
  const double scale = std::max(std::abs(u), std::abs(v));
  if (scale == 0.0) throw ValidationError("sphere point 0:0 is undefined");
  u_ = u / scale;
  v_ = v / scale;
}

std::optional<Complex> SpherePoint::affine() const {
  if (v_ == Complex(0)) return std::nullopt;
  return u_ / v_;
}

std::array<double, 3> SpherePoint::to_r3() const {
  const double nu = std::norm(u_);
  const double nv = std::norm(v_);
  const Complex w = u_ * std::conj(v_);
  const double s = nu + nv;
  return {2.0 * w.real() / s, 2.0 * w.imag() / s, (nu - nv) / s};
}

SpherePoint SpherePoint::from_r3(const std::array<double, 3>& x) {
  // Inverse of to_r3, using whichever pole is farther away.
  if (x[2] <= 0.0) return {Complex(x[0], x[1]), Complex(1.0 - x[2])};
  return {Complex(1.0 + x[2]), Complex(x[0], -x[1])};
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  const auto x = p.to_r3();
  const auto y = q.to_r3();
  return std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) +
                   (x[2] - y[2]) * (x[2] - y[2]));
}

SpherePoint moebius_apply(const MoebiusMatrix& m, const SpherePoint& p) {
  return {m.a() * p.u() + m.b() * p.v(), m.c() * p.u() + m.d() * p.v()};
}

// ---------------------------------------------------------------------------

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Identity: return "identity";
    case ElementKind::Parabolic: return "parabolic";
    case ElementKind::Elliptic: return "elliptic";
    case ElementKind::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

bool is_plus_minus_identity(const MoebiusMatrix& m, double tol) {
  return projective_distance(m, MoebiusMatrix::identity()) < tol;
}

ElementClass classify(const MoebiusMatrix& m, double tol) {
  const Complex tr = m.trace();
  if (is_plus_minus_identity(m, tol)) return {ElementKind::Identity, tr};
  if (std::abs(tr - Complex(2)) < tol || std::abs(tr + Complex(2)) < tol) {
    return {ElementKind::Parabolic, tr};
  }
  if (std::abs(tr.imag()) < tol && std::abs(tr.real()) < 2.0) return {ElementKind::Elliptic, tr};
  return {ElementKind::Loxodromic, tr};
}

namespace {

// Eigenvector direction of m for eigenvalue lambda, from the better
// conditioned of the two rows of (m - lambda).
SpherePoint eigen_direction(const MoebiusMatrix& m, Complex lambda) {
  const Complex u1 = m.b(), v1 = lambda - m.a();
  const Complex u2 = lambda - m.d(), v2 = m.c();
  if (std::norm(u1) + std::norm(v1) >= std::norm(u2) + std::norm(v2)) return {u1, v1};
  return {u2, v2};
}

}  // namespace

std::vector<SpherePoint> fixed_points(const MoebiusMatrix& m, double tol) {
  if (is_plus_minus_identity(m, tol)) {
    throw ValidationError("fixed_points: every point is fixed by +-identity");
  }
  const Complex tr = m.trace();
  const Complex disc = std::sqrt(tr * tr - Complex(4) * m.det());
  if (std::abs(disc) < std::sqrt(tol)) {
    return {eigen_direction(m, tr / 2.0)};
  }
  Complex l1 = (tr + disc) / 2.0;
  Complex l2 = (tr - disc) / 2.0;
  // The eigenvalue of larger modulus belongs to the attracting fixed point.
  if (std::abs(l2) > std::abs(l1) || (std::abs(l2) == std::abs(l1) && std::arg(l2) > std::arg(l1))) {
    std::swap(l1, l2);
  }
  return {eigen_direction(m, l1), eigen_direction(m, l2)};
}

std::optional<SpherePoint> attracting_fixed_point(const MoebiusMatrix& m, double tol) {
  const auto cls = classify(m, tol);
  if (cls.kind == ElementKind::Identity || cls.kind == ElementKind::Elliptic) return std::nullopt;
  return fixed_points(m, tol).front();
}

// ---------------------------------------------------------------------------

MoebiusMatrix canonical_sign(const MoebiusMatrix& m) {
  double scale = 0.0;
  for (const auto& z : m.entries()) scale = std::max(scale, std::abs(z));
  for (const auto& z : m.entries()) {
    const double r = std::abs(z);
    if (r <= 1e-8 * scale) continue;
    // Snap nearly-imaginary entries so the +-pi/2 boundary is stable.
    if (std::abs(z.real()) <= 1e-12 * r) return z.imag() > 0 ? m : -m;
    return z.real() > 0 ? m : -m;
  }
  return m;
}

ConjugatorSolution solve_conjugator(std::span<const MoebiusMatrix> source,
                                    std::span<const MoebiusMatrix> target,
                                    const MoebiusTolerances& tol) {
  if (source.empty() || source.size() != target.size()) {
    throw ValidationError("solve_conjugator: source and target must be nonempty and of equal length");
  }
  const auto rows = static_cast<Eigen::Index>(4 * source.size());
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(rows, 4);
  // Unknown X = [[x0, x1], [x2, x3]]; row (i, j) of T X - X S is
  // sum_k T_ik X_kj - sum_l X_il S_lj.
  for (std::size_t p = 0; p < source.size(); ++p) {
    const auto& s = source[p].entries();
    const auto& t = target[p].entries();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const auto row = static_cast<Eigen::Index>(4 * p + 2 * i + j);
        for (int k = 0; k < 2; ++k) {
          system(row, 2 * k + j) += t[2 * i + k];
          system(row, 2 * i + k) -= s[2 * k + j];
        }
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  ConjugatorDiagnostics diag;
  const double largest = sv(0);
  if (largest == 0.0) {
    throw ConjugatorError(ConjugatorFailure::Ambiguous, "all source/target matrices are zero");
  }
  for (int k = 0; k < 4; ++k) diag.relative_singular_values[k] = sv(k) / largest;
  int null_dim = 0;
  for (int k = 0; k < 4; ++k) {
    if (diag.relative_singular_values[k] < tol.nullspace) ++null_dim;
  }
  diag.nullspace_dimension = null_dim;
  diag.smallest_retained = null_dim < 4 ? diag.relative_singular_values[3 - null_dim] : 0.0;
  diag.largest_discarded = null_dim > 0 ? diag.relative_singular_values[4 - null_dim] : 0.0;
  if (null_dim == 0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "no conjugator: smallest relative singular value %.3e above cutoff %.1e",
                  diag.relative_singular_values[3], tol.nullspace);
    throw ConjugatorError(ConjugatorFailure::NoSolution, buf);
  }
  if (null_dim >= 2) {
    throw ConjugatorError(ConjugatorFailure::Ambiguous,
                          "nullspace of dimension " + std::to_string(null_dim) +
                              " (elementary or reducible source group)");
  }
  const Eigen::VectorXcd x = svd.matrixV().col(3);
  MoebiusMatrix candidate(x(0), x(1), x(2), x(3));
  const Complex det = candidate.det();
  if (std::abs(det) < 1e-9 * candidate.norm() * candidate.norm()) {
    throw ConjugatorError(ConjugatorFailure::Degenerate, "nullspace vector has determinant ~ 0");
  }
  const MoebiusMatrix a = canonical_sign((Complex(1) / std::sqrt(det)) * candidate);
  for (std::size_t p = 0; p < source.size(); ++p) {
    diag.residual = std::max(diag.residual, distance(target[p], conjugate(a, source[p])));
  }
  diag.residual_warning = diag.residual > tol.residual_warning;
  return {a, diag};
}

FiniteOrderCertificate finite_order_certificate(const MoebiusMatrix& a, int m, double tol) {
  if (m < 1) throw ValidationError("finite_order_certificate: order must be >= 1");
  const MoebiusMatrix am = power(a, m);
  const double plus = distance(am, MoebiusMatrix::identity());
  const double minus = distance(am, -MoebiusMatrix::identity());
  FiniteOrderCertificate cert;
  cert.sign = plus <= minus ? 1 : -1;
  cert.residual = std::min(plus, minus);
  cert.double_order_residual = distance(am * am, MoebiusMatrix::identity());
  if (cert.residual >= tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "A^%d is not +-1 (distance %.3e, tolerance %.1e)", m, cert.residual, tol);
    throw ConjugatorError(ConjugatorFailure::NotFiniteOrder, buf);
  }
  return cert;
}

std::string format_matrix(const MoebiusMatrix& m) {
  std::string out = "[";
  char buf[80];
  bool first = true;
  for (const auto& z : m.entries()) {
    std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g]", first ? "" : ",", z.real() + 0.0, z.imag() + 0.0);
    out += buf;
    first = false;
  }
  return out + "]";
}

}  // namespace mutkit
