#include "mutkit/dilog.hpp"

#include <array>
#include <cmath>

#include "mutkit/errors.hpp"

namespace mutkit {

namespace {

// B_{2k} / (2k + 1)! for k = 1..17.
constexpr std::array<double, 17> kBernoulliOverFactorial = [] {
  constexpr std::array<double, 17> bernoulli = {
      1.0 / 6.0,
      -1.0 / 30.0,
      1.0 / 42.0,
      -1.0 / 30.0,
      5.0 / 66.0,
      -691.0 / 2730.0,
      7.0 / 6.0,
      -3617.0 / 510.0,
      43867.0 / 798.0,
      -174611.0 / 330.0,
      854513.0 / 138.0,
      -236364091.0 / 2730.0,
      8553103.0 / 6.0,
      -23749461029.0 / 870.0,
      8615841276005.0 / 14322.0,
      -7709321041217.0 / 510.0,
      2577687858367.0 / 6.0,
  };
  std::array<double, 17> out{};
  double factorial = 1.0;  // (2k + 1)!
  int n = 1;
  for (std::size_t k = 0; k < bernoulli.size(); ++k) {
    factorial *= static_cast<double>(n + 1) * static_cast<double>(n + 2);
    n += 2;
    out[k] = bernoulli[k] / factorial;
  }
  return out;
}();

// Li2(z) for |z| <= 1, Re z <= 1/2 via the Bernoulli series in
// u = -log(1 - z); there |u| < 1.3, well inside the radius 2 pi.
Complex li2_reduced(Complex z) {
  const Complex u = -std::log(Complex(1) - z);
  const Complex u2 = u * u;
  Complex term = u * u2;  // u^3
  Complex sum = u - u2 / 4.0;
  for (double c : kBernoulliOverFactorial) {
    const Complex add = c * term;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= u2;
  }
  return sum;
}

double bloch_wigner_reduced(Complex z) {
  return li2_reduced(z).imag() + std::arg(Complex(1) - z) * std::log(std::abs(z));
}

}  // namespace

bool bloch_wigner_degenerate(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
  return z == Complex(0) || z == Complex(1);
}

double bloch_wigner(Complex z) {
  if (bloch_wigner_degenerate(z) || z.imag() == 0.0) return 0.0;
  // D(1/z) = -D(z) and D(1 - z) = -D(z) bring z into |z| <= 1, Re z <= 1/2.
  double sign = 1.0;
  for (int step = 0; step < 4; ++step) {
    if (std::abs(z) > 1.0) {
      z = Complex(1) / z;
      sign = -sign;
    } else if (z.real() > 0.5) {
      z = Complex(1) - z;
      sign = -sign;
    } else {
      break;
    }
  }
  return sign * bloch_wigner_reduced(z);
}

namespace {

// [p, q] = u_p v_q - u_q v_p, proportional to p - q in the affine chart.
Complex bracket(const SpherePoint& p, const SpherePoint& q) { return p.u() * q.v() - q.u() * p.v(); }

}  // namespace

std::optional<Complex> try_cross_ratio(const SpherePoint& p0, const SpherePoint& p1,
                                       const SpherePoint& p2, const SpherePoint& p3, double tol) {
  const std::array<const SpherePoint*, 4> pts = {&p0, &p1, &p2, &p3};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (chordal_distance(*pts[i], *pts[j]) <= tol) return std::nullopt;
    }
  }
  // Image of p3 under the Moebius map sending p0, p1, p2 to 0, 1, inf.
  return (bracket(p3, p0) * bracket(p1, p2)) / (bracket(p3, p2) * bracket(p1, p0));
}

Complex cross_ratio(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& p2,
                    const SpherePoint& p3, double tol) {
  auto cr = try_cross_ratio(p0, p1, p2, p3, tol);
  if (!cr) throw CheckFailure("Degenerate: cross-ratio of coincident points");
  return *cr;
}

}  // namespace mutkit
