#include <doctest.h>

#include <cmath>
#include <random>

#include "mutkit/errors.hpp"
#include "mutkit/moebius.hpp"

using namespace mutkit;

namespace {

const Complex kI(0, 1);
const MoebiusMatrix kA(1, 2, 0, 1);
const MoebiusMatrix kB(1, 0, 2, 1);

struct Rng {
  std::mt19937_64 gen{12345};
  std::normal_distribution<double> normal{0.0, 1.0};

  Complex complex() { return {normal(gen), normal(gen)}; }
  MoebiusMatrix matrix() {
    for (;;) {
      Complex a = complex(), b = complex(), c = complex(), d = complex();
      if (std::abs(a * d - b * c) > 0.1) return MoebiusMatrix::normalized(a, b, c, d);
    }
  }
  SpherePoint point() { return SpherePoint(complex(), complex()); }
};

// Oracle: z -> (az + b)/(cz + d) on affine points.
Complex apply_affine(const MoebiusMatrix& m, Complex z) { return (m.a() * z + m.b()) / (m.c() * z + m.d()); }

}  // namespace

TEST_CASE("moebius_apply examples") {
  auto p = moebius_apply(MoebiusMatrix(1, 1, 0, 1), SpherePoint::from_complex(0));
  CHECK(std::abs(*p.affine() - Complex(1)) < 1e-15);
  p = moebius_apply(MoebiusMatrix(0, -1, 1, 0), SpherePoint::infinity());
  CHECK(std::abs(*p.affine()) < 1e-15);
  p = moebius_apply(kA, SpherePoint::from_complex(kI));
  CHECK(std::abs(*p.affine() - Complex(2, 1)) < 1e-15);
}

TEST_CASE("sphere point normalization") {
  const SpherePoint p(Complex(3, 4), Complex(0.5));
  CHECK(std::max(std::abs(p.u()), std::abs(p.v())) == doctest::Approx(1.0));
  CHECK_THROWS_AS(SpherePoint(0, 0), ValidationError);
  CHECK(SpherePoint::infinity().is_infinity());
  CHECK_FALSE(SpherePoint::infinity().affine());
}

TEST_CASE("checked matrices enforce the determinant") {
  CHECK_NOTHROW(MoebiusMatrix::checked(1, 2, 0, 1));
  CHECK_THROWS_AS(MoebiusMatrix::checked(2, 0, 0, 1), ValidationError);
  CHECK_THROWS_AS(MoebiusMatrix::checked(std::nan(""), 0, 0, 1), ValidationError);
  const auto n = MoebiusMatrix::normalized(2, 0, 0, 2);
  CHECK(std::abs(n.det() - Complex(1)) < 1e-15);
}

TEST_CASE("classify examples") {
  auto c = classify(kA);
  CHECK(c.kind == ElementKind::Parabolic);
  CHECK(std::abs(c.trace - Complex(2)) < 1e-15);
  const MoebiusMatrix h(2, 1, 1, 1);
  c = classify(h);
  CHECK(c.kind == ElementKind::Loxodromic);
  CHECK(std::abs(c.trace - Complex(3)) < 1e-15);
  const auto e = h * MoebiusMatrix(0, -1, 1, 0);
  CHECK(distance(e, MoebiusMatrix(1, -2, 1, -1)) < 1e-15);
  c = classify(e);
  CHECK(c.kind == ElementKind::Elliptic);
  CHECK(std::abs(c.trace) < 1e-15);
  CHECK(classify(MoebiusMatrix::identity()).kind == ElementKind::Identity);
  CHECK(classify(-MoebiusMatrix::identity()).kind == ElementKind::Identity);
  CHECK(classify(-kA).kind == ElementKind::Parabolic);
}

TEST_CASE("fixed point examples") {
  auto fp = fixed_points(kA);
  REQUIRE(fp.size() == 1);
  CHECK(fp[0].is_infinity(1e-15));

  fp = fixed_points(MoebiusMatrix(2, 0, 0, 0.5));
  REQUIRE(fp.size() == 2);
  CHECK(fp[0].is_infinity(1e-15));  // attracting first
  CHECK(std::abs(*fp[1].affine()) < 1e-15);

  // Quadratic-formula oracle: c z^2 + (d - a) z - b = 0.
  const MoebiusMatrix h(2, 1, 1, 1);
  fp = fixed_points(h);
  REQUIRE(fp.size() == 2);
  const double r1 = (1 + std::sqrt(5.0)) / 2, r2 = (1 - std::sqrt(5.0)) / 2;
  const Complex z0 = *fp[0].affine(), z1 = *fp[1].affine();
  CHECK(std::abs(z0 - r1) < 1e-12);  // |2 - r| eigenvalue ratio makes r1 attracting
  CHECK(std::abs(z1 - r2) < 1e-12);

  CHECK_THROWS_AS(fixed_points(MoebiusMatrix::identity()), ValidationError);
  CHECK_THROWS_AS(fixed_points(-MoebiusMatrix::identity()), ValidationError);
}

TEST_CASE("action law and fixed points on random data") {
  Rng rng;
  for (int k = 0; k < 500; ++k) {
    const auto m1 = rng.matrix(), m2 = rng.matrix();
    const auto p = rng.point();
    const auto lhs = moebius_apply(m1 * m2, p);
    const auto rhs = moebius_apply(m1, moebius_apply(m2, p));
    CHECK(chordal_distance(lhs, rhs) < 1e-10);
    for (const auto& q : fixed_points(m1)) CHECK(chordal_distance(moebius_apply(m1, q), q) < 1e-9);
  }
}

TEST_CASE("moebius_apply agrees with the affine formula") {
  Rng rng;
  for (int k = 0; k < 200; ++k) {
    const auto m = rng.matrix();
    const Complex z = rng.complex();
    const auto w = moebius_apply(m, SpherePoint::from_complex(z));
    CHECK(chordal_distance(w, SpherePoint::from_complex(apply_affine(m, z))) < 1e-10);
  }
}

TEST_CASE("classification is conjugation invariant") {
  Rng rng;
  const std::vector<MoebiusMatrix> samples = {kA, MoebiusMatrix(2, 1, 1, 1), MoebiusMatrix(1, -2, 1, -1),
                                              MoebiusMatrix(kI, 0, 0, -kI), MoebiusMatrix(Complex(2, 1), 0, 0,
                                                                                          1.0 / Complex(2, 1))};
  for (const auto& m : samples) {
    for (int k = 0; k < 50; ++k) {
      const auto g = rng.matrix();
      const auto c = classify(conjugate(g, m), 1e-8);
      CHECK(c.kind == classify(m).kind);
      CHECK(std::abs(c.trace - m.trace()) < 1e-8);
    }
  }
}

TEST_CASE("chordal distance") {
  CHECK(chordal_distance(SpherePoint::from_complex(0), SpherePoint::infinity()) == doctest::Approx(2.0));
  CHECK(chordal_distance(SpherePoint::from_complex(1), SpherePoint::from_complex(-1)) == doctest::Approx(2.0));
  // 2|z - w| / sqrt((1+|z|^2)(1+|w|^2))
  const Complex z(0.3, -1.2), w(2.0, 0.5);
  const double oracle = 2 * std::abs(z - w) / std::sqrt((1 + std::norm(z)) * (1 + std::norm(w)));
  CHECK(chordal_distance(SpherePoint::from_complex(z), SpherePoint::from_complex(w)) == doctest::Approx(oracle));
}

TEST_CASE("solve_conjugator on the Sanov pair") {
  const std::vector<MoebiusMatrix> src = {kA, kB};

  SUBCASE("inverting involution") {
    const std::vector<MoebiusMatrix> dst = {kA.inverse(), kB.inverse()};
    const auto sol = solve_conjugator(src, dst);
    CHECK(projective_distance(sol.conjugator, MoebiusMatrix(kI, 0, 0, -kI)) < 1e-12);
    CHECK(sol.diagnostics.nullspace_dimension == 1);
    CHECK(sol.diagnostics.residual < 1e-12);
  }
  SUBCASE("identity") {
    const auto sol = solve_conjugator(src, src);
    CHECK(distance(sol.conjugator, MoebiusMatrix::identity()) < 1e-12);
  }
  SUBCASE("generator swap") {
    const std::vector<MoebiusMatrix> dst = {kB, kA};
    const auto sol = solve_conjugator(src, dst);
    const MoebiusMatrix expected(0, kI, kI, 0);
    CHECK(projective_distance(sol.conjugator, expected) < 1e-12);
    CHECK(distance(sol.conjugator * sol.conjugator, -MoebiusMatrix::identity()) < 1e-12);
  }
  SUBCASE("no solution") {
    const std::vector<MoebiusMatrix> dst = {kA, MoebiusMatrix(1, 0, 3, 1)};
    try {
      solve_conjugator(src, dst);
      FAIL("expected ConjugatorError");
    } catch (const ConjugatorError& e) {
      CHECK(e.kind() == ConjugatorFailure::NoSolution);
    }
  }
  SUBCASE("elementary source is ambiguous") {
    const std::vector<MoebiusMatrix> one = {kA};
    try {
      solve_conjugator(one, one);
      FAIL("expected ConjugatorError");
    } catch (const ConjugatorError& e) {
      CHECK(e.kind() == ConjugatorFailure::Ambiguous);
    }
  }
  SUBCASE("bad input") {
    const std::vector<MoebiusMatrix> one = {kA};
    CHECK_THROWS_AS(solve_conjugator(src, one), ValidationError);
    CHECK_THROWS_AS(solve_conjugator(std::vector<MoebiusMatrix>{}, std::vector<MoebiusMatrix>{}), ValidationError);
  }
}

TEST_CASE("canonical sign convention") {
  const MoebiusMatrix m(Complex(-1, 0.2), 3, 0, Complex(-1, -0.2));
  const auto c = canonical_sign(m);
  CHECK(std::arg(c.a()) > -M_PI / 2);
  CHECK(std::arg(c.a()) <= M_PI / 2);
  CHECK(distance(canonical_sign(-c), c) == 0.0);
  // Entry with argument exactly pi/2 is kept, -pi/2 is flipped.
  CHECK(canonical_sign(MoebiusMatrix(kI, 0, 0, -kI)).a() == kI);
  CHECK(canonical_sign(MoebiusMatrix(-kI, 0, 0, kI)).a() == kI);
  // a below tolerance: the sign is fixed by b.
  CHECK(canonical_sign(MoebiusMatrix(0, -kI, -kI, 0)).b() == kI);
}

TEST_CASE("solve_conjugator round trip on random instances") {
  Rng rng;
  for (int k = 0; k < 100; ++k) {
    const std::vector<MoebiusMatrix> src = {rng.matrix(), rng.matrix()};
    const auto g = rng.matrix();
    const std::vector<MoebiusMatrix> dst = {conjugate(g, src[0]), conjugate(g, src[1])};
    const auto sol = solve_conjugator(src, dst);
    double residual = 0.0;
    for (int j = 0; j < 2; ++j) residual = std::max(residual, distance(dst[j], conjugate(sol.conjugator, src[j])));
    CHECK(residual < 1e-8);
    CHECK(projective_distance(sol.conjugator, g) < 1e-6 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("finite order certificate examples") {
  const MoebiusMatrix e(kI, 0, 0, -kI);
  auto c = finite_order_certificate(e, 2);
  CHECK(c.sign == -1);
  CHECK(c.residual < 1e-15);
  CHECK(c.double_order_residual < 1e-15);
  for (int m = 1; m <= 5; ++m) CHECK(finite_order_certificate(MoebiusMatrix::identity(), m).sign == 1);
  try {
    finite_order_certificate(MoebiusMatrix(2, 1, 1, 1), 2);
    FAIL("expected NotFiniteOrder");
  } catch (const ConjugatorError& err) {
    CHECK(err.kind() == ConjugatorFailure::NotFiniteOrder);
  }
}

TEST_CASE("power, commutator and inverse") {
  Rng rng;
  const auto m = rng.matrix();
  CHECK(distance(power(m, 0), MoebiusMatrix::identity()) == 0.0);
  CHECK(distance(power(m, 3), m * m * m) < 1e-10);
  CHECK(distance(power(m, -2) * power(m, 2), MoebiusMatrix::identity()) < 1e-10);
  CHECK(distance(m * m.inverse(), MoebiusMatrix::identity()) < 1e-12);
  // [a, b] for the Sanov pair: [[21, -8], [8, -3]].
  CHECK(distance(commutator(kA, kB), MoebiusMatrix(21, -8, 8, -3)) < 1e-12);
}

TEST_CASE("format_matrix uses the row-major pair layout") {
  CHECK(format_matrix(kA) == "[[1,0],[2,0],[0,0],[1,0]]");
}
