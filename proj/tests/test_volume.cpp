#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mutkit/dilog.hpp"
#include "mutkit/errors.hpp"
#include "mutkit/gluing.hpp"
#include "mutkit/io.hpp"
#include "mutkit/triangulation.hpp"
#include "mutkit/volume.hpp"

using namespace mutkit;

namespace {

const std::string kFixtures = MUTKIT_FIXTURES;
constexpr double kFigureEight = 2.029883212819307;

}  // namespace

TEST_CASE("figure-eight develops consistently") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  const auto dev = develop_cycle(tri, rep);
  CHECK(dev.max_mismatch < 1e-8);
  CHECK(dev.cone_points.size() == 1);
  const auto vol = volume_of_decorated_cycle(dev.cycle);
  CHECK(vol.degenerate == 0);
  CHECK(vol.volume == doctest::Approx(kFigureEight).epsilon(1e-12));
}

TEST_CASE("figure-eight gluing equations") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto sol = solve_gluing_equations(tri);
  const Complex omega(0.5, std::sqrt(3.0) / 2);
  for (const auto& z : sol.shapes) CHECK(std::abs(z - omega) < 1e-10);
  CHECK(sol.max_residual < 1e-12);
  CHECK_FALSE(sol.flat_or_negative);
  CHECK(sol.volume == doctest::Approx(kFigureEight).epsilon(1e-12));
}

TEST_CASE("conjugated figure-eight") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  const auto conj = load_representation(kFixtures + "/figure_eight_conjugated.rep");
  const auto report = verify_mutation_volume(tri, rep, tri, conj);
  CHECK(report.passes);
  CHECK(report.difference < 1e-9);
}

namespace {

const Complex kOmega(0.5, 0.86602540378443865);

DecoratedSimplex simplex(Complex a, Complex b, Complex c, Complex d, int sign = 1) {
  return {{SpherePoint::from_complex(a), SpherePoint::from_complex(b), SpherePoint::from_complex(c),
           SpherePoint::from_complex(d)},
          sign};
}

// Stellar 1-4 move: [p0 p1 p2 p3] -> sum over i of the simplex with p_i replaced by q.
std::vector<DecoratedSimplex> stellar(const DecoratedSimplex& s, const SpherePoint& q) {
  std::vector<DecoratedSimplex> out;
  for (int i = 0; i < 4; ++i) {
    auto t = s;
    t.vertices[i] = q;
    out.push_back(t);
  }
  return out;
}

SurfaceCycle tetrahedron_boundary(std::array<Complex, 4> z) {
  SurfaceCycle s;
  for (auto w : z) s.points.push_back(SpherePoint::from_complex(w));
  s.triangles = {{{1, 2, 3}, 1}, {{0, 2, 3}, -1}, {{0, 1, 3}, 1}, {{0, 1, 2}, -1}};
  return s;
}

DecoratedCycle figure_eight_cycle() {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  return develop_cycle(tri, rep).cycle;
}

}  // namespace

TEST_CASE("decorated cycle examples") {
  CHECK(volume_of_decorated_cycle({}).volume == 0.0);
  DecoratedCycle one;
  one.simplices.push_back({{SpherePoint::from_complex(0), SpherePoint::from_complex(1), SpherePoint::infinity(),
                            SpherePoint::from_complex(kOmega)},
                           1});
  CHECK(volume_of_decorated_cycle(one).volume == doctest::Approx(1.0149416064096536).epsilon(1e-14));
  CHECK(volume_of_decorated_cycle(reverse_orientation(one)).volume ==
        doctest::Approx(-1.0149416064096536).epsilon(1e-14));
  one.simplices.push_back(simplex(0, 0, 1, kOmega));
  const auto v = volume_of_decorated_cycle(one);
  CHECK(v.degenerate == 1);
  CHECK(v.volume == doctest::Approx(1.0149416064096536).epsilon(1e-14));
}

TEST_CASE("cycle volume is Moebius invariant and odd under orientation flip") {
  const auto cycle = figure_eight_cycle();
  const double base = volume_of_decorated_cycle(cycle).volume;
  std::mt19937_64 gen(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const auto g =
        MoebiusMatrix::normalized({n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)});
    CHECK(std::abs(volume_of_decorated_cycle(transform_cycle(cycle, g)).volume - base) < 1e-9);
  }
  CHECK(volume_of_decorated_cycle(reverse_orientation(cycle)).volume == doctest::Approx(-base).epsilon(1e-14));
}

TEST_CASE("subdivision invariance") {
  const auto cycle = figure_eight_cycle();
  const double base = volume_of_decorated_cycle(cycle).volume;
  std::mt19937_64 gen(4);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const auto q = SpherePoint::from_complex({n(gen), n(gen)});
    SUBCASE("1-4 move on one simplex") {
      DecoratedCycle moved;
      const auto parts = stellar(cycle.simplices[0], q);
      moved.simplices.assign(parts.begin(), parts.end());
      moved.simplices.insert(moved.simplices.end(), cycle.simplices.begin() + 1, cycle.simplices.end());
      CHECK(moved.simplices.size() == cycle.simplices.size() + 3);
      CHECK(std::abs(volume_of_decorated_cycle(moved).volume - base) < 1e-9);
    }
    SUBCASE("stellar move on every simplex") {
      DecoratedCycle moved;
      for (const auto& s : cycle.simplices) {
        for (const auto& t : stellar(s, q)) moved.simplices.push_back(t);
      }
      CHECK(std::abs(volume_of_decorated_cycle(moved).volume - base) < 1e-9);
    }
  }
}

TEST_CASE("pairwise summation") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("developing a conjugated representation moves the decorations") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  const MoebiusMatrix g = MoebiusMatrix::normalized({1, 0.5}, {0.2, 0}, {-0.3, 1}, {2, 0});
  std::vector<MoebiusMatrix> imgs;
  for (const auto& m : rep.images()) imgs.push_back(conjugate(g, m));
  const MatrixRepresentation conj(rep.presentation(), imgs);
  const auto a = develop_cycle(tri, rep);
  const auto b = develop_cycle(tri, conj);
  REQUIRE(a.cycle.simplices.size() == b.cycle.simplices.size());
  for (std::size_t s = 0; s < a.cycle.simplices.size(); ++s) {
    for (int v = 0; v < 4; ++v) {
      CHECK(chordal_distance(moebius_apply(g, a.cycle.simplices[s].vertices[v]), b.cycle.simplices[s].vertices[v]) <
            1e-9);
    }
  }
  CHECK(std::abs(volume_of_decorated_cycle(b.cycle).volume - kFigureEight) < 1e-9);
}

TEST_CASE("trivial representation has no cone point") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  const MatrixRepresentation trivial(rep.presentation(), std::vector<MoebiusMatrix>(3));
  try {
    develop_cycle(tri, trivial);
    FAIL("expected NoCommonFixedPoint");
  } catch (const CheckFailure& e) {
    CHECK(std::string(e.what()).find("NoCommonFixedPoint") != std::string::npos);
  }
}

TEST_CASE("wrong face word is a propagation mismatch") {
  auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  tri.tetrahedra[1].face_words[1] = "b";  // should be b^-1
  CHECK_THROWS_AS(develop_cycle(tri, rep), CheckFailure);
}

TEST_CASE("single-tetrahedron inconsistent fixture diverges") {
  const auto tri = load_triangulation(kFixtures + "/single_tet_inconsistent.tri");
  try {
    solve_gluing_equations(tri);
    FAIL("expected NewtonDiverged");
  } catch (const CheckFailure& e) {
    CHECK(std::string(e.what()).find("NewtonDiverged") != std::string::npos);
  }
}

TEST_CASE("triangulation combinatorics of the figure-eight") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto comb = require_valid(tri);
  CHECK(comb.edge_count() == 2);
  CHECK(comb.cusp_count == 1);
  for (const auto& e : comb.edges) CHECK(e.size() == 6);
  // Each edge equation uses 6 shape-parameter logs in total.
  for (const auto& row : comb.edge_equations()) {
    int total = 0;
    for (int x : row) total += x;
    CHECK(total == 6);
  }
  auto broken = tri;
  broken.tetrahedra[0].gluings[0] = {0, 1, 3, 2};
  broken.tetrahedra[0].neighbors[0] = 0;
  std::vector<std::string> errors;
  CHECK_FALSE(analyze_triangulation(broken, errors));
  CHECK_FALSE(errors.empty());
}

TEST_CASE("product cycle of a surface with identity holonomy") {
  const auto s = tetrahedron_boundary({Complex(0, 0), Complex(1, 0), Complex(0.3, 1.1), Complex(-0.7, 0.4)});
  const auto id = MoebiusMatrix::identity();
  for (int steps : {1, 2, 4, 8}) CHECK(std::abs(product_cycle_volume(s, id, 1, steps)) < 1e-8);
  CHECK(product_cycle(s, id, 1, 3).simplices.size() == 4 * 3 * 3);
  CHECK(product_cycle_volume(SurfaceCycle{}, id, 1, 4) == 0.0);
}

TEST_CASE("product cycle with finite-order holonomy") {
  const auto s = tetrahedron_boundary({Complex(0.2, 0), Complex(1, 0.1), Complex(0.3, 1.1), Complex(-0.7, 0.4)});
  const Complex i(0, 1);
  const MoebiusMatrix a(i, 0, 0, -i);  // order 4 in SL(2,C)
  const double v4 = product_cycle_volume(s, a, 4, 4);
  const double v8 = product_cycle_volume(s, a, 4, 8);
  CHECK(std::abs(v4) < 1e-8);
  CHECK(std::abs(v8) < 1e-8);
  CHECK_THROWS_AS(product_cycle(s, a, 2, 4), CheckFailure);  // a^2 = -1
  CHECK_THROWS_AS(product_cycle(s, MoebiusMatrix(2, 1, 1, 1), 3, 6), CheckFailure);
  auto open = s;
  open.triangles.pop_back();
  CHECK_THROWS_AS(product_cycle(open, a, 4, 4), ValidationError);
}

TEST_CASE("cover volume multiplicativity") {
  const auto cycle = figure_eight_cycle();
  const double base = volume_of_decorated_cycle(cycle).volume;
  const auto g = MoebiusMatrix::normalized({1, 0.3}, {2, 0}, {0.1, 0}, {1, -0.4});
  const std::vector<DecoratedCycle> two = {cycle, transform_cycle(cycle, g)};
  const auto r = cover_volume_check(base, 2, disjoint_union(two));
  CHECK(r.passes);
  CHECK(r.cover_volume == doctest::Approx(2 * 2.029883212819307).epsilon(1e-12));
  CHECK(r.difference < 1e-10);

  CHECK(cover_volume_check(base, 1, cycle).passes);

  const std::vector<DecoratedCycle> flipped = {cycle, reverse_orientation(cycle)};
  const auto bad = cover_volume_check(base, 2, disjoint_union(flipped));
  CHECK_FALSE(bad.passes);
}

TEST_CASE("identity mutation has zero volume difference") {
  const auto tri = load_triangulation(kFixtures + "/figure_eight.tri");
  const auto rep = load_representation(kFixtures + "/figure_eight.rep");
  const auto r = verify_mutation_volume(tri, rep, tri, rep);
  CHECK(r.passes);
  CHECK(r.difference == 0.0);
  REQUIRE(r.original.shapes);
  CHECK(r.original.cross_check_difference < 1e-9);
}
