#include "mutkit/volume.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include "mutkit/dilog.hpp"
#include "mutkit/errors.hpp"

namespace mutkit {

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

CycleVolume volume_of_decorated_cycle(const DecoratedCycle& cycle, double dedup_tol) {
  CycleVolume out;
  std::vector<double> terms(cycle.simplices.size(), 0.0);
  for (std::size_t k = 0; k < cycle.simplices.size(); ++k) {
    const auto& s = cycle.simplices[k];
    const auto cr = try_cross_ratio(s.vertices[0], s.vertices[1], s.vertices[2], s.vertices[3], dedup_tol);
    if (!cr || bloch_wigner_degenerate(*cr)) {
      ++out.degenerate;
      continue;
    }
    terms[k] = s.sign * bloch_wigner(*cr);
  }
  out.volume = pairwise_sum(terms);
  return out;
}

DecoratedCycle transform_cycle(const DecoratedCycle& cycle, const MoebiusMatrix& g) {
  DecoratedCycle out = cycle;
  for (auto& s : out.simplices) {
    for (auto& p : s.vertices) p = moebius_apply(g, p);
  }
  return out;
}

DecoratedCycle reverse_orientation(const DecoratedCycle& cycle) {
  DecoratedCycle out = cycle;
  for (auto& s : out.simplices) s.sign = -s.sign;
  return out;
}

DecoratedCycle disjoint_union(std::span<const DecoratedCycle> cycles) {
  DecoratedCycle out;
  for (const auto& c : cycles) out.simplices.insert(out.simplices.end(), c.simplices.begin(), c.simplices.end());
  return out;
}

namespace {

struct Corner {
  int tet;
  int vertex;
  bool operator<(const Corner& o) const { return tet != o.tet ? tet < o.tet : vertex < o.vertex; }
};

std::string corner_name(int tet, int v) {
  return "tet " + std::to_string(tet) + " vertex " + std::to_string(v);
}

// Common fixed point of the loops, or nullopt.
std::optional<SpherePoint> common_fixed_point(const std::vector<MoebiusMatrix>& loops, double tol) {
  for (const auto& candidate_loop : loops) {
    std::vector<SpherePoint> candidates;
    try {
      candidates = fixed_points(candidate_loop, 1e-10);
    } catch (const ValidationError&) {
      continue;
    }
    for (const auto& c : candidates) {
      bool ok = true;
      for (const auto& l : loops) {
        if (chordal_distance(moebius_apply(l, c), c) > tol) {
          ok = false;
          break;
        }
      }
      if (ok) return c;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

DevelopedCycle develop_cycle(const IdealTriangulation& tri, const MatrixRepresentation& rep,
                             const DevelopOptions& options) {
  const auto comb = require_valid(tri);
  const int n = static_cast<int>(tri.tetrahedra.size());
  const auto& pres = rep.presentation();

  // face_matrix[t][f] = rho(w_{t,f}) with P(t, v) = W P(t', sigma v).
  std::vector<std::array<MoebiusMatrix, 4>> face_matrix(n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      try {
        face_matrix[t][f] = evaluate_word(rep, pres.parse_word(tri.tetrahedra[t].face_words[f]));
      } catch (const ValidationError& e) {
        throw ValidationError("tet " + std::to_string(t) + " face " + std::to_string(f) + ": " + e.what());
      }
    }
  }

  // g[t][v] with P(t, v) = g[t][v] c_cusp.
  std::vector<std::array<std::optional<MoebiusMatrix>, 4>> g(n);
  std::vector<std::array<SpherePoint, 4>> decoration(
      n, {SpherePoint::infinity(), SpherePoint::infinity(), SpherePoint::infinity(), SpherePoint::infinity()});

  DevelopedCycle out;
  out.peripheral_loops.assign(comb.cusp_count, 0);
  for (int cusp = 0; cusp < comb.cusp_count; ++cusp) {
    Corner base{-1, -1};
    for (int t = 0; t < n && base.tet < 0; ++t) {
      for (int v = 0; v < 4; ++v) {
        if (comb.cusp[t][v] == cusp) {
          base = {t, v};
          break;
        }
      }
    }
    std::vector<MoebiusMatrix> loops;
    std::vector<Corner> members;
    std::deque<Corner> queue{base};
    g[base.tet][base.vertex] = MoebiusMatrix::identity();
    while (!queue.empty()) {
      const Corner cur = queue.front();
      queue.pop_front();
      members.push_back(cur);
      const MoebiusMatrix here = *g[cur.tet][cur.vertex];
      for (int f = 0; f < 4; ++f) {
        if (f == cur.vertex) continue;
        const auto& tet = tri.tetrahedra[cur.tet];
        const int nb = tet.neighbors[f];
        const int nv = tet.gluings[f][cur.vertex];
        const MoebiusMatrix moved = face_matrix[cur.tet][f].inverse() * here;
        auto& slot = g[nb][nv];
        if (!slot) {
          slot = moved;
          queue.push_back({nb, nv});
        } else {
          const MoebiusMatrix loop = slot->inverse() * moved;
          if (!is_plus_minus_identity(loop, 1e-9)) loops.push_back(loop);
        }
      }
    }
    out.peripheral_loops[cusp] = static_cast<int>(loops.size());
    const auto c = common_fixed_point(loops, options.fixed_point_tol);
    if (!c) {
      throw CheckFailure("NoCommonFixedPoint: cusp " + std::to_string(cusp) + " holonomy (" +
                         std::to_string(loops.size()) + " non-central loops) has no common fixed point");
    }
    out.cone_points.push_back(*c);
    for (const auto& m : members) decoration[m.tet][m.vertex] = moebius_apply(*g[m.tet][m.vertex], *c);
  }

  for (int t = 0; t < n; ++t) {
    const auto& tet = tri.tetrahedra[t];
    for (int f = 0; f < 4; ++f) {
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        const auto image = moebius_apply(face_matrix[t][f], decoration[tet.neighbors[f]][tet.gluings[f][v]]);
        const double d = chordal_distance(decoration[t][v], image);
        out.max_mismatch = std::max(out.max_mismatch, d);
        if (d > options.mismatch_tol) {
          throw CheckFailure("PropagationMismatch: tet " + std::to_string(t) + " face " + std::to_string(f) +
                             " (" + corner_name(t, v) + ") disagrees by " + std::to_string(d));
        }
      }
    }
    out.cycle.simplices.push_back({decoration[t], tet.orientation});
  }
  return out;
}

void require_closed_surface(const SurfaceCycle& surface) {
  const int np = static_cast<int>(surface.points.size());
  std::map<std::pair<int, int>, int> boundary;
  for (std::size_t k = 0; k < surface.triangles.size(); ++k) {
    const auto& tr = surface.triangles[k];
    for (int v : tr.vertices) {
      if (v < 0 || v >= np) throw ValidationError("surface triangle " + std::to_string(k) + ": vertex out of range");
    }
    for (int i = 0; i < 3; ++i) {
      // boundary of (v0 v1 v2) = (v1 v2) - (v0 v2) + (v0 v1)
      int a = tr.vertices[i == 0 ? 1 : 0];
      int b = tr.vertices[i == 2 ? 1 : 2];
      int s = (i % 2 == 0 ? 1 : -1) * tr.sign;
      if (a > b) {
        std::swap(a, b);
        s = -s;
      }
      boundary[{a, b}] += s;
    }
  }
  for (const auto& [edge, coeff] : boundary) {
    if (coeff != 0) {
      throw ValidationError("surface chain is not closed: edge (" + std::to_string(edge.first) + ", " +
                            std::to_string(edge.second) + ") has coefficient " + std::to_string(coeff));
    }
  }
}

namespace {

// A^s for A of finite order, via A = P diag(l, 1/l) P^-1.
MoebiusMatrix fractional_power(const MoebiusMatrix& a, double s) {
  if (is_plus_minus_identity(a, 1e-12)) {
    const Complex l = a.trace().real() > 0 ? Complex(1) : Complex(-1);
    const Complex ls = std::exp(s * std::log(l));
    return {ls, Complex(0), Complex(0), Complex(1) / ls};
  }
  const Complex tr = a.trace();
  const Complex disc = std::sqrt(tr * tr - Complex(4));
  const std::array<Complex, 2> lambda = {(tr + disc) / 2.0, (tr - disc) / 2.0};
  std::array<std::array<Complex, 2>, 2> vec{};
  for (int k = 0; k < 2; ++k) {
    const std::array<Complex, 2> v1 = {a.b(), lambda[k] - a.a()};
    const std::array<Complex, 2> v2 = {lambda[k] - a.d(), a.c()};
    vec[k] = std::norm(v1[0]) + std::norm(v1[1]) >= std::norm(v2[0]) + std::norm(v2[1]) ? v1 : v2;
  }
  const MoebiusMatrix p(vec[0][0], vec[1][0], vec[0][1], vec[1][1]);
  const Complex det = p.det();
  const Complex l0 = std::exp(s * std::log(lambda[0]));
  const MoebiusMatrix d(l0, Complex(0), Complex(0), Complex(1) / l0);
  return (Complex(1) / det) * (p * d * p.inverse());
}

}  // namespace

DecoratedCycle product_cycle(const SurfaceCycle& surface, const MoebiusMatrix& circle_generator, int degree,
                             int circle_steps, double holonomy_tol) {
  if (degree < 1) throw ValidationError("product cycle: degree must be positive");
  if (circle_steps < 1) throw ValidationError("product cycle: circle_steps must be positive");
  require_closed_surface(surface);
  const double residual = distance(power(circle_generator, degree), MoebiusMatrix::identity());
  if (residual > holonomy_tol) {
    throw CheckFailure("holonomy-not-identity: circle holonomy A^" + std::to_string(degree) +
                       " differs from the identity by " + std::to_string(residual));
  }

  std::vector<std::vector<SpherePoint>> levels;
  for (int j = 0; j < circle_steps; ++j) {
    const double s = static_cast<double>(j) * degree / circle_steps;
    const std::int64_t whole = static_cast<std::int64_t>(std::llround(s));
    const MoebiusMatrix m = std::abs(s - static_cast<double>(whole)) < 1e-15
                                ? power(circle_generator, whole)
                                : fractional_power(circle_generator, s);
    std::vector<SpherePoint> level;
    level.reserve(surface.points.size());
    for (const auto& p : surface.points) level.push_back(moebius_apply(m, p));
    levels.push_back(std::move(level));
  }

  DecoratedCycle out;
  for (int j = 0; j < circle_steps; ++j) {
    const auto& lo = levels[j];
    const auto& hi = levels[(j + 1) % circle_steps];
    for (const auto& tr : surface.triangles) {
      for (int i = 0; i < 3; ++i) {
        std::vector<SpherePoint> verts;
        for (int k = 0; k <= i; ++k) verts.push_back(lo[tr.vertices[k]]);
        for (int k = i; k < 3; ++k) verts.push_back(hi[tr.vertices[k]]);
        out.simplices.push_back({{verts[0], verts[1], verts[2], verts[3]}, tr.sign * (i % 2 == 0 ? 1 : -1)});
      }
    }
  }
  return out;
}

double product_cycle_volume(const SurfaceCycle& surface, const MoebiusMatrix& circle_generator, int degree,
                            int circle_steps, double holonomy_tol) {
  return volume_of_decorated_cycle(product_cycle(surface, circle_generator, degree, circle_steps, holonomy_tol))
      .volume;
}

CoverVolumeReport cover_volume_check(double base_volume, int degree, const DecoratedCycle& cover_cycle, double tol) {
  CoverVolumeReport r;
  r.base_volume = base_volume;
  r.degree = degree;
  r.cover_volume = volume_of_decorated_cycle(cover_cycle).volume;
  r.difference = std::abs(r.cover_volume - degree * base_volume);
  r.passes = r.difference <= tol;
  return r;
}

ManifoldVolume manifold_volume(const IdealTriangulation& tri, const MatrixRepresentation& rep,
                               const DevelopOptions& options, const NewtonOptions& newton) {
  ManifoldVolume out;
  const auto developed = develop_cycle(tri, rep, options);
  const auto vol = volume_of_decorated_cycle(developed.cycle);
  out.cycle_volume = vol.volume;
  out.degenerate = vol.degenerate;
  out.max_mismatch = developed.max_mismatch;
  if (tri.cusp_equations.empty()) {
    out.gluing_failure = "no cusp equations";
    return out;
  }
  try {
    out.shapes = solve_gluing_equations(tri, newton);
    out.cross_check_difference = std::abs(out.cycle_volume - out.shapes->volume);
  } catch (const CheckFailure& e) {
    out.gluing_failure = e.what();
  }
  return out;
}

MutationVolumeReport verify_mutation_volume(const IdealTriangulation& tri_m, const MatrixRepresentation& rep_m,
                                            const IdealTriangulation& tri_mtau, const MatrixRepresentation& rep_mtau,
                                            double tol, const DevelopOptions& options) {
  MutationVolumeReport r;
  r.tol = tol;
  r.original = manifold_volume(tri_m, rep_m, options);
  r.mutant = manifold_volume(tri_mtau, rep_mtau, options);
  r.difference = std::abs(r.original.cycle_volume - r.mutant.cycle_volume);
  const auto cross_ok = [tol](const ManifoldVolume& v) { return !v.shapes || v.cross_check_difference <= tol; };
  r.passes = r.difference <= tol && cross_ok(r.original) && cross_ok(r.mutant);
  return r;
}

}  // namespace mutkit
