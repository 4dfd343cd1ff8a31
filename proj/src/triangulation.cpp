#include "mutkit/triangulation.hpp"

#include <map>
#include <numeric>
#include <set>

#include "mutkit/errors.hpp"

namespace mutkit {

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int k = 0; k < 6; ++k) {
    if (kTetEdges[k][0] == a && kTetEdges[k][1] == b) return k;
  }
  throw ValidationError("edge_index: vertices must be distinct and in 0..3");
}

int edge_parameter(int edge) {
  static constexpr std::array<int, 6> kParam = {2, 0, 1, 1, 0, 2};
  return kParam.at(edge);
}

std::vector<std::vector<int>> TriangulationCombinatorics::edge_equations() const {
  const auto n = edge_class.size();
  std::vector<std::vector<int>> rows(edges.size(), std::vector<int>(3 * n, 0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (const auto& inc : edges[e]) rows[e][3 * inc.tet + edge_parameter(inc.edge)] += 1;
  }
  return rows;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::string face_name(int tet, int face) {
  return "tet " + std::to_string(tet) + " face " + std::to_string(face);
}

bool is_permutation(const Permutation4& p) {
  std::array<bool, 4> seen{};
  for (int v : p) {
    if (v < 0 || v > 3 || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Declared labels must induce the same partition as the computed ones.
template <std::size_t N>
void compare_partition(const std::vector<std::array<int, N>>& computed,
                       const std::vector<std::optional<std::array<int, N>>>& declared,
                       const char* what, std::vector<std::string>& errors) {
  std::map<int, int> forward, backward;
  for (std::size_t t = 0; t < computed.size(); ++t) {
    if (!declared[t]) continue;
    for (std::size_t k = 0; k < N; ++k) {
      const int d = (*declared[t])[k];
      const int c = computed[t][k];
      auto [fit, fnew] = forward.emplace(d, c);
      auto [bit, bnew] = backward.emplace(c, d);
      if (fit->second != c || bit->second != d) {
        errors.push_back("tet " + std::to_string(t) + ": declared " + what + " " + std::to_string(d) +
                         " at position " + std::to_string(k) + " disagrees with the gluings");
        return;
      }
    }
  }
}

}  // namespace

std::optional<TriangulationCombinatorics> analyze_triangulation(const IdealTriangulation& tri,
                                                               std::vector<std::string>& errors) {
  const std::size_t before = errors.size();
  const int n = static_cast<int>(tri.tetrahedra.size());
  if (n == 0) {
    errors.push_back("triangulation has no tetrahedra");
    return std::nullopt;
  }
  std::set<int> named;
  for (int t = 0; t < n; ++t) {
    const auto& tet = tri.tetrahedra[t];
    if (tet.orientation != 1 && tet.orientation != -1) {
      errors.push_back("tet " + std::to_string(t) + ": orientation must be +1 or -1");
    }
    for (int f = 0; f < 4; ++f) {
      const int nb = tet.neighbors[f];
      const auto& p = tet.gluings[f];
      if (nb < 0 || nb >= n) {
        errors.push_back(face_name(t, f) + ": neighbor " + std::to_string(nb) + " out of range");
        continue;
      }
      if (!is_permutation(p)) {
        errors.push_back(face_name(t, f) + ": gluing is not a permutation of 0123");
        continue;
      }
      const int g = p[f];
      const auto& back = tri.tetrahedra[nb];
      bool inverse = back.neighbors[g] == t && is_permutation(back.gluings[g]);
      for (int v = 0; inverse && v < 4; ++v) inverse = back.gluings[g][p[v]] == v;
      // One message per broken pairing: a face already named is not reported again.
      if (!inverse && !named.count(4 * t + f) && !named.count(4 * nb + g)) {
        named.insert(4 * t + f);
        named.insert(4 * nb + g);
        errors.push_back("non-involutive gluing: " + face_name(t, f) + " -> " + face_name(nb, g) +
                         " but " + face_name(nb, g) + " does not glue back by the inverse permutation");
      }
      if (nb == t && g == f) errors.push_back(face_name(t, f) + " is glued to itself");
    }
  }
  if (errors.size() != before) return std::nullopt;

  UnionFind edges(6 * static_cast<std::size_t>(n));
  UnionFind corners(4 * static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const auto& tet = tri.tetrahedra[t];
    for (int f = 0; f < 4; ++f) {
      const auto& p = tet.gluings[f];
      const int nb = tet.neighbors[f];
      for (int e = 0; e < 6; ++e) {
        const int a = kTetEdges[e][0];
        const int b = kTetEdges[e][1];
        if (a == f || b == f) continue;
        edges.unite(6 * t + e, 6 * nb + edge_index(p[a], p[b]));
      }
      for (int v = 0; v < 4; ++v) {
        if (v != f) corners.unite(4 * t + v, 4 * nb + p[v]);
      }
    }
  }

  TriangulationCombinatorics comb;
  std::map<std::size_t, int> edge_label, cusp_label;
  comb.edge_class.resize(n);
  comb.cusp.resize(n);
  for (int t = 0; t < n; ++t) {
    for (int e = 0; e < 6; ++e) {
      const auto root = edges.find(6 * t + e);
      auto [it, fresh] = edge_label.emplace(root, static_cast<int>(edge_label.size()));
      if (fresh) comb.edges.emplace_back();
      comb.edge_class[t][e] = it->second;
      comb.edges[it->second].push_back({t, e});
    }
    for (int v = 0; v < 4; ++v) {
      const auto root = corners.find(4 * t + v);
      auto [it, fresh] = cusp_label.emplace(root, static_cast<int>(cusp_label.size()));
      comb.cusp[t][v] = it->second;
    }
  }
  comb.cusp_count = static_cast<int>(cusp_label.size());

  // Euler characteristic of the cusped manifold: -E + F - T = 0 with
  // F = 2T, i.e. as many edge classes as tetrahedra.
  if (comb.edge_count() != n) {
    errors.push_back("Euler characteristic check failed: " + std::to_string(comb.edge_count()) +
                     " edge classes for " + std::to_string(n) + " tetrahedra");
  }

  std::vector<std::optional<std::array<int, 6>>> declared_edges;
  std::vector<std::optional<std::array<int, 4>>> declared_cusps;
  for (const auto& tet : tri.tetrahedra) {
    declared_edges.push_back(tet.declared_edges);
    declared_cusps.push_back(tet.declared_cusps);
  }
  compare_partition(comb.edge_class, declared_edges, "edge class", errors);
  compare_partition(comb.cusp, declared_cusps, "cusp", errors);

  for (std::size_t k = 0; k < tri.cusp_equations.size(); ++k) {
    if (tri.cusp_equations[k].size() != 3 * static_cast<std::size_t>(n)) {
      errors.push_back("cusp equation " + std::to_string(k) + " needs " + std::to_string(3 * n) +
                       " coefficients");
    }
  }
  if (errors.size() != before) return std::nullopt;
  return comb;
}

TriangulationCombinatorics require_valid(const IdealTriangulation& tri) {
  std::vector<std::string> errors;
  auto comb = analyze_triangulation(tri, errors);
  if (!comb) {
    std::string msg = "invalid triangulation:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return *comb;
}

}  // namespace mutkit
