#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcv/error.hpp"
#include "mcv/exact.hpp"
#include "mcv/monomial.hpp"

namespace mcv {

/// A set of vertex positions (bit k <-> k-th smallest label of a complex).
using VertexMask = std::uint64_t;

inline constexpr std::size_t max_vertices = 64;

inline VertexMask bit(std::size_t k) { return VertexMask{1} << k; }

inline VertexMask low_bits(std::size_t n) { return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1; }

inline std::size_t popcount(VertexMask m) { return static_cast<std::size_t>(std::popcount(m)); }

namespace detail {

/// Keeps only inclusion-maximal masks, sorted by (size, value).
inline std::vector<VertexMask> maximal_masks(std::vector<VertexMask> masks) {
  std::sort(masks.begin(), masks.end(), [](VertexMask a, VertexMask b) {
    return popcount(a) != popcount(b) ? popcount(a) > popcount(b) : a < b;
  });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<VertexMask> kept;
  for (VertexMask m : masks) {
    bool contained = std::any_of(kept.begin(), kept.end(), [&](VertexMask k) { return (m & ~k) == 0; });
    if (!contained) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(), [](VertexMask a, VertexMask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  return kept;
}

inline bool face_order(VertexMask a, VertexMask b) {
  return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
}

} // namespace detail

/// A finite simplicial complex given by its facets. Every vertex lies in some
/// facet, so the complex always contains the empty face and all singletons.
class SimplicialComplex {
public:
  /// `vertices` may list isolated vertices that no facet mentions; labels
  /// must be positive. Non-maximal facets are dropped.
  SimplicialComplex(std::vector<int> vertices, const std::vector<std::vector<int>>& facets) {
    for (const auto& f : facets) vertices.insert(vertices.end(), f.begin(), f.end());
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) throw empty_input("a simplicial complex needs at least one vertex");
    if (vertices.front() <= 0) throw precondition_error("vertex labels must be positive");
    if (vertices.size() > max_vertices) throw precondition_error("at most 64 vertices are supported");
    labels_ = std::move(vertices);
    std::vector<VertexMask> masks;
    for (const auto& f : facets) masks.push_back(mask_of(f));
    init(std::move(masks));
  }

  /// Facets given as position masks over `labels` (sorted, unique, positive).
  static SimplicialComplex from_masks(std::vector<int> labels, std::vector<VertexMask> facets) {
    if (labels.empty()) throw empty_input("a simplicial complex needs at least one vertex");
    if (labels.size() > max_vertices) throw precondition_error("at most 64 vertices are supported");
    if (!std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end() || labels.front() <= 0)
      throw precondition_error("labels must be positive, sorted and distinct");
    SimplicialComplex k;
    k.labels_ = std::move(labels);
    for (VertexMask f : facets)
      if (f & ~low_bits(k.labels_.size())) throw precondition_error("facet mask outside the vertex set");
    k.init(std::move(facets));
    return k;
  }

  /// Labels 1..n with the given position-mask facets.
  static SimplicialComplex from_masks(std::size_t n, std::vector<VertexMask> facets) {
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    return from_masks(std::move(labels), std::move(facets));
  }

  const std::vector<int>& labels() const noexcept { return labels_; }
  std::size_t vertex_count() const noexcept { return labels_.size(); }
  VertexMask all_vertices() const noexcept { return low_bits(labels_.size()); }
  std::span<const VertexMask> facets() const noexcept { return facets_; }

  /// dim K = (largest facet size) - 1.
  int dimension() const noexcept {
    std::size_t best = 0;
    for (VertexMask f : facets_) best = std::max(best, popcount(f));
    return static_cast<int>(best) - 1;
  }

  bool is_face(VertexMask face) const noexcept {
    return std::any_of(facets_.begin(), facets_.end(), [&](VertexMask f) { return (face & ~f) == 0; });
  }

  bool is_face(std::span<const int> face) const { return is_face(mask_of(face)); }

  bool is_simplex() const noexcept { return facets_.size() == 1; }

  std::size_t position(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) throw precondition_error("label " + std::to_string(label) + " is not a vertex");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  VertexMask mask_of(std::span<const int> face) const {
    VertexMask m = 0;
    for (int v : face) m |= bit(position(v));
    return m;
  }

  std::vector<int> labels_of(VertexMask mask) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (mask & bit(k)) out.push_back(labels_[k]);
    return out;
  }

  /// Facets as sorted label lists, in lexicographic order.
  std::vector<std::vector<int>> facet_labels() const {
    std::vector<std::vector<int>> out;
    for (VertexMask f : facets_) out.push_back(labels_of(f));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// All faces including the empty face, ordered by (size, mask).
  std::vector<VertexMask> faces() const {
    std::vector<VertexMask> out;
    for (VertexMask f : facets_) {
      // Enumerate every submask of f.
      for (VertexMask s = f;; s = (s - 1) & f) {
        out.push_back(s);
        if (s == 0) break;
      }
    }
    std::sort(out.begin(), out.end(), detail::face_order);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool operator==(const SimplicialComplex&) const = default;

private:
  SimplicialComplex() = default;

  void init(std::vector<VertexMask> masks) {
    VertexMask covered = 0;
    for (VertexMask m : masks) covered |= m;
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (!(covered & bit(k))) masks.push_back(bit(k));
    facets_ = detail::maximal_masks(std::move(masks));
  }

  std::vector<int> labels_;
  std::vector<VertexMask> facets_;
};

// ---------------------------------------------------------------------------
// Constructions

inline SimplicialComplex simplex(std::size_t n) { return SimplicialComplex::from_masks(n, {low_bits(n)}); }

/// n isolated vertices.
inline SimplicialComplex discrete(std::size_t n) {
  std::vector<VertexMask> facets;
  for (std::size_t k = 0; k < n; ++k) facets.push_back(bit(k));
  return SimplicialComplex::from_masks(n, std::move(facets));
}

/// Boundary of the k-dimensional cross-polytope: the join of k copies of two
/// points. Antipodal pairs are {2i-1, 2i}.
inline SimplicialComplex cross_polytope_boundary(std::size_t k) {
  if (k == 0 || 2 * k > max_vertices) throw precondition_error("cross-polytope needs 1 <= k <= 32");
  std::vector<VertexMask> facets;
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << k); ++choice) {
    VertexMask f = 0;
    for (std::size_t i = 0; i < k; ++i) f |= bit(2 * i + ((choice >> i) & 1));
    facets.push_back(f);
  }
  return SimplicialComplex::from_masks(2 * k, std::move(facets));
}

/// Same complex with every label increased by `offset`.
inline SimplicialComplex relabel_offset(const SimplicialComplex& k, int offset) {
  std::vector<int> labels = k.labels();
  for (int& v : labels) v += offset;
  return SimplicialComplex::from_masks(std::move(labels), std::vector<VertexMask>(k.facets().begin(), k.facets().end()));
}

namespace detail {

// Re-expresses a mask of `from` in the position space of `to`.
inline VertexMask transfer(const SimplicialComplex& from, VertexMask mask, const SimplicialComplex& to) {
  return to.mask_of(from.labels_of(mask));
}

inline std::vector<int> merged_labels(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<int> out;
  std::set_union(a.labels().begin(), a.labels().end(), b.labels().begin(), b.labels().end(), std::back_inserter(out));
  return out;
}

} // namespace detail

/// Faces F u G for F in K, G in K'; the vertex labels must be disjoint.
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<int> common;
  std::set_intersection(a.labels().begin(), a.labels().end(), b.labels().begin(), b.labels().end(),
                        std::back_inserter(common));
  if (!common.empty()) throw label_collision("join needs disjoint vertex labels (relabel with an offset)");
  auto labels = detail::merged_labels(a, b);
  if (labels.size() > max_vertices) throw precondition_error("join has more than 64 vertices");
  std::vector<int> scratch;
  auto lift = [&](const SimplicialComplex& k, VertexMask m) {
    VertexMask out = 0;
    for (int v : k.labels_of(m)) out |= bit(static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin()));
    return out;
  };
  std::vector<VertexMask> facets;
  for (VertexMask f : a.facets())
    for (VertexMask g : b.facets()) facets.push_back(lift(a, f) | lift(b, g));
  return SimplicialComplex::from_masks(std::move(labels), std::move(facets));
}

/// Union of two complexes over a shared label space.
inline SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<std::vector<int>> facets;
  for (VertexMask f : a.facets()) facets.push_back(a.labels_of(f));
  for (VertexMask f : b.facets()) facets.push_back(b.labels_of(f));
  return SimplicialComplex({}, facets);
}

/// Faces lying in both complexes; nullopt when only the empty face is shared.
inline std::optional<SimplicialComplex> intersection(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<std::vector<int>> facets;
  for (VertexMask f : a.facets()) {
    auto fl = a.labels_of(f);
    for (VertexMask g : b.facets()) {
      auto gl = b.labels_of(g);
      std::vector<int> common;
      std::set_intersection(fl.begin(), fl.end(), gl.begin(), gl.end(), std::back_inserter(common));
      if (!common.empty()) facets.push_back(std::move(common));
    }
  }
  if (facets.empty()) return std::nullopt;
  return SimplicialComplex({}, facets);
}

/// Induced subcomplex on the vertex positions in `w` (nonempty).
inline SimplicialComplex induced_mask(const SimplicialComplex& k, VertexMask w) {
  if (w == 0) throw precondition_error("induced subcomplex needs a nonempty vertex set");
  if (w & ~k.all_vertices()) throw precondition_error("vertex set is not contained in V(K)");
  std::vector<VertexMask> facets;
  for (VertexMask f : k.facets())
    if (f & w) facets.push_back(f & w);
  auto labels = k.labels_of(w);
  std::vector<VertexMask> local;
  for (VertexMask f : facets) {
    VertexMask m = 0;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < k.vertex_count(); ++b) {
      if (!(w & bit(b))) continue;
      if (f & bit(b)) m |= bit(pos);
      ++pos;
    }
    local.push_back(m);
  }
  return SimplicialComplex::from_masks(std::move(labels), std::move(local));
}

/// K[W]: faces of K contained in W (labels).
inline SimplicialComplex induced(const SimplicialComplex& k, std::span<const int> w) {
  return induced_mask(k, k.mask_of(w));
}

/// K - v = K[V(K) - v].
inline SimplicialComplex delete_vertex(const SimplicialComplex& k, int v) {
  return induced_mask(k, k.all_vertices() & ~bit(k.position(v)));
}

/// lk_K(F) = {G - F : F subset G in K}. The link of a facet is the complex
/// {empty set}, which has no vertices and is rejected.
inline SimplicialComplex link(const SimplicialComplex& k, std::span<const int> face) {
  VertexMask f = 0;
  for (int v : face) {
    auto it = std::lower_bound(k.labels().begin(), k.labels().end(), v);
    if (it == k.labels().end() || *it != v) throw not_a_face("face mentions a non-vertex");
    f |= bit(static_cast<std::size_t>(it - k.labels().begin()));
  }
  if (!k.is_face(f)) throw not_a_face("not a face of the complex");
  std::vector<std::vector<int>> facets;
  for (VertexMask g : k.facets())
    if ((f & ~g) == 0 && g != f) facets.push_back(k.labels_of(g & ~f));
  if (facets.empty()) throw precondition_error("the link of a facet is the empty complex {{}}");
  return SimplicialComplex({}, facets);
}

// ---------------------------------------------------------------------------
// Face numbers

/// Face counts; counts[k] = f_{k-1}, so counts[0] = f_{-1} = 1.
struct FVector {
  std::vector<std::uint64_t> counts;

  /// f_i for -1 <= i <= dim K.
  std::uint64_t f(int i) const {
    auto k = static_cast<std::size_t>(i + 1);
    return k < counts.size() ? counts[k] : 0;
  }
  /// d = dim K + 1.
  std::size_t d() const noexcept { return counts.size() - 1; }
  bool operator==(const FVector&) const = default;
};

inline FVector f_vector(const SimplicialComplex& k) {
  FVector fv;
  fv.counts.assign(static_cast<std::size_t>(k.dimension()) + 2, 0);
  for (VertexMask face : k.faces()) ++fv.counts[popcount(face)];
  return fv;
}

/// h_i = sum_{j<=i} (-1)^{i-j} C(d-j, d-i) f_{j-1}, for 0 <= i <= d.
inline std::vector<std::int64_t> h_vector(const FVector& fv) {
  const std::size_t d = fv.d();
  std::vector<std::int64_t> h(d + 1, 0);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      auto term = static_cast<std::int64_t>(binomial(d - j, d - i)) * static_cast<std::int64_t>(fv.counts[j]);
      h[i] += ((i - j) % 2 == 0) ? term : -term;
    }
  return h;
}

inline std::vector<std::int64_t> h_vector(const SimplicialComplex& k) { return h_vector(f_vector(k)); }

/// e(S/I_K) = f_{d-1}: the number of top-dimensional faces.
inline std::uint64_t multiplicity(const SimplicialComplex& k) {
  const auto d = static_cast<std::size_t>(k.dimension() + 1);
  return static_cast<std::uint64_t>(std::count_if(k.facets().begin(), k.facets().end(),
                                                  [&](VertexMask f) { return popcount(f) == d; }));
}

/// codim I_K = n - dim K - 1.
inline std::size_t codimension(const SimplicialComplex& k) {
  return k.vertex_count() - static_cast<std::size_t>(k.dimension()) - 1;
}

/// Number of faces of dimension exactly `dim`.
inline std::uint64_t face_count(const SimplicialComplex& k, int dim) { return f_vector(k).f(dim); }

// ---------------------------------------------------------------------------
// Stanley-Reisner correspondence

/// Minimal non-faces as position masks, ordered by (size, mask).
inline std::vector<VertexMask> minimal_nonfaces(const SimplicialComplex& k) {
  const auto faces = k.faces();
  std::unordered_set<VertexMask> face_set(faces.begin(), faces.end());
  std::vector<VertexMask> out;
  for (VertexMask f : faces)
    for (std::size_t v = 0; v < k.vertex_count(); ++v) {
      if (f & bit(v)) continue;
      VertexMask s = f | bit(v);
      if (face_set.count(s)) continue;
      bool minimal = true;
      for (VertexMask rest = s; rest && minimal; rest &= rest - 1)
        minimal = face_set.count(s & ~(rest & (~rest + 1))) > 0;
      if (minimal) out.push_back(s);
    }
  std::sort(out.begin(), out.end(), detail::face_order);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// I_K, with variable x_{k+1} standing for the k-th smallest vertex label.
inline MonomialIdeal nonfaces_ideal(const SimplicialComplex& k) {
  std::vector<Monomial> gens;
  for (VertexMask s : minimal_nonfaces(k)) {
    std::vector<Exponent> e(k.vertex_count(), 0);
    for (std::size_t v = 0; v < k.vertex_count(); ++v)
      if (s & bit(v)) e[v] = 1;
    gens.emplace_back(std::move(e));
  }
  return MonomialIdeal(k.vertex_count(), std::move(gens));
}

namespace detail {

// Enumerates the maximal vertex sets containing no generator support.
inline void maximal_free_sets(std::span<const VertexMask> supports, std::size_t n, std::size_t v, VertexMask chosen,
                              VertexMask excluded, std::vector<VertexMask>& out) {
  auto can_add = [&](VertexMask set, std::size_t u) {
    VertexMask grown = set | bit(u);
    return std::none_of(supports.begin(), supports.end(), [&](VertexMask s) { return (s & ~grown) == 0; });
  };
  if (v == n) {
    for (VertexMask rest = excluded; rest; rest &= rest - 1)
      if (can_add(chosen, static_cast<std::size_t>(std::countr_zero(rest)))) return;
    out.push_back(chosen);
    return;
  }
  if (can_add(chosen, v)) maximal_free_sets(supports, n, v + 1, chosen | bit(v), excluded, out);
  // Excluding v is only useful when some support would block it later.
  maximal_free_sets(supports, n, v + 1, chosen, excluded | bit(v), out);
}

} // namespace detail

/// The complex whose faces are the vertex sets containing no generator
/// support. Vertex k+1 corresponds to variable x_{k+1}.
inline SimplicialComplex from_squarefree_ideal(const MonomialIdeal& ideal) {
  if (!ideal.is_squarefree()) throw precondition_error("ideal is not squarefree");
  const std::size_t n = ideal.ambient_vars();
  if (n == 0) throw precondition_error("ideal lives in a ring without variables");
  if (n > max_vertices) throw precondition_error("at most 64 variables are supported");
  std::vector<VertexMask> supports;
  for (const auto& g : ideal.generators()) {
    if (g.degree() == 1) throw precondition_error("a variable is a generator, so the complex would miss a vertex");
    supports.push_back(g.support_mask());
  }
  std::vector<VertexMask> facets;
  detail::maximal_free_sets(supports, n, 0, 0, 0, facets);
  return SimplicialComplex::from_masks(n, std::move(facets));
}

// ---------------------------------------------------------------------------
// Structural predicates

/// Flag: every minimal non-face has two vertices.
inline bool is_flag(const SimplicialComplex& k) {
  auto nf = minimal_nonfaces(k);
  return std::all_of(nf.begin(), nf.end(), [](VertexMask s) { return popcount(s) == 2; });
}

/// Vertices lying in every facet (as labels).
inline std::vector<int> cone_apexes(const SimplicialComplex& k) {
  VertexMask all = k.all_vertices();
  for (VertexMask f : k.facets()) all &= f;
  return k.labels_of(all);
}

inline bool is_cone(const SimplicialComplex& k) { return !cone_apexes(k).empty(); }

/// A coloring witnessing that every face has at most a_i vertices of color i.
struct BalanceSpec {
  std::vector<std::size_t> a;
  /// label -> color in 1..k
  std::map<int, std::size_t> coloring;
};

namespace detail {

inline bool color_search(const SimplicialComplex& k, std::span<const std::size_t> a, std::span<const std::size_t> order,
                         std::size_t idx, std::vector<VertexMask>& classes) {
  if (idx == order.size()) return true;
  const std::size_t v = order[idx];
  bool tried_empty = false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    // Empty classes with equal capacity are interchangeable.
    if (classes[c] == 0) {
      if (tried_empty && a[c] == a[c - 1]) continue;
      tried_empty = true;
    } else {
      tried_empty = false;
    }
    classes[c] |= bit(v);
    bool ok = std::all_of(k.facets().begin(), k.facets().end(), [&](VertexMask f) {
      return !(f & bit(v)) || popcount(f & classes[c]) <= a[c];
    });
    if (ok && color_search(k, a, order, idx + 1, classes)) return true;
    classes[c] &= ~bit(v);
  }
  return false;
}

} // namespace detail

/// Searches for an a-coloring; `a` must sum to d = dim K + 1.
inline std::optional<BalanceSpec> is_balanced(const SimplicialComplex& k, std::span<const std::size_t> a) {
  const auto d = static_cast<std::size_t>(k.dimension() + 1);
  if (a.empty() || std::accumulate(a.begin(), a.end(), std::size_t{0}) != d)
    throw precondition_error("balance vector must sum to dim K + 1");
  if (std::any_of(a.begin(), a.end(), [](std::size_t x) { return x == 0; }))
    throw precondition_error("balance vector entries must be positive");
  // Most constrained vertices first.
  std::vector<std::size_t> order(k.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> weight(k.vertex_count(), 0);
  for (VertexMask f : k.facets())
    for (std::size_t v = 0; v < k.vertex_count(); ++v)
      if (f & bit(v)) weight[v] += popcount(f);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return weight[x] > weight[y]; });
  std::vector<VertexMask> classes(a.size(), 0);
  if (!detail::color_search(k, a, order, 0, classes)) return std::nullopt;
  BalanceSpec spec;
  spec.a.assign(a.begin(), a.end());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int v : k.labels_of(classes[c])) spec.coloring[v] = c + 1;
  return spec;
}

/// Completely balanced: (1, ..., 1)-balanced with d colors.
inline std::optional<BalanceSpec> is_completely_balanced(const SimplicialComplex& k) {
  std::vector<std::size_t> ones(static_cast<std::size_t>(k.dimension() + 1), 1);
  return is_balanced(k, ones);
}

namespace detail {

inline bool tree_order_search(std::span<const VertexMask> facets, std::size_t d, std::uint64_t placed,
                              std::vector<std::size_t>& order, std::unordered_set<std::uint64_t>& dead) {
  if (order.size() == facets.size()) return true;
  if (dead.count(placed)) return false;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (placed & (std::uint64_t{1} << i)) continue;
    VertexMask attach = 0;
    for (std::size_t j : order) attach |= facets[i] & facets[j];
    if (popcount(attach) + 1 != d) continue;
    bool inside_one = std::any_of(order.begin(), order.end(), [&](std::size_t j) { return (attach & ~facets[j]) == 0; });
    if (!inside_one) continue;
    order.push_back(i);
    if (tree_order_search(facets, d, placed | (std::uint64_t{1} << i), order, dead)) return true;
    order.pop_back();
  }
  dead.insert(placed);
  return false;
}

} // namespace detail

/// A facet order F_1, ..., F_m in which each F_i meets the earlier facets in
/// a single (d-2)-face; requires K pure with f_{d-1} = n - d + 1.
inline std::optional<std::vector<std::vector<int>>> generalized_tree_order(const SimplicialComplex& k) {
  const auto d = static_cast<std::size_t>(k.dimension() + 1);
  auto facets = k.facets();
  if (std::any_of(facets.begin(), facets.end(), [&](VertexMask f) { return popcount(f) != d; })) return std::nullopt;
  if (facets.size() != k.vertex_count() - d + 1 || facets.size() > 64) return std::nullopt;
  std::unordered_set<std::uint64_t> dead;
  for (std::size_t first = 0; first < facets.size(); ++first) {
    std::vector<std::size_t> order{first};
    if (detail::tree_order_search(facets, d, std::uint64_t{1} << first, order, dead)) {
      std::vector<std::vector<int>> out;
      for (std::size_t i : order) out.push_back(k.labels_of(facets[i]));
      return out;
    }
  }
  return std::nullopt;
}

inline bool is_generalized_tree(const SimplicialComplex& k) { return generalized_tree_order(k).has_value(); }

// ---------------------------------------------------------------------------
// Graphs and clique complexes

/// Simple graph on vertices 0..n-1 stored as adjacency masks.
struct Graph {
  std::size_t n = 0;
  std::vector<VertexMask> adjacency;

  explicit Graph(std::size_t vertices = 0) : n(vertices), adjacency(vertices, 0) {}

  void add_edge(std::size_t u, std::size_t v) {
    adjacency.at(u) |= bit(v);
    adjacency.at(v) |= bit(u);
  }
  bool has_edge(std::size_t u, std::size_t v) const { return (adjacency[u] >> v) & 1; }
  std::size_t edge_count() const {
    std::size_t total = 0;
    for (VertexMask a : adjacency) total += popcount(a);
    return total / 2;
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }
  bool operator==(const Graph&) const = default;
};

namespace detail {

inline void bron_kerbosch(const Graph& g, VertexMask r, VertexMask p, VertexMask x, std::vector<VertexMask>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  const VertexMask px = p | x;
  std::size_t pivot = static_cast<std::size_t>(std::countr_zero(px));
  std::size_t best = 0;
  for (VertexMask rest = px; rest; rest &= rest - 1) {
    auto u = static_cast<std::size_t>(std::countr_zero(rest));
    if (popcount(p & g.adjacency[u]) >= best) {
      best = popcount(p & g.adjacency[u]);
      pivot = u;
    }
  }
  for (VertexMask cand = p & ~g.adjacency[pivot]; cand; cand &= cand - 1) {
    auto v = static_cast<std::size_t>(std::countr_zero(cand));
    bron_kerbosch(g, r | bit(v), p & g.adjacency[v], x & g.adjacency[v], out);
    p &= ~bit(v);
    x |= bit(v);
  }
}

} // namespace detail

/// Clique complex on labels 1..n; facets are the maximal cliques.
inline SimplicialComplex clique_complex(const Graph& g) {
  if (g.n == 0) throw empty_input("graph has no vertices");
  std::vector<VertexMask> cliques;
  detail::bron_kerbosch(g, 0, low_bits(g.n), 0, cliques);
  return SimplicialComplex::from_masks(g.n, std::move(cliques));
}

/// 1-skeleton of a complex, on vertex positions.
inline Graph one_skeleton(const SimplicialComplex& k) {
  Graph g(k.vertex_count());
  for (VertexMask f : k.facets())
    for (VertexMask a = f; a; a &= a - 1)
      for (VertexMask b = a & (a - 1); b; b &= b - 1)
        g.add_edge(static_cast<std::size_t>(std::countr_zero(a)), static_cast<std::size_t>(std::countr_zero(b)));
  return g;
}

} // namespace mcv
