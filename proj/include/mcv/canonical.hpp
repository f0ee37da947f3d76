#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mcv/complex.hpp"

namespace mcv {

/// A complex relabelled to 1..n by canonical labeling: equal forms iff the
/// complexes are isomorphic.
struct CanonicalForm {
  std::size_t n = 0;
  /// Relabelled facet masks in increasing order.
  std::vector<VertexMask> facets;

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

  SimplicialComplex complex() const { return SimplicialComplex::from_masks(n, facets); }

  /// e.g. "4:[[1,2],[1,4],[2,3],[3,4]]"
  std::string to_string() const {
    std::vector<std::vector<int>> lists;
    for (VertexMask f : facets) {
      std::vector<int> labels;
      for (std::size_t v = 0; v < n; ++v)
        if (f & bit(v)) labels.push_back(static_cast<int>(v) + 1);
      lists.push_back(std::move(labels));
    }
    std::sort(lists.begin(), lists.end());
    std::string out = std::to_string(n) + ":[";
    for (std::size_t i = 0; i < lists.size(); ++i) {
      if (i) out += ',';
      out += '[';
      for (std::size_t j = 0; j < lists[i].size(); ++j) {
        if (j) out += ',';
        out += std::to_string(lists[i][j]);
      }
      out += ']';
    }
    return out + "]";
  }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const noexcept {
    std::size_t h = f.n * 0x9e3779b97f4a7c15ULL;
    for (VertexMask m : f.facets) h = (h ^ m) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 33);
}

// Individualization-refinement over the vertex-facet incidence structure.
class CanonicalSearch {
public:
  CanonicalSearch(std::size_t n, std::vector<VertexMask> facets) : n_(n), facets_(std::move(facets)) {}

  /// Canonical encoding and the labeling (vertex -> new position) producing it.
  std::pair<std::vector<VertexMask>, std::vector<std::size_t>> run() {
    std::vector<std::uint64_t> colors(n_, 0);
    visit(colors, {});
    return {best_, best_perm_};
  }

  /// |Aut(K)|: leaves of the unpruned search tree equivalent to the first one.
  std::uint64_t automorphism_count() {
    std::vector<std::uint64_t> colors(n_, 0);
    count_only_ = true;
    visit(colors, {});
    return equivalent_leaves_;
  }

private:
  // Refines to an equitable coloring; colors are dense ranks 0..k-1.
  void refine(std::vector<std::uint64_t>& colors) const {
    normalize(colors);
    std::size_t classes = distinct(colors);
    std::vector<std::uint64_t> facet_sig(facets_.size());
    std::vector<std::uint64_t> next(n_);
    std::vector<std::uint64_t> around;
    std::vector<std::uint64_t> members;
    for (;;) {
      for (std::size_t f = 0; f < facets_.size(); ++f) {
        members.clear();
        for (VertexMask rest = facets_[f]; rest; rest &= rest - 1)
          members.push_back(colors[static_cast<std::size_t>(std::countr_zero(rest))]);
        std::sort(members.begin(), members.end());
        std::uint64_t h = members.size();
        for (auto c : members) h = mix(h, c);
        facet_sig[f] = h;
      }
      for (std::size_t v = 0; v < n_; ++v) {
        around.clear();
        for (std::size_t f = 0; f < facets_.size(); ++f)
          if (facets_[f] & bit(v)) around.push_back(facet_sig[f]);
        std::sort(around.begin(), around.end());
        std::uint64_t h = around.size();
        for (auto s : around) h = mix(h, s);
        next[v] = h;
      }
      // The old color stays the primary key, so the partition only refines.
      normalize_pairs(colors, next);
      const std::size_t now = distinct(next);
      colors.swap(next);
      if (now == classes) return;
      classes = now;
    }
  }

  // Dense ranks of (old color, signature) pairs, ordered by old color first.
  static void normalize_pairs(const std::vector<std::uint64_t>& old, std::vector<std::uint64_t>& sig) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> keys(old.size());
    for (std::size_t v = 0; v < old.size(); ++v) keys[v] = {old[v], sig[v]};
    auto sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t v = 0; v < old.size(); ++v)
      sig[v] = static_cast<std::uint64_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  }

  static void normalize(std::vector<std::uint64_t>& colors) {
    auto sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& c : colors) c = static_cast<std::uint64_t>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
  }

  static std::size_t distinct(const std::vector<std::uint64_t>& colors) {
    auto sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }

  std::vector<VertexMask> encode(const std::vector<std::uint64_t>& colors) const {
    std::vector<VertexMask> out;
    out.reserve(facets_.size());
    for (VertexMask f : facets_) {
      VertexMask m = 0;
      for (VertexMask rest = f; rest; rest &= rest - 1) m |= bit(colors[static_cast<std::size_t>(std::countr_zero(rest))]);
      out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void leaf(const std::vector<std::uint64_t>& colors) {
    std::vector<std::size_t> perm(colors.begin(), colors.end());
    auto enc = encode(colors);
    if (!have_first_) {
      have_first_ = true;
      first_ = enc;
      first_perm_ = perm;
      best_ = enc;
      best_perm_ = perm;
      equivalent_leaves_ = 1;
      return;
    }
    if (enc == first_) {
      ++equivalent_leaves_;
      record_automorphism(first_perm_, perm);
    } else if (enc == best_) {
      record_automorphism(best_perm_, perm);
    } else if (enc < best_) {
      best_ = std::move(enc);
      best_perm_ = perm;
    }
  }

  // sigma = a^{-1} o b maps each vertex to a vertex and preserves K.
  void record_automorphism(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (count_only_) return;
    std::vector<std::size_t> inverse_a(n_);
    for (std::size_t v = 0; v < n_; ++v) inverse_a[a[v]] = v;
    std::vector<std::size_t> sigma(n_);
    for (std::size_t v = 0; v < n_; ++v) sigma[v] = inverse_a[b[v]];
    automorphisms_.push_back(std::move(sigma));
  }

  // Union-find root under the automorphisms fixing `prefix` pointwise.
  std::vector<std::size_t> orbits(const std::vector<std::size_t>& prefix) const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& sigma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](std::size_t p) { return sigma[p] == p; });
      if (!fixes) continue;
      for (std::size_t v = 0; v < n_; ++v) parent[find(v)] = find(sigma[v]);
    }
    for (std::size_t v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void visit(std::vector<std::uint64_t> colors, std::vector<std::size_t> prefix) {
    refine(colors);
    // Target cell: the first non-singleton color class.
    std::vector<std::size_t> counts(n_, 0);
    for (auto c : colors) ++counts[c];
    std::optional<std::uint64_t> target;
    for (std::size_t c = 0; c < n_; ++c)
      if (counts[c] > 1) {
        target = c;
        break;
      }
    if (!target) {
      leaf(colors);
      return;
    }
    std::vector<std::size_t> tried;
    for (std::size_t v = 0; v < n_; ++v) {
      if (colors[v] != *target) continue;
      if (!count_only_ && !tried.empty()) {
        auto root = orbits(prefix);
        if (std::any_of(tried.begin(), tried.end(), [&](std::size_t u) { return root[u] == root[v]; })) continue;
      }
      tried.push_back(v);
      auto child = colors;
      for (auto& c : child) c *= 2;
      for (std::size_t u = 0; u < n_; ++u)
        if (colors[u] == *target && u != v) child[u] += 1;
      auto next_prefix = prefix;
      next_prefix.push_back(v);
      visit(std::move(child), std::move(next_prefix));
    }
  }

  std::size_t n_;
  std::vector<VertexMask> facets_;
  bool count_only_ = false;
  bool have_first_ = false;
  std::vector<VertexMask> first_, best_;
  std::vector<std::size_t> first_perm_, best_perm_;
  std::uint64_t equivalent_leaves_ = 0;
  std::vector<std::vector<std::size_t>> automorphisms_;
};

} // namespace detail

/// Canonical labeling: position k of K receives canonical label perm[k] + 1.
struct CanonicalLabeling {
  CanonicalForm form;
  std::vector<std::size_t> perm;
};

inline CanonicalLabeling canonical_labeling(const SimplicialComplex& k) {
  detail::CanonicalSearch search(k.vertex_count(), std::vector<VertexMask>(k.facets().begin(), k.facets().end()));
  auto [encoding, perm] = search.run();
  return {CanonicalForm{k.vertex_count(), std::move(encoding)}, std::move(perm)};
}

inline CanonicalForm canonical_form(const SimplicialComplex& k) { return canonical_labeling(k).form; }

inline bool isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count() || a.facets().size() != b.facets().size()) return false;
  return canonical_form(a) == canonical_form(b);
}

inline std::uint64_t automorphism_count(const SimplicialComplex& k) {
  detail::CanonicalSearch search(k.vertex_count(), std::vector<VertexMask>(k.facets().begin(), k.facets().end()));
  return search.automorphism_count();
}

/// A graph viewed as the 1-dimensional complex of its edges and isolated vertices.
inline SimplicialComplex graph_complex(const Graph& g) {
  std::vector<VertexMask> facets;
  for (auto [u, v] : g.edges()) facets.push_back(bit(u) | bit(v));
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.adjacency[v] == 0) facets.push_back(bit(v));
  return SimplicialComplex::from_masks(g.n, std::move(facets));
}

inline CanonicalForm canonical_form(const Graph& g) { return canonical_form(graph_complex(g)); }

} // namespace mcv
