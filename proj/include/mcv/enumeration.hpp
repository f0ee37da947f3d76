#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "mcv/canonical.hpp"
#include "mcv/complex.hpp"
#include "mcv/error.hpp"

namespace mcv {

inline constexpr std::size_t max_graph_vertices = 8;
inline constexpr std::size_t max_complex_vertices = 6;

namespace detail {

inline Graph graph_from_form(const CanonicalForm& form) {
  Graph g(form.n);
  for (VertexMask f : form.facets)
    if (popcount(f) == 2) g.add_edge(static_cast<std::size_t>(std::countr_zero(f)), static_cast<std::size_t>(63 - std::countl_zero(f)));
  return g;
}

} // namespace detail

/// One graph per isomorphism class on n vertices, ordered by canonical form.
/// Classes are grown edge by edge from the empty graph.
inline std::vector<Graph> enum_graphs(std::size_t n, const Budget& budget = {}, std::size_t max_n = max_graph_vertices) {
  if (n == 0) throw precondition_error("graphs need at least one vertex");
  if (n > max_n) throw precondition_error("graph enumeration is limited to n <= " + std::to_string(max_n));
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  std::vector<CanonicalForm> layer{canonical_form(Graph(n))};
  seen.insert(layer.front());
  std::vector<CanonicalForm> all = layer;
  while (!layer.empty()) {
    std::vector<CanonicalForm> next;
    for (const auto& form : layer) {
      Graph g = detail::graph_from_form(form);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
          if (g.has_edge(u, v)) continue;
          Graph h = g;
          h.add_edge(u, v);
          auto c = canonical_form(h);
          if (seen.insert(c).second) {
            if (seen.size() > budget.max_instances) throw budget_error("max-instances", budget.max_instances, seen.size());
            next.push_back(std::move(c));
          }
        }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end());
  std::vector<Graph> out;
  out.reserve(all.size());
  for (const auto& form : all) out.push_back(detail::graph_from_form(form));
  return out;
}

/// Clique complexes of all graphs on n vertices, one per isomorphism class.
inline std::vector<SimplicialComplex> flag_complexes(std::size_t n, const Budget& budget = {}) {
  std::vector<SimplicialComplex> out;
  for (const Graph& g : enum_graphs(n, budget)) out.push_back(clique_complex(g));
  return out;
}

/// Complexes on exactly n vertices (all singletons are faces) with faces of
/// dimension at most max_dim, one per isomorphism class. Classes are grown
/// by adding one face whose boundary is already present.
inline std::vector<SimplicialComplex> enum_complexes(std::size_t n, std::size_t max_dim = 64, const Budget& budget = {},
                                                     std::size_t max_n = max_complex_vertices) {
  if (n == 0) throw precondition_error("complexes need at least one vertex");
  if (n > max_n) throw precondition_error("complex enumeration is limited to n <= " + std::to_string(max_n));
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  std::vector<CanonicalForm> layer{canonical_form(discrete(n))};
  seen.insert(layer.front());
  std::vector<CanonicalForm> all = layer;
  while (!layer.empty()) {
    std::vector<CanonicalForm> next;
    for (const auto& form : layer) {
      const auto k = form.complex();
      for (VertexMask s : minimal_nonfaces(k)) {
        if (popcount(s) > max_dim + 1) continue;
        auto facets = std::vector<VertexMask>(k.facets().begin(), k.facets().end());
        facets.push_back(s);
        auto c = canonical_form(SimplicialComplex::from_masks(n, std::move(facets)));
        if (seen.insert(c).second) {
          if (seen.size() > budget.max_instances) throw budget_error("max-instances", budget.max_instances, seen.size());
          next.push_back(std::move(c));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end());
  std::vector<SimplicialComplex> out;
  out.reserve(all.size());
  for (const auto& form : all) out.push_back(form.complex());
  return out;
}

/// All complexes on 1..max_n vertices.
inline std::vector<SimplicialComplex> enum_complexes_upto(std::size_t max_n, const Budget& budget = {}) {
  std::vector<SimplicialComplex> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto layer = enum_complexes(n, 64, budget);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

inline std::vector<SimplicialComplex> flag_complexes_upto(std::size_t max_n, const Budget& budget = {}) {
  std::vector<SimplicialComplex> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto layer = flag_complexes(n, budget);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

} // namespace mcv
