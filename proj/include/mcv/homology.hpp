#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mcv/complex.hpp"
#include "mcv/error.hpp"
#include "mcv/linalg.hpp"

namespace mcv {

/// Coefficient field: the rationals (p == 0) or GF(p).
class Field {
public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field(); }
  static Field prime(std::uint64_t p) {
    if (!is_prime(p) || p >= (std::uint64_t{1} << 31)) throw precondition_error("field characteristic must be a prime below 2^31");
    Field f;
    f.p_ = p;
    return f;
  }

  /// Accepts "q" or "gf:<p>".
  static Field parse(std::string_view text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.substr(0, 3) == "gf:") {
      std::uint64_t p = 0;
      for (char ch : text.substr(3)) {
        if (ch < '0' || ch > '9' || p > (std::uint64_t{1} << 40)) throw precondition_error("bad field selector '" + std::string(text) + "'");
        p = p * 10 + static_cast<std::uint64_t>(ch - '0');
      }
      if (text.size() == 3) throw precondition_error("bad field selector '" + std::string(text) + "'");
      return prime(p);
    }
    throw precondition_error("unknown field selector '" + std::string(text) + "' (use q or gf:<p>)");
  }

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::string to_string() const { return p_ == 0 ? "q" : "gf:" + std::to_string(p_); }

  std::size_t rank(const Matrix& m) const {
    if (p_ == 0) return rank_rational(m);
    if (p_ == 2) return rank_mod_2(m);
    return rank_mod_p(m, p_);
  }

  bool operator==(const Field&) const = default;

private:
  std::uint64_t p_ = 0;
};

/// dims[k] = dim H~_{k-1}, covering dimensions -1 .. dim K.
struct HomologyProfile {
  std::vector<std::size_t> dims;

  /// dim H~_i; zero outside the stored range.
  std::size_t operator()(int i) const {
    auto k = static_cast<std::size_t>(i + 1);
    return (i >= -1 && k < dims.size()) ? dims[k] : 0;
  }
  bool is_acyclic() const {
    return std::all_of(dims.begin(), dims.end(), [](std::size_t x) { return x == 0; });
  }
  /// Largest i with H~_i != 0, or -2 when acyclic.
  int top_nonzero() const {
    for (std::size_t k = dims.size(); k-- > 0;)
      if (dims[k] != 0) return static_cast<int>(k) - 1;
    return -2;
  }
  bool operator==(const HomologyProfile&) const = default;
};

namespace detail {

// Faces of the complex generated by `generators`, grouped by size.
inline std::vector<std::vector<VertexMask>> faces_by_size(std::span<const VertexMask> generators) {
  std::vector<VertexMask> all;
  for (VertexMask f : generators)
    for (VertexMask s = f;; s = (s - 1) & f) {
      all.push_back(s);
      if (s == 0) break;
    }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::size_t top = 0;
  for (VertexMask f : all) top = std::max(top, popcount(f));
  std::vector<std::vector<VertexMask>> out(top + 1);
  for (VertexMask f : all) out[popcount(f)].push_back(f);
  return out;
}

// Boundary from faces of size k to faces of size k-1 (both sorted by mask).
// Removing the vertex at sorted position q carries the sign (-1)^q.
inline Matrix boundary_between(std::span<const VertexMask> lower, std::span<const VertexMask> upper) {
  Matrix m(lower.size(), upper.size());
  for (std::size_t col = 0; col < upper.size(); ++col) {
    std::size_t q = 0;
    for (VertexMask rest = upper[col]; rest; rest &= rest - 1, ++q) {
      const VertexMask face = upper[col] & ~(rest & (~rest + 1));
      auto it = std::lower_bound(lower.begin(), lower.end(), face);
      m.at(static_cast<std::size_t>(it - lower.begin()), col) = (q % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

inline HomologyProfile homology_of(std::span<const VertexMask> generators, const Field& field) {
  const auto faces = faces_by_size(generators);
  // ranks[k] = rank of the boundary leaving faces of size k (k >= 1).
  std::vector<std::size_t> ranks(faces.size() + 1, 0);
  for (std::size_t k = 1; k < faces.size(); ++k) ranks[k] = field.rank(boundary_between(faces[k - 1], faces[k]));
  HomologyProfile h;
  h.dims.resize(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const std::size_t cycles = faces[k].size() - ranks[k];
    h.dims[k] = cycles - ranks[k + 1];
  }
  return h;
}

// True when some vertex of `w` lies in every maximal face of K[w].
inline bool restricted_is_cone(std::span<const VertexMask> facets, VertexMask w) {
  std::vector<VertexMask> restricted;
  restricted.reserve(facets.size());
  for (VertexMask f : facets)
    if (f & w) restricted.push_back(f & w);
  auto maximal = maximal_masks(std::move(restricted));
  VertexMask common = w;
  for (VertexMask f : maximal) common &= f;
  return common != 0;
}

} // namespace detail

/// Matrix of the boundary map from i-faces to (i-1)-faces, both in (size,
/// mask) order. The map from 0-faces to the empty face is the augmentation.
inline Matrix boundary_matrix(const SimplicialComplex& k, int i) {
  if (i < -1 || i > k.dimension()) throw precondition_error("boundary index outside -1..dim K");
  const auto faces = detail::faces_by_size(k.facets());
  const auto top = static_cast<std::size_t>(i + 1);
  if (top == 0) return Matrix(0, 1);
  return detail::boundary_between(faces[top - 1], faces[top]);
}

inline HomologyProfile reduced_homology(const SimplicialComplex& k, const Field& field = Field::rationals()) {
  return detail::homology_of(k.facets(), field);
}

/// Reduced homology of K[W] for every vertex subset W, stored sparsely. A
/// W that is a face or spans a cone has no homology and is skipped.
class InducedHomologyTable {
public:
  struct Entry {
    VertexMask w;
    HomologyProfile homology;
  };

  InducedHomologyTable(const SimplicialComplex& k, const Field& field, const Budget& budget = {})
      : n_(k.vertex_count()), field_(field) {
    if (n_ >= 63 || (std::uint64_t{1} << n_) > budget.max_subsets)
      throw budget_error("max-subsets", budget.max_subsets, n_ >= 63 ? 0 : std::uint64_t{1} << n_);
    const auto facets = k.facets();
    for (VertexMask w = 1; w < (VertexMask{1} << n_); ++w) {
      if (k.is_face(w) || detail::restricted_is_cone(facets, w)) continue;
      std::vector<VertexMask> restricted;
      for (VertexMask f : facets)
        if (f & w) restricted.push_back(f & w);
      auto h = detail::homology_of(detail::maximal_masks(std::move(restricted)), field);
      if (!h.is_acyclic()) entries_.push_back({w, std::move(h)});
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  const Field& field() const noexcept { return field_; }
  /// Subsets with nonzero reduced homology, in increasing mask order.
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Largest p with H~_p(K[W]) != 0 for some W inside `within`; -1 if none.
  int leray_number(VertexMask within) const {
    int best = -1;
    for (const auto& e : entries_)
      if ((e.w & ~within) == 0) best = std::max(best, e.homology.top_nonzero());
    return best;
  }

private:
  std::size_t n_;
  Field field_;
  std::vector<Entry> entries_;
};

} // namespace mcv
