#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mcv/complex.hpp"
#include "mcv/error.hpp"
#include "mcv/homology.hpp"
#include "mcv/monomial.hpp"
#include "mcv/shifts.hpp"

namespace mcv {

/// Graded Betti numbers beta_{i,j} for i >= 1, stored sparsely.
class BettiTable {
public:
  using Key = std::pair<std::size_t, std::uint64_t>;

  BettiTable() = default;

  /// Adds `count` to beta_{i,j}; requires i, j >= 1. Taylor tables may have
  /// j < i (six edges on four vertices have lcm degree 4 at i = 6).
  void add(std::size_t i, std::uint64_t j, std::uint64_t count) {
    if (count == 0) return;
    if (i == 0 || j == 0) throw malformed_table("Betti entries need i, j >= 1");
    entries_[{i, j}] += count;
    length_ = std::max(length_, i);
  }

  std::uint64_t operator()(std::size_t i, std::uint64_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0 : it->second;
  }

  /// Largest i with a nonzero entry (0 for the empty table).
  std::size_t length() const noexcept { return length_; }
  const std::map<Key, std::uint64_t>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Nonzero (j, beta_{i,j}) of row i in increasing j.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> row(std::size_t i) const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (auto it = entries_.lower_bound({i, 0}); it != entries_.end() && it->first.first == i; ++it)
      out.emplace_back(it->first.second, it->second);
    return out;
  }

  /// Sum of the row, i.e. the total Betti number beta_i.
  std::uint64_t total(std::size_t i) const {
    std::uint64_t sum = 0;
    for (auto [j, b] : row(i)) sum += b;
    return sum;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json out;
    out["length"] = length_;
    auto list = nlohmann::ordered_json::array();
    for (const auto& [key, beta] : entries_) list.push_back({key.first, key.second, beta});
    out["entries"] = std::move(list);
    return out;
  }

  static BettiTable from_json(const nlohmann::ordered_json& doc) {
    BettiTable table;
    try {
      for (const auto& e : doc.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw malformed_table("entry must be [i, j, beta]");
        if (e[2].get<std::int64_t>() <= 0) throw malformed_table("stored Betti numbers must be positive");
        table.add(e[0].get<std::size_t>(), e[1].get<std::uint64_t>(), e[2].get<std::uint64_t>());
      }
      if (doc.at("length").get<std::size_t>() != table.length_) throw malformed_table("length does not match the entries");
    } catch (const nlohmann::json::exception& ex) {
      throw malformed_table(ex.what());
    }
    return table;
  }

  bool operator==(const BettiTable&) const = default;

private:
  std::map<Key, std::uint64_t> entries_;
  std::size_t length_ = 0;
};

/// Entrywise a <= b.
inline bool dominated_by(const BettiTable& a, const BettiTable& b) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [&](const auto& kv) { return kv.second <= b(kv.first.first, kv.first.second); });
}

/// Minimal and maximal shifts of the first k rows.
struct ExtremalShifts {
  ShiftSequence m;
  ShiftSequence M;
  bool operator==(const ExtremalShifts&) const = default;
};

inline ExtremalShifts extremal_shifts(const BettiTable& table, std::size_t k) {
  ExtremalShifts out;
  for (std::size_t i = 1; i <= k; ++i) {
    auto row = table.row(i);
    if (row.empty()) throw malformed_table("row " + std::to_string(i) + " of the Betti table is empty");
    out.m.push_back(row.front().first);
    out.M.push_back(row.back().first);
  }
  return out;
}

/// Every row has exactly one nonzero degree.
inline bool is_pure(const BettiTable& table) {
  for (std::size_t i = 1; i <= table.length(); ++i)
    if (table.row(i).size() != 1) return false;
  return true;
}

/// Tensor product of resolutions: beta_{r,s} = sum beta_{i,a} beta'_{j,b}
/// over i+j = r, a+b = s, with beta_{0,0} = 1 on both sides.
inline BettiTable tensor_table(const BettiTable& a, const BettiTable& b) {
  std::vector<std::pair<BettiTable::Key, std::uint64_t>> left{{{0, 0}, 1}}, right{{{0, 0}, 1}};
  left.insert(left.end(), a.entries().begin(), a.entries().end());
  right.insert(right.end(), b.entries().begin(), b.entries().end());
  BettiTable out;
  for (const auto& [ka, va] : left)
    for (const auto& [kb, vb] : right)
      if (ka.first + kb.first > 0) out.add(ka.first + kb.first, ka.second + kb.second, va * vb);
  return out;
}

/// Koszul complex on l variables: beta_{i,i} = C(l, i).
inline BettiTable koszul_table(std::size_t l) {
  BettiTable out;
  for (std::size_t i = 1; i <= l; ++i) out.add(i, i, binomial(l, i));
  return out;
}

// ---------------------------------------------------------------------------
// Taylor resolution

namespace detail {

struct MaskOps {
  using Key = std::uint64_t;
  static Key one() { return 0; }
  static Key lcm(Key a, Key b) { return a | b; }
  static std::uint64_t degree(Key a) { return popcount(a); }
  static bool divides(Key a, Key b) { return (a & ~b) == 0; }
  struct Hash {
    std::size_t operator()(Key k) const noexcept { return std::hash<Key>{}(k * 0x9e3779b97f4a7c15ULL); }
  };
};

struct MonomialOps {
  using Key = Monomial;
  std::size_t n;
  Key one() const { return Monomial::one(n); }
  static Key lcm(const Key& a, const Key& b) { return mcv::lcm(a, b); }
  static std::uint64_t degree(const Key& a) { return a.degree(); }
  static bool divides(const Key& a, const Key& b) { return a.divides(b); }
  using Hash = MonomialHash;
};

inline bool fits_masks(const MonomialIdeal& ideal) { return ideal.is_squarefree() && ideal.ambient_vars() <= 64; }

template <class Ops>
BettiTable taylor_betti_impl(const std::vector<typename Ops::Key>& gens, const Ops& ops, const Budget& budget) {
  using Key = typename Ops::Key;
  // state: lcm of a subset -> number of subsets by size
  std::unordered_map<Key, std::vector<std::uint64_t>, typename Ops::Hash> state;
  state[ops.one()] = {1};
  for (const Key& g : gens) {
    auto next = state;
    for (const auto& [l, counts] : state) {
      auto& target = next[ops.lcm(l, g)];
      if (target.size() < counts.size() + 1) target.resize(counts.size() + 1, 0);
      for (std::size_t s = 0; s < counts.size(); ++s) target[s + 1] += counts[s];
    }
    if (next.size() > budget.max_lattice) throw budget_error("max-lattice", budget.max_lattice, next.size());
    state = std::move(next);
  }
  BettiTable out;
  for (const auto& [l, counts] : state)
    for (std::size_t s = 1; s < counts.size(); ++s) out.add(s, ops.degree(l), counts[s]);
  return out;
}

} // namespace detail

inline void check_subset_budget(std::size_t r, const Budget& budget) {
  if (r >= 64 || (std::uint64_t{1} << r) > budget.max_subsets)
    throw budget_error("max-subsets", budget.max_subsets, r >= 64 ? 0 : std::uint64_t{1} << r);
}

/// beta_{i,j} = number of i-subsets of GEN(I) whose lcm has degree j.
inline BettiTable taylor_betti(const MonomialIdeal& ideal, const Budget& budget = {}) {
  if (ideal.empty()) throw zero_ideal("the Taylor resolution needs at least one generator");
  check_subset_budget(ideal.size(), budget);
  if (detail::fits_masks(ideal)) {
    std::vector<std::uint64_t> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.support_mask());
    return detail::taylor_betti_impl(gens, detail::MaskOps{}, budget);
  }
  std::vector<Monomial> gens(ideal.generators().begin(), ideal.generators().end());
  return detail::taylor_betti_impl(gens, detail::MonomialOps{ideal.ambient_vars()}, budget);
}

/// One element L of the LCM lattice: g = fewest generators with lcm exactly
/// L, c = number of generators dividing L.
struct LatticePoint {
  std::uint64_t degree;
  std::size_t g;
  std::size_t c;
};

namespace detail {

template <class Ops>
std::vector<LatticePoint> lcm_lattice_impl(const std::vector<typename Ops::Key>& gens, const Ops& ops,
                                           const Budget& budget) {
  using Key = typename Ops::Key;
  std::unordered_map<Key, std::size_t, typename Ops::Hash> g;
  std::deque<Key> queue;
  for (const Key& m : gens)
    if (g.emplace(m, 1).second) queue.push_back(m);
  // Breadth-first: the first time an lcm is reached uses the fewest generators.
  while (!queue.empty()) {
    Key l = std::move(queue.front());
    queue.pop_front();
    const std::size_t level = g.at(l);
    for (const Key& m : gens) {
      Key next = ops.lcm(l, m);
      if (g.emplace(next, level + 1).second) {
        if (g.size() > budget.max_lattice) throw budget_error("max-lattice", budget.max_lattice, g.size());
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<LatticePoint> out;
  out.reserve(g.size());
  for (const auto& [l, level] : g) {
    std::size_t divisors = 0;
    for (const Key& m : gens)
      if (ops.divides(m, l)) ++divisors;
    out.push_back({ops.degree(l), level, divisors});
  }
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return std::tie(a.degree, a.g, a.c) < std::tie(b.degree, b.g, b.c);
  });
  return out;
}

} // namespace detail

/// The LCM lattice of GEN(I) (without the bottom element).
inline std::vector<LatticePoint> lcm_lattice(const MonomialIdeal& ideal, const Budget& budget = {}) {
  if (ideal.empty()) throw zero_ideal("the LCM lattice needs at least one generator");
  if (detail::fits_masks(ideal)) {
    std::vector<std::uint64_t> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.support_mask());
    return detail::lcm_lattice_impl(gens, detail::MaskOps{}, budget);
  }
  std::vector<Monomial> gens(ideal.generators().begin(), ideal.generators().end());
  return detail::lcm_lattice_impl(gens, detail::MonomialOps{ideal.ambient_vars()}, budget);
}

/// First k Taylor shifts from the lattice: an i-subset with lcm L exists iff
/// g(L) <= i <= c(L).
inline ExtremalShifts taylor_shifts(std::span<const LatticePoint> lattice, std::size_t k) {
  ExtremalShifts out;
  for (std::size_t i = 1; i <= k; ++i) {
    std::optional<std::uint64_t> lo, hi;
    for (const auto& p : lattice)
      if (p.g <= i && i <= p.c) {
        lo = lo ? std::min(*lo, p.degree) : p.degree;
        hi = hi ? std::max(*hi, p.degree) : p.degree;
      }
    if (!lo) throw precondition_error("shift index exceeds the number of generators");
    out.m.push_back(*lo);
    out.M.push_back(*hi);
  }
  return out;
}

inline ExtremalShifts taylor_shifts(const MonomialIdeal& ideal, std::size_t k, const Budget& budget = {}) {
  if (k > ideal.size()) throw precondition_error("k exceeds the number of generators");
  if (k == 0) return {};
  return taylor_shifts(lcm_lattice(ideal, budget), k);
}

// ---------------------------------------------------------------------------
// Minimal resolution via Hochster's formula

/// beta_{i,j} = sum over |W| = j of dim H~_{j-i-1}(K[W]), W inside `within`.
inline BettiTable hochster_betti(const InducedHomologyTable& table, VertexMask within) {
  BettiTable out;
  for (const auto& e : table.entries()) {
    if (e.w & ~within) continue;
    const std::size_t j = popcount(e.w);
    for (int p = -1; p <= e.homology.top_nonzero(); ++p) {
      const std::size_t dim = e.homology(p);
      if (dim == 0) continue;
      const auto i = static_cast<std::int64_t>(j) - p - 1;
      if (i >= 1) out.add(static_cast<std::size_t>(i), j, dim);
    }
  }
  return out;
}

inline BettiTable hochster_betti(const SimplicialComplex& k, const Field& field = Field::rationals(),
                                 const Budget& budget = {}) {
  InducedHomologyTable table(k, field, budget);
  return hochster_betti(table, k.all_vertices());
}

} // namespace mcv
