#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcv/error.hpp"

namespace mcv {

using Exponent = std::uint32_t;

/// A monomial x_1^{e_1} ... x_n^{e_n} stored as its exponent vector.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {}

  static Monomial one(std::size_t ambient) { return Monomial(std::vector<Exponent>(ambient, 0)); }

  /// x_{index} (0-based index) in an ambient ring with `ambient` variables.
  static Monomial variable(std::size_t ambient, std::size_t index, Exponent power = 1) {
    std::vector<Exponent> e(ambient, 0);
    e.at(index) = power;
    return Monomial(std::move(e));
  }

  std::size_t ambient() const noexcept { return exps_.size(); }
  std::span<const Exponent> exponents() const noexcept { return exps_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }

  std::uint64_t degree() const noexcept {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }

  bool is_one() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  bool is_squarefree() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e <= 1; });
  }

  bool divides(const Monomial& other) const {
    if (other.ambient() != ambient()) throw dimension_mismatch("monomials live in rings of different size");
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// Indices of the variables with a positive exponent.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > 0) s.push_back(i);
    return s;
  }

  /// Support as a bitmask; only meaningful for at most 64 variables.
  std::uint64_t support_mask() const {
    if (exps_.size() > 64) throw precondition_error("support_mask needs at most 64 variables");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > 0) mask |= std::uint64_t{1} << i;
    return mask;
  }

  bool operator==(const Monomial&) const = default;

  /// Canonical order: degree first, then graded-lex with x1 > x2 > ... .
  std::strong_ordering operator<=>(const Monomial& other) const {
    if (auto c = degree() <=> other.degree(); c != 0) return c;
    if (auto c = ambient() <=> other.ambient(); c != 0) return c;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != other.exps_[i]) return exps_[i] > other.exps_[i] ? std::strong_ordering::less
                                                                       : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Text form, e.g. "x1^2 x3"; the constant monomial prints as "1".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += ' ';
      out += 'x' + std::to_string(i + 1);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
  }

private:
  std::vector<Exponent> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Exponent e : m.exponents()) h = (h ^ e) * 0x100000001b3ULL;
    return h;
  }
};

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  if (a.ambient() != b.ambient()) throw dimension_mismatch("lcm of monomials from rings of different size");
  std::vector<Exponent> e(a.ambient());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

/// Componentwise maximum of the exponent vectors.
inline Monomial lcm_of(std::span<const Monomial> monomials) {
  if (monomials.empty()) throw empty_input("lcm_of needs at least one monomial");
  Monomial acc = monomials.front();
  for (const auto& m : monomials.subspan(1)) acc = lcm(acc, m);
  return acc;
}

/// A monomial ideal stored by its minimal generating set in canonical order.
/// The zero ideal (no generators) is representable; the unit ideal is not.
class MonomialIdeal {
public:
  MonomialIdeal() = default;

  /// Builds the ideal generated by `gens` in a ring with `ambient` variables,
  /// discarding non-minimal generators.
  MonomialIdeal(std::size_t ambient, std::vector<Monomial> gens) : ambient_(ambient) {
    for (const auto& g : gens) {
      if (g.ambient() != ambient) throw dimension_mismatch("generator has the wrong number of variables");
      if (g.is_one()) throw unit_ideal("constant monomial among the generators");
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // Sorted by degree, so a divisor always precedes its multiples.
    for (auto& g : gens) {
      bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& h) { return h.divides(g); });
      if (!redundant) gens_.push_back(std::move(g));
    }
  }

  std::size_t ambient_vars() const noexcept { return ambient_; }
  std::span<const Monomial> generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool empty() const noexcept { return gens_.empty(); }

  bool is_squarefree() const noexcept {
    return std::all_of(gens_.begin(), gens_.end(), [](const Monomial& m) { return m.is_squarefree(); });
  }

  /// Variables (0-based) that appear in some generator.
  std::vector<std::size_t> used_variables() const {
    std::vector<bool> used(ambient_, false);
    for (const auto& g : gens_)
      for (std::size_t i : g.support()) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (used[i]) out.push_back(i);
    return out;
  }

  /// Largest exponent of each variable across the generators.
  std::vector<Exponent> max_exponents() const {
    std::vector<Exponent> d(ambient_, 0);
    for (const auto& g : gens_)
      for (std::size_t i = 0; i < ambient_; ++i) d[i] = std::max(d[i], g[i]);
    return d;
  }

  bool operator==(const MonomialIdeal&) const = default;

private:
  std::size_t ambient_ = 0;
  std::vector<Monomial> gens_;
};

/// Divisibility-minimal subset of `gens`, canonically ordered.
inline MonomialIdeal minimalize(std::vector<Monomial> gens, std::size_t ambient) {
  return MonomialIdeal(ambient, std::move(gens));
}

inline bool is_squarefree(const MonomialIdeal& ideal) { return ideal.is_squarefree(); }

/// Polarization together with the origin of each new variable.
struct Polarization {
  MonomialIdeal ideal;
  /// origin[k] = (original variable index, copy number starting at 1) of flat
  /// variable k. Copies of x_1 come first, then x_2, and so on.
  std::vector<std::pair<std::size_t, Exponent>> origin;
};

inline Polarization polarization(const MonomialIdeal& ideal) {
  const auto d = ideal.max_exponents();
  std::vector<std::size_t> offset(ideal.ambient_vars() + 1, 0);
  Polarization out;
  for (std::size_t i = 0; i < ideal.ambient_vars(); ++i) {
    offset[i + 1] = offset[i] + d[i];
    for (Exponent k = 1; k <= d[i]; ++k) out.origin.emplace_back(i, k);
  }
  const std::size_t flat = offset.back();
  std::vector<Monomial> gens;
  gens.reserve(ideal.size());
  for (const auto& g : ideal.generators()) {
    std::vector<Exponent> e(flat, 0);
    for (std::size_t i = 0; i < ideal.ambient_vars(); ++i)
      for (Exponent k = 0; k < g[i]; ++k) e[offset[i] + k] = 1;
    gens.emplace_back(std::move(e));
  }
  out.ideal = MonomialIdeal(flat, std::move(gens));
  return out;
}

/// Squarefree ideal over sum_i d_i variables, x_i^p -> x_{i,1}...x_{i,p}.
inline MonomialIdeal polarize(const MonomialIdeal& ideal) { return polarization(ideal).ideal; }

namespace detail {

// Smallest hitting set of the supports, by branching on an unhit support.
inline void min_cover(std::span<const std::uint64_t> supports, std::uint64_t chosen, std::size_t count,
                      std::size_t& best) {
  if (count >= best) return;
  for (std::uint64_t s : supports) {
    if (s & chosen) continue;
    for (std::uint64_t rest = s; rest != 0; rest &= rest - 1)
      min_cover(supports, chosen | (rest & (~rest + 1)), count + 1, best);
    return;
  }
  best = count;
}

} // namespace detail

/// Codimension of the ideal: the fewest variables meeting every generator's
/// support (minimal primes of a monomial ideal are generated by variables).
inline std::size_t codimension(const MonomialIdeal& ideal) {
  if (ideal.empty()) return 0;
  const auto used = ideal.used_variables();
  if (used.size() > 64) throw precondition_error("codimension search supports at most 64 used variables");
  std::vector<std::size_t> position(ideal.ambient_vars(), 0);
  for (std::size_t k = 0; k < used.size(); ++k) position[used[k]] = k;
  std::vector<std::uint64_t> supports;
  for (const auto& g : ideal.generators()) {
    std::uint64_t mask = 0;
    for (std::size_t i : g.support()) mask |= std::uint64_t{1} << position[i];
    supports.push_back(mask);
  }
  // Small supports first makes the branching narrow.
  std::sort(supports.begin(), supports.end(),
            [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
  std::size_t best = std::min(used.size(), ideal.size());
  detail::min_cover(supports, 0, 0, best);
  return best;
}

} // namespace mcv
