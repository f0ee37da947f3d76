#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcv/error.hpp"
#include "mcv/exact.hpp"

namespace mcv {

/// Shifts indexed by homological position 1..len (stored 0-based).
using ShiftSequence = std::vector<std::uint64_t>;

namespace detail {

inline void require_positive(std::span<const std::uint64_t> seq) {
  if (std::any_of(seq.begin(), seq.end(), [](std::uint64_t v) { return v == 0; }))
    throw precondition_error("shift sequences must be positive");
}

template <class Pick>
ShiftSequence join_sequences(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Pick pick) {
  require_positive(a);
  require_positive(b);
  ShiftSequence out(a.size() + b.size());
  for (std::size_t r = 1; r <= out.size(); ++r) {
    std::optional<std::uint64_t> best;
    for (std::size_t i = 0; i <= std::min(r, a.size()); ++i) {
      const std::size_t j = r - i;
      if (j > b.size()) continue;
      const std::uint64_t value = (i ? a[i - 1] : 0) + (j ? b[j - 1] : 0);
      best = best ? pick(*best, value) : value;
    }
    out[r - 1] = *best;
  }
  return out;
}

} // namespace detail

/// (m * m')_r = min{m_i + m'_j : i + j = r}, with m_0 = m'_0 = 0.
inline ShiftSequence lower_join(std::span<const std::uint64_t> m, std::span<const std::uint64_t> mp) {
  return detail::join_sequences(m, mp, [](std::uint64_t x, std::uint64_t y) { return std::min(x, y); });
}

/// (M x M')_r = max{M_i + M'_j : i + j = r}, with M_0 = M'_0 = 0.
inline ShiftSequence upper_join(std::span<const std::uint64_t> m, std::span<const std::uint64_t> mp) {
  return detail::join_sequences(m, mp, [](std::uint64_t x, std::uint64_t y) { return std::max(x, y); });
}

/// F(m_1..m_k) = m_1 * ... * m_k / k!; the empty product gives 1.
inline Rational bound_value(std::span<const std::uint64_t> seq) {
  BigInt product = 1;
  for (std::uint64_t v : seq) product *= v;
  return Rational(product) / factorial(seq.size());
}

/// The common a with m_i = a*i and m'_i = a*i throughout, if one exists.
inline std::optional<std::uint64_t> arithmetic_ratio(std::span<const std::uint64_t> m, std::span<const std::uint64_t> mp) {
  std::optional<std::uint64_t> a;
  for (auto seq : {m, mp})
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] % (i + 1) != 0) return std::nullopt;
      const std::uint64_t ratio = seq[i] / (i + 1);
      if (a && *a != ratio) return std::nullopt;
      a = ratio;
    }
  if (a && *a == 0) return std::nullopt;
  return a ? a : std::optional<std::uint64_t>{1};
}

/// Condition 2 of the tensor-equality criteria for sequences of lengths c, c'.
inline bool check_tensor_equality_conditions(std::span<const std::uint64_t> m, std::span<const std::uint64_t> mp,
                                             std::size_t c, std::size_t cp) {
  if (m.size() != c || mp.size() != cp) throw precondition_error("sequence lengths must equal the codimensions");
  return arithmetic_ratio(m, mp).has_value();
}

inline std::string to_string(std::span<const std::uint64_t> seq) {
  std::string out = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seq[i]);
  }
  return out + ")";
}

} // namespace mcv
