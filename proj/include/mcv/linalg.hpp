#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcv/error.hpp"
#include "mcv/exact.hpp"

namespace mcv {

/// Dense integer matrix, row-major.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  Matrix operator*(const Matrix& other) const {
    if (cols != other.rows) throw dimension_mismatch("matrix product with incompatible shapes");
    Matrix out(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        const std::int64_t a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < other.cols; ++j) out.at(i, j) += a * other.at(k, j);
      }
    return out;
  }

  bool is_zero() const {
    for (auto v : data)
      if (v != 0) return false;
    return true;
  }
};

namespace detail {

// Fraction-free elimination; nullopt when an intermediate overflows int64.
inline std::optional<std::size_t> bareiss_rank_i64(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    const std::int64_t p = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::int64_t q = a[r * cols + col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        std::int64_t x = 0;
        std::int64_t y = 0;
        std::int64_t diff = 0;
        if (__builtin_mul_overflow(p, a[r * cols + j], &x) || __builtin_mul_overflow(q, a[rank * cols + j], &y) ||
            __builtin_sub_overflow(x, y, &diff))
          return std::nullopt;
        a[r * cols + j] = diff / prev;
      }
      a[r * cols + col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

inline std::size_t bareiss_rank_big(const std::vector<std::int64_t>& src, std::size_t rows, std::size_t cols) {
  std::vector<BigInt> a(src.begin(), src.end());
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    const BigInt p = a[rank * cols + col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const BigInt q = a[r * cols + col];
      for (std::size_t j = col + 1; j < cols; ++j) a[r * cols + j] = (p * a[r * cols + j] - q * a[rank * cols + j]) / prev;
      a[r * cols + col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = static_cast<std::uint64_t>((static_cast<unsigned __int128>(result) * base) % mod);
    base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % mod);
    exp >>= 1;
  }
  return result;
}

} // namespace detail

/// Rank over the rationals by Bareiss elimination (int64, then BigInt on overflow).
inline std::size_t rank_rational(const Matrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (auto r = detail::bareiss_rank_i64(m.data, m.rows, m.cols)) return *r;
  return detail::bareiss_rank_big(m.data, m.rows, m.cols);
}

/// Rank over GF(p) by Gaussian elimination; p must be prime.
inline std::size_t rank_mod_p(const Matrix& m, std::uint64_t p) {
  if (m.rows == 0 || m.cols == 0) return 0;
  const auto mod = static_cast<std::int64_t>(p);
  std::vector<std::uint64_t> a(m.data.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = static_cast<std::uint64_t>(((m.data[k] % mod) + mod) % mod);
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    const std::uint64_t inv = detail::pow_mod(a[rank * cols + col], p - 2, p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t factor = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(a[r * cols + col]) * inv) % p);
      if (factor == 0) continue;
      for (std::size_t j = col; j < cols; ++j) {
        const auto sub = static_cast<std::uint64_t>((static_cast<unsigned __int128>(factor) * a[rank * cols + j]) % p);
        a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

/// Rank over GF(2) with packed rows.
inline std::size_t rank_mod_2(const Matrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  const std::size_t words = (m.cols + 63) / 64;
  std::vector<std::uint64_t> a(m.rows * words, 0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m.at(r, c) & 1) a[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t b = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < m.rows && !(a[pivot * words + w] & b)) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < words; ++j) std::swap(a[pivot * words + j], a[rank * words + j]);
    for (std::size_t r = rank + 1; r < m.rows; ++r)
      if (a[r * words + w] & b)
        for (std::size_t j = w; j < words; ++j) a[r * words + j] ^= a[rank * words + j];
    ++rank;
  }
  return rank;
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

} // namespace mcv
