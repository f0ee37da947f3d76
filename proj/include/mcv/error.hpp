#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace mcv {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class dimension_mismatch : public error {
public:
  using error::error;
};

class empty_input : public error {
public:
  using error::error;
};

/// A constant monomial among the generators: the ideal is the whole ring.
class unit_ideal : public error {
public:
  using error::error;
};

/// An operation that needs at least one generator received the zero ideal.
class zero_ideal : public error {
public:
  using error::error;
};

class precondition_error : public error {
public:
  using error::error;
};

class not_a_face : public error {
public:
  using error::error;
};

class label_collision : public error {
public:
  using error::error;
};

class malformed_table : public error {
public:
  using error::error;
};

class undefined_codimension : public error {
public:
  using error::error;
};

/// Input text that could not be parsed; carries the 1-based line number.
class parse_error : public error {
public:
  parse_error(std::size_t line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A configured resource budget would be exceeded. Never silently truncated.
class budget_error : public error {
public:
  budget_error(std::string budget, std::uint64_t limit, std::uint64_t required)
      : error("budget '" + budget + "' exceeded: limit " + std::to_string(limit) +
              ", required " + (required == 0 ? std::string("more") : std::to_string(required))),
        budget_(std::move(budget)),
        limit_(limit) {}

  const std::string& budget() const noexcept { return budget_; }
  std::uint64_t limit() const noexcept { return limit_; }

private:
  std::string budget_;
  std::uint64_t limit_;
};

/// Explicit resource limits. Exceeding one raises budget_error.
struct Budget {
  /// Maximum number of LCM-lattice elements (or Taylor DP states).
  std::uint64_t max_lattice = std::uint64_t{1} << 22;
  /// Maximum number of subsets enumerated: generator subsets for Taylor
  /// tables, vertex subsets for Hochster tables.
  std::uint64_t max_subsets = std::uint64_t{1} << 32;
  /// Maximum number of isomorphism classes an enumerator may produce.
  std::uint64_t max_instances = 4'000'000;
};

} // namespace mcv
