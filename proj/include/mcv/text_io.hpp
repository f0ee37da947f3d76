#pragma once

// Plain-text formats for ideals (one generator per line, tokens x<i>^<e>)
// and simplicial complexes (one facet per line, positive vertex labels).

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mcv/complex.hpp"
#include "mcv/error.hpp"
#include "mcv/monomial.hpp"

namespace mcv {

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  return line;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Recognizes "key: value" headers; returns the value on a match.
inline std::optional<std::string_view> header_value(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key) return std::nullopt;
  auto rest = line.substr(key.size());
  if (rest.empty() || rest.front() != ':') return std::nullopt;
  return strip_comment(rest.substr(1));
}

} // namespace detail

/// Reads the ideal text format. The ambient ring has as many variables as the
/// largest index mentioned, unless a `vars: <n>` header says otherwise.
inline MonomialIdeal parse_ideal(std::istream& in) {
  std::optional<std::size_t> declared;
  std::vector<std::pair<std::size_t, std::map<std::size_t, Exponent>>> rows;
  std::size_t max_index = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (auto v = detail::header_value(line, "vars")) {
      auto n = detail::parse_uint(*v);
      if (!n || *n == 0) throw parse_error(line_no, "invalid vars header");
      declared = *n;
      continue;
    }
    std::map<std::size_t, Exponent> exps;
    for (auto token : detail::split_ws(line)) {
      if (token.front() != 'x') throw parse_error(line_no, "expected token x<i> or x<i>^<e>, got '" + std::string(token) + "'");
      token.remove_prefix(1);
      auto caret = token.find('^');
      auto index = detail::parse_uint(token.substr(0, caret));
      if (!index || *index == 0) throw parse_error(line_no, "variable index must be a positive integer");
      std::uint64_t power = 1;
      if (caret != std::string_view::npos) {
        auto p = detail::parse_uint(token.substr(caret + 1));
        if (!p || *p == 0) throw parse_error(line_no, "exponent must be a positive integer");
        power = *p;
      }
      exps[*index - 1] += static_cast<Exponent>(power);
      max_index = std::max<std::size_t>(max_index, *index);
    }
    rows.emplace_back(line_no, std::move(exps));
  }
  if (rows.empty()) throw empty_input("ideal file has no generators");
  const std::size_t n = declared.value_or(max_index);
  if (max_index > n) throw parse_error(rows.back().first, "variable index exceeds the vars header");
  std::vector<Monomial> gens;
  for (const auto& [line, exps] : rows) {
    std::vector<Exponent> e(n, 0);
    for (const auto& [i, p] : exps) e[i] = p;
    gens.emplace_back(std::move(e));
  }
  return MonomialIdeal(n, std::move(gens));
}

inline MonomialIdeal parse_ideal(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_ideal(in);
}

inline std::string format_ideal(const MonomialIdeal& ideal) {
  std::string out = "vars: " + std::to_string(ideal.ambient_vars()) + "\n";
  for (const auto& g : ideal.generators()) out += g.to_string() + "\n";
  return out;
}

/// Reads the facet text format. A `vertices: <n>` header adds isolated
/// vertices 1..n that no facet mentions.
inline SimplicialComplex parse_facets(std::istream& in) {
  std::optional<std::size_t> declared;
  std::vector<std::vector<int>> facets;
  std::string raw;
  std::size_t line_no = 0;
  int max_label = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (auto v = detail::header_value(line, "vertices")) {
      auto n = detail::parse_uint(*v);
      if (!n || *n == 0) throw parse_error(line_no, "invalid vertices header");
      declared = *n;
      continue;
    }
    std::vector<int> facet;
    for (auto token : detail::split_ws(line)) {
      auto label = detail::parse_uint(token);
      if (!label || *label == 0 || *label > 1'000'000) throw parse_error(line_no, "vertex labels must be positive integers, got '" + std::string(token) + "'");
      facet.push_back(static_cast<int>(*label));
      max_label = std::max(max_label, static_cast<int>(*label));
    }
    facets.push_back(std::move(facet));
  }
  if (facets.empty() && !declared) throw empty_input("facet file has no facets");
  std::vector<int> vertices;
  const int n = static_cast<int>(declared.value_or(0));
  if (max_label > n && declared) throw parse_error(line_no, "vertex label exceeds the vertices header");
  for (int v = 1; v <= n; ++v) vertices.push_back(v);
  return SimplicialComplex(std::move(vertices), std::move(facets));
}

inline SimplicialComplex parse_facets(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_facets(in);
}

inline std::string format_facets(const SimplicialComplex& complex) {
  std::string out = "vertices: " + std::to_string(complex.vertex_count()) + "\n";
  for (const auto& facet : complex.facet_labels()) {
    for (std::size_t k = 0; k < facet.size(); ++k) out += (k ? " " : "") + std::to_string(facet[k]);
    out += "\n";
  }
  return out;
}

} // namespace mcv
