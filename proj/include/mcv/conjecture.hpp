#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcv/betti.hpp"
#include "mcv/canonical.hpp"
#include "mcv/complex.hpp"
#include "mcv/error.hpp"
#include "mcv/exact.hpp"
#include "mcv/homology.hpp"
#include "mcv/monomial.hpp"
#include "mcv/shifts.hpp"

namespace mcv {

enum class Resolution { taylor, minimal };

inline std::string to_string(Resolution r) { return r == Resolution::taylor ? "taylor" : "minimal"; }

inline Resolution parse_resolution(std::string_view text) {
  if (text == "taylor") return Resolution::taylor;
  if (text == "minimal") return Resolution::minimal;
  throw precondition_error("unknown resolution '" + std::string(text) + "' (use taylor or minimal)");
}

enum class Verdict { holds, equality, fails, not_applicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

/// e <= U for the upper bound, e >= L for the lower bound.
inline Verdict compare_upper(std::uint64_t e, const Rational& bound) {
  const Rational value(e);
  return value < bound ? Verdict::holds : value == bound ? Verdict::equality : Verdict::fails;
}

inline Verdict compare_lower(std::uint64_t e, const Rational& bound) {
  const Rational value(e);
  return value > bound ? Verdict::holds : value == bound ? Verdict::equality : Verdict::fails;
}

inline bool satisfied(Verdict v) { return v != Verdict::fails; }

struct Report {
  std::string input;
  Field field;
  Resolution resolution = Resolution::taylor;
  std::size_t c = 0;
  std::uint64_t e = 0;
  ShiftSequence m;
  ShiftSequence M;
  Rational L = 1;
  Rational U = 1;
  bool cm = false;
  Verdict upper = Verdict::holds;
  Verdict lower = Verdict::not_applicable;
  std::optional<std::int64_t> t;
  std::optional<std::int64_t> z;
  std::string cls = "none";

  /// All applicable verdicts hold.
  bool ok() const { return satisfied(upper) && satisfied(lower); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json out;
    out["input"] = input;
    out["field"] = field.to_string();
    out["resolution"] = to_string(resolution);
    out["c"] = c;
    out["e"] = e;
    out["L"] = to_fraction_string(L);
    out["U"] = to_fraction_string(U);
    out["cm"] = cm;
    out["upper"] = to_string(upper);
    out["lower"] = to_string(lower);
    out["t"] = t ? nlohmann::ordered_json(*t) : nlohmann::ordered_json(nullptr);
    out["z"] = z ? nlohmann::ordered_json(*z) : nlohmann::ordered_json(nullptr);
    out["class"] = cls;
    return out;
  }
};

// ---------------------------------------------------------------------------
// Cohen-Macaulay test

/// Reisner: for every face F, H~_i(lk F) = 0 for all i < dim lk F. Links of
/// facets are {empty set} and impose nothing.
inline bool is_cohen_macaulay(const SimplicialComplex& k, const Field& field = Field::rationals()) {
  const auto facets = k.facets();
  const std::size_t d = popcount(facets.back());
  if (std::any_of(facets.begin(), facets.end(), [&](VertexMask f) { return popcount(f) != d; })) return false;
  for (VertexMask face : k.faces()) {
    if (popcount(face) == d) continue;
    std::vector<VertexMask> link;
    for (VertexMask g : facets)
      if ((face & ~g) == 0) link.push_back(g & ~face);
    link = detail::maximal_masks(std::move(link));
    const auto h = detail::homology_of(link, field);
    const int dim = static_cast<int>(d - popcount(face)) - 1;
    for (int i = -1; i < dim; ++i)
      if (h(i) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Shifts of a complex under a resolution

inline ExtremalShifts complex_shifts(const SimplicialComplex& k, Resolution res, const Field& field,
                                     const Budget& budget, std::size_t count) {
  if (count == 0) return {};
  if (res == Resolution::taylor) return taylor_shifts(nonfaces_ideal(k), count, budget);
  return extremal_shifts(hochster_betti(k, field, budget), count);
}

/// t = M_c - c - 1 with c = n - d, for the given resolution.
inline std::int64_t leray_t(const SimplicialComplex& k, Resolution res, const Field& field = Field::rationals(),
                            const Budget& budget = {}) {
  const std::size_t c = codimension(k);
  if (c == 0) throw undefined_codimension("t is undefined for a simplex");
  const auto shifts = complex_shifts(k, res, field, budget, c);
  return static_cast<std::int64_t>(shifts.M.back()) - static_cast<std::int64_t>(c) - 1;
}

/// Largest p with H~_p(K[W]) != 0 for some W; K is r-Leray for all r above it.
inline int leray_number(const SimplicialComplex& k, const Field& field = Field::rationals(), const Budget& budget = {}) {
  return InducedHomologyTable(k, field, budget).leray_number(k.all_vertices());
}

// ---------------------------------------------------------------------------
// Equality families

inline constexpr std::string_view tag_cross_polytope = "cross-polytope-boundary-join-simplex";
inline constexpr std::string_view tag_two_points = "two-isolated-vertices";
inline constexpr std::string_view tag_three_points = "three-isolated-vertices";
inline constexpr std::string_view tag_path = "path-length-four";
inline constexpr std::string_view tag_strip = "six-vertex-strip";

struct EqualityClass {
  std::string tag = "none";
  /// Apex vertices split off as the simplex factor.
  std::vector<int> apexes;
  /// Number of two-point factors for the cross-polytope tag.
  std::size_t k = 0;

  bool none() const { return tag == "none"; }

  std::string to_string() const {
    std::string out = tag;
    if (tag == tag_cross_polytope) out += " k=" + std::to_string(k);
    out += " simplex-factor=" + std::to_string(apexes.size());
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json out;
    out["class"] = tag;
    out["simplex_factor"] = apexes;
    if (tag == tag_cross_polytope) out["k"] = k;
    return out;
  }
};

/// The path 1-2-3-4.
inline SimplicialComplex path_four() { return SimplicialComplex::from_masks(4, {0b0011, 0b0110, 0b1100}); }

/// Facets {123, 234, 345, 456}.
inline SimplicialComplex six_vertex_strip() {
  return SimplicialComplex::from_masks(6, {0b000111, 0b001110, 0b011100, 0b111000});
}

namespace detail {

struct FamilyMask {
  bool two_points = false;
  bool three_points = false;
  bool path = false;
  bool strip = false;
  bool cross = false;
};

inline EqualityClass identify_family(const SimplicialComplex& k, FamilyMask allowed) {
  EqualityClass out;
  out.apexes = cone_apexes(k);
  VertexMask apex_mask = k.all_vertices();
  for (VertexMask f : k.facets()) apex_mask &= f;
  if (k.facets().size() == 1) return out;  // a simplex: everything is the simplex factor
  const auto core = induced_mask(k, k.all_vertices() & ~apex_mask);
  const std::size_t n = core.vertex_count();
  const auto form = canonical_form(core);
  if (allowed.two_points && n == 2 && form == canonical_form(discrete(2))) {
    out.tag = tag_two_points;
  } else if (allowed.three_points && n == 3 && form == canonical_form(discrete(3))) {
    out.tag = tag_three_points;
  } else if (allowed.path && n == 4 && form == canonical_form(path_four())) {
    out.tag = tag_path;
  } else if (allowed.strip && n == 6 && form == canonical_form(six_vertex_strip())) {
    out.tag = tag_strip;
  } else if (allowed.cross && n >= 4 && n % 2 == 0 && form == canonical_form(cross_polytope_boundary(n / 2))) {
    out.tag = tag_cross_polytope;
    out.k = n / 2;
  }
  return out;
}

} // namespace detail

/// Membership in the families attaining the Taylor upper bound: a simplex
/// joined with a cross-polytope boundary (k >= 2), two or three points.
inline EqualityClass classify_upper_equality(const SimplicialComplex& k) {
  if (!is_flag(k)) throw precondition_error("upper-equality classification needs a flag complex");
  return detail::identify_family(k, {.two_points = true, .three_points = true, .cross = true});
}

/// Membership in the families attaining the Taylor lower bound. Besides the
/// path on four vertices, the six-vertex strip and cross-polytope
/// boundaries, three isolated vertices also attain it (c = 2, m = (2,3)).
inline EqualityClass classify_lower_equality(const SimplicialComplex& k, const Field& field = Field::rationals()) {
  if (!is_flag(k)) throw precondition_error("lower-equality classification needs a flag complex");
  if (!is_cohen_macaulay(k, field)) throw precondition_error("lower-equality classification needs a Cohen-Macaulay complex");
  return detail::identify_family(
      k, {.two_points = true, .three_points = true, .path = true, .strip = true, .cross = true});
}

// ---------------------------------------------------------------------------
// Bound verification

namespace detail {

inline Report make_report(std::string input, const Field& field, Resolution res, std::size_t c, std::uint64_t e,
                          ExtremalShifts shifts, bool cm) {
  Report r;
  r.input = std::move(input);
  r.field = field;
  r.resolution = res;
  r.c = c;
  r.e = e;
  r.m = std::move(shifts.m);
  r.M = std::move(shifts.M);
  r.L = bound_value(r.m);
  r.U = bound_value(r.M);
  r.cm = cm;
  r.upper = compare_upper(e, r.U);
  r.lower = cm ? compare_lower(e, r.L) : Verdict::not_applicable;
  if (c > 0) r.t = static_cast<std::int64_t>(r.M.back()) - static_cast<std::int64_t>(c) - 1;
  return r;
}

inline std::string equality_tag(const SimplicialComplex& k, const Report& r, const Field& field) {
  if (!is_flag(k)) return "none";
  if (r.lower == Verdict::equality) {
    auto cls = classify_lower_equality(k, field);
    if (!cls.none()) return cls.tag;
  }
  if (r.upper == Verdict::equality) return classify_upper_equality(k).tag;
  return "none";
}

} // namespace detail

/// Bounds for S/I_K: c = n - dim K - 1, e = f_{d-1}, shifts from the chosen
/// resolution. The lower verdict is only asserted when K is Cohen-Macaulay.
inline Report verify_bounds(const SimplicialComplex& k, Resolution res, const Field& field = Field::rationals(),
                            const Budget& budget = {}) {
  const std::size_t c = codimension(k);
  auto shifts = complex_shifts(k, res, field, budget, c);
  Report r = detail::make_report(canonical_form(k).to_string(), field, res, c, multiplicity(k), std::move(shifts),
                                 is_cohen_macaulay(k, field));
  r.cls = detail::equality_tag(k, r, field);
  return r;
}

/// A squarefree ideal split as (linear forms) + I_K for K on the remaining
/// variables; `complex` is empty when only linear generators remain.
struct IdealSplit {
  std::size_t linear = 0;
  std::optional<SimplicialComplex> complex;
};

inline IdealSplit split_linear(const MonomialIdeal& squarefree) {
  if (!squarefree.is_squarefree()) throw precondition_error("split_linear needs a squarefree ideal");
  IdealSplit out;
  std::vector<bool> linear_var(squarefree.ambient_vars(), false);
  std::vector<bool> used(squarefree.ambient_vars(), false);
  for (const auto& g : squarefree.generators()) {
    if (g.degree() == 1) {
      ++out.linear;
      linear_var[g.support().front()] = true;
    }
  }
  std::vector<const Monomial*> rest;
  for (const auto& g : squarefree.generators())
    if (g.degree() > 1) {
      rest.push_back(&g);
      for (std::size_t i : g.support()) used[i] = true;
    }
  if (rest.empty()) return out;
  std::vector<std::size_t> position(squarefree.ambient_vars(), 0);
  std::size_t m = 0;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) position[i] = m++;
  std::vector<Monomial> gens;
  for (const Monomial* g : rest) {
    std::vector<Exponent> e(m, 0);
    for (std::size_t i : g->support()) e[position[i]] = 1;
    gens.emplace_back(std::move(e));
  }
  out.complex = from_squarefree_ideal(MonomialIdeal(m, std::move(gens)));
  return out;
}

inline std::string ideal_input_string(const MonomialIdeal& ideal) {
  std::string out;
  for (const auto& g : ideal.generators()) {
    if (!out.empty()) out += ", ";
    out += g.to_string();
  }
  return "(" + out + ")";
}

/// Bounds for S/I. Multiplicity, codimension, CM status and minimal Betti
/// numbers are read off the polarization; Taylor shifts come from GEN(I).
inline Report verify_bounds(const MonomialIdeal& ideal, Resolution res, const Field& field = Field::rationals(),
                            const Budget& budget = {}) {
  if (ideal.empty()) throw zero_ideal("the zero ideal has no bounds to verify");
  const auto split = split_linear(polarize(ideal));
  std::size_t c = split.linear;
  std::uint64_t e = 1;
  bool cm = true;
  if (split.complex) {
    c += codimension(*split.complex);
    e = multiplicity(*split.complex);
    cm = is_cohen_macaulay(*split.complex, field);
  }
  ExtremalShifts shifts;
  if (res == Resolution::taylor) {
    shifts = taylor_shifts(ideal, c, budget);
  } else {
    BettiTable table = koszul_table(split.linear);
    if (split.complex) table = tensor_table(hochster_betti(*split.complex, field, budget), table);
    shifts = extremal_shifts(table, c);
  }
  Report r = detail::make_report(ideal_input_string(ideal), field, res, c, e, std::move(shifts), cm);
  if (split.linear == 0 && split.complex) r.cls = detail::equality_tag(*split.complex, r, field);
  return r;
}

/// Minimal Betti table of S/I via polarization, Hochster and a Koszul factor
/// for the linear generators.
inline BettiTable minimal_betti(const MonomialIdeal& ideal, const Field& field = Field::rationals(),
                                const Budget& budget = {}) {
  if (ideal.empty()) throw zero_ideal("the zero ideal has an empty resolution");
  const auto split = split_linear(polarize(ideal));
  BettiTable table = koszul_table(split.linear);
  if (split.complex) table = tensor_table(hochster_betti(*split.complex, field, budget), table);
  return table;
}

// ---------------------------------------------------------------------------
// Huneke-Miller

struct HunekeMiller {
  bool premise = false;  // CM and pure minimal resolution
  bool holds = true;     // premise implies e = F(m)
};

inline HunekeMiller huneke_miller(const SimplicialComplex& k, const Field& field = Field::rationals(),
                                  const Budget& budget = {}) {
  HunekeMiller out;
  const std::size_t c = codimension(k);
  if (c == 0) {
    out.premise = true;
    out.holds = multiplicity(k) == 1;
    return out;
  }
  if (!is_cohen_macaulay(k, field)) return out;
  const auto table = hochster_betti(k, field, budget);
  if (!is_pure(table)) return out;
  out.premise = true;
  out.holds = Rational(multiplicity(k)) == bound_value(extremal_shifts(table, c).m);
  return out;
}

inline bool huneke_miller_check(const SimplicialComplex& k, const Field& field = Field::rationals(),
                                const Budget& budget = {}) {
  return huneke_miller(k, field, budget).holds;
}

// ---------------------------------------------------------------------------
// Unions of induced subcomplexes

/// Numeric data of one union instance. Shift sequences are the first c
/// maximal shifts of each complex under a common resolution.
struct UnionInput {
  std::size_t n_union = 0;
  std::size_t d = 0;  // dim(K u K') + 1
  std::size_t n1 = 0, d1 = 0;
  std::size_t n2 = 0, d2 = 0;
  std::uint64_t e_union = 0;
  std::uint64_t e1 = 0, e2 = 0;
  ShiftSequence M_union, M1, M2;
  std::size_t f0_intersection = 0;
  bool intersection_has_top_face = false;
};

struct UnionOutcome {
  std::int64_t t = 0;
  std::int64_t z = 0;
  bool domination = false;
  bool factors_hold = false;
  bool same_dimension = false;
  /// All hypotheses of the inequality in force.
  bool applicable = false;
  Rational bound_union;
  Rational rhs;
  bool inequality_holds = true;
  bool equality = false;
  bool necessary_conditions = false;
};

/// Evaluates the union inequality: for equal dimensions with z >= 0,
/// f(K u K') <= U - z; for dim K' < dim K, f(K u K') <= U - n' + f_0(K n K').
inline UnionOutcome evaluate_union(const UnionInput& in) {
  UnionOutcome out;
  const std::size_t c = in.n_union - in.d;
  if (c == 0 || in.M_union.size() != c) throw undefined_codimension("the union is a simplex");
  out.t = static_cast<std::int64_t>(in.M_union.back()) - static_cast<std::int64_t>(c) - 1;
  out.z = out.t + static_cast<std::int64_t>(in.d) - 1 - static_cast<std::int64_t>(in.f0_intersection);
  out.domination = true;
  for (const auto* seq : {&in.M1, &in.M2})
    for (std::size_t i = 0; i < seq->size() && i < c; ++i)
      if ((*seq)[i] > in.M_union[i]) out.domination = false;
  out.factors_hold = Rational(in.e1) <= bound_value(in.M1) && Rational(in.e2) <= bound_value(in.M2);
  out.same_dimension = in.d1 == in.d2;
  out.bound_union = bound_value(in.M_union);
  if (out.same_dimension) {
    out.applicable = out.domination && out.factors_hold && out.z >= 0;
    out.rhs = out.bound_union - out.z;
  } else {
    const std::size_t n_small = in.d1 < in.d2 ? in.n1 : in.n2;
    out.applicable = out.domination && out.factors_hold;
    out.rhs = out.bound_union - Rational(n_small) + Rational(in.f0_intersection);
  }
  out.inequality_holds = Rational(in.e_union) <= out.rhs;
  out.equality = Rational(in.e_union) == out.bound_union;
  out.necessary_conditions = out.same_dimension && out.z == 0 && !in.intersection_has_top_face;
  return out;
}

struct UnionReport {
  Report report;
  UnionInput input;
  UnionOutcome outcome;

  nlohmann::ordered_json to_json() const {
    auto out = report.to_json();
    out["f0_intersection"] = input.f0_intersection;
    out["same_dimension"] = outcome.same_dimension;
    out["intersection_has_top_face"] = input.intersection_has_top_face;
    out["domination"] = outcome.domination;
    out["factors_hold"] = outcome.factors_hold;
    out["applicable"] = outcome.applicable;
    out["rhs"] = to_fraction_string(outcome.rhs);
    out["inequality"] = outcome.inequality_holds ? "holds" : "fails";
    out["equality"] = outcome.equality;
    out["necessary_conditions"] = outcome.necessary_conditions;
    return out;
  }
};

namespace detail {

inline bool faces_contained(const SimplicialComplex& a, const SimplicialComplex& b) {
  for (VertexMask f : a.facets()) {
    auto labels = a.labels_of(f);
    bool inside = std::all_of(labels.begin(), labels.end(), [&](int v) {
      return std::binary_search(b.labels().begin(), b.labels().end(), v);
    });
    if (!inside || !b.is_face(labels)) return false;
  }
  return true;
}

} // namespace detail

/// Union checks for K, K' over a shared labeling.
inline UnionReport check_union_inequality(const SimplicialComplex& k1, const SimplicialComplex& k2, Resolution res,
                                          const Field& field = Field::rationals(), const Budget& budget = {}) {
  if (detail::faces_contained(k1, k2) || detail::faces_contained(k2, k1))
    throw precondition_error("one complex contains the other");
  const auto u = complex_union(k1, k2);
  for (const auto* part : {&k1, &k2})
    if (!(induced(u, part->labels()) == *part)) throw precondition_error("both complexes must be induced subcomplexes of the union");
  UnionInput in;
  in.n_union = u.vertex_count();
  in.d = static_cast<std::size_t>(u.dimension() + 1);
  in.n1 = k1.vertex_count();
  in.d1 = static_cast<std::size_t>(k1.dimension() + 1);
  in.n2 = k2.vertex_count();
  in.d2 = static_cast<std::size_t>(k2.dimension() + 1);
  in.e_union = f_vector(u).f(static_cast<int>(in.d) - 1);
  in.e1 = f_vector(k1).f(static_cast<int>(in.d1) - 1);
  in.e2 = f_vector(k2).f(static_cast<int>(in.d2) - 1);
  in.M_union = complex_shifts(u, res, field, budget, codimension(u)).M;
  in.M1 = complex_shifts(k1, res, field, budget, codimension(k1)).M;
  in.M2 = complex_shifts(k2, res, field, budget, codimension(k2)).M;
  if (auto common = intersection(k1, k2)) {
    in.f0_intersection = common->vertex_count();
    in.intersection_has_top_face = common->dimension() + 1 >= static_cast<int>(in.d);
  }
  UnionReport out;
  out.input = in;
  out.outcome = evaluate_union(in);
  out.report = verify_bounds(u, res, field, budget);
  out.report.z = out.outcome.z;
  return out;
}

// ---------------------------------------------------------------------------
// Vertex-deletion reduction

struct HomRedCertificate {
  bool enough_vertices = false;  // n > d
  bool top_shift = false;        // M_{n-d} = n
  bool domination = false;       // M_i(K - v) <= M_i(K), i <= n-d-1
  bool applicable = false;
  /// (1/(n-d)) * sum_v f_{d-1}(K - v)
  Rational average;
  std::uint64_t e = 0;
  bool identity_holds = false;
  /// Every K - v satisfies its own upper bound.
  bool deletions_hold = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json out;
    out["applicable"] = applicable;
    out["top_shift"] = top_shift;
    out["domination"] = domination;
    out["average"] = to_fraction_string(average);
    out["e"] = e;
    out["identity"] = identity_holds;
    out["deletions_hold"] = deletions_hold;
    return out;
  }
};

inline HomRedCertificate homred_applicable(const SimplicialComplex& k, Resolution res,
                                           const Field& field = Field::rationals(), const Budget& budget = {}) {
  HomRedCertificate out;
  const std::size_t n = k.vertex_count();
  const auto d = static_cast<std::size_t>(k.dimension() + 1);
  out.e = multiplicity(k);
  if (n <= d) return out;
  out.enough_vertices = true;
  const std::size_t c = n - d;
  const auto M = complex_shifts(k, res, field, budget, c).M;
  out.top_shift = M.back() == n;
  out.domination = true;
  out.deletions_hold = true;
  BigInt sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (n == 1) break;
    const auto kv = induced_mask(k, k.all_vertices() & ~bit(v));
    const std::uint64_t top = f_vector(kv).f(static_cast<int>(d) - 1);
    sum += top;
    const std::size_t cv = codimension(kv);
    const auto Mv = complex_shifts(kv, res, field, budget, cv).M;
    for (std::size_t i = 0; i < std::min(cv, c - 1); ++i)
      if (Mv[i] > M[i]) out.domination = false;
    if (Rational(multiplicity(kv)) > bound_value(Mv)) out.deletions_hold = false;
  }
  out.average = Rational(sum) / Rational(c);
  out.identity_holds = out.average == Rational(out.e);
  out.applicable = out.top_shift && out.domination;
  return out;
}

} // namespace mcv
