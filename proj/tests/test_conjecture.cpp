#include <gtest/gtest.h>

#include <random>

#include "mcv/conjecture.hpp"
#include "mcv/enumeration.hpp"
#include "mcv/text_io.hpp"
#include "support/oracles.hpp"

using namespace mcv;

namespace {

SimplicialComplex rp2() {
  return parse_facets(std::string_view("1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n2 4 5\n2 4 6\n3 4 6\n3 5 6\n"));
}

SimplicialComplex cone_over(const SimplicialComplex& k, std::size_t apexes) {
  return join(k, relabel_offset(simplex(apexes), 100));
}

} // namespace

TEST(Verdicts, Comparisons) {
  EXPECT_EQ(compare_upper(3, Rational(4)), Verdict::holds);
  EXPECT_EQ(compare_upper(4, Rational(4)), Verdict::equality);
  EXPECT_EQ(compare_upper(5, Rational(4)), Verdict::fails);
  EXPECT_EQ(compare_lower(5, Rational(4)), Verdict::holds);
  EXPECT_EQ(compare_lower(3, Rational(7, 2)), Verdict::fails);
  EXPECT_EQ(to_string(Verdict::not_applicable), "not-applicable");
  EXPECT_TRUE(satisfied(Verdict::not_applicable));
  EXPECT_EQ(parse_resolution("minimal"), Resolution::minimal);
  EXPECT_THROW(parse_resolution("koszul"), precondition_error);
}

TEST(Report, SixVertexStripTaylor) {
  auto r = verify_bounds(six_vertex_strip(), Resolution::taylor);
  EXPECT_EQ(r.c, 3u);
  EXPECT_EQ(r.e, 4u);
  EXPECT_EQ(r.m, (ShiftSequence{2, 3, 4}));
  EXPECT_EQ(r.M, (ShiftSequence{2, 4, 6}));
  EXPECT_EQ(to_fraction_string(r.L), "4/1");
  EXPECT_EQ(to_fraction_string(r.U), "8/1");
  EXPECT_TRUE(r.cm);
  EXPECT_EQ(r.lower, Verdict::equality);
  EXPECT_EQ(r.upper, Verdict::holds);
  EXPECT_EQ(r.t, 2);
  EXPECT_EQ(r.cls, tag_strip);
}

TEST(Report, FourCycleBothEqualities) {
  auto r = verify_bounds(cross_polytope_boundary(2), Resolution::taylor);
  EXPECT_EQ(r.e, 4u);
  EXPECT_EQ(r.lower, Verdict::equality);
  EXPECT_EQ(r.upper, Verdict::equality);
  EXPECT_EQ(r.cls, tag_cross_polytope);
  EXPECT_TRUE(r.ok());
}

TEST(Report, NotCohenMacaulayLowerIsNotApplicable) {
  auto r = verify_bounds(SimplicialComplex({}, {{1, 2}, {3, 4}}), Resolution::taylor);
  EXPECT_FALSE(r.cm);
  EXPECT_EQ(r.lower, Verdict::not_applicable);
  EXPECT_EQ(r.upper, Verdict::holds);
}

TEST(Report, JsonKeysInOrder) {
  auto j = verify_bounds(discrete(3), Resolution::taylor).to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"input", "field", "resolution", "c", "e", "L", "U", "cm", "upper", "lower",
                                            "t", "z", "class"}));
  EXPECT_EQ(j["L"], "3/1");
  EXPECT_EQ(j["class"], std::string(tag_three_points));
}

TEST(Report, SimplexHasUndefinedT) {
  auto r = verify_bounds(simplex(3), Resolution::taylor);
  EXPECT_EQ(r.c, 0u);
  EXPECT_FALSE(r.t.has_value());
  EXPECT_THROW(leray_t(simplex(3), Resolution::taylor), undefined_codimension);
}

TEST(Report, HollowTriangleT) {
  SimplicialComplex k({}, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(leray_t(k, Resolution::taylor), 1);
  EXPECT_EQ(leray_t(k, Resolution::minimal), 1);
}

TEST(Report, ProjectivePlaneFieldSensitivity) {
  auto q = verify_bounds(rp2(), Resolution::minimal, Field::rationals());
  auto two = verify_bounds(rp2(), Resolution::minimal, Field::prime(2));
  EXPECT_TRUE(q.cm);
  EXPECT_FALSE(two.cm);
  EXPECT_NE(hochster_betti(rp2(), Field::rationals()), hochster_betti(rp2(), Field::prime(2)));
  EXPECT_TRUE(q.ok());
  EXPECT_TRUE(two.ok());
}

TEST(Report, CrossPolytopeIdeals) {
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<Monomial> gens;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Exponent> e(2 * k, 0);
      e[i] = 1;
      e[i + k] = 1;
      gens.emplace_back(std::move(e));
    }
    MonomialIdeal ideal(2 * k, std::move(gens));
    for (auto res : {Resolution::taylor, Resolution::minimal}) {
      auto r = verify_bounds(ideal, res);
      EXPECT_EQ(r.e, std::uint64_t{1} << k);
      EXPECT_EQ(r.L, Rational(std::uint64_t{1} << k));
      EXPECT_EQ(r.U, Rational(std::uint64_t{1} << k));
      ShiftSequence expected;
      for (std::size_t i = 1; i <= k; ++i) expected.push_back(2 * i);
      EXPECT_EQ(r.m, expected);
      EXPECT_EQ(r.M, expected);
    }
    EXPECT_TRUE(is_pure(minimal_betti(ideal)));
  }
}

TEST(Report, NonSquarefreeIdeal) {
  // (x1^2, x1 x2) = x1 (x1, x2): c = 1, e = 1
  MonomialIdeal ideal(2, {Monomial({2, 0}), Monomial({1, 1})});
  auto r = verify_bounds(ideal, Resolution::taylor);
  EXPECT_EQ(r.c, 1u);
  EXPECT_EQ(r.e, 1u);
  EXPECT_EQ(r.m, (ShiftSequence{2}));
  EXPECT_EQ(r.input, "(x1^2, x1 x2)");
  EXPECT_TRUE(r.ok());
  EXPECT_THROW(verify_bounds(MonomialIdeal(2, {}), Resolution::taylor), zero_ideal);
}

TEST(Report, LinearGeneratorsSplitOff) {
  // (x1, x2 x3): c = 2, e = 2
  MonomialIdeal ideal(3, {Monomial({1, 0, 0}), Monomial({0, 1, 1})});
  auto split = split_linear(ideal);
  EXPECT_EQ(split.linear, 1u);
  ASSERT_TRUE(split.complex.has_value());
  EXPECT_EQ(split.complex->vertex_count(), 2u);
  auto r = verify_bounds(ideal, Resolution::minimal);
  EXPECT_EQ(r.c, 2u);
  EXPECT_EQ(r.e, 2u);
  EXPECT_EQ(r.m, (ShiftSequence{1, 3}));
  EXPECT_TRUE(r.ok());
}

TEST(Report, IdealAndComplexAgreeProperty) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 100; ++trial) {
    auto k = oracle::random_complex(rng, 6, 5);
    auto ideal = nonfaces_ideal(k);
    if (ideal.empty()) continue;
    for (auto res : {Resolution::taylor, Resolution::minimal}) {
      auto a = verify_bounds(k, res);
      auto b = verify_bounds(ideal, res);
      EXPECT_EQ(a.c, b.c);
      EXPECT_EQ(a.e, b.e);
      EXPECT_EQ(a.m, b.m);
      EXPECT_EQ(a.M, b.M);
      EXPECT_EQ(a.cm, b.cm);
      EXPECT_EQ(a.upper, b.upper);
      EXPECT_EQ(a.lower, b.lower);
    }
    EXPECT_EQ(minimal_betti(ideal), hochster_betti(k));
  }
}

TEST(Report, MinimalTAgreesWithLerayNumber) {
  for (const auto& k : enum_complexes_upto(5)) {
    if (k.is_simplex()) continue;
    const auto t = leray_t(k, Resolution::minimal);
    const auto leray = leray_number(k);
    EXPECT_LE(t, leray);
    if (is_cohen_macaulay(k)) EXPECT_EQ(t, leray);
  }
}

TEST(Classification, Families) {
  EXPECT_EQ(classify_upper_equality(discrete(2)).tag, tag_two_points);
  EXPECT_EQ(classify_upper_equality(discrete(3)).tag, tag_three_points);
  auto cross = classify_upper_equality(cross_polytope_boundary(3));
  EXPECT_EQ(cross.tag, tag_cross_polytope);
  EXPECT_EQ(cross.k, 3u);
  EXPECT_EQ(classify_lower_equality(path_four()).tag, tag_path);
  EXPECT_EQ(classify_lower_equality(six_vertex_strip()).tag, tag_strip);
  EXPECT_TRUE(classify_upper_equality(path_four()).none());
  EXPECT_TRUE(classify_upper_equality(simplex(3)).none());
}

TEST(Classification, ConesKeepTheirFamily) {
  auto k = cone_over(discrete(2), 2);
  auto cls = classify_upper_equality(k);
  EXPECT_EQ(cls.tag, tag_two_points);
  EXPECT_EQ(cls.apexes, (std::vector<int>{101, 102}));
  auto strip = classify_lower_equality(cone_over(six_vertex_strip(), 1));
  EXPECT_EQ(strip.tag, tag_strip);
  EXPECT_EQ(strip.apexes.size(), 1u);
  EXPECT_EQ(strip.to_json()["simplex_factor"].size(), 1u);
}

TEST(Classification, Preconditions) {
  SimplicialComplex hollow({}, {{1, 2}, {2, 3}, {1, 3}});
  EXPECT_THROW(classify_upper_equality(hollow), precondition_error);
  EXPECT_THROW(classify_lower_equality(SimplicialComplex({}, {{1, 2}, {3, 4}})), precondition_error);
}

TEST(Classification, EqualityInstancesAreClassifiedProperty) {
  // Every Taylor equality among flag complexes on <= 6 vertices has a tag.
  for (const auto& k : flag_complexes_upto(6)) {
    if (k.is_simplex()) continue;
    auto r = verify_bounds(k, Resolution::taylor);
    if (r.upper == Verdict::equality) EXPECT_FALSE(classify_upper_equality(k).none()) << canonical_form(k).to_string();
    if (r.lower == Verdict::equality) EXPECT_FALSE(classify_lower_equality(k).none()) << canonical_form(k).to_string();
    if (!classify_upper_equality(k).none()) EXPECT_EQ(r.upper, Verdict::equality);
    if (r.cm && !classify_lower_equality(k).none()) EXPECT_EQ(r.lower, Verdict::equality);
  }
}

TEST(HunekeMiller, PureResolutions) {
  auto hm = huneke_miller(cross_polytope_boundary(2));
  EXPECT_TRUE(hm.premise);
  EXPECT_TRUE(hm.holds);
  EXPECT_TRUE(huneke_miller_check(discrete(3)));
  EXPECT_FALSE(huneke_miller(SimplicialComplex({}, {{1, 2}, {3, 4}})).premise);
}

TEST(Union, TwoTrianglesSharingAnEdge) {
  SimplicialComplex a({}, {{1, 2, 3}});
  SimplicialComplex b({}, {{2, 3, 4}});
  auto u = check_union_inequality(a, b, Resolution::taylor);
  EXPECT_EQ(u.input.f0_intersection, 2u);
  EXPECT_TRUE(u.outcome.same_dimension);
  EXPECT_TRUE(u.outcome.inequality_holds);
  EXPECT_EQ(u.report.e, 2u);
  EXPECT_EQ(u.to_json()["inequality"], "holds");
  EXPECT_THROW(check_union_inequality(a, SimplicialComplex({}, {{1, 2}}), Resolution::taylor), precondition_error);
  // {1,2,3} spans the edge 13 in the union but not in c
  SimplicialComplex c({}, {{1, 2}, {2, 3}});
  SimplicialComplex d({}, {{1, 3}, {3, 4}});
  EXPECT_THROW(check_union_inequality(c, d, Resolution::taylor), precondition_error);
}

TEST(Union, EvaluateArithmetic) {
  UnionInput in;
  in.n_union = 4;
  in.d = 2;
  in.n1 = 3;
  in.d1 = 2;
  in.n2 = 3;
  in.d2 = 2;
  in.e_union = 3;
  in.e1 = 2;
  in.e2 = 2;
  in.M_union = {2, 4};
  in.M1 = {2};
  in.M2 = {2};
  in.f0_intersection = 2;
  auto out = evaluate_union(in);
  EXPECT_EQ(out.t, 1);
  EXPECT_EQ(out.z, 0);
  EXPECT_TRUE(out.applicable);
  EXPECT_EQ(out.rhs, Rational(4));
  EXPECT_TRUE(out.inequality_holds);
  EXPECT_FALSE(out.equality);
  in.M_union = {};
  EXPECT_THROW(evaluate_union(in), undefined_codimension);
}

TEST(HomRed, AveragingIdentityOnPureComplexesProperty) {
  for (const auto& k : enum_complexes_upto(5)) {
    const auto fv = f_vector(k);
    const auto d = static_cast<std::size_t>(k.dimension() + 1);
    bool pure = std::all_of(k.facets().begin(), k.facets().end(), [&](VertexMask f) { return popcount(f) == d; });
    if (!pure || k.vertex_count() <= d) continue;
    auto cert = homred_applicable(k, Resolution::taylor);
    EXPECT_TRUE(cert.identity_holds) << canonical_form(k).to_string();
    EXPECT_EQ(cert.e, fv.counts.back());
  }
}
