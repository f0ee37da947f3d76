#include <gtest/gtest.h>

#include <random>

#include "mcv/betti.hpp"
#include "mcv/conjecture.hpp"
#include "mcv/enumeration.hpp"
#include "mcv/shifts.hpp"
#include "support/oracles.hpp"

using namespace mcv;

namespace {

oracle::Table as_map(const BettiTable& t) { return {t.entries().begin(), t.entries().end()}; }

} // namespace

TEST(BettiTable, AddLookupAndRows) {
  BettiTable t;
  t.add(1, 2, 3);
  t.add(1, 3, 1);
  t.add(2, 4, 2);
  t.add(2, 4, 0);
  EXPECT_EQ(t(1, 2), 3u);
  EXPECT_EQ(t(5, 5), 0u);
  EXPECT_EQ(t.length(), 2u);
  EXPECT_EQ(t.total(1), 4u);
  EXPECT_EQ(t.row(1), (std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}, {3, 1}}));
  EXPECT_THROW(t.add(0, 1, 1), malformed_table);
  EXPECT_THROW(t.add(1, 0, 1), malformed_table);
}

TEST(BettiTable, JsonRoundTripAndValidation) {
  BettiTable t;
  t.add(1, 2, 3);
  t.add(2, 3, 2);
  EXPECT_EQ(BettiTable::from_json(t.to_json()), t);
  auto bad = t.to_json();
  bad["length"] = 5;
  EXPECT_THROW(BettiTable::from_json(bad), malformed_table);
  auto negative = nlohmann::ordered_json::parse(R"({"length":1,"entries":[[1,2,-1]]})");
  EXPECT_THROW(BettiTable::from_json(negative), malformed_table);
  EXPECT_THROW(BettiTable::from_json(nlohmann::ordered_json::parse(R"({"entries":[[1,2]]})")), malformed_table);
}

TEST(Taylor, FourCycleTable) {
  auto ideal = nonfaces_ideal(cross_polytope_boundary(2));
  auto t = taylor_betti(ideal);
  EXPECT_EQ(t(1, 2), 2u);
  EXPECT_EQ(t(2, 4), 1u);
  EXPECT_EQ(t.length(), 2u);
}

TEST(Taylor, TableMatchesSubsetOracleProperty) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    auto ideal = oracle::random_ideal(rng, 5, 3, 10);
    EXPECT_EQ(as_map(taylor_betti(ideal)), oracle::taylor_table(ideal));
  }
}

TEST(Taylor, ShiftsMatchSubsetOracleProperty) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    auto ideal = oracle::random_ideal(rng, 5, 3, 10);
    auto expected = oracle::taylor_shifts(ideal, ideal.size());
    auto got = taylor_shifts(ideal, ideal.size());
    EXPECT_EQ(got.m, expected.m);
    EXPECT_EQ(got.M, expected.M);
    EXPECT_EQ(got, extremal_shifts(taylor_betti(ideal), ideal.size()));
  }
}

TEST(Taylor, TotalBettiNumbersAreBinomials) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto ideal = oracle::random_ideal(rng, 4, 2, 8);
    auto t = taylor_betti(ideal);
    for (std::size_t i = 1; i <= ideal.size(); ++i) EXPECT_EQ(t.total(i), binomial(ideal.size(), i));
  }
}

TEST(Taylor, LatticeCountsAreConsistent) {
  auto ideal = nonfaces_ideal(discrete(3));
  auto lattice = lcm_lattice(ideal);
  // every pair and the triple of {x1x2, x1x3, x2x3} has lcm x1x2x3
  ASSERT_EQ(lattice.size(), 4u);
}

TEST(Taylor, BudgetsAreEnforced) {
  auto ideal = nonfaces_ideal(discrete(6));
  Budget b;
  b.max_subsets = 1000;
  EXPECT_THROW(taylor_betti(ideal, b), budget_error);
  Budget lattice;
  lattice.max_lattice = 3;
  EXPECT_THROW(taylor_shifts(ideal, 2, lattice), budget_error);
  EXPECT_THROW(taylor_shifts(ideal, ideal.size() + 1), precondition_error);
  EXPECT_THROW(taylor_betti(MonomialIdeal(2, {})), zero_ideal);
}

TEST(Taylor, ExceptionalTableAllowsSmallDegrees) {
  // six edges on four vertices: the full subset has lcm degree 4 at i = 6
  auto t = taylor_betti(nonfaces_ideal(discrete(4)));
  EXPECT_EQ(t(6, 4), 1u);
}

TEST(Dominance, MinimalBelowTaylorProperty) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    auto k = oracle::random_complex(rng, 6, 5);
    auto ideal = nonfaces_ideal(k);
    if (ideal.empty()) continue;
    auto taylor = taylor_betti(ideal);
    auto minimal = hochster_betti(k);
    EXPECT_TRUE(dominated_by(minimal, taylor));
    const std::size_t c = codimension(k);
    auto a = extremal_shifts(minimal, c);
    auto b = extremal_shifts(taylor, c);
    for (std::size_t i = 0; i < c; ++i) {
      EXPECT_GE(a.m[i], b.m[i]);
      EXPECT_LE(a.M[i], b.M[i]);
    }
  }
}

TEST(Tensor, KoszulAndProducts) {
  auto k = koszul_table(3);
  EXPECT_EQ(k(1, 1), 3u);
  EXPECT_EQ(k(2, 2), 3u);
  EXPECT_EQ(k(3, 3), 1u);
  // S/(x) (x) S/(y) = Koszul on two variables
  EXPECT_EQ(tensor_table(koszul_table(1), koszul_table(1)), koszul_table(2));
  EXPECT_TRUE(is_pure(k));
}

TEST(Tensor, JoinTableIsProductOfFactorsProperty) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = oracle::random_complex(rng, 3, 3);
    auto b = relabel_offset(oracle::random_complex(rng, 3, 3), 10);
    if (a.is_simplex() || b.is_simplex()) continue;
    auto joined = hochster_betti(join(a, b));
    EXPECT_EQ(joined, tensor_table(hochster_betti(a), hochster_betti(b)));
  }
}

TEST(Joins, DefinitionExamples) {
  std::vector<std::uint64_t> m{2, 3}, mp{2};
  EXPECT_EQ(lower_join(m, mp), (ShiftSequence{2, 3, 5}));
  EXPECT_EQ(upper_join(m, mp), (ShiftSequence{2, 4, 5}));
  std::vector<std::uint64_t> zero{0};
  EXPECT_THROW(lower_join(zero, mp), precondition_error);
}

TEST(Joins, MatchConvolutionOracleProperty) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = oracle::random_sequence(rng, 5, 12);
    auto b = oracle::random_sequence(rng, 5, 12);
    EXPECT_EQ(lower_join(a, b), oracle::convolve(a, b, false));
    EXPECT_EQ(upper_join(a, b), oracle::convolve(a, b, true));
    EXPECT_EQ(lower_join(a, b), lower_join(b, a));
  }
}

TEST(Joins, BoundInequalitiesProperty) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = oracle::random_sequence(rng, 5, 20);
    auto b = oracle::random_sequence(rng, 5, 20);
    EXPECT_LE(bound_value(lower_join(a, b)), bound_value(a) * bound_value(b));
    EXPECT_GE(bound_value(upper_join(a, b)), bound_value(a) * bound_value(b));
    EXPECT_EQ(bound_value(a), oracle::bound(a));
  }
}

TEST(Joins, ArithmeticSequencesGiveEquality) {
  for (std::uint64_t a = 1; a <= 5; ++a)
    for (std::size_t c = 1; c <= 4; ++c)
      for (std::size_t cp = 1; cp <= 4; ++cp) {
        ShiftSequence m, mp;
        for (std::size_t i = 1; i <= c; ++i) m.push_back(a * i);
        for (std::size_t i = 1; i <= cp; ++i) mp.push_back(a * i);
        EXPECT_EQ(bound_value(lower_join(m, mp)), bound_value(m) * bound_value(mp));
        EXPECT_EQ(bound_value(upper_join(m, mp)), bound_value(m) * bound_value(mp));
        EXPECT_TRUE(check_tensor_equality_conditions(m, mp, c, cp));
        EXPECT_EQ(arithmetic_ratio(m, mp), a);
      }
  std::vector<std::uint64_t> m{2, 4}, mp{3};
  EXPECT_FALSE(check_tensor_equality_conditions(m, mp, 2, 1));
  EXPECT_THROW(check_tensor_equality_conditions(m, mp, 1, 1), precondition_error);
}

TEST(Bound, Values) {
  EXPECT_EQ(to_fraction_string(bound_value(std::vector<std::uint64_t>{2, 3})), "3/1");
  EXPECT_EQ(to_fraction_string(bound_value(std::vector<std::uint64_t>{3, 4, 5})), "10/1");
  EXPECT_EQ(to_fraction_string(bound_value(std::vector<std::uint64_t>{2, 3, 5})), "5/1");
  EXPECT_EQ(to_fraction_string(bound_value(std::vector<std::uint64_t>{3})), "3/1");
  EXPECT_EQ(to_fraction_string(bound_value(std::vector<std::uint64_t>{1, 1})), "1/2");
  EXPECT_EQ(bound_value(std::vector<std::uint64_t>{}), 1);
  EXPECT_EQ(to_string(std::vector<std::uint64_t>{2, 4}), "(2,4)");
}
