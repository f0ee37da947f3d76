#include <gtest/gtest.h>

#include <random>

#include "mcv/betti.hpp"
#include "mcv/conjecture.hpp"
#include "mcv/homology.hpp"
#include "mcv/linalg.hpp"
#include "mcv/text_io.hpp"
#include "support/oracles.hpp"

using namespace mcv;

namespace {

SimplicialComplex rp2() {
  return parse_facets(std::string_view("1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n2 4 5\n2 4 6\n3 4 6\n3 5 6\n"));
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int spread) {
  std::uniform_int_distribution<int> v(-spread, spread);
  Matrix m(rows, cols);
  for (auto& x : m.data) x = v(rng);
  return m;
}

std::vector<std::vector<long long>> dense(const Matrix& m) {
  std::vector<std::vector<long long>> out(m.rows, std::vector<long long>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m.data[i * m.cols + j];
  return out;
}

std::vector<std::size_t> dims_of(const HomologyProfile& h) { return h.dims; }

} // namespace

TEST(Linalg, RanksMatchDenseOracleProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 9);
  for (int trial = 0; trial < 400; ++trial) {
    auto m = random_matrix(rng, size(rng), size(rng), trial % 2 ? 1 : 4);
    EXPECT_EQ(rank_rational(m), oracle::dense_rank(dense(m), 0));
    EXPECT_EQ(rank_mod_2(m), oracle::dense_rank(dense(m), 2));
    EXPECT_EQ(rank_mod_p(m, 3), oracle::dense_rank(dense(m), 3));
    EXPECT_EQ(rank_mod_p(m, 2), rank_mod_2(m));
  }
}

TEST(Linalg, RationalRankSurvivesLargeEntries) {
  Matrix m(2, 2);
  m.data = {std::int64_t{1} << 40, 3, std::int64_t{1} << 41, 6};
  EXPECT_EQ(rank_rational(m), 1u);
  m.data = {std::int64_t{1} << 40, 3, std::int64_t{1} << 41, 7};
  EXPECT_EQ(rank_rational(m), 2u);
}

TEST(Field, Parsing) {
  EXPECT_TRUE(Field::parse("q").is_rational());
  EXPECT_EQ(Field::parse("gf:3").characteristic(), 3u);
  EXPECT_EQ(Field::parse("gf:2").to_string(), "gf:2");
  EXPECT_THROW(Field::parse("gf:4"), precondition_error);
  EXPECT_THROW(Field::parse("gf:"), precondition_error);
  EXPECT_THROW(Field::parse("r"), precondition_error);
  EXPECT_TRUE(is_prime(2147483647));
  EXPECT_THROW(Field::prime(2147483647ULL * 2 + 1), precondition_error);
}

TEST(Homology, BoundarySquaresToZero) {
  auto k = rp2();
  for (int i = 0; i < k.dimension(); ++i) {
    auto lower = boundary_matrix(k, i);
    auto upper = boundary_matrix(k, i + 1);
    EXPECT_TRUE((lower * upper).is_zero());
  }
  EXPECT_THROW(boundary_matrix(k, 3), precondition_error);
}

TEST(Homology, Spheres) {
  auto circle = cross_polytope_boundary(2);
  EXPECT_EQ(reduced_homology(circle).top_nonzero(), 1);
  EXPECT_EQ(reduced_homology(circle)(1), 1u);
  auto octa = cross_polytope_boundary(3);
  EXPECT_EQ(reduced_homology(octa)(2), 1u);
  EXPECT_EQ(reduced_homology(octa)(1), 0u);
  EXPECT_TRUE(reduced_homology(simplex(4)).is_acyclic());
  EXPECT_EQ(reduced_homology(discrete(3))(0), 2u);
}

TEST(Homology, ProjectivePlaneDependsOnField) {
  auto k = rp2();
  EXPECT_TRUE(reduced_homology(k, Field::rationals()).is_acyclic());
  auto h2 = reduced_homology(k, Field::prime(2));
  EXPECT_EQ(h2(1), 1u);
  EXPECT_EQ(h2(2), 1u);
  EXPECT_TRUE(reduced_homology(k, Field::prime(3)).is_acyclic());
}

TEST(Homology, MatchesDenseOracleProperty) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    auto k = oracle::random_complex(rng, 7, 7);
    for (unsigned p : {0u, 2u, 3u}) {
      Field field = p ? Field::prime(p) : Field::rationals();
      auto expected = oracle::reduced_homology(oracle::faces(k), p);
      auto got = dims_of(reduced_homology(k, field));
      got.resize(expected.size(), 0);
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(Homology, EulerCharacteristicProperty) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    auto k = oracle::random_complex(rng, 8, 8);
    auto fv = f_vector(k);
    std::int64_t chi = 0;
    for (std::size_t s = 0; s < fv.counts.size(); ++s)
      chi += (s % 2 ? 1 : -1) * static_cast<std::int64_t>(fv.counts[s]);
    auto h = reduced_homology(k);
    std::int64_t betti = 0;
    for (std::size_t s = 0; s < h.dims.size(); ++s) betti += (s % 2 ? 1 : -1) * static_cast<std::int64_t>(h.dims[s]);
    EXPECT_EQ(chi, betti);
  }
}

TEST(Hochster, MatchesSubsetOracleProperty) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 80; ++trial) {
    auto k = oracle::random_complex(rng, 6, 6);
    for (unsigned p : {0u, 2u}) {
      Field field = p ? Field::prime(p) : Field::rationals();
      auto table = hochster_betti(k, field);
      std::map<std::pair<std::size_t, std::uint64_t>, std::uint64_t> got(table.entries().begin(), table.entries().end());
      EXPECT_EQ(got, oracle::hochster_table(k, p));
    }
  }
}

TEST(Hochster, RespectsSubsetBudget) {
  Budget b;
  b.max_subsets = 16;
  EXPECT_THROW(hochster_betti(discrete(5), Field::rationals(), b), budget_error);
  EXPECT_NO_THROW(hochster_betti(discrete(4), Field::rationals(), b));
}

TEST(CohenMacaulay, KnownExamples) {
  EXPECT_TRUE(is_cohen_macaulay(rp2(), Field::rationals()));
  EXPECT_FALSE(is_cohen_macaulay(rp2(), Field::prime(2)));
  EXPECT_TRUE(is_cohen_macaulay(cross_polytope_boundary(3)));
  EXPECT_TRUE(is_cohen_macaulay(discrete(5)));
  EXPECT_FALSE(is_cohen_macaulay(SimplicialComplex({}, {{1, 2}, {3, 4}})));
  EXPECT_FALSE(is_cohen_macaulay(SimplicialComplex({}, {{1, 2, 3}, {3, 4}})));
  EXPECT_TRUE(is_cohen_macaulay(SimplicialComplex({}, {{1, 2}, {2, 3}, {3, 4}})));
}

TEST(CohenMacaulay, MatchesReisnerOracleProperty) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    auto k = oracle::random_complex(rng, 6, 5);
    for (unsigned p : {0u, 2u}) {
      Field field = p ? Field::prime(p) : Field::rationals();
      EXPECT_EQ(is_cohen_macaulay(k, field), oracle::cohen_macaulay(k, p));
    }
  }
}

TEST(Leray, Examples) {
  EXPECT_EQ(leray_number(cross_polytope_boundary(2)), 1);
  EXPECT_EQ(leray_number(SimplicialComplex({}, {{1, 2}, {2, 3}, {1, 3}})), 1);
  EXPECT_EQ(leray_number(discrete(3)), 0);
  EXPECT_EQ(leray_number(simplex(3)), -1);
  EXPECT_EQ(leray_number(rp2(), Field::prime(2)), 2);
}
