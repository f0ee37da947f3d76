#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mcv/canonical.hpp"
#include "mcv/enumeration.hpp"
#include "support/oracles.hpp"

using namespace mcv;

namespace {

SimplicialComplex permuted(const SimplicialComplex& k, const std::vector<std::size_t>& perm) {
  std::vector<VertexMask> facets;
  for (VertexMask f : k.facets()) {
    VertexMask g = 0;
    for (std::size_t v = 0; v < k.vertex_count(); ++v)
      if (f & bit(v)) g |= bit(perm[v]);
    facets.push_back(g);
  }
  return SimplicialComplex::from_masks(k.vertex_count(), std::move(facets));
}

std::uint64_t factorial_u64(std::size_t n) {
  std::uint64_t out = 1;
  for (std::size_t i = 2; i <= n; ++i) out *= i;
  return out;
}

} // namespace

TEST(Canonical, InvariantUnderRelabelingProperty) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 6;
    auto k = oracle::random_complex(rng, n, 6);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto image = permuted(k, perm);
    EXPECT_EQ(canonical_form(k), canonical_form(image));
    EXPECT_TRUE(isomorphic(k, image));
    // The canonical representative is itself isomorphic to the input.
    EXPECT_TRUE(oracle::isomorphic(canonical_form(k).complex(), k));
  }
}

TEST(Canonical, IsomorphismMatchesPermutationOracleProperty) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 400; ++trial) {
    auto a = oracle::random_complex(rng, 5, 4);
    auto b = oracle::random_complex(rng, 5, 4);
    EXPECT_EQ(isomorphic(a, b), oracle::isomorphic(a, b));
  }
}

TEST(Canonical, AutomorphismCountsMatchOracleProperty) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 150; ++trial) {
    auto k = oracle::random_complex(rng, 6, 4);
    EXPECT_EQ(automorphism_count(k), oracle::automorphisms(k));
  }
  EXPECT_EQ(automorphism_count(cross_polytope_boundary(3)), 48u);
  EXPECT_EQ(automorphism_count(discrete(5)), 120u);
}

TEST(Canonical, TextForm) {
  auto form = canonical_form(cross_polytope_boundary(2));
  EXPECT_EQ(form.n, 4u);
  EXPECT_EQ(form.complex().facets().size(), 4u);
  EXPECT_FALSE(form.to_string().empty());
  EXPECT_EQ(form.to_string().substr(0, 2), "4:");
}

TEST(Enumeration, GraphCountsAgainstBruteForce) {
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(enum_graphs(n).size(), oracle::graph_classes(n)) << n;
}

TEST(Enumeration, GraphCountsKnownValues) {
  const std::size_t expected[] = {1, 2, 4, 11, 34, 156, 1044};
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(enum_graphs(n).size(), expected[n - 1]) << n;
}

TEST(Enumeration, GraphOrbitCountingIdentity) {
  // sum over classes of n!/|Aut| counts every labeled graph once
  for (std::size_t n = 2; n <= 7; ++n) {
    std::uint64_t labeled = 0;
    for (const auto& g : enum_graphs(n)) labeled += factorial_u64(n) / automorphism_count(graph_complex(g));
    EXPECT_EQ(labeled, std::uint64_t{1} << (n * (n - 1) / 2)) << n;
  }
}

TEST(Enumeration, GraphsAreDistinctAndRoundTrip) {
  auto graphs = enum_graphs(6);
  std::set<CanonicalForm> forms;
  for (const auto& g : graphs) {
    auto form = canonical_form(g);
    forms.insert(form);
    EXPECT_EQ(canonical_form(detail::graph_from_form(form)), form);
  }
  EXPECT_EQ(forms.size(), graphs.size());
}

TEST(Enumeration, ComplexCountsKnownValues) {
  const std::size_t expected[] = {1, 2, 5, 20, 180};
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(enum_complexes(n).size(), expected[n - 1]) << n;
}

TEST(Enumeration, ComplexOrbitCountingAgainstLabeledOracle) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::uint64_t labeled = 0;
    for (const auto& k : enum_complexes(n)) labeled += factorial_u64(n) / automorphism_count(k);
    EXPECT_EQ(labeled, oracle::labeled_complexes(n)) << n;
  }
}

TEST(Enumeration, DimensionCapAndFlagSubset) {
  for (const auto& k : enum_complexes(5, 1)) EXPECT_LE(k.dimension(), 1);
  EXPECT_EQ(enum_complexes(5, 1).size(), 34u);
  for (const auto& k : flag_complexes(5)) EXPECT_TRUE(is_flag(k));
  EXPECT_EQ(flag_complexes(5).size(), 34u);
}

TEST(Enumeration, PreconditionsAndBudget) {
  EXPECT_THROW(enum_graphs(0), precondition_error);
  EXPECT_THROW(enum_graphs(9), precondition_error);
  EXPECT_THROW(enum_complexes(7), precondition_error);
  Budget small;
  small.max_instances = 10;
  EXPECT_THROW(enum_graphs(5, small), budget_error);
  EXPECT_THROW(enum_complexes(4, 64, small), budget_error);
}
