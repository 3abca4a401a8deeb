#include <gtest/gtest.h>

#include <random>

#include "quiztree/sampling.hpp"
#include "quiztree/strategy_vector.hpp"
#include "test_util.hpp"

using namespace quiztree;

TEST(VectorCodec, RoundTrip) {
  for (std::size_t n : {1u, 2u, 5u, 9u, 10u, 100u, 1000u}) {
    for (std::size_t k : {1u, 2u, 3u}) {
      VectorCodec c(n, k);
      std::size_t p = 1;
      for (std::size_t i = 0; i < k; ++i) p *= c.base();
      EXPECT_GE(p, n);
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(c.decode(c.encode(Element{i})), Element{i});
    }
  }
  EXPECT_EQ(VectorCodec(9, 2).base(), 3u);
  EXPECT_EQ(VectorCodec(10, 2).base(), 4u);
  EXPECT_EQ(VectorCodec(8, 3).base(), 2u);
}

TEST(VectorFamily, Cardinality) {
  EXPECT_EQ(vector_family(9, 2.0).cardinality(), 6);
  EXPECT_EQ(vector_family(8, 3.0).cardinality(), 3);
  EXPECT_EQ(vector_family(2, 1.0).cardinality(), 1);
  EXPECT_EQ(vector_family(9, 2.0).enumerate().size(), 6u);
  EXPECT_EQ(vector_family(8, 3.7).enumerate().size(), 3u);
}

TEST(VectorFamily, DegeneratesToComparisonEquality) {
  for (std::size_t n = 2; n <= 8; ++n) {
    auto vf = vector_family(n, 1.0);
    auto ce = comparison_equality_family(n);
    EXPECT_EQ(vf.cardinality(), ce.cardinality());
    for (const auto& s : ce.enumerate()) EXPECT_TRUE(vf.contains_set(s));
  }
}

TEST(VectorFamily, SizeBound) {
  for (std::size_t n : {5u, 16u, 100u, 1000u}) {
    for (double r : {2.0, 3.0}) {
      auto fam = vector_family(n, r);
      const auto k = vector_length(r);
      EXPECT_LE(fam.cardinality().get_d(), 2.0 * k * std::pow(static_cast<double>(n), 1.0 / k) + 1e-9);
    }
  }
}

TEST(BuildVector, Examples) {
  auto u4 = Distribution::uniform(4);
  EXPECT_EQ(tree_cost(build_vector_tree(u4, 2.0), u4), 2);
  auto pm = Distribution::point_mass(6, Element{4});
  EXPECT_EQ(tree_cost(build_vector_tree(pm, 2.0), pm), 0);
  auto u8 = Distribution::uniform(8);
  EXPECT_EQ(tree_cost(build_vector_tree(u8, 3.0), u8), 3);
}

TEST(BuildVector, RedundancyBoundAndFamily) {
  std::mt19937_64 rng(99);
  for (std::size_t n : {5u, 16u, 100u}) {
    for (double r : {2.0, 3.0}) {
      auto fam = vector_family(n, r);
      for (int i = 0; i < 60; ++i) {
        auto d = i % 2 ? sample_zipf(n, 1.0, rng) : sample_uniform_simplex(n, rng);
        auto t = build_vector_tree(d, r);
        ASSERT_LE(to_double(tree_cost(t, d)) - entropy(d), std::floor(r) + 1e-9);
        ASSERT_TRUE(validate_tree(t, d, &fam).ok());
      }
    }
  }
}

TEST(BuildVector, SparseSupportSkipsEmptyClasses) {
  std::vector<Rational> w(25, Rational(0));
  w[3] = Rational(1, 2);
  w[21] = Rational(1, 2);
  Distribution d(w);
  auto t = build_vector_tree(d, 2.0);
  EXPECT_EQ(tree_cost(t, d), 1);
  EXPECT_TRUE(validate_tree(t, d).ok());
}
