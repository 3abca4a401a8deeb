#include <gtest/gtest.h>

#include <random>

#include "quiztree/huffman.hpp"
#include "quiztree/sampling.hpp"
#include "quiztree/strategy_at.hpp"
#include "test_util.hpp"

using namespace quiztree;
using qt_test::dist;

namespace {

// Exact check of the balance property at every comparison node.
void expect_balanced_comparisons(const DecisionTree& tree, const Distribution& d) {
  const auto reach = reach_sets(tree, d);
  for (std::size_t id = 0; id < tree.node_count(); ++id) {
    const auto& nd = tree.node(static_cast<DecisionTree::NodeId>(id));
    if (nd.is_leaf() || reach[id].empty()) continue;
    if (nd.question->kind() != QuestionKind::Comparison) continue;
    Rational total(0), yes(0), pmax(0);
    for (auto x : reach[id]) {
      total += d.weight(x);
      if (nd.question->contains(x)) yes += d.weight(x);
      if (d.weight(x) > pmax) pmax = d.weight(x);
    }
    const Rational p = yes / total;
    const Rational m = pmax / total;
    ASSERT_GE(p, (1 - m) / 2);
    ASSERT_LE(p, (1 + m) / 2);
  }
}

std::vector<Distribution> samples(std::size_t n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Distribution> out;
  for (int i = 0; i < count; ++i)
    out.push_back(i % 2 == 0 ? sample_uniform_simplex(n, rng) : sample_zipf(n, 1.0, rng));
  return out;
}

}  // namespace

TEST(ComparisonEqualityFamily, Cardinality) {
  EXPECT_EQ(comparison_equality_family(3).cardinality(), 3);
  EXPECT_EQ(comparison_equality_family(4).cardinality(), 5);
  EXPECT_EQ(comparison_equality_family(2).cardinality(), 1);
  for (std::size_t n = 2; n <= 12; ++n) {
    auto fam = comparison_equality_family(n);
    EXPECT_EQ(BigInt(static_cast<unsigned long>(fam.enumerate().size())), fam.cardinality()) << n;
  }
}

TEST(ComparisonEqualityFamily, ExtensionalMembership) {
  auto fam = comparison_equality_family(5);
  EXPECT_TRUE(fam.contains_set(make_set(5, {0, 1, 2})));
  EXPECT_TRUE(fam.contains_set(make_set(5, {3, 4})));  // complement of a prefix
  EXPECT_TRUE(fam.contains_set(make_set(5, {2})));
  EXPECT_TRUE(fam.contains_set(make_set(5, {0, 1, 3, 4})));
  EXPECT_FALSE(fam.contains_set(make_set(5, {0, 2})));
  EXPECT_FALSE(fam.contains_set(make_set(5, {1, 2})));
  EXPECT_FALSE(fam.contains(Question::comparison(5, Element{0})));
}

TEST(MiddleIndex, Examples) {
  EXPECT_EQ(middle_index(Distribution::uniform(5)), 3u);
  EXPECT_EQ(middle_index(dist({"1/2", "1/2"})), 2u);
  EXPECT_EQ(middle_index(Distribution::point_mass(3, Element{0})), 2u);
}

TEST(BuildAt, Examples) {
  auto d = dist({"1/20", "9/10", "1/20"});
  auto t = build_at_tree(d);
  ASSERT_FALSE(t.node(t.root()).is_leaf());
  EXPECT_EQ(*t.node(t.root()).question, Question::equality(3, Element{1}));
  EXPECT_EQ(tree_cost(t, d), Rational(11, 10));

  auto u = Distribution::uniform(4);
  auto tu = build_at_tree(u);
  EXPECT_EQ(tree_cost(tu, u), 2);
  EXPECT_EQ(*tu.node(tu.root()).question, Question::comparison(4, Element{2}));
  // each half is (1/2,1/2) conditionally, so pi_max >= t there and A_t asks an equality
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(*tu.depths()[i], 2u);

  auto pm = Distribution::point_mass(4, Element{2});
  auto tp = build_at_tree(pm);
  EXPECT_TRUE(tp.node(tp.root()).is_leaf());
  EXPECT_EQ(tree_cost(tp, pm), 0);
}

TEST(BuildAt, PuncturedDomainKeepsOriginalOrder) {
  // x_2 is removed by an equality question, then the rest is split by comparisons on X_5.
  auto d = dist({"1/8", "1/2", "1/8", "1/8", "1/8"});
  auto t = build_at_tree(d);
  auto fam = comparison_equality_family(5);
  auto report = validate_tree(t, d, &fam);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(tree_cost(t, d), Rational(2));
}

TEST(Redundancy, Examples) {
  EXPECT_DOUBLE_EQ(redundancy_diagnostic(Distribution::point_mass(3, Element{0})), -1.0);
  EXPECT_DOUBLE_EQ(redundancy_diagnostic(Distribution::uniform(2)), -1.0);
  EXPECT_DOUBLE_EQ(redundancy_diagnostic(Distribution::uniform(4)), -1.0);
}

TEST(Redundancy, BoundAndFamilyDiscipline) {
  for (std::size_t n : {2u, 3u, 4u, 8u, 16u, 64u}) {
    auto fam = comparison_equality_family(n);
    for (const auto& d : samples(n, 100, 100 + n)) {
      const auto t = build_at_tree(d);
      ASSERT_LE(to_double(tree_cost(t, d)) - entropy(d), 1.0 + 1e-9);
      ASSERT_EQ(validate_tree(t, d, &fam).count(ViolationKind::OutOfFamily), 0u);
      ASSERT_TRUE(validate_tree(t, d, &fam).ok());
    }
  }
}

TEST(Redundancy, WeightBalancingBound) {
  for (std::size_t n : {2u, 5u, 16u, 64u}) {
    for (const auto& d : samples(n, 100, 7 * n)) {
      const auto t = build_at_tree(d, AtParams(Rational(1)));
      ASSERT_LE(to_double(tree_cost(t, d)) - entropy(d), 2.0 + 1e-9);
      // t = 1 only asks an equality when a single element carries all the mass
      t.for_each_reachable([](auto, const DecisionTree::Node& nd, std::size_t) {
        if (!nd.is_leaf()) {
          ASSERT_EQ(nd.question->kind(), QuestionKind::Comparison);
        }
      });
    }
  }
}

TEST(Redundancy, RecursionMatchesDirect) {
  int count = 0;
  for (std::size_t n : {2u, 3u, 7u, 20u}) {
    for (const auto& d : samples(n, 50, 31 * n)) {
      ASSERT_NEAR(redundancy_recursive(d), redundancy_diagnostic(d), 1e-9);
      ++count;
    }
  }
  EXPECT_EQ(count, 200);
}

TEST(Balance, EveryComparisonIsBalanced) {
  for (std::size_t n : {3u, 10u, 40u})
    for (const auto& d : samples(n, 60, 13 * n)) expect_balanced_comparisons(build_at_tree(d), d);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto d = qt_test::random_dist(rng, 12, true);
    expect_balanced_comparisons(build_at_tree(d, AtParams(Rational(1))), d);
  }
}

TEST(BuildAt, ThresholdBoundaryIsExact) {
  // pi_max = 3/10 exactly triggers the equality branch
  auto d = dist({"3/10", "7/30", "7/30", "7/30"});
  auto t = build_at_tree(d);
  EXPECT_EQ(*t.node(t.root()).question, Question::equality(4, Element{0}));
}

TEST(BuildAt, LargeSkewedInput) {
  // geometric masses force deep equality chains; construction must not recurse natively
  const std::size_t n = 3000;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(Rational(1, 1));
  for (std::size_t i = 0; i < 60; ++i) w[i] = pow2_neg(-static_cast<long>(60 - i));
  auto d = Distribution::normalized(w);
  auto t = build_at_tree(d);
  EXPECT_LE(to_double(tree_cost(t, d)) - entropy(d), 1.0 + 1e-9);
}
