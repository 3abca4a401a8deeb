#include <gtest/gtest.h>

#include <random>

#include "quiztree/huffman.hpp"
#include "quiztree/split.hpp"
#include "quiztree/tree.hpp"
#include "test_util.hpp"

using namespace quiztree;
using qt_test::dist;
using qt_test::q;

namespace {

// ask "x = x_1?", then "x = x_2?"
DecisionTree equality_chain(std::size_t n) {
  DecisionTree t(n);
  auto l1 = t.add_leaf(Element{0});
  auto l2 = t.add_leaf(Element{1});
  auto l3 = t.add_leaf(Element{2});
  auto inner = t.add_internal(Question::equality(n, Element{1}), l2, l3);
  t.set_root(t.add_internal(Question::equality(n, Element{0}), l1, inner));
  return t;
}

DecisionTree complete_depth2() {
  DecisionTree t(4);
  std::vector<DecisionTree::NodeId> leaves;
  for (std::size_t i = 0; i < 4; ++i) leaves.push_back(t.add_leaf(Element{i}));
  auto left = t.add_internal(Question::comparison(4, Element{1}), leaves[0], leaves[1]);
  auto right = t.add_internal(Question::comparison(4, Element{3}), leaves[2], leaves[3]);
  t.set_root(t.add_internal(Question::comparison(4, Element{2}), left, right));
  return t;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("1/4"), Rational(1, 4));
  EXPECT_EQ(parse_rational("0.05"), Rational(1, 20));
  EXPECT_EQ(parse_rational(" 3 "), Rational(3));
  EXPECT_EQ(parse_rational("-.5"), Rational(-1, 2));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Rational, DyadicExponent) {
  EXPECT_EQ(dyadic_exponent(Rational(1, 8)), 3);
  EXPECT_EQ(dyadic_exponent(Rational(1)), 0);
  EXPECT_EQ(dyadic_exponent(Rational(4)), -2);
  EXPECT_FALSE(dyadic_exponent(Rational(3, 8)).has_value());
  EXPECT_EQ(pow2_neg(3), Rational(1, 8));
  EXPECT_NEAR(log2_of(pow2_neg(3000)), -3000.0, 1e-9);
}

TEST(Distribution, RejectsBadWeights) {
  EXPECT_THROW(dist({"1/2", "1/3"}), Error);
  EXPECT_THROW(dist({"3/2", "-1/2"}), Error);
  EXPECT_THROW(Distribution(std::vector<Rational>{}), Error);
  try {
    dist({"1/2"});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDistribution);
  }
}

TEST(Distribution, Entropy) {
  EXPECT_DOUBLE_EQ(entropy(Distribution::uniform(4)), 2.0);
  EXPECT_DOUBLE_EQ(entropy(dist({"1/2", "1/4", "1/4"})), 1.5);
  EXPECT_NEAR(entropy(dist({"0.9", "0.05", "0.05"})), 0.5690, 5e-5);
  EXPECT_DOUBLE_EQ(entropy(Distribution::point_mass(3, Element{1})), 0.0);
}

TEST(Distribution, ScaledNumerators) {
  auto s = scaled(dist({"1/2", "1/3", "1/6"}));
  EXPECT_EQ(s.denominator, 6);
  EXPECT_EQ(s.numerators[0], 3);
  EXPECT_EQ(s.numerators[1], 2);
  EXPECT_EQ(s.numerators[2], 1);
}

TEST(DyadicMeasure, TotalsAndConversion) {
  DyadicMeasure mu({1, 2, std::nullopt, 2});
  EXPECT_TRUE(mu.is_distribution());
  EXPECT_FALSE(mu.is_constant());
  EXPECT_EQ(mu.mass(make_set(4, {0, 2})), Rational(1, 2));
  EXPECT_EQ(mu.to_distribution(), dist({"1/2", "1/4", "0", "1/4"}));
  EXPECT_THROW(DyadicMeasure({0, 1}), Error);
  EXPECT_EQ(DyadicMeasure::from_distribution(dist({"1/2", "1/4", "1/4"})).exponent(2), 2);
}

TEST(TreeCost, Examples) {
  EXPECT_EQ(tree_cost(equality_chain(3), dist({"1/2", "1/4", "1/4"})), Rational(3, 2));
  EXPECT_EQ(tree_cost(DecisionTree::single_leaf(3, Element{2}), Distribution::point_mass(3, Element{2})), 0);
  EXPECT_EQ(tree_cost(complete_depth2(), dist({"0.4", "0.3", "0.2", "0.1"})), 2);
}

TEST(TreeCost, MissingLeafIsTreeInvalid) {
  try {
    tree_cost(DecisionTree::single_leaf(2, Element{0}), Distribution::uniform(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TreeInvalid);
  }
}

TEST(Split, PrefixExamples) {
  EXPECT_EQ(dyadic_prefix_split({q("1/2"), q("1/4"), q("1/8"), q("1/8")}, 1), 1u);
  EXPECT_EQ(dyadic_prefix_split({q("1/4"), q("1/4"), q("1/4"), q("1/8"), q("1/8")}, 1), 2u);
  EXPECT_EQ(dyadic_prefix_split({q("1/4"), q("1/8"), q("1/8")}, 2), 1u);
}

TEST(Split, PrefixPreconditions) {
  EXPECT_THROW(dyadic_prefix_split({q("1/4"), q("1/8")}, 1), Error);      // total below 1/2
  EXPECT_THROW(dyadic_prefix_split({q("1/4"), q("1/8")}, 3), Error);      // a > a_1
  EXPECT_THROW(dyadic_prefix_split({q("1/8"), q("1/4")}, 2), Error);      // unsorted
  EXPECT_THROW(dyadic_prefix_split({q("3/8"), q("1/8")}, 1), Error);      // not dyadic
}

TEST(Split, SuffixExamples) {
  EXPECT_EQ(dyadic_suffix_split({q("1/4"), q("1/4"), q("1/4"), q("1/8"), q("1/8")}, 1), 3u);
  EXPECT_EQ(dyadic_suffix_split({q("1/2"), q("1/2")}, 1), 2u);
  EXPECT_EQ(dyadic_suffix_split({q("1/2"), q("1/4"), q("1/8"), q("1/16"), q("1/16")}, 2), 3u);
  EXPECT_THROW(dyadic_suffix_split({q("1/2"), q("1/4"), q("1/8")}, 2), Error);
}

TEST(Split, RandomPrefixSumsExactly) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    // Random dyadic list: split 1 repeatedly, then sort non-increasing.
    std::vector<int> ex{0};
    std::uniform_int_distribution<int> steps(1, 12);
    for (int s = steps(rng); s > 0; --s) {
      std::uniform_int_distribution<std::size_t> pick(0, ex.size() - 1);
      auto i = pick(rng);
      if (ex[i] >= 20) continue;
      ++ex[i];
      ex.push_back(ex[i]);
    }
    std::sort(ex.begin(), ex.end());
    std::vector<Rational> w;
    for (int e : ex) w.push_back(pow2_neg(e));
    std::uniform_int_distribution<int> pick_a(0, ex.front());
    const int a = pick_a(rng);
    const auto m = dyadic_prefix_split(w, a);
    Rational sum(0);
    for (std::size_t i = 0; i < m; ++i) sum += w[i];
    ASSERT_EQ(sum, pow2_neg(a));
    const auto l = dyadic_suffix_split(w, a);
    Rational suf(0);
    for (std::size_t i = l - 1; i < w.size(); ++i) suf += w[i];
    ASSERT_EQ(suf, pow2_neg(a));
  }
}

TEST(Validate, HuffmanTreeIsClean) {
  auto d = dist({"0.4", "0.3", "0.2", "0.1"});
  EXPECT_TRUE(validate_tree(huffman(d).tree, d).ok());
}

TEST(Validate, OutOfFamilyQuestion) {
  const std::size_t n = 4;
  std::vector<ElementSet> fam;
  for (std::size_t i = 0; i < n; ++i) fam.push_back(make_set(n, {i}));
  for (std::size_t i = 1; i < n; ++i) {
    ElementSet s(n);
    for (std::size_t j = 0; j < i; ++j) s.set(j);
    fam.push_back(s);
  }
  ExplicitFamily family(n, fam, "comparison+equality");
  DecisionTree t(n);
  std::vector<DecisionTree::NodeId> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(t.add_leaf(Element{i}));
  auto a = t.add_internal(Question::equality(n, Element{0}), l[0], l[2]);
  auto b = t.add_internal(Question::equality(n, Element{1}), l[1], l[3]);
  t.set_root(t.add_internal(Question::explicit_set(make_set(n, {0, 2})), a, b));
  auto report = validate_tree(t, Distribution::uniform(n), &family);
  EXPECT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.count(ViolationKind::OutOfFamily), 1u);
}

TEST(Validate, MissingSupportLeaf) {
  auto t = equality_chain(3);
  auto report = validate_tree(t, dist({"1/2", "1/4", "1/4"}));
  EXPECT_TRUE(report.ok());
  DecisionTree partial(3);
  auto l1 = partial.add_leaf(Element{0});
  auto l2 = partial.add_leaf(Element{1});
  partial.set_root(partial.add_internal(Question::equality(3, Element{0}), l1, l2));
  auto r2 = validate_tree(partial, dist({"1/2", "1/4", "1/4"}));
  EXPECT_EQ(r2.count(ViolationKind::LeafSupportMismatch), 1u);
}

TEST(Validate, DuplicateAndInconsistentLeaves) {
  DecisionTree t(2);
  auto a = t.add_leaf(Element{0});
  auto b = t.add_leaf(Element{0});
  t.set_root(t.add_internal(Question::equality(2, Element{0}), a, b));
  auto r = validate_tree(t, Distribution::point_mass(2, Element{0}));
  EXPECT_EQ(r.count(ViolationKind::DuplicateLeaf), 1u);
  EXPECT_EQ(r.count(ViolationKind::PathInconsistent), 1u);
}

TEST(Simulate, Examples) {
  auto t = complete_depth2();
  EXPECT_EQ(simulate(t, Element{2}).depth(), 2u);
  EXPECT_EQ(simulate(DecisionTree::single_leaf(3, Element{0}), Element{0}).depth(), 0u);
  auto tr = simulate(equality_chain(3), Element{2});
  ASSERT_EQ(tr.depth(), 2u);
  EXPECT_FALSE(tr.steps[0].answer);
  EXPECT_FALSE(tr.steps[1].answer);
}

TEST(Simulate, SecretNotInTree) {
  try {
    simulate(equality_chain(4), Element{3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SecretNotInTree);
  }
}

TEST(Properties, CostAtLeastEntropyAndSimulateMatchesDepth) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> pick_n(1, 20);
    auto d = qt_test::random_dist(rng, pick_n(rng), true);
    auto h = huffman(d);
    ASSERT_GE(to_double(tree_cost(h.tree, d)), entropy(d) - 1e-9);
    const auto depth = h.tree.depths();
    for (auto x : d.support()) ASSERT_EQ(simulate(h.tree, x).depth(), *depth[x.index]);
  }
}

TEST(Question, ResolveIsIdempotent) {
  const std::size_t n = 9;
  std::vector<Question> qs{Question::equality(n, Element{3}), Question::comparison(n, Element{4}),
                           Question(n, EntryWiseQ{1, EntryOp::Less, 2, 2}),
                           Question::cone(n, ConeIndex{true, {true, false, true, false, true}}),
                           Question(n, CyclicQ{7, 4, {3}, {8}})};
  for (const auto& qq : qs) {
    auto s = qq.resolve();
    EXPECT_EQ(Question::explicit_set(s).resolve(), s);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(s.test(i), qq.contains(Element{i}));
  }
  EXPECT_EQ(qs[4].resolve(), make_set(n, {0, 1, 3, 7}));
  EXPECT_EQ(qs[1].render(), "Is x < x_5?");
  EXPECT_EQ(qs[0].render(), "Is x = x_4?");
}

TEST(Question, DescribeLargeSet) {
  ElementSet s(40);
  for (std::size_t i = 0; i < 20; ++i) s.set(i);
  s.set(30);
  EXPECT_EQ(Question::describe_set(s), "{x_1..x_20, x_31} (21 elements)");
}

TEST(Family, ExplicitDedupsComplements) {
  auto fam = ExplicitFamily::from_masks(3, {0b001, 0b110, 0b010});
  EXPECT_EQ(fam.cardinality(), 2);
  EXPECT_TRUE(fam.contains_set(from_mask(3, 0b101)));
  EXPECT_FALSE(fam.contains_set(from_mask(3, 0b011)));
}
