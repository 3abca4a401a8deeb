#include <gtest/gtest.h>

#include <random>
#include <set>

#include "quiztree/analysis/dyadic.hpp"
#include "quiztree/analysis/hitter.hpp"
#include "quiztree/analysis/lower_bound.hpp"
#include "quiztree/analysis/numeric.hpp"
#include "quiztree/analysis/splitters.hpp"
#include "quiztree/strategy_at.hpp"
#include "quiztree/strategy_cone.hpp"
#include "test_util.hpp"

using namespace quiztree;
using namespace quiztree::analysis;
using qt_test::q;

namespace {

// Exponents per element; -1 is weight zero.
DyadicMeasure dm(std::initializer_list<int> ex) {
  std::vector<DyadicMeasure::Exponent> v;
  for (int e : ex) v.push_back(e < 0 ? DyadicMeasure::Exponent{} : DyadicMeasure::Exponent{e});
  return DyadicMeasure(v);
}

std::set<std::uint64_t> mask_set(const SplitterSet& s) { return {s.masks.begin(), s.masks.end()}; }

}  // namespace

TEST(Enumerate, Counts) {
  // brute force over all exponent placements
  const std::uint64_t expected[] = {0, 0, 1, 6, 31, 180, 1245, 10178, 96027};
  for (std::size_t n = 2; n <= 8; ++n) EXPECT_EQ(count_dyadic(n), expected[n]) << n;
  EXPECT_LE(count_dyadic(3), 27u);
  EXPECT_EQ(count_dyadic(3, true), 2u);
  EXPECT_THROW(enumerate_dyadic(11), Error);
}

TEST(Enumerate, StreamIsExactDistinctAndNonConstant) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto s = enumerate_dyadic(n);
    std::set<std::vector<int>> seen;
    while (s.next()) {
      auto mu = s.measure();
      EXPECT_TRUE(mu.is_distribution());
      EXPECT_FALSE(mu.is_constant());
      std::uint64_t sum = 0;
      for (auto u : s.units()) sum += u;
      EXPECT_EQ(sum, s.units_total());
      EXPECT_TRUE(seen.insert(s.codes()).second);
    }
  }
  auto s = enumerate_dyadic(2);
  ASSERT_TRUE(s.next());
  EXPECT_EQ(s.measure(), dm({1, 1}));
  EXPECT_FALSE(s.next());
}

TEST(Splitters, Examples) {
  EXPECT_EQ(mask_set(splitters(dm({1, 2, 2}))), (std::set<std::uint64_t>{0b001, 0b110}));
  EXPECT_EQ(mask_set(splitters(dm({1, 1, -1}))), (std::set<std::uint64_t>{0b001, 0b010, 0b101, 0b110}));
  EXPECT_THROW(splitters(dm({0, -1})), Error);

  auto hard = splitters(hard_distribution(q("1/5"), 2));
  ASSERT_EQ(hard.size(), 6u);
  std::multiset<int> sizes;
  for (auto m : hard.masks) sizes.insert(__builtin_popcountll(m));
  EXPECT_EQ(sizes, (std::multiset<int>{2, 2, 2, 8, 8, 8}));
}

TEST(Splitters, MatchDirectSubsetSums) {
  std::mt19937_64 rng(5);
  auto s = enumerate_dyadic(6);
  while (s.next()) {
    if (rng() % 7) continue;
    auto mu = s.measure();
    auto sp = mask_set(splitters(mu));
    for (std::uint64_t m = 0; m < 64; ++m) EXPECT_EQ(sp.count(m) > 0, mu.mass(from_mask(6, m)) == q("1/2"));
  }
}

TEST(Mrd, Examples) {
  auto hard = mrd(splitters(hard_distribution(q("1/5"), 2)));
  EXPECT_EQ(hard.max, q("1/15"));
  EXPECT_EQ(hard.argmax, (std::vector<std::size_t>{2, 8}));
  EXPECT_EQ(mrd(splitters(dm({1, 2, 2}))).max, q("1/3"));
  EXPECT_EQ(mrd(splitters(dm({1, 1}))).max, 1);
  for (const auto& d : hard.density) {
    EXPECT_GE(d, 0);
    EXPECT_LE(d, 1);
  }
  // density bound O(sqrt n) 2^{(2 eps - h(eps)) n} at eps = 1/5, n = 10
  const double bound = std::sqrt(10.0) * std::exp2((0.4 - binary_entropy(0.2)) * 10.0);
  EXPECT_LE(to_double(hard.max), bound);
}

TEST(Mrd, RhoGoldens) {
  // minimum over enumerated distributions, brute force
  EXPECT_EQ(rho(2), 1);
  EXPECT_EQ(rho(3), q("1/3"));
  EXPECT_EQ(rho(4), q("1/4"));
  EXPECT_EQ(rho(5), q("1/5"));
  EXPECT_EQ(rho(6), q("1/6"));
  EXPECT_EQ(rho(7), q("1/7"));
  EXPECT_EQ(rho(8), q("3/28"));
}

TEST(HardDistribution, Construction) {
  EXPECT_EQ(hard_distribution(q("1/5"), 2), dm({2, 2, 2, 3, 4, 5, 6, 7, 8, 8}));
  EXPECT_EQ(hard_distribution(q("1/2"), 2), dm({2, 2, 2, 2}));
  EXPECT_TRUE(hard_distribution(q("1/8"), 3).is_distribution());
  EXPECT_EQ(hard_distribution(q("1/8"), 3).size(), 32u);
  EXPECT_THROW(hard_distribution(q("2/5"), 2), Error);
  EXPECT_THROW(hard_distribution(q("1/2"), 1), Error);  // n = 2
}

TEST(Tail, Examples) {
  EXPECT_EQ(tail(hard_distribution(q("1/5"), 2)), make_set(10, {3, 4, 5, 6, 7, 8, 9}));
  EXPECT_TRUE(tail(dm({2, 2, 2, 2})).none());
  EXPECT_EQ(tail(dm({1, 2, 3, 3})), make_set(4, {1, 2, 3}));
  EXPECT_EQ(tail(dm({1, 2, 2})), make_set(3, {1, 2}));
  EXPECT_TRUE(tail(dm({1, 1})).none());
  EXPECT_EQ(tail(dm({3, 1, -1, 2, 3})), make_set(5, {0, 3, 4}));
}

TEST(Tail, SplittersTreatTailAtomically) {
  for (std::size_t n = 2; n <= 8; ++n) {
    auto s = enumerate_dyadic(n);
    while (s.next()) ASSERT_TRUE(tail_is_atomic(splitters(s.measure()))) << to_string(s.measure());
  }
}

TEST(Antichain, FullSupportSplittersFormMaximalSelfComplementaryAntichain) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto s = enumerate_dyadic(n);
    while (s.next()) {
      const auto& c = s.codes();
      if (std::find(c.begin(), c.end(), s.zero_code()) != c.end()) continue;
      auto chk = check_splitter_antichain(s.measure());
      ASSERT_TRUE(chk.ok()) << to_string(s.measure());
    }
  }
  // without full support, maximality survives but a splitter can contain another
  EXPECT_FALSE(check_splitter_antichain(dm({1, 1, -1})).antichain);
}

TEST(Hitter, Examples) {
  ExplicitFamily singletons(3, {make_set(3, {0}), make_set(3, {1}), make_set(3, {2})});
  EXPECT_TRUE(is_dyadic_hitter(singletons).hitter);

  ExplicitFamily one(3, {make_set(3, {0})});
  auto rep = is_dyadic_hitter(one);
  EXPECT_FALSE(rep.hitter);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(*rep.counterexample, dm({-1, 1, 1}));

  for (std::size_t n = 3; n <= 8; ++n) EXPECT_TRUE(is_dyadic_hitter(ConeFamily(n)).hitter) << n;
}

TEST(Hitter, ComparisonEqualityGoldens) {
  // recorded from the run: a hitter up to n = 4, not from n = 5 on
  EXPECT_TRUE(is_dyadic_hitter(comparison_equality_family(3)).hitter);
  EXPECT_TRUE(is_dyadic_hitter(comparison_equality_family(4)).hitter);
  for (std::size_t n = 5; n <= 7; ++n) EXPECT_FALSE(is_dyadic_hitter(comparison_equality_family(n)).hitter) << n;
}

TEST(Hitter, FullSupportReduction) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 3; n <= 7; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::uint64_t> fam;
      const std::size_t size = 1 + rng() % (std::size_t{1} << (n - 1));
      for (std::size_t i = 0; i < size; ++i) fam.push_back(1 + rng() % ((std::uint64_t{1} << n) - 2));
      EXPECT_EQ(is_dyadic_hitter_masks(n, fam).hitter, is_dyadic_hitter_masks(n, fam, true).hitter);
    }
  }
}

TEST(MinHitter, Goldens) {
  EXPECT_EQ(min_dyadic_hitter(2).size, 1u);
  auto three = min_dyadic_hitter(3);
  EXPECT_EQ(three.size, 3u);
  EXPECT_TRUE(is_dyadic_hitter(ExplicitFamily(3, three.witness)).hitter);
  auto four = min_dyadic_hitter(4);
  EXPECT_EQ(four.size, 5u);  // exhaustive search
  EXPECT_TRUE(is_dyadic_hitter(ExplicitFamily(4, four.witness)).hitter);
  EXPECT_THROW(min_dyadic_hitter(5), Error);
}

TEST(MinHitter, SandwichLowerSide) {
  for (std::size_t n = 2; n <= 4; ++n) EXPECT_GE(Rational(min_dyadic_hitter(n).size), 1 / rho(n)) << n;
}

TEST(SampleHitter, Examples) {
  auto s4 = sample_hitter(4, 1);
  EXPECT_EQ(s4.m, 4);
  EXPECT_EQ(s4.per_size, 32u);
  EXPECT_TRUE(s4.report.hitter);

  auto s3 = sample_hitter(3, 7);
  EXPECT_EQ(s3.m, 3);
  EXPECT_EQ(s3.per_size, 15u);  // ceil(3 * 3 * log2 3)
  EXPECT_EQ(s3.sets.size(), 30u);

  auto s2 = sample_hitter(2, 3);
  EXPECT_TRUE(s2.report.hitter);

  EXPECT_EQ(sample_hitter(5, 9).sets, sample_hitter(5, 9).sets);
}

TEST(GtBound, Examples) {
  EXPECT_NEAR(gt_bound(q("3/10")).value, -0.0312, 5e-3);
  EXPECT_NEAR(gt_bound(q("294/1000")).value, -0.0899, 5e-3);
  EXPECT_LT(gt_bound(q("3/10")).tail, 1e-9);
  EXPECT_DOUBLE_EQ(f_gap(1.0), 0.0);
  EXPECT_THROW(gt_bound(q("1/2")), Error);
  // more terms only move the value by the (bounded) tail
  EXPECT_NEAR(gt_bound(q("3/10"), 10).value, gt_bound(q("3/10"), 64).value, gt_bound(q("3/10"), 10).tail + 1e-15);
}

TEST(GtBound, SeriesAgreesWithClosedForm) {
  for (double x : {0.05, 0.1, 0.2, 0.3, 0.45}) {
    const double closed = s_gap((1.0 + x) / 2.0) / x;
    EXPECT_NEAR(S_ratio(x), closed, 1e-12) << x;
  }
}

TEST(GtBound, FNonPositiveOnGrid) {
  constexpr int kPoints = 10000;
  for (int i = 0; i < kPoints; ++i) {
    const double p = 0.23 + (1.0 - 0.23) * i / (kPoints - 1);
    EXPECT_LE(f_gap(p), 1e-12) << p;
  }
}

TEST(Exponents, Goldens) {
  auto ec = exponent_calculus();
  EXPECT_NEAR(ec.eps_star, 0.2, 1e-9);
  EXPECT_NEAR(ec.eps_value, 1.25, 1e-12);
  EXPECT_NEAR(ec.beta0, 0.27052059413118146, 1e-9);
  EXPECT_NEAR(ec.l_beta0, 1.23214280723432, 1e-9);
  EXPECT_LE(ec.l_beta0, ec.l_grid_min + 1e-12);
  EXPECT_NEAR(std::exp2(lb_exponent(1.0, 0)), 0.25, 1e-15);
}

TEST(LbFamily, Examples) {
  for (std::size_t n : {5, 6}) {
    auto rep = prolixity_lb_check(2, n);
    EXPECT_EQ(rep.delta, q("1/32"));
    EXPECT_EQ(rep.questions, (std::size_t{1} << (n - 1)) - 1);
    EXPECT_TRUE(rep.holds) << n;
    ASSERT_TRUE(rep.opt_brute);
    EXPECT_EQ(*rep.opt_brute, rep.opt);
    EXPECT_EQ(rep.admissible.size(), 6u);  // exhaustive sweep
  }
  EXPECT_EQ(prolixity_lb_check(2, 5).opt, q("65/32"));
  EXPECT_EQ(prolixity_lb_check(2, 6).opt, q("197/96"));
  EXPECT_TRUE(prolixity_lb_check(3, 9).holds);
  EXPECT_THROW(prolixity_lb_check(2, 11), Error);
  EXPECT_THROW(prolixity_lb_check(2, 6, q("1/16")), Error);
}
