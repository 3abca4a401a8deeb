#include <gtest/gtest.h>

#include <random>

#include "quiztree/sampling.hpp"
#include "quiztree/strategy_prolixity.hpp"
#include "test_util.hpp"

using namespace quiztree;
using qt_test::dist;

namespace {

// Exact per-step checks of the maintained sub-distribution.
struct InvariantChecker {
  std::size_t events = 0;
  std::size_t asked = 0;
  void operator()(const TrEvent& ev) {
    ++events;
    asked += ev.asked;
    BigInt total(0);
    for (std::size_t i = 0; i < ev.before->size(); ++i) {
      const auto& b = (*ev.before)[i];
      const auto& a = (*ev.after)[i];
      ASSERT_TRUE(sgn(a) == 0 || a == b || a == 2 * b) << "element " << i;
      if (sgn(b) == 0) {
        ASSERT_EQ(sgn(a), 0);
      }
      total += a;
      if (sgn(a) > 0) {
        ASSERT_EQ(mpz_popcount(a.get_mpz_t()), 1u);
      }
    }
    ASSERT_LE(total, *ev.unit_total);
    if (ev.step != 4) {
      ASSERT_TRUE(ev.boundary.empty());
    }
    ASSERT_LE(ev.boundary.size(), 2u);
  }
};

}  // namespace

TEST(FamilySize, Examples) {
  auto a = prolixity_family_size_bound(16, 3);
  EXPECT_EQ(a.count, BigInt("21616657920"));
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(prolixity_family_size_bound(9, 3).count, 4782969);
  EXPECT_TRUE(prolixity_family_size_bound(9, 3).holds);
  EXPECT_NEAR(std::pow(2.0, a.log2_rhs), 1.28e12, 0.01e12);
  EXPECT_THROW(prolixity_family_size_bound(8, 3), Error);
}

TEST(Certify, Examples) {
  const std::size_t n = 12;
  EXPECT_TRUE(certify_question(CyclicQ{2, 5, {}, {4}}, n, 3));
  CyclicQ big{0, 12, {}, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  EXPECT_TRUE(certify_question(big, n, 3));  // X_n minus nine elements is the interval x_10..x_12
  // ten isolated elements: every interval witness needs at least nine adjustments
  const std::size_t m = 40;
  CyclicQ scattered{0, 0, {0, 4, 8, 12, 16, 20, 24, 28, 32, 36}, {}};
  EXPECT_FALSE(certify_question(scattered, m, 3));
  EXPECT_TRUE(certify_question(CyclicQ{0, n, {}, {}}, n, 3));
}

TEST(Certify, FamilyMembershipIsExtensional) {
  CyclicFamily fam(10, 1);  // budget 2
  EXPECT_TRUE(fam.contains_set(make_set(10, {0, 2})));         // {x1} plus one
  EXPECT_TRUE(fam.contains_set(make_set(10, {8, 9, 0, 1})));   // wraps around
  EXPECT_TRUE(fam.contains_set(make_set(10, {0, 3, 6})));       // {x1} plus two
  CyclicFamily wide(12, 1);
  EXPECT_FALSE(wide.contains_set(make_set(12, {0, 3, 6, 9})));
}

TEST(RunTr, Examples) {
  ProlixityParams p(3, 1);
  auto two = dist({"1/2", "1/2"});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto t = run_tr(two, ProlixityParams(3, seed), Element{1});
    EXPECT_EQ(t.depth(), 1u);
    EXPECT_EQ(t.steps[0].question.kind(), QuestionKind::CyclicAdjusted);
  }
  EXPECT_EQ(run_tr(Distribution::point_mass(4, Element{2}), p, Element{2}).depth(), 0u);
  auto u8 = Distribution::uniform(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(run_tr(u8, ProlixityParams(3, seed), Element{i}).depth(), 3u);
}

TEST(RunTr, ReplayIsDeterministicPerSeed) {
  auto d = zipf_exact(40);
  ProlixityParams p(3, 12345);
  for (std::size_t i = 0; i < 40; i += 7) {
    auto a = run_tr(d, p, Element{i});
    auto b = run_tr(d, p, Element{i});
    ASSERT_EQ(a.depth(), b.depth());
    for (std::size_t s = 0; s < a.depth(); ++s) ASSERT_EQ(a.steps[s].question, b.steps[s].question);
  }
}

TEST(RunTr, PathsAgreeWithTheSeedTree) {
  auto d = zipf_exact(30);
  ProlixityParams p(3, 99);
  auto tree = build_tr_tree(d, p);
  EXPECT_TRUE(validate_tree(tree, d, nullptr).ok());
  for (auto x : d.support()) {
    auto online = run_tr(d, p, x);
    auto offline = simulate(tree, x);
    ASSERT_EQ(online.depth(), offline.depth());
    for (std::size_t s = 0; s < online.depth(); ++s) ASSERT_EQ(online.steps[s].question, offline.steps[s].question);
  }
}

TEST(RunTr, InvariantsAndCertification) {
  std::mt19937_64 rng(8);
  InvariantChecker check;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(trial) * 3;
    auto d = trial % 2 ? sample_zipf(n, 1.0, rng) : sample_uniform_simplex(n, rng);
    ProlixityParams p(3 + trial % 2, static_cast<std::uint64_t>(trial));
    auto tree = build_tr_tree(d, p, std::ref(check));
    CyclicFamily fam(n, p.k);
    ASSERT_TRUE(validate_tree(tree, d, &fam).ok());
    tree.for_each_reachable([&](auto, const DecisionTree::Node& nd, std::size_t) {
      if (nd.is_leaf()) return;
      const auto& c = std::get<CyclicQ>(nd.question->spec());
      ASSERT_LE(c.added.size() + c.removed.size(), p.budget());
    });
  }
  EXPECT_GT(check.events, 0u);
}

TEST(RunTr, SecretSurvives) {
  auto d = zipf_exact(64);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t i = 0; i < 64; ++i) {
      bool alive = true;
      run_tr(d, ProlixityParams(3, seed), Element{i}, [&](const TrEvent& ev) {
        alive = alive && sgn((*ev.after)[i]) > 0;
      });
      ASSERT_TRUE(alive);
    }
  }
}

TEST(RunTr, BoundaryHitFrequency) {
  // Step-4 events with a light secret: the secret is a boundary element with probability <= 2q/sigma <= 4q.
  // Every light candidate at a step-4 node of a seed tree is one such event for that secret.
  auto d = zipf_exact(256);
  double hits = 0.0, expected = 0.0;
  std::size_t events = 0;
  for (std::uint64_t seed = 0; events < 100000; ++seed) {
    build_tr_tree(d, ProlixityParams(3, seed), [&](const TrEvent& ev) {
      if (ev.step != 4 || (ev.asked && !ev.answer)) return;  // each asked step is reported once per branch
      for (std::size_t i = 0; i < ev.before->size(); ++i) {
        const auto& q = (*ev.before)[i];
        if (sgn(q) == 0 || q * 8 >= *ev.unit_total) continue;
        ++events;
        expected += 4.0 * to_double(Rational(q, *ev.unit_total));
        for (auto b : ev.boundary) hits += (b == i);
      }
    });
  }
  const double freq = hits / static_cast<double>(events);
  const double bound = expected / static_cast<double>(events);
  const double se = std::sqrt(std::max(freq * (1 - freq), 1e-12) / static_cast<double>(events));
  EXPECT_GT(hits, 0.0);
  EXPECT_LE(freq, bound + 3 * se);
}

TEST(Estimate, Examples) {
  auto u8 = Distribution::uniform(8);
  auto e = estimate_expected_cost(u8, ProlixityParams(3, 4), 20);
  for (const auto& el : e.elements) {
    EXPECT_DOUBLE_EQ(el.mean_depth, 3.0);
    EXPECT_DOUBLE_EQ(el.bound, 3.75);
  }
  auto two = estimate_expected_cost(dist({"1/2", "1/2"}), ProlixityParams(3, 4), 10);
  EXPECT_DOUBLE_EQ(two.elements[0].mean_depth, 1.0);
  EXPECT_DOUBLE_EQ(two.elements[0].bound, 1.75);
}

TEST(Estimate, ZipfPerElementBound) {
  std::mt19937_64 rng(64);
  auto d = sample_zipf(64, 1.0, rng);
  auto e = estimate_expected_cost(d, ProlixityParams(3, 2024), 1000);
  for (const auto& el : e.elements) EXPECT_LE(el.mean_depth, el.bound + 3 * el.stderr_depth + 1e-12) << to_string(el.element);
  EXPECT_LE(e.mean_cost, e.opt + e.r + e.r * e.r + 3 * e.stderr_cost);
}
