#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/family.hpp"
#include "quiztree/tree.hpp"

namespace quiztree {

struct AtParams {
  Rational t{3, 10};

  AtParams() = default;
  explicit AtParams(Rational threshold) : t(std::move(threshold)) {
    t.canonicalize();
    require(sgn(t) > 0 && t <= 1, ErrorCode::PreconditionViolated, "A_t threshold must lie in (0,1]");
  }
};

/// Equality singletons and comparison prefixes over X_n, up to complementation: 2n-3 questions.
class ComparisonEqualityFamily final : public QuestionFamily {
 public:
  explicit ComparisonEqualityFamily(std::size_t n) : n_(n) {
    require(n >= 2, ErrorCode::PreconditionViolated, "comparison/equality family needs n >= 2");
  }

  std::size_t ground_size() const override { return n_; }
  std::string name() const override { return "comparison+equality"; }
  BigInt cardinality() const override { return BigInt(static_cast<unsigned long>(2 * n_ - 3)); }

  bool contains_set(const ElementSet& s) const override {
    if (s.size() != n_) return false;
    const auto c = canonical_side(s);  // never contains x_n
    const auto k = c.count();
    if (k == 0) return false;
    if (k == 1) return true;  // {x_i}, or the complement of {x_n} when k = n-1 is also a prefix
    if (k == n_ - 1) return true;  // complement of {x_n}
    // prefix {x_1..x_k}
    return c.find_first() == 0 && c.find_next(k - 1) == ElementSet::npos && c.test(k - 1);
  }

  bool contains(const Question& q) const override {
    if (q.ground_size() != n_) return false;
    if (const auto* e = std::get_if<EqualityQ>(&q.spec())) return e->target.index < n_;
    if (const auto* c = std::get_if<ComparisonQ>(&q.spec())) return c->pivot.index >= 1 && c->pivot.index < n_;
    return contains_set(q.resolve());
  }

  std::vector<ElementSet> enumerate() const override {
    require(n_ <= kMaxEnumerableGround, ErrorCode::TooLarge, "enumeration capped at 64 elements");
    std::vector<ElementSet> out;
    for (std::size_t i = 0; i + 1 < n_; ++i) out.push_back(make_set(n_, {i}));
    for (std::size_t k = 2; k + 1 < n_; ++k) {
      ElementSet s(n_);
      for (std::size_t j = 0; j < k; ++j) s.set(j);
      out.push_back(s);
    }
    if (n_ >= 3) out.push_back(~make_set(n_, {n_ - 1}));
    return out;
  }

 private:
  std::size_t n_;
};

inline ComparisonEqualityFamily comparison_equality_family(std::size_t n) { return ComparisonEqualityFamily(n); }

/// 1-based i in {2..n} minimising |pi({x : x < x_i}) - 1/2|; ties go to the smallest i.
inline std::size_t middle_index(const Distribution& dist) {
  const std::size_t n = dist.size();
  require(n >= 2, ErrorCode::PreconditionViolated, "middle_index needs n >= 2");
  const Rational half(1, 2);
  Rational prefix(0);
  std::size_t best = 0;
  Rational best_gap;
  for (std::size_t i = 2; i <= n; ++i) {
    prefix += dist[i - 2];
    Rational gap = abs(prefix - half);
    if (best == 0 || gap < best_gap) {
      best = i;
      best_gap = std::move(gap);
    }
  }
  return best;
}

namespace detail {

// One decision of A_t on a domain of original indices (sorted, all of positive mass).
struct AtLeaf {
  std::size_t element;
};
struct AtEquality {
  std::size_t position;  // into the domain
};
struct AtComparison {
  std::size_t split;  // domain[0..split) answer Yes
};
using AtDecision = std::variant<AtLeaf, AtEquality, AtComparison>;

class AtPlanner {
 public:
  AtPlanner(const Distribution& dist, const AtParams& params)
      : scaled_(scaled(dist)), tnum_(params.t.get_num()), tden_(params.t.get_den()) {}

  const BigInt& numerator(std::size_t i) const { return scaled_.numerators[i]; }

  AtDecision decide(const std::vector<std::size_t>& domain) const {
    if (domain.size() == 1) return AtLeaf{domain.front()};
    BigInt total(0);
    std::size_t arg = 0;
    for (std::size_t p = 0; p < domain.size(); ++p) {
      total += numerator(domain[p]);
      if (numerator(domain[p]) > numerator(domain[arg])) arg = p;
    }
    // pi_max >= t, compared exactly
    if (numerator(domain[arg]) * tden_ >= tnum_ * total) return AtEquality{arg};
    BigInt prefix(0);
    BigInt best_gap;
    std::size_t best = 0;
    for (std::size_t j = 1; j < domain.size(); ++j) {
      prefix += numerator(domain[j - 1]);
      BigInt gap = 2 * prefix - total;
      gap = abs(gap);
      if (best == 0 || gap < best_gap) {
        best = j;
        best_gap = std::move(gap);
      }
    }
    return AtComparison{best};
  }

 private:
  ScaledWeights scaled_;
  BigInt tnum_;
  BigInt tden_;
};

}  // namespace detail

/// Algorithm A_t over comparison and equality questions. Comparisons always name the
/// original X_n order, so punctured domains stay inside the 2n-3 family.
inline DecisionTree build_at_tree(const Distribution& dist, const AtParams& params = {}) {
  const std::size_t n = dist.size();
  detail::AtPlanner planner(dist, params);
  DecisionTree tree(n);

  std::vector<std::size_t> root_domain;
  for (auto x : dist.support()) root_domain.push_back(x.index);

  // Explicit stack: (domain, parent node, attach to yes?)
  struct Work {
    std::vector<std::size_t> domain;
    DecisionTree::NodeId parent;
    bool yes_side;
  };
  std::vector<Work> stack;
  stack.push_back({std::move(root_domain), DecisionTree::kNone, false});
  std::vector<std::pair<DecisionTree::NodeId, DecisionTree::NodeId>> children;  // per node: (yes, no)

  auto attach = [&](const Work& w, DecisionTree::NodeId id) {
    if (w.parent == DecisionTree::kNone) {
      tree.set_root(id);
      return;
    }
    auto& ch = children[static_cast<std::size_t>(w.parent)];
    (w.yes_side ? ch.first : ch.second) = id;
    tree.set_children(w.parent, ch.first, ch.second);
  };

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    const auto decision = planner.decide(w.domain);
    DecisionTree::NodeId id;
    if (const auto* leaf = std::get_if<detail::AtLeaf>(&decision)) {
      id = tree.add_leaf(Element{leaf->element});
      children.emplace_back(DecisionTree::kNone, DecisionTree::kNone);
      attach(w, id);
      continue;
    }
    if (const auto* eq = std::get_if<detail::AtEquality>(&decision)) {
      const std::size_t x = w.domain[eq->position];
      id = tree.add_internal(Question::equality(n, Element{x}));
      children.emplace_back(DecisionTree::kNone, DecisionTree::kNone);
      attach(w, id);
      std::vector<std::size_t> rest;
      rest.reserve(w.domain.size() - 1);
      for (auto y : w.domain)
        if (y != x) rest.push_back(y);
      stack.push_back({std::move(rest), id, false});
      stack.push_back({{x}, id, true});
      continue;
    }
    const auto split = std::get<detail::AtComparison>(decision).split;
    id = tree.add_internal(Question::comparison(n, Element{w.domain[split]}));
    children.emplace_back(DecisionTree::kNone, DecisionTree::kNone);
    attach(w, id);
    std::vector<std::size_t> lo(w.domain.begin(), w.domain.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<std::size_t> hi(w.domain.begin() + static_cast<std::ptrdiff_t>(split), w.domain.end());
    stack.push_back({std::move(hi), id, false});
    stack.push_back({std::move(lo), id, true});
  }
  return tree;
}

/// R_t(pi) = A_t(pi) - H(pi) - 1 from the built tree.
inline double redundancy_diagnostic(const Distribution& dist, const AtParams& params = {}) {
  return to_double(tree_cost(build_at_tree(dist, params), dist)) - entropy(dist) - 1.0;
}

/// R_t(pi) evaluated through the three-case recursion instead of the tree cost.
inline double redundancy_recursive(const Distribution& dist, const AtParams& params = {}) {
  detail::AtPlanner planner(dist, params);
  auto mass = [&](const std::vector<std::size_t>& d) {
    BigInt s(0);
    for (auto i : d) s += planner.numerator(i);
    return s;
  };
  auto ratio = [](const BigInt& a, const BigInt& b) { return to_double(Rational(a, b)); };

  // Post-order evaluation with an explicit stack.
  struct Frame {
    std::vector<std::size_t> domain;
    int stage = 0;
    double acc = 0.0;
    double weight_first = 0.0;
  };
  std::vector<Frame> stack;
  std::vector<double> results;
  std::vector<std::size_t> root;
  for (auto x : dist.support()) root.push_back(x.index);
  stack.push_back({std::move(root)});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto decision = planner.decide(f.domain);
    if (std::holds_alternative<detail::AtLeaf>(decision)) {
      results.push_back(-1.0);
      stack.pop_back();
      continue;
    }
    const BigInt total = mass(f.domain);
    if (const auto* eq = std::get_if<detail::AtEquality>(&decision)) {
      const double pmax = ratio(planner.numerator(f.domain[eq->position]), total);
      if (f.stage == 0) {
        f.stage = 1;
        f.acc = 1.0 - binary_entropy(pmax) - pmax;
        f.weight_first = 1.0 - pmax;
        std::vector<std::size_t> rest;
        for (std::size_t p = 0; p < f.domain.size(); ++p)
          if (p != eq->position) rest.push_back(f.domain[p]);
        stack.push_back({std::move(rest)});
        continue;
      }
      const double r = results.back();
      results.pop_back();
      const double value = f.acc + f.weight_first * r;
      stack.pop_back();
      results.push_back(value);
      continue;
    }
    const auto split = std::get<detail::AtComparison>(decision).split;
    std::vector<std::size_t> lo(f.domain.begin(), f.domain.begin() + static_cast<std::ptrdiff_t>(split));
    const double plo = ratio(mass(lo), total);
    if (f.stage == 0) {
      f.stage = 1;
      f.acc = 1.0 - binary_entropy(plo);
      stack.push_back({std::move(lo)});
      continue;
    }
    if (f.stage == 1) {
      f.stage = 2;
      f.acc += plo * results.back();
      results.pop_back();
      std::vector<std::size_t> hi(f.domain.begin() + static_cast<std::ptrdiff_t>(split), f.domain.end());
      stack.push_back({std::move(hi)});
      continue;
    }
    const double value = f.acc + (1.0 - plo) * results.back();
    results.pop_back();
    stack.pop_back();
    results.push_back(value);
  }
  return results.back();
}

}  // namespace quiztree
