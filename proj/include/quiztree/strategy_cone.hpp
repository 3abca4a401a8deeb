#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quiztree/cone_index.hpp"
#include "quiztree/family.hpp"
#include "quiztree/huffman.hpp"
#include "quiztree/stepper.hpp"

namespace quiztree {

/// All subsets and supersets of S = {x_1, ..., x_{floor(n/2)}}.
class ConeFamily final : public QuestionFamily {
 public:
  explicit ConeFamily(std::size_t n) : n_(n) {
    require(n >= 2, ErrorCode::PreconditionViolated, "cone family needs n >= 2");
  }

  std::size_t ground_size() const override { return n_; }
  std::string name() const override { return "cone"; }

  BigInt cardinality() const override {
    BigInt a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), 2, cone_pivot_size(n_));
    mpz_ui_pow_ui(b.get_mpz_t(), 2, n_ - cone_pivot_size(n_));
    return a + b - 1;
  }

  bool contains_set(const ElementSet& s) const override {
    if (s.size() != n_) return false;
    return cone_index_of(s).has_value() || cone_index_of(~s).has_value();
  }

  bool contains(const Question& q) const override {
    if (q.ground_size() != n_) return false;
    if (const auto* c = std::get_if<ConeQ>(&q.spec())) {
      const auto half = cone_pivot_size(n_);
      return c->index.free_bits.size() == (c->index.superset ? n_ - half : half);
    }
    return contains_set(q.resolve());
  }

  /// Canonical sides of the nonempty members; n <= 24.
  std::vector<ElementSet> enumerate() const override {
    require(n_ <= 24, ErrorCode::TooLarge, "cone enumeration capped at n = 24");
    const std::size_t half = cone_pivot_size(n_);
    std::vector<std::uint64_t> masks;
    const std::uint64_t pivot = (std::uint64_t{1} << half) - 1;
    const std::uint64_t full = (std::uint64_t{1} << n_) - 1;
    for (std::uint64_t a = 1; a <= pivot; ++a) masks.push_back(a);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << (n_ - half)); ++b) masks.push_back(pivot | (b << half));
    std::vector<ElementSet> out;
    std::vector<bool> seen(std::size_t{1} << n_, false);
    for (auto m : masks) {
      if (m >> (n_ - 1) & 1U) m = full & ~m;
      if (m == 0 || seen[m]) continue;
      seen[m] = true;
      out.push_back(from_mask(n_, m));
    }
    return out;
  }

 private:
  std::size_t n_;
};

namespace detail {

// Huffman measure in integer units (u_x = 2^{E - e_x}) plus the support in
// non-increasing mass order, ties by index.
struct ConePlan {
  std::size_t n = 0;
  std::vector<BigInt> units;  // zero off the support
  std::vector<std::size_t> order;

  explicit ConePlan(const Distribution& dist) : n(dist.size()), units(dist.size(), BigInt(0)) {
    const auto mu = huffman(dist).dyadic;
    int e_max = 0;
    for (const auto& e : mu.exponents())
      if (e) e_max = std::max(e_max, *e);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = mu.exponent(i);
      if (!e) continue;
      mpz_ui_pow_ui(units[i].get_mpz_t(), 2, static_cast<unsigned long>(e_max - *e));
      order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return units[a] > units[b]; });
  }

  // Question of conditional mass exactly 1/2 on the candidates, or nullopt if one remains.
  std::optional<ConeIndex> next(const std::vector<bool>& alive) const {
    const std::size_t half = cone_pivot_size(n);
    BigInt total(0), in_pivot(0);
    std::size_t count = 0;
    for (auto i : order) {
      if (!alive[i]) continue;
      ++count;
      total += units[i];
      if (i < half) in_pivot += units[i];
    }
    if (count <= 1) return std::nullopt;
    ConeIndex idx;
    if (2 * in_pivot == total) {
      idx.free_bits.assign(half, true);
      return idx;
    }
    // Dyadic prefix split on the heavier side, walked in non-increasing mass order.
    const bool use_pivot = 2 * in_pivot > total;
    std::vector<bool> chosen(n, false);
    BigInt sum(0);
    for (auto i : order) {
      if (!alive[i] || (i < half) != use_pivot) continue;
      sum += units[i];
      chosen[i] = true;
      if (2 * sum >= total) break;
    }
    require(2 * sum == total, ErrorCode::PreconditionViolated, "dyadic prefix split failed");
    if (use_pivot) {
      idx.superset = false;
      for (std::size_t i = 0; i < half; ++i) idx.free_bits.push_back(chosen[i]);
    } else {
      idx.superset = true;
      for (std::size_t i = half; i < n; ++i) idx.free_bits.push_back(!chosen[i]);
    }
    return idx;
  }
};

}  // namespace detail

/// Optimal tree from cone questions: every question halves the conditional Huffman measure,
/// so each element ends at depth log2(1/mu(x)) and the cost equals Opt exactly.
inline DecisionTree cone_optimal_tree(const Distribution& dist) {
  const std::size_t n = dist.size();
  const detail::ConePlan plan(dist);
  DecisionTree tree(n);
  if (plan.order.size() == 1) {
    tree.set_root(tree.add_leaf(Element{plan.order.front()}));
    return tree;
  }
  struct Work {
    std::vector<bool> alive;
    DecisionTree::NodeId parent;
    bool yes_side;
  };
  std::vector<std::pair<DecisionTree::NodeId, DecisionTree::NodeId>> children;
  auto attach = [&](const Work& w, DecisionTree::NodeId id) {
    children.resize(static_cast<std::size_t>(id) + 1, {DecisionTree::kNone, DecisionTree::kNone});
    if (w.parent == DecisionTree::kNone) {
      tree.set_root(id);
      return;
    }
    auto& ch = children[static_cast<std::size_t>(w.parent)];
    (w.yes_side ? ch.first : ch.second) = id;
    tree.set_children(w.parent, ch.first, ch.second);
  };
  std::vector<bool> all(n, false);
  for (auto i : plan.order) all[i] = true;
  std::vector<Work> stack{{std::move(all), DecisionTree::kNone, false}};
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    auto idx = plan.next(w.alive);
    if (!idx) {
      std::size_t leaf = 0;
      for (auto i : plan.order)
        if (w.alive[i]) leaf = i;
      attach(w, tree.add_leaf(Element{leaf}));
      continue;
    }
    std::vector<bool> yes(n, false), no(n, false);
    for (auto i : plan.order) {
      if (!w.alive[i]) continue;
      (cone_contains(*idx, Element{i}, n) ? yes : no)[i] = true;
    }
    auto id = tree.add_internal(Question::cone(n, std::move(*idx)));
    attach(w, id);
    stack.push_back({std::move(no), id, false});
    stack.push_back({std::move(yes), id, true});
  }
  return tree;
}

/// Online form: O(n log n) preprocessing (Huffman + sort), O(n) work per question.
class ConeStepper final : public Stepper {
 public:
  explicit ConeStepper(const Distribution& dist) : plan_(dist), alive_(dist.size(), false) {
    for (auto i : plan_.order) alive_[i] = true;
    refresh();
  }

  std::optional<Question> question() const override {
    if (!current_) return std::nullopt;
    return Question::cone(plan_.n, *current_);
  }

  std::optional<Element> result() const override {
    if (current_) return std::nullopt;
    for (auto i : plan_.order)
      if (alive_[i]) return Element{i};
    return std::nullopt;
  }

  void answer(bool yes) override {
    require(current_.has_value(), ErrorCode::WrongState, "strategy already finished");
    std::vector<bool> alive = alive_;
    bool any = false;
    for (auto i : plan_.order) {
      if (alive[i] && cone_contains(*current_, Element{i}, plan_.n) != yes) alive[i] = false;
      any = any || alive[i];
    }
    require(any, ErrorCode::InconsistentAnswers, "no element is consistent with the answers given");
    alive_ = std::move(alive);
    ++asked_;
    refresh();
  }

 private:
  void refresh() { current_ = plan_.next(alive_); }

  detail::ConePlan plan_;
  std::vector<bool> alive_;
  std::optional<ConeIndex> current_;
};

}  // namespace quiztree
