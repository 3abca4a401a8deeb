#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "quiztree/strategy_at.hpp"
#include "quiztree/vector_codec.hpp"

namespace quiztree {

/// k = floor(r) for a redundancy budget r >= 1.
inline std::size_t vector_length(double r) {
  require(r >= 1.0, ErrorCode::PreconditionViolated, "vector strategy needs r >= 1");
  return static_cast<std::size_t>(std::floor(r));
}

/// Entry-wise questions "x_c = v?" and "x_c < v?" on the length-k encoding, minus the
/// redundant forms (x_c < 1, x_c < 2 and x_c < base): k(2 base - 3) questions.
class VectorFamily final : public QuestionFamily {
 public:
  VectorFamily(std::size_t n, std::size_t k) : codec_(n, k) {
    require(n >= 2, ErrorCode::PreconditionViolated, "vector family needs n >= 2");
  }

  const VectorCodec& codec() const { return codec_; }

  std::size_t ground_size() const override { return codec_.n(); }
  std::string name() const override { return "vector(k=" + std::to_string(codec_.length()) + ")"; }
  BigInt cardinality() const override {
    return BigInt(static_cast<unsigned long>(codec_.length() * (2 * codec_.base() - 3)));
  }

  /// The structural members, coordinate by coordinate.
  std::vector<Question> questions() const {
    std::vector<Question> out;
    const auto b = codec_.base();
    for (std::size_t c = 0; c < codec_.length(); ++c) {
      // with base 2 the two equalities are complementary
      for (std::size_t v = 0; v < (b == 2 ? 1 : b); ++v) out.emplace_back(codec_.n(), EntryWiseQ{c, EntryOp::Equal, v, codec_.length()});
      for (std::size_t v = 2; v + 1 < b; ++v) out.emplace_back(codec_.n(), EntryWiseQ{c, EntryOp::Less, v, codec_.length()});
    }
    return out;
  }

  bool contains(const Question& q) const override {
    if (q.ground_size() != codec_.n()) return false;
    if (const auto* w = std::get_if<EntryWiseQ>(&q.spec()))
      if (w->length == codec_.length()) return w->op == EntryOp::Equal || (w->value >= 1 && w->value < codec_.base());
    return contains_set(q.resolve());
  }

  bool contains_set(const ElementSet& s) const override {
    if (s.size() != codec_.n()) return false;
    std::call_once(built_, [this] {
      for (const auto& q : questions()) members_.insert(canonical_side(q.resolve()));
    });
    return members_.count(canonical_side(s)) > 0;
  }

  std::vector<ElementSet> enumerate() const override {
    require(codec_.n() <= kMaxEnumerableGround, ErrorCode::TooLarge, "enumeration capped at 64 elements");
    std::vector<ElementSet> out;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (const auto& q : questions()) {
      auto c = canonical_side(q.resolve());
      if (seen.insert(c).second) out.push_back(c);
    }
    return out;
  }

 private:
  VectorCodec codec_;
  mutable std::once_flag built_;
  mutable std::unordered_set<ElementSet, ElementSetHash> members_;
};

inline VectorFamily vector_family(std::size_t n, double r) { return VectorFamily(n, vector_length(r)); }

/// Determines the digits of x one coordinate at a time, each by A_{3/10} on the conditional
/// distribution of that digit given the digits already fixed.
inline DecisionTree build_vector_tree(const Distribution& dist, double r) {
  const std::size_t n = dist.size();
  const VectorCodec codec(n, vector_length(r));
  const std::size_t b = codec.base();
  const std::size_t k = codec.length();
  DecisionTree tree(n);

  struct Work {
    std::vector<std::size_t> candidates;  // positive mass only
    std::size_t coordinate;
    DecisionTree::NodeId parent;
    bool yes_side;
  };
  std::vector<std::pair<DecisionTree::NodeId, DecisionTree::NodeId>> children;
  auto add_node = [&](DecisionTree::NodeId id) {
    children.resize(static_cast<std::size_t>(id) + 1, {DecisionTree::kNone, DecisionTree::kNone});
    return id;
  };
  auto attach = [&](DecisionTree::NodeId parent, bool yes_side, DecisionTree::NodeId id) {
    if (parent == DecisionTree::kNone) {
      tree.set_root(id);
      return;
    }
    auto& ch = children[static_cast<std::size_t>(parent)];
    (yes_side ? ch.first : ch.second) = id;
    tree.set_children(parent, ch.first, ch.second);
  };

  std::vector<Work> stack;
  {
    std::vector<std::size_t> all;
    for (auto x : dist.support()) all.push_back(x.index);
    stack.push_back({std::move(all), 0, DecisionTree::kNone, false});
  }
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    if (w.candidates.size() == 1) {
      attach(w.parent, w.yes_side, add_node(tree.add_leaf(Element{w.candidates.front()})));
      continue;
    }
    // Group by digit; coordinates where every candidate agrees need no question.
    std::vector<std::vector<std::size_t>> buckets;
    std::size_t c = w.coordinate;
    for (;; ++c) {
      require(c < k, ErrorCode::PreconditionViolated, "vector encoding is not injective");
      buckets.assign(b, {});
      std::size_t used = 0;
      for (auto i : w.candidates) {
        auto& bucket = buckets[codec.digit(Element{i}, c)];
        used += bucket.empty();
        bucket.push_back(i);
      }
      if (used > 1) break;
    }
    std::vector<Rational> digit_mass(b, Rational(0));
    for (std::size_t v = 0; v < b; ++v)
      for (auto i : buckets[v]) digit_mass[v] += dist[i];
    const auto digit_tree = build_at_tree(Distribution::normalized(std::move(digit_mass)), AtParams{});

    // Copy the digit-level tree, translating its questions to entry-wise ones.
    struct Copy {
      DecisionTree::NodeId src;
      DecisionTree::NodeId parent;
      bool yes_side;
    };
    std::vector<Copy> copies{{digit_tree.root(), w.parent, w.yes_side}};
    while (!copies.empty()) {
      auto cp = copies.back();
      copies.pop_back();
      const auto& nd = digit_tree.node(cp.src);
      if (nd.is_leaf()) {
        stack.push_back({std::move(buckets[nd.leaf.index]), c + 1, cp.parent, cp.yes_side});
        continue;
      }
      EntryWiseQ ew{c, EntryOp::Equal, 0, k};
      if (const auto* e = std::get_if<EqualityQ>(&nd.question->spec())) {
        ew.value = e->target.index;
      } else {
        ew.op = EntryOp::Less;
        ew.value = std::get<ComparisonQ>(nd.question->spec()).pivot.index;
      }
      auto id = add_node(tree.add_internal(Question(n, ew)));
      attach(cp.parent, cp.yes_side, id);
      copies.push_back({nd.no, id, false});
      copies.push_back({nd.yes, id, true});
    }
  }
  return tree;
}

}  // namespace quiztree
