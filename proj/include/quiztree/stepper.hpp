#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/tree.hpp"

namespace quiztree {

/// Online strategy: exposes the next question until a single element remains.
class Stepper {
 public:
  virtual ~Stepper() = default;

  /// Next question, or nullopt once done.
  virtual std::optional<Question> question() const = 0;
  virtual std::optional<Element> result() const = 0;
  /// Throws InconsistentAnswers (state unchanged) if no candidate survives.
  virtual void answer(bool yes) = 0;

  bool done() const { return result().has_value(); }
  std::size_t asked() const { return asked_; }

 protected:
  std::size_t asked_ = 0;
};

/// Walks a fixed decision tree, tracking which support elements are still consistent.
class TreeStepper final : public Stepper {
 public:
  TreeStepper(DecisionTree tree, const Distribution& dist) : tree_(std::move(tree)), node_(tree_.root()) {
    require(tree_.ground_size() == dist.size(), ErrorCode::TreeInvalid, "tree and distribution differ in n");
    require(node_ != DecisionTree::kNone, ErrorCode::TreeInvalid, "tree has no root");
    alive_.assign(dist.size(), false);
    for (auto x : dist.support()) alive_[x.index] = true;
    check_leaf();
  }

  std::optional<Question> question() const override {
    const auto& nd = tree_.node(node_);
    if (nd.is_leaf()) return std::nullopt;
    return nd.question;
  }

  std::optional<Element> result() const override {
    const auto& nd = tree_.node(node_);
    if (!nd.is_leaf()) return std::nullopt;
    return nd.leaf;
  }

  void answer(bool yes) override {
    const auto& nd = tree_.node(node_);
    require(!nd.is_leaf(), ErrorCode::WrongState, "strategy already finished");
    auto next = yes ? nd.yes : nd.no;
    require(next != DecisionTree::kNone, ErrorCode::TreeInvalid, "internal node with a missing child");
    std::vector<bool> alive = alive_;
    bool any = false;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (alive[i] && nd.question->contains(Element{i}) != yes) alive[i] = false;
      any = any || alive[i];
    }
    require(any, ErrorCode::InconsistentAnswers, "no element is consistent with the answers given");
    const auto& target = tree_.node(next);
    require(!target.is_leaf() || (target.leaf.index < alive.size() && alive[target.leaf.index]),
            ErrorCode::InconsistentAnswers, "answers contradict the leaf they lead to");
    alive_ = std::move(alive);
    node_ = next;
    ++asked_;
  }

  const DecisionTree& tree() const { return tree_; }

 private:
  void check_leaf() const {
    const auto& nd = tree_.node(node_);
    require(!nd.is_leaf() || (nd.leaf.index < alive_.size()), ErrorCode::TreeInvalid, "leaf outside X_n");
  }

  DecisionTree tree_;
  DecisionTree::NodeId node_;
  std::vector<bool> alive_;
};

}  // namespace quiztree
