#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/family.hpp"
#include "quiztree/question.hpp"

namespace quiztree {

/// Binary decision tree over X_n. Internal nodes hold a question; the Yes child is taken when
/// the secret belongs to the question's set. Leaves hold elements.
class DecisionTree {
 public:
  using NodeId = std::int32_t;
  static constexpr NodeId kNone = -1;

  struct Node {
    std::optional<Question> question;
    NodeId yes = kNone;
    NodeId no = kNone;
    Element leaf{};

    bool is_leaf() const { return !question.has_value(); }
  };

  explicit DecisionTree(std::size_t n) : n_(n) {}

  static DecisionTree single_leaf(std::size_t n, Element x) {
    DecisionTree t(n);
    t.set_root(t.add_leaf(x));
    return t;
  }

  NodeId add_leaf(Element x) {
    Node node;
    node.leaf = x;
    nodes_.push_back(std::move(node));
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  /// Children may be attached later with set_children.
  NodeId add_internal(Question q, NodeId yes = kNone, NodeId no = kNone) {
    require(q.ground_size() == n_, ErrorCode::PreconditionViolated, "question ground size differs from tree");
    Node node;
    node.question.emplace(std::move(q));
    node.yes = yes;
    node.no = no;
    nodes_.push_back(std::move(node));
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  void set_children(NodeId id, NodeId yes, NodeId no) {
    nodes_.at(static_cast<std::size_t>(id)).yes = yes;
    nodes_.at(static_cast<std::size_t>(id)).no = no;
  }

  void set_root(NodeId id) { root_ = id; }

  std::size_t ground_size() const { return n_; }
  NodeId root() const { return root_; }
  const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::size_t node_count() const { return nodes_.size(); }

  std::size_t question_count() const {
    std::size_t c = 0;
    for (const auto& nd : nodes_) c += !nd.is_leaf();
    return c;
  }

  /// Visits nodes reachable from the root with their depth, parent-before-child.
  template <typename F>
  void for_each_reachable(F&& visit) const {
    if (root_ == kNone) return;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto [id, depth] = stack.back();
      stack.pop_back();
      const Node& nd = node(id);
      visit(id, nd, depth);
      if (!nd.is_leaf()) {
        if (nd.no != kNone) stack.emplace_back(nd.no, depth + 1);
        if (nd.yes != kNone) stack.emplace_back(nd.yes, depth + 1);
      }
    }
  }

  /// Depth of the (first) leaf labelled by each element, if any.
  std::vector<std::optional<std::size_t>> depths() const {
    std::vector<std::optional<std::size_t>> d(n_);
    for_each_reachable([&](NodeId, const Node& nd, std::size_t depth) {
      if (nd.is_leaf() && nd.leaf.index < n_ && !d[nd.leaf.index]) d[nd.leaf.index] = depth;
    });
    return d;
  }

  std::vector<Element> leaves() const {
    std::vector<Element> out;
    for_each_reachable([&](NodeId, const Node& nd, std::size_t) {
      if (nd.is_leaf()) out.push_back(nd.leaf);
    });
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Node> nodes_;
  NodeId root_ = kNone;
};

/// Exact expected number of questions, sum_i pi_i depth(x_i).
inline Rational tree_cost(const DecisionTree& tree, const Distribution& dist) {
  require(tree.ground_size() == dist.size(), ErrorCode::TreeInvalid, "tree and distribution differ in n");
  const auto d = tree.depths();
  Rational cost(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (sgn(dist[i]) == 0) continue;
    require(d[i].has_value(), ErrorCode::TreeInvalid, "support element " + to_string(Element{i}) + " has no leaf");
    cost += dist[i] * static_cast<unsigned long>(*d[i]);
  }
  return cost;
}

struct TranscriptStep {
  Question question;
  bool answer;
};

struct Transcript {
  Element secret;
  std::vector<TranscriptStep> steps;

  std::size_t depth() const { return steps.size(); }
};

/// Plays the tree against a known secret.
inline Transcript simulate(const DecisionTree& tree, Element secret) {
  require(secret.index < tree.ground_size(), ErrorCode::SecretNotInTree, "secret outside X_n");
  bool labelled = false;
  tree.for_each_reachable([&](DecisionTree::NodeId, const DecisionTree::Node& nd, std::size_t) {
    labelled = labelled || (nd.is_leaf() && nd.leaf == secret);
  });
  require(labelled, ErrorCode::SecretNotInTree, to_string(secret) + " labels no leaf");
  Transcript t{secret, {}};
  auto id = tree.root();
  while (!tree.node(id).is_leaf()) {
    const auto& nd = tree.node(id);
    const bool ans = nd.question->contains(secret);
    t.steps.push_back({*nd.question, ans});
    id = ans ? nd.yes : nd.no;
    require(id != DecisionTree::kNone, ErrorCode::TreeInvalid, "internal node with a missing child");
  }
  require(tree.node(id).leaf == secret, ErrorCode::SecretNotInTree,
          "answers for " + to_string(secret) + " reach leaf " + to_string(tree.node(id).leaf));
  return t;
}

enum class ViolationKind { LeafSupportMismatch, DuplicateLeaf, PathInconsistent, OutOfFamily, DegenerateQuestion, Malformed };

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::LeafSupportMismatch: return "leaf/support mismatch";
    case ViolationKind::DuplicateLeaf: return "duplicate leaf";
    case ViolationKind::PathInconsistent: return "path inconsistent";
    case ViolationKind::OutOfFamily: return "question outside family";
    case ViolationKind::DegenerateQuestion: return "degenerate question";
    case ViolationKind::Malformed: return "malformed tree";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  DecisionTree::NodeId node = DecisionTree::kNone;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const {
    std::size_t c = 0;
    for (const auto& v : violations) c += v.kind == k;
    return c;
  }
};

/// Checks a tree against a distribution and, if given, a question family (nullptr = unrestricted).
inline ValidationReport validate_tree(const DecisionTree& tree, const Distribution& dist,
                                      const QuestionFamily* family = nullptr) {
  ValidationReport report;
  auto add = [&](ViolationKind k, DecisionTree::NodeId id, std::string detail) {
    report.violations.push_back({k, id, std::move(detail)});
  };
  const std::size_t n = dist.size();
  if (tree.ground_size() != n || tree.root() == DecisionTree::kNone) {
    add(ViolationKind::Malformed, DecisionTree::kNone, "tree ground size differs or tree has no root");
    return report;
  }

  std::vector<std::size_t> leaf_count(n, 0);
  // Each stack entry carries the constraints (question node, answer) along its path.
  struct Frame {
    DecisionTree::NodeId id;
    std::vector<std::pair<DecisionTree::NodeId, bool>> path;
  };
  std::vector<Frame> stack{{tree.root(), {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const auto& nd = tree.node(f.id);
    if (nd.is_leaf()) {
      if (nd.leaf.index >= n) {
        add(ViolationKind::Malformed, f.id, "leaf label outside X_n");
        continue;
      }
      ++leaf_count[nd.leaf.index];
      for (const auto& [qid, ans] : f.path) {
        if (tree.node(qid).question->contains(nd.leaf) != ans)
          add(ViolationKind::PathInconsistent, f.id,
              to_string(nd.leaf) + " contradicts the " + (ans ? "Yes" : "No") + " edge of node " + std::to_string(qid));
      }
      continue;
    }
    if (nd.yes == DecisionTree::kNone || nd.no == DecisionTree::kNone) {
      add(ViolationKind::Malformed, f.id, "internal node with a missing child");
      continue;
    }
    const auto set = nd.question->resolve();
    if (set.none() || set.all()) add(ViolationKind::DegenerateQuestion, f.id, nd.question->render());
    if (family != nullptr && !family->contains(*nd.question))
      add(ViolationKind::OutOfFamily, f.id, nd.question->render() + " not in " + family->name());
    auto yes_path = f.path;
    yes_path.emplace_back(f.id, true);
    f.path.emplace_back(f.id, false);
    stack.push_back({nd.no, std::move(f.path)});
    stack.push_back({nd.yes, std::move(yes_path)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_support = sgn(dist[i]) > 0;
    if (leaf_count[i] > 1) add(ViolationKind::DuplicateLeaf, DecisionTree::kNone, to_string(Element{i}));
    if (in_support && leaf_count[i] == 0)
      add(ViolationKind::LeafSupportMismatch, DecisionTree::kNone, to_string(Element{i}) + " in support but has no leaf");
    if (!in_support && leaf_count[i] > 0)
      add(ViolationKind::LeafSupportMismatch, DecisionTree::kNone, to_string(Element{i}) + " has a leaf but zero mass");
  }
  return report;
}

/// Support elements reaching each node when the tree is played honestly.
inline std::vector<std::vector<Element>> reach_sets(const DecisionTree& tree, const Distribution& dist) {
  std::vector<std::vector<Element>> reach(tree.node_count());
  if (tree.root() == DecisionTree::kNone) return reach;
  for (auto x : dist.support()) {
    auto id = tree.root();
    while (id != DecisionTree::kNone) {
      reach[static_cast<std::size_t>(id)].push_back(x);
      const auto& nd = tree.node(id);
      if (nd.is_leaf()) break;
      id = nd.question->contains(x) ? nd.yes : nd.no;
    }
  }
  return reach;
}

}  // namespace quiztree
