#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/tree.hpp"

namespace quiztree {

struct HuffmanResult {
  DecisionTree tree;
  Rational opt_cost;
  DyadicMeasure dyadic;  // tau_i = 2^{-depth(x_i)} on the support
};

/// Huffman's algorithm over supp(dist). Merges the two smallest weights; ties go to the
/// smallest node id (leaves are numbered first, in index order, merged nodes after).
inline HuffmanResult huffman(const Distribution& dist) {
  const std::size_t n = dist.size();
  const auto support = dist.support();
  DecisionTree tree(n);
  if (support.size() == 1) {
    tree.set_root(tree.add_leaf(support.front()));
    auto ex = std::vector<DyadicMeasure::Exponent>(n);
    ex[support.front().index] = 0;
    return {std::move(tree), Rational(0), DyadicMeasure(std::move(ex))};
  }

  struct Group {
    Rational weight;
    DecisionTree::NodeId tree_node;
    ElementSet members;
  };
  std::vector<Group> groups;
  groups.reserve(2 * support.size());
  using Entry = std::pair<Rational, std::size_t>;  // (weight, group id)
  auto greater = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> heap(greater);
  for (auto x : support) {
    ElementSet s(n);
    s.set(x.index);
    groups.push_back({dist.weight(x), tree.add_leaf(x), std::move(s)});
    heap.emplace(groups.back().weight, groups.size() - 1);
  }
  while (heap.size() > 1) {
    auto [wa, a] = heap.top();
    heap.pop();
    auto [wb, b] = heap.top();
    heap.pop();
    // The Yes side is the first (lighter) group.
    auto q = Question::explicit_set(groups[a].members);
    auto id = tree.add_internal(std::move(q), groups[a].tree_node, groups[b].tree_node);
    ElementSet merged = groups[a].members | groups[b].members;
    groups[a].members.clear();
    groups[b].members.clear();
    groups.push_back({wa + wb, id, std::move(merged)});
    heap.emplace(groups.back().weight, groups.size() - 1);
  }
  tree.set_root(groups[heap.top().second].tree_node);

  std::vector<DyadicMeasure::Exponent> ex(n);
  Rational cost(0);
  const auto depths = tree.depths();
  for (auto x : support) {
    ex[x.index] = static_cast<int>(*depths[x.index]);
    cost += dist.weight(x) * static_cast<unsigned long>(*depths[x.index]);
  }
  return {std::move(tree), std::move(cost), DyadicMeasure(std::move(ex))};
}

/// Depth per element of the Huffman tree (absent outside the support).
inline std::vector<std::optional<std::size_t>> huffman_depths(const Distribution& dist) {
  return huffman(dist).tree.depths();
}

constexpr std::size_t kBruteForceMaxSupport = 7;

/// Opt(pi) as the minimum of sum pi_i a_i over all dyadic tau = (2^{-a_i}) on the support,
/// each a_i in [1, s-1]. Independent of Huffman.
inline Rational brute_force_opt(const Distribution& dist) {
  const auto support = dist.support();
  const std::size_t s = support.size();
  require(s <= kBruteForceMaxSupport, ErrorCode::TooLarge,
          "brute force supports at most " + std::to_string(kBruteForceMaxSupport) + " support elements");
  if (s == 1) return Rational(0);
  const int max_a = static_cast<int>(s) - 1;
  // Capacity in units of 2^{-max_a}.
  const long unit_total = 1L << max_a;
  std::vector<int> a(s);
  std::optional<Rational> best;
  std::function<void(std::size_t, long, const Rational&)> dfs = [&](std::size_t i, long left, const Rational& acc) {
    if (best && acc >= *best) return;
    if (i == s) {
      if (left == 0) best = acc;
      return;
    }
    const long remaining = static_cast<long>(s - i);
    for (int e = 1; e <= max_a; ++e) {
      const long units = 1L << (max_a - e);
      if (units > left) continue;
      // the rest must fit: each later element takes at least one unit
      if (left - units < remaining - 1) continue;
      if (left - units > (remaining - 1) * (unit_total / 2)) continue;
      dfs(i + 1, left - units, acc + dist.weight(support[i]) * e);
    }
  };
  dfs(0, unit_total, Rational(0));
  return *best;
}

}  // namespace quiztree
