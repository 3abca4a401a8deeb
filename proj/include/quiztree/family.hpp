#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "quiztree/element_set.hpp"
#include "quiztree/error.hpp"
#include "quiztree/question.hpp"
#include "quiztree/rational.hpp"

namespace quiztree {

/// A finite set of questions over X_n. Questions are partitions, so membership is
/// tested up to complementation.
class QuestionFamily {
 public:
  virtual ~QuestionFamily() = default;

  virtual std::size_t ground_size() const = 0;
  virtual std::string name() const = 0;
  /// Number of questions in the family as counted by its construction.
  virtual BigInt cardinality() const = 0;
  /// True iff s or its complement is a member.
  virtual bool contains_set(const ElementSet& s) const = 0;
  /// Canonical representatives (side without x_n), deduplicated.
  virtual std::vector<ElementSet> enumerate() const = 0;

  virtual bool contains(const Question& q) const { return contains_set(q.resolve()); }
};

/// Family given extensionally.
class ExplicitFamily final : public QuestionFamily {
 public:
  ExplicitFamily(std::size_t n, const std::vector<ElementSet>& sets, std::string name = "explicit")
      : n_(n), name_(std::move(name)) {
    for (const auto& s : sets) {
      require(s.size() == n, ErrorCode::PreconditionViolated, "family member has wrong ground size");
      auto c = canonical_side(s);
      if (members_.insert(c).second) order_.push_back(c);
    }
  }

  static ExplicitFamily from_masks(std::size_t n, const std::vector<std::uint64_t>& masks, std::string name = "explicit") {
    std::vector<ElementSet> sets;
    sets.reserve(masks.size());
    for (auto m : masks) sets.push_back(from_mask(n, m));
    return ExplicitFamily(n, sets, std::move(name));
  }

  std::size_t ground_size() const override { return n_; }
  std::string name() const override { return name_; }
  BigInt cardinality() const override { return BigInt(static_cast<unsigned long>(order_.size())); }
  bool contains_set(const ElementSet& s) const override { return members_.count(canonical_side(s)) > 0; }
  std::vector<ElementSet> enumerate() const override { return order_; }

 private:
  std::size_t n_;
  std::string name_;
  std::unordered_set<ElementSet, ElementSetHash> members_;
  std::vector<ElementSet> order_;
};

/// Enumeration of structured families is only offered at desk scale.
constexpr std::size_t kMaxEnumerableGround = 64;

}  // namespace quiztree
