#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "quiztree/cone_index.hpp"
#include "quiztree/element_set.hpp"
#include "quiztree/error.hpp"
#include "quiztree/vector_codec.hpp"

namespace quiztree {

/// "x = target?"
struct EqualityQ {
  Element target;
  friend bool operator==(const EqualityQ&, const EqualityQ&) = default;
};

/// "x < pivot?" in the linear order of X_n.
struct ComparisonQ {
  Element pivot;
  friend bool operator==(const ComparisonQ&, const ComparisonQ&) = default;
};

enum class EntryOp { Equal, Less };

/// "coordinate c of the vector encoding of x = value?" or "... < value?". Values are zero-based.
struct EntryWiseQ {
  std::size_t coordinate = 0;
  EntryOp op = EntryOp::Equal;
  std::size_t value = 0;
  std::size_t length = 1;  // k
  friend bool operator==(const EntryWiseQ&, const EntryWiseQ&) = default;
};

struct ConeQ {
  ConeIndex index;
  friend bool operator==(const ConeQ&, const ConeQ&) = default;
};

/// Cyclic interval {start, start+1, ..., start+length-1} (mod n), with elements added and removed.
/// length == n denotes all of X_n. added/removed are kept sorted.
struct CyclicQ {
  std::size_t start = 0;
  std::size_t length = 0;
  std::vector<std::size_t> added;
  std::vector<std::size_t> removed;
  friend bool operator==(const CyclicQ&, const CyclicQ&) = default;
};

struct ExplicitQ {
  ElementSet members;
  friend bool operator==(const ExplicitQ&, const ExplicitQ&) = default;
};

enum class QuestionKind { Equality, Comparison, EntryWise, ConeMember, CyclicAdjusted, Explicit };

inline std::string to_string(QuestionKind k) {
  switch (k) {
    case QuestionKind::Equality: return "equality";
    case QuestionKind::Comparison: return "comparison";
    case QuestionKind::EntryWise: return "entrywise";
    case QuestionKind::ConeMember: return "cone";
    case QuestionKind::CyclicAdjusted: return "cyclic";
    case QuestionKind::Explicit: return "explicit";
  }
  return "unknown";
}

inline bool cyclic_interval_contains(std::size_t start, std::size_t length, std::size_t x, std::size_t n) {
  return (x + n - start) % n < length;
}

/// A question over X_n: kind-specific structure plus an exact membership rule.
class Question {
 public:
  using Spec = std::variant<EqualityQ, ComparisonQ, EntryWiseQ, ConeQ, CyclicQ, ExplicitQ>;

  Question(std::size_t n, Spec spec) : n_(n), spec_(std::move(spec)) {
    require(n_ >= 1, ErrorCode::PreconditionViolated, "question over an empty ground set");
    if (auto* c = std::get_if<CyclicQ>(&spec_)) {
      std::sort(c->added.begin(), c->added.end());
      std::sort(c->removed.begin(), c->removed.end());
      require(c->length <= n_ && (c->start < n_), ErrorCode::PreconditionViolated, "cyclic interval out of range");
    }
    if (auto* e = std::get_if<ExplicitQ>(&spec_))
      require(e->members.size() == n_, ErrorCode::PreconditionViolated, "explicit set has wrong ground size");
    if (auto* w = std::get_if<EntryWiseQ>(&spec_)) {
      codec_.emplace(n_, w->length);
      require(w->coordinate < w->length && w->value < codec_->base(), ErrorCode::PreconditionViolated,
              "entry-wise question out of range");
    }
  }

  static Question equality(std::size_t n, Element x) { return Question(n, EqualityQ{x}); }
  static Question comparison(std::size_t n, Element pivot) { return Question(n, ComparisonQ{pivot}); }
  static Question explicit_set(ElementSet s) {
    const auto n = s.size();
    return Question(n, ExplicitQ{std::move(s)});
  }
  static Question cone(std::size_t n, ConeIndex idx) { return Question(n, ConeQ{std::move(idx)}); }

  std::size_t ground_size() const { return n_; }
  const Spec& spec() const { return spec_; }
  QuestionKind kind() const { return static_cast<QuestionKind>(spec_.index()); }

  bool contains(Element x) const {
    return std::visit(
        [&](const auto& q) -> bool {
          using T = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<T, EqualityQ>) {
            return x == q.target;
          } else if constexpr (std::is_same_v<T, ComparisonQ>) {
            return x.index < q.pivot.index;
          } else if constexpr (std::is_same_v<T, EntryWiseQ>) {
            const auto d = codec_->digit(x, q.coordinate);
            return q.op == EntryOp::Equal ? d == q.value : d < q.value;
          } else if constexpr (std::is_same_v<T, ConeQ>) {
            return cone_contains(q.index, x, n_);
          } else if constexpr (std::is_same_v<T, CyclicQ>) {
            if (std::binary_search(q.removed.begin(), q.removed.end(), x.index)) return false;
            if (std::binary_search(q.added.begin(), q.added.end(), x.index)) return true;
            return cyclic_interval_contains(q.start, q.length, x.index, n_);
          } else {
            return q.members.test(x.index);
          }
        },
        spec_);
  }

  /// Canonical subset of X_n this question asks about.
  ElementSet resolve() const {
    if (const auto* e = std::get_if<ExplicitQ>(&spec_)) return e->members;
    ElementSet s(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(Element{i})) s.set(i);
    return s;
  }

  /// Human text, e.g. "Is x < x_7?" or "Is x in {x_1, x_3}?".
  std::string render() const {
    return std::visit(
        [&](const auto& q) -> std::string {
          using T = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<T, EqualityQ>) {
            return "Is x = " + to_string(q.target) + "?";
          } else if constexpr (std::is_same_v<T, ComparisonQ>) {
            return "Is x < " + to_string(q.pivot) + "?";
          } else if constexpr (std::is_same_v<T, EntryWiseQ>) {
            return "Is coordinate " + std::to_string(q.coordinate + 1) + " of x " +
                   (q.op == EntryOp::Equal ? "= " : "< ") + std::to_string(q.value + 1) + "?";
          } else {
            return "Is x in " + describe_set(resolve()) + "?";
          }
        },
        spec_);
  }

  friend bool operator==(const Question& a, const Question& b) { return a.n_ == b.n_ && a.spec_ == b.spec_; }

  /// Explicit list for small sets, run-length descriptor otherwise.
  static std::string describe_set(const ElementSet& s) {
    const auto xs = elements_of(s);
    std::string out = "{";
    if (xs.size() <= 12) {
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + to_string(xs[i]);
      return out + "}";
    }
    bool first = true;
    for (std::size_t i = 0; i < xs.size();) {
      std::size_t j = i;
      while (j + 1 < xs.size() && xs[j + 1].index == xs[j].index + 1) ++j;
      out += (first ? "" : ", ") + to_string(xs[i]);
      if (j > i) out += ".." + to_string(xs[j]);
      first = false;
      i = j + 1;
    }
    return out + "} (" + std::to_string(xs.size()) + " elements)";
  }

 private:
  std::size_t n_;
  Spec spec_;
  std::optional<VectorCodec> codec_;
};

}  // namespace quiztree
