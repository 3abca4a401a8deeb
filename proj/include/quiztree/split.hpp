#pragma once

#include <cstddef>
#include <vector>

#include "quiztree/error.hpp"
#include "quiztree/rational.hpp"

namespace quiztree {

namespace detail {

// Checks that weights are powers of two (2^{-a_i}, a_i >= 0) in non-increasing order.
inline void check_sorted_dyadic(const std::vector<Rational>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto e = dyadic_exponent(w[i]);
    require(e.has_value() && *e >= 0, ErrorCode::PreconditionViolated, "weight " + w[i].get_str() + " is not dyadic");
    require(i == 0 || w[i] <= w[i - 1], ErrorCode::PreconditionViolated, "weights are not non-increasing");
  }
}

}  // namespace detail

/// Smallest m (1-based) with p_1 + ... + p_m = 2^{-a} for a non-increasing dyadic list.
inline std::size_t dyadic_prefix_split(const std::vector<Rational>& sorted_weights, long a) {
  detail::check_sorted_dyadic(sorted_weights);
  require(!sorted_weights.empty(), ErrorCode::PreconditionViolated, "empty list");
  const Rational target = pow2_neg(a);
  require(sorted_weights.front() <= target, ErrorCode::PreconditionViolated, "a exceeds the first exponent");
  Rational sum(0);
  for (std::size_t m = 0; m < sorted_weights.size(); ++m) {
    sum += sorted_weights[m];
    if (sum == target) return m + 1;
    // Non-increasing dyadic partial sums cannot jump over 2^{-a}.
    require(sum < target, ErrorCode::PreconditionViolated, "list is not sorted dyadic");
  }
  fail(ErrorCode::PreconditionViolated, "total " + sum.get_str() + " is below " + target.get_str());
}

/// l (1-based) with p_l + ... + p_end = 2^{-a}; needs the total to be a multiple of 2^{-a}.
inline std::size_t dyadic_suffix_split(const std::vector<Rational>& sorted_weights, long a) {
  detail::check_sorted_dyadic(sorted_weights);
  const Rational target = pow2_neg(a);
  Rational total(0);
  for (const auto& w : sorted_weights) total += w;
  const Rational ratio = total / target;
  require(ratio.get_den() == 1 && sgn(ratio) > 0, ErrorCode::PreconditionViolated,
          "total " + total.get_str() + " is not a positive multiple of " + target.get_str());
  Rational sum(0);
  for (std::size_t l = sorted_weights.size(); l-- > 0;) {
    sum += sorted_weights[l];
    if (sum == target) return l + 1;
    if (sum > target) break;
  }
  fail(ErrorCode::PreconditionViolated, "no suffix of mass " + target.get_str());
}

}  // namespace quiztree
