#pragma once

#include <cstddef>
#include <vector>

#include "quiztree/element_set.hpp"
#include "quiztree/error.hpp"

namespace quiztree {

/// Mixed-radix row-major encoding of X_n into {0..base-1}^k (digit 0 most significant).
class VectorCodec {
 public:
  VectorCodec(std::size_t n, std::size_t k) : n_(n), k_(k) {
    require(n >= 1 && k >= 1, ErrorCode::PreconditionViolated, "vector codec needs n >= 1 and k >= 1");
    base_ = 1;
    while (!covers(base_)) ++base_;
    if (base_ < 2) base_ = 2;
    weights_.assign(k_, 1);
    for (std::size_t c = k_; c-- > 1;) weights_[c - 1] = weights_[c] * base_;
  }

  std::size_t n() const { return n_; }
  std::size_t length() const { return k_; }
  std::size_t base() const { return base_; }

  std::size_t digit(Element x, std::size_t coordinate) const { return (x.index / weights_.at(coordinate)) % base_; }

  std::vector<std::size_t> encode(Element x) const {
    std::vector<std::size_t> v(k_);
    for (std::size_t c = 0; c < k_; ++c) v[c] = digit(x, c);
    return v;
  }

  Element decode(const std::vector<std::size_t>& digits) const {
    require(digits.size() == k_, ErrorCode::PreconditionViolated, "wrong vector length");
    std::size_t idx = 0;
    for (std::size_t c = 0; c < k_; ++c) idx = idx * base_ + digits[c];
    return Element{idx};
  }

 private:
  // smallest b with b^k >= n, computed without overflow
  bool covers(std::size_t b) const {
    std::size_t p = 1;
    for (std::size_t c = 0; c < k_; ++c) {
      if (p >= n_) return true;
      p *= b;
    }
    return p >= n_;
  }

  std::size_t n_;
  std::size_t k_;
  std::size_t base_ = 2;
  std::vector<std::size_t> weights_;
};

}  // namespace quiztree
