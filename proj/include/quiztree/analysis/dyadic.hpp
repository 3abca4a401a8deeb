#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/error.hpp"

namespace quiztree::analysis {

constexpr std::size_t kMaxDyadicEnumeration = 10;

/// Pull-based stream of the non-constant dyadic distributions on X_n (zero weights allowed).
///
/// Exponent multisets are produced in lexicographic order (a zero weight sorts after every
/// exponent), and each multiset is then placed on X_n by next_permutation. With
/// up_to_permutation only the sorted placement (non-increasing mass) is produced.
class DyadicStream {
 public:
  DyadicStream(std::size_t n, bool up_to_permutation = false) : n_(n), up_to_perm_(up_to_permutation) {
    require(n >= 2, ErrorCode::PreconditionViolated, "dyadic enumeration needs n >= 2");
    require(n <= kMaxDyadicEnumeration, ErrorCode::TooLarge, "dyadic enumeration is limited to n <= 10");
    std::vector<int> prefix;
    collect(prefix, std::uint64_t{1} << (n_ - 1), 1);
  }

  /// Advances to the next distribution; false once exhausted.
  bool next() {
    if (started_ && !up_to_perm_ && std::next_permutation(codes_.begin(), codes_.end())) return true;
    if (next_multiset_ == multisets_.size()) return false;
    codes_ = multisets_[next_multiset_++];
    started_ = true;
    return true;
  }

  std::size_t size() const { return n_; }
  std::size_t multiset_count() const { return multisets_.size(); }

  /// Exponent per element; zero_code() marks weight 0.
  const std::vector<int>& codes() const { return codes_; }
  int zero_code() const { return static_cast<int>(n_); }

  /// Weights in units of 2^{-(n-1)}; they sum to units_total().
  std::vector<std::uint64_t> units() const {
    std::vector<std::uint64_t> u(n_);
    for (std::size_t i = 0; i < n_; ++i) u[i] = code_units(codes_[i]);
    return u;
  }
  std::uint64_t units_total() const { return std::uint64_t{1} << (n_ - 1); }

  DyadicMeasure measure() const {
    std::vector<DyadicMeasure::Exponent> ex(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (codes_[i] != zero_code()) ex[i] = codes_[i];
    return DyadicMeasure(std::move(ex));
  }

 private:
  std::uint64_t code_units(int c) const {
    return c == zero_code() ? 0 : std::uint64_t{1} << (n_ - 1 - static_cast<std::size_t>(c));
  }

  // Fewest powers of two, each at most cap, that sum to rem.
  static std::uint64_t min_pieces(std::uint64_t rem, std::uint64_t cap) {
    return rem / cap + static_cast<std::uint64_t>(__builtin_popcountll(rem % cap));
  }

  void collect(std::vector<int>& prefix, std::uint64_t rem, int lo) {
    if (rem == 0) {
      if (prefix.size() < 2) return;
      auto codes = prefix;
      codes.resize(n_, zero_code());
      multisets_.push_back(std::move(codes));
      return;
    }
    const std::size_t slots = n_ - prefix.size();
    for (int e = lo; e < static_cast<int>(n_); ++e) {
      const auto u = code_units(e);
      if (u > rem) continue;
      if (min_pieces(rem - u, u) > slots - 1) continue;
      prefix.push_back(e);
      collect(prefix, rem - u, e);
      prefix.pop_back();
    }
  }

  std::size_t n_;
  bool up_to_perm_;
  bool started_ = false;
  std::vector<std::vector<int>> multisets_;
  std::size_t next_multiset_ = 0;
  std::vector<int> codes_;
};

inline DyadicStream enumerate_dyadic(std::size_t n, bool up_to_permutation = false) {
  return DyadicStream(n, up_to_permutation);
}

inline std::uint64_t count_dyadic(std::size_t n, bool up_to_permutation = false) {
  DyadicStream s(n, up_to_permutation);
  std::uint64_t c = 0;
  while (s.next()) ++c;
  return c;
}

/// Units of 2^{-E} for a dyadic distribution, E the largest exponent. Requires E <= 62.
struct DyadicUnits {
  std::vector<std::uint64_t> units;
  std::uint64_t total = 1;
};

inline DyadicUnits dyadic_units(const DyadicMeasure& mu) {
  require(mu.is_distribution(), ErrorCode::PreconditionViolated, "expected a dyadic distribution");
  int e_max = 0;
  for (const auto& e : mu.exponents())
    if (e) e_max = std::max(e_max, *e);
  require(e_max <= 62, ErrorCode::TooLarge, "dyadic exponent beyond 62");
  DyadicUnits out;
  out.total = std::uint64_t{1} << e_max;
  for (const auto& e : mu.exponents()) out.units.push_back(e ? std::uint64_t{1} << (e_max - *e) : 0);
  return out;
}

}  // namespace quiztree::analysis
