#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "quiztree/analysis/dyadic.hpp"
#include "quiztree/distribution.hpp"
#include "quiztree/element_set.hpp"
#include "quiztree/error.hpp"
#include "quiztree/rational.hpp"

namespace quiztree::analysis {

constexpr std::size_t kMaxSplitterGround = 20;

/// All subsets of mass exactly 1/2, as masks over X_n in increasing order.
struct SplitterSet {
  DyadicMeasure source;
  std::vector<std::uint64_t> masks;

  std::size_t ground_size() const { return source.size(); }
  std::size_t size() const { return masks.size(); }
  std::vector<ElementSet> sets() const {
    std::vector<ElementSet> out;
    out.reserve(masks.size());
    for (auto m : masks) out.push_back(from_mask(ground_size(), m));
    return out;
  }
};

namespace detail {

/// Subset sums of every mask, by peeling the lowest bit.
inline std::vector<std::uint64_t> subset_sums(const std::vector<std::uint64_t>& units) {
  const std::size_t n = units.size();
  std::vector<std::uint64_t> sums(std::size_t{1} << n, 0);
  for (std::uint64_t m = 1; m < sums.size(); ++m) sums[m] = sums[m & (m - 1)] + units[static_cast<std::size_t>(__builtin_ctzll(m))];
  return sums;
}

inline std::vector<std::uint64_t> splitter_masks(const std::vector<std::uint64_t>& units, std::uint64_t total) {
  const auto sums = subset_sums(units);
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < sums.size(); ++m)
    if (2 * sums[m] == total) out.push_back(m);
  return out;
}

}  // namespace detail

inline SplitterSet splitters(const DyadicMeasure& mu) {
  require(mu.size() <= kMaxSplitterGround, ErrorCode::TooLarge, "splitter enumeration is limited to n <= 20");
  require(!mu.is_constant(), ErrorCode::ConstantDistribution, "constant distribution has no splitters to speak of");
  const auto u = dyadic_units(mu);
  return SplitterSet{mu, detail::splitter_masks(u.units, u.total)};
}

/// Per-size relative densities of a set family over X_n.
struct MrdReport {
  std::size_t n = 0;
  std::vector<Rational> density;  // density[i] for i in 0..n; only 1..n-1 enter the maximum
  Rational max;
  std::vector<std::size_t> argmax;
};

inline BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline MrdReport mrd_of_masks(std::size_t n, const std::vector<std::uint64_t>& masks) {
  MrdReport rep;
  rep.n = n;
  std::vector<unsigned long> count(n + 1, 0);
  for (auto m : masks) ++count[static_cast<std::size_t>(__builtin_popcountll(m))];
  rep.density.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    rep.density[i] = Rational(BigInt(count[i]), binomial(n, i));
    rep.density[i].canonicalize();
  }
  rep.max = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (rep.density[i] > rep.max) {
      rep.max = rep.density[i];
      rep.argmax.clear();
    }
    if (rep.density[i] == rep.max) rep.argmax.push_back(i);
  }
  return rep;
}

inline MrdReport mrd(const SplitterSet& sets) { return mrd_of_masks(sets.ground_size(), sets.masks); }

/// min over non-constant dyadic mu on X_n of the maximum relative density of its splitters.
inline Rational rho(std::size_t n) {
  auto stream = enumerate_dyadic(n, /*up_to_permutation=*/true);
  Rational best(2);
  while (stream.next()) {
    auto rep = mrd_of_masks(n, detail::splitter_masks(stream.units(), stream.units_total()));
    if (rep.max < best) best = rep.max;
  }
  return best;
}

/// 2t-1 elements of mass 2^{-a} followed by a halving tail whose last two masses agree;
/// n = 2^a / (2 eps) and t = eps n.
inline DyadicMeasure hard_distribution(const Rational& eps, long a) {
  require(a >= 1 && a <= 30, ErrorCode::PreconditionViolated, "hard distribution needs 1 <= a <= 30");
  require(sgn(eps) > 0 && eps <= Rational(1, 2) && eps.get_num() == 1, ErrorCode::PreconditionViolated,
          "eps must be 1/m with m >= 2");
  const Rational n_exact = pow2_neg(-a) / (2 * eps);
  require(n_exact.get_den() == 1 && n_exact >= 4, ErrorCode::PreconditionViolated,
          "n = 2^a/(2 eps) must be an integer >= 4");
  const auto n = static_cast<std::size_t>(n_exact.get_num().get_ui());
  const std::size_t t = std::size_t{1} << (a - 1);
  std::vector<DyadicMeasure::Exponent> ex(2 * t - 1, static_cast<int>(a));
  const std::size_t tail_len = n - ex.size();
  for (std::size_t j = 1; j < tail_len; ++j) ex.emplace_back(static_cast<int>(a + static_cast<long>(j)));
  ex.emplace_back(static_cast<int>(a + static_cast<long>(tail_len == 1 ? 0 : tail_len - 1)));
  return DyadicMeasure(std::move(ex));
}

/// The largest T whose masses read 2^{-a-1}, 2^{-a-2}, ..., 2^{-a-(|T|-1)} twice, a >= 1,
/// with every other support element of mass at least 2^{-a}. Zero-mass elements are ignored.
inline ElementSet tail(const DyadicMeasure& mu) {
  const std::size_t n = mu.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (mu.exponent(i)) order.push_back(i);
  // lightest first; ties by index
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return *mu.exponent(x) > *mu.exponent(y); });
  ElementSet best(n);
  if (order.size() < 2 || *mu.exponent(order[0]) != *mu.exponent(order[1])) return best;
  std::size_t size = 2;
  while (true) {
    const int a = *mu.exponent(order[size - 1]) - 1;
    const bool rest_heavy = size == order.size() || *mu.exponent(order[size]) <= a;
    if (a >= 1 && rest_heavy) {
      best.reset();
      for (std::size_t j = 0; j < size; ++j) best.set(order[j]);
    }
    if (size == order.size() || *mu.exponent(order[size]) != *mu.exponent(order[size - 1]) - 1) break;
    ++size;
  }
  return best;
}

/// Every splitter contains the tail or misses it.
inline bool tail_is_atomic(const SplitterSet& sets) {
  const auto t = to_mask(tail(sets.source));
  if (t == 0) return true;
  return std::all_of(sets.masks.begin(), sets.masks.end(), [&](std::uint64_t m) { return (m & t) == 0 || (m & t) == t; });
}

struct AntichainCheck {
  bool antichain = true;
  bool complement_closed = true;
  bool maximal = true;  // every set of mass > 1/2 contains a splitter
  bool ok() const { return antichain && complement_closed && maximal; }
};

/// Structure of Dyad(mu) for a full-support mu on at most 20 elements.
inline AntichainCheck check_splitter_antichain(const DyadicMeasure& mu) {
  const std::size_t n = mu.size();
  require(n <= kMaxSplitterGround, ErrorCode::TooLarge, "antichain check is limited to n <= 20");
  const auto u = dyadic_units(mu);
  const auto sums = detail::subset_sums(u.units);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  AntichainCheck out;
  // has[m]: m contains a splitter (itself or a proper subset)
  std::vector<char> has(sums.size(), 0);
  for (std::uint64_t m = 0; m < sums.size(); ++m) {
    bool below = false;
    for (std::uint64_t r = m; r; r &= r - 1) below = below || has[m & ~(r & (~r + 1))];
    const bool split = 2 * sums[m] == u.total;
    has[m] = split || below;
    if (split && below) out.antichain = false;
    if (split && 2 * sums[full & ~m] != u.total) out.complement_closed = false;
    if (2 * sums[m] > u.total && !has[m]) out.maximal = false;
  }
  return out;
}

}  // namespace quiztree::analysis
