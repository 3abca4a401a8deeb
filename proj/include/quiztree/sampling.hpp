#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quiztree/distribution.hpp"

namespace quiztree {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream seed for task i of a run seeded with root.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t i) { return splitmix64(splitmix64(root) ^ splitmix64(i + 1)); }

/// Rounds nonnegative doubles to multiples of 2^-32 and renormalises exactly.
inline Distribution rationalize(const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  require(total > 0.0, ErrorCode::InvalidDistribution, "sampled weights sum to zero");
  std::vector<Rational> out;
  out.reserve(w.size());
  bool any = false;
  for (double x : w) {
    const double scaled = std::floor(x / total * 4294967296.0);
    out.emplace_back(BigInt(scaled), BigInt(1));
    any = any || scaled > 0.0;
  }
  if (!any) out[static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin())] = 1;
  return Distribution::normalized(std::move(out));
}

/// Uniform point of the probability simplex (normalised exponentials).
inline Distribution sample_uniform_simplex(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = expo(rng);
  return rationalize(w);
}

/// Zipf weights 1/i^s assigned to a random permutation of X_n.
inline Distribution sample_zipf(std::size_t n, double s, std::mt19937_64& rng) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), s);
  std::shuffle(w.begin(), w.end(), rng);
  return rationalize(w);
}

/// Zipf weights in index order (x_1 heaviest), exact rationals 1/i^s for integer s.
inline Distribution zipf_exact(std::size_t n, unsigned s = 1) {
  std::vector<Rational> w;
  w.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(i), s);
    w.emplace_back(BigInt(1), d);
  }
  return Distribution::normalized(std::move(w));
}

/// Full-support dyadic distribution: split a random leaf of a growing code tree n-1 times, then shuffle.
inline Distribution sample_dyadic(std::size_t n, std::mt19937_64& rng) {
  std::vector<long> depth{0};
  while (depth.size() < n) {
    std::uniform_int_distribution<std::size_t> pick(0, depth.size() - 1);
    const auto i = pick(rng);
    ++depth[i];
    depth.push_back(depth[i]);
  }
  std::shuffle(depth.begin(), depth.end(), rng);
  std::vector<Rational> w;
  w.reserve(n);
  for (long d : depth) w.push_back(pow2_neg(d));
  return Distribution(std::move(w));
}

}  // namespace quiztree
