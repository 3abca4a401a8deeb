#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/element_set.hpp"
#include "quiztree/huffman.hpp"

namespace quiztree::analysis {

struct FirstQuestion {
  ElementSet set;               // canonical side
  Rational cost;                // 1 + optimal completion of both sides
  std::size_t heavies_in = 0;   // heavy elements inside set
  bool lights_together = false;
};

struct LbFamilyReport {
  int k = 0;
  std::size_t n = 0;
  Rational delta;
  Rational r;
  Distribution mu = Distribution::uniform(1);
  Rational opt;
  std::optional<Rational> opt_brute;  // when the support is small enough
  std::size_t questions = 0;
  std::vector<FirstQuestion> admissible;  // cost <= Opt + r
  bool holds = false;  // every admissible question splits heavies 2^{k-1} / 2^{k-1}-1, lights together
};

/// Unnormalised optimal cost of a weight list: mass times the Huffman cost of the conditional.
inline Rational weighted_opt(std::vector<Rational> w) {
  Rational total(0);
  std::size_t positive = 0;
  for (const auto& x : w) {
    total += x;
    positive += sgn(x) > 0;
  }
  if (positive <= 1) return Rational(0);
  return huffman(Distribution::normalized(std::move(w))).opt_cost * total;
}

/// 2^k - 1 heavies of mass (1-delta)/(2^k-1) and n - 2^k + 1 lights sharing delta.
/// Every first question is completed optimally on both sides and compared with Opt + r.
inline LbFamilyReport prolixity_lb_check(int k, std::size_t n, std::optional<Rational> delta_in = std::nullopt) {
  require(k == 2 || k == 3, ErrorCode::PreconditionViolated, "k must be 2 or 3");
  require(n <= 10, ErrorCode::TooLarge, "lower-bound family check is limited to n <= 10");
  const std::size_t heavy = (std::size_t{1} << k) - 1;
  require(n > heavy, ErrorCode::PreconditionViolated, "need at least one light element");
  LbFamilyReport rep;
  rep.k = k;
  rep.n = n;
  rep.r = pow2_neg(k);
  rep.delta = delta_in ? *delta_in : rep.r * rep.r / 2;
  require(sgn(rep.delta) > 0 && rep.delta < rep.r * rep.r, ErrorCode::PreconditionViolated, "delta must lie in (0, r^2)");

  std::vector<Rational> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = i < heavy ? Rational((1 - rep.delta) / static_cast<unsigned long>(heavy))
                     : Rational(rep.delta / static_cast<unsigned long>(n - heavy));
  rep.mu = Distribution(w);
  rep.opt = huffman(rep.mu).opt_cost;
  if (n <= kBruteForceMaxSupport) rep.opt_brute = brute_force_opt(rep.mu);

  const std::uint64_t lights = ((std::uint64_t{1} << n) - 1) & ~((std::uint64_t{1} << heavy) - 1);
  const std::size_t half = std::size_t{1} << (k - 1);
  rep.holds = true;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << (n - 1)); ++m) {
    ++rep.questions;
    std::vector<Rational> yes, no;
    for (std::size_t i = 0; i < n; ++i) ((m >> i) & 1U ? yes : no).push_back(w[i]);
    const Rational cost = 1 + weighted_opt(yes) + weighted_opt(no);
    if (cost > rep.opt + rep.r) continue;
    FirstQuestion q{from_mask(n, m), cost, static_cast<std::size_t>(__builtin_popcountll(m & ((std::uint64_t{1} << heavy) - 1))),
                    (m & lights) == 0 || (m & lights) == lights};
    const bool split_ok = q.heavies_in == half || q.heavies_in == half - 1;
    rep.holds = rep.holds && split_ok && q.lights_together;
    rep.admissible.push_back(std::move(q));
  }
  rep.holds = rep.holds && !rep.admissible.empty();
  return rep;
}

}  // namespace quiztree::analysis
