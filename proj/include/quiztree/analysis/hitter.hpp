#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "quiztree/analysis/dyadic.hpp"
#include "quiztree/analysis/splitters.hpp"
#include "quiztree/family.hpp"

namespace quiztree::analysis {

struct HitterReport {
  bool hitter = true;
  std::optional<DyadicMeasure> counterexample;  // first missed distribution in enumeration order
  std::uint64_t checked = 0;
};

/// Checks every non-constant dyadic distribution (or only full-support ones) against a family
/// given as masks. Stops at the first miss.
inline HitterReport is_dyadic_hitter_masks(std::size_t n, const std::vector<std::uint64_t>& family,
                                           bool full_support_only = false) {
  auto stream = enumerate_dyadic(n);
  HitterReport rep;
  std::vector<std::uint64_t> u(n);
  while (stream.next()) {
    const auto& codes = stream.codes();
    if (full_support_only && std::find(codes.begin(), codes.end(), stream.zero_code()) != codes.end()) continue;
    for (std::size_t i = 0; i < n; ++i)
      u[i] = codes[i] == stream.zero_code() ? 0 : std::uint64_t{1} << (n - 1 - static_cast<std::size_t>(codes[i]));
    const std::uint64_t half = stream.units_total() / 2;
    ++rep.checked;
    bool hit = false;
    for (auto m : family) {
      std::uint64_t s = 0;
      for (auto r = m; r; r &= r - 1) s += u[static_cast<std::size_t>(__builtin_ctzll(r))];
      if (s == half) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      rep.hitter = false;
      rep.counterexample = stream.measure();
      return rep;
    }
  }
  return rep;
}

inline std::vector<std::uint64_t> family_masks(const QuestionFamily& family) {
  std::vector<std::uint64_t> masks;
  for (const auto& s : family.enumerate()) masks.push_back(to_mask(s));
  return masks;
}

inline HitterReport is_dyadic_hitter(const QuestionFamily& family, bool full_support_only = false) {
  const auto n = family.ground_size();
  require(n <= kMaxDyadicEnumeration, ErrorCode::TooLarge, "hitter check is limited to n <= 10");
  return is_dyadic_hitter_masks(n, family_masks(family), full_support_only);
}

struct MinHitter {
  std::size_t size = 0;
  std::vector<ElementSet> witness;  // canonical sides
};

/// Exact minimum dyadic hitter by iterative deepening over the 2^{n-1}-1 question classes,
/// always branching on an unhit distribution with the fewest hitting classes.
inline MinHitter min_dyadic_hitter(std::size_t n) {
  require(n >= 2, ErrorCode::PreconditionViolated, "min hitter needs n >= 2");
  require(n <= 4, ErrorCode::TooLarge, "min hitter search is limited to n <= 4");
  const std::size_t classes = (std::size_t{1} << (n - 1)) - 1;  // masks 1..classes avoid x_n
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> constraints;  // bit c-1 set iff class c splits mu
  auto stream = enumerate_dyadic(n);
  while (stream.next()) {
    std::uint64_t hits = 0;
    for (auto m : detail::splitter_masks(stream.units(), stream.units_total())) {
      if (m >> (n - 1) & 1U) m = full & ~m;
      if (m) hits |= std::uint64_t{1} << (m - 1);
    }
    constraints.push_back(hits);
  }
  std::sort(constraints.begin(), constraints.end());
  constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());

  std::vector<std::uint64_t> chosen;
  std::function<bool(std::uint64_t, std::size_t)> search = [&](std::uint64_t picked, std::size_t budget) {
    const std::uint64_t* open = nullptr;
    for (const auto& c : constraints)
      if ((c & picked) == 0 && (!open || __builtin_popcountll(c) < __builtin_popcountll(*open))) open = &c;
    if (!open) return true;
    if (budget == 0) return false;
    for (auto r = *open; r; r &= r - 1) {
      const auto bit = r & (~r + 1);
      chosen.push_back(static_cast<std::uint64_t>(__builtin_ctzll(bit)) + 1);
      if (search(picked | bit, budget - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t k = 0; k <= classes; ++k) {
    chosen.clear();
    if (search(0, k)) {
      MinHitter out{k, {}};
      std::sort(chosen.begin(), chosen.end());
      for (auto m : chosen) out.witness.push_back(from_mask(n, m));
      return out;
    }
  }
  fail(ErrorCode::PreconditionViolated, "no hitter found");
}

struct SampledHitter {
  std::size_t n = 0;
  Rational m;                 // 1 / rho(n)
  std::size_t per_size = 0;   // ceil(M n log2 n) draws for each size 1..n-1
  std::vector<ElementSet> sets;
  HitterReport report;
};

/// Random family with ceil(M n log2 n) uniform i-subsets for every size i.
inline SampledHitter sample_hitter(std::size_t n, std::uint64_t seed) {
  require(n >= 2, ErrorCode::PreconditionViolated, "sample_hitter needs n >= 2");
  require(n <= kMaxDyadicEnumeration, ErrorCode::TooLarge, "sample_hitter is limited to n <= 10");
  SampledHitter out;
  out.n = n;
  out.m = 1 / rho(n);
  out.per_size = static_cast<std::size_t>(std::ceil(to_double(out.m) * static_cast<double>(n) * std::log2(static_cast<double>(n)) - 1e-9));
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(n);
  std::vector<std::uint64_t> masks;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < out.per_size; ++j) {
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      ElementSet s(n);
      for (std::size_t t = 0; t < i; ++t) s.set(idx[t]);
      out.sets.push_back(s);
      masks.push_back(to_mask(s));
    }
  }
  out.report = is_dyadic_hitter_masks(n, masks);
  return out;
}

}  // namespace quiztree::analysis
