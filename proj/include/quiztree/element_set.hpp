#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace quiztree {

/// An element x_{index+1} of the ground set X_n. Zero-based internally.
struct Element {
  std::size_t index = 0;

  friend constexpr auto operator<=>(Element, Element) = default;

  /// One-based label used by every external format.
  constexpr std::size_t label() const { return index + 1; }
  static constexpr Element from_label(std::size_t one_based) { return Element{one_based - 1}; }
};

inline std::string to_string(Element x) { return "x_" + std::to_string(x.label()); }

/// Subset of X_n.
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline ElementSet make_set(std::size_t n, std::initializer_list<std::size_t> zero_based = {}) {
  ElementSet s(n);
  for (auto i : zero_based) s.set(i);
  return s;
}

inline ElementSet set_from_elements(std::size_t n, const std::vector<Element>& xs) {
  ElementSet s(n);
  for (auto x : xs) s.set(x.index);
  return s;
}

inline std::vector<Element> elements_of(const ElementSet& s) {
  std::vector<Element> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) out.push_back(Element{i});
  return out;
}

/// The member of {s, complement(s)} that does not contain x_n.
inline ElementSet canonical_side(const ElementSet& s) {
  if (s.empty() || !s.test(s.size() - 1)) return s;
  return ~s;
}

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const {
    std::size_t h = std::hash<std::size_t>{}(s.size());
    std::vector<std::uint64_t> blocks;
    boost::to_block_range(s, std::back_inserter(blocks));
    for (auto b : blocks) h ^= std::hash<std::uint64_t>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Bitmask view for ground sets of at most 64 elements.
inline std::uint64_t to_mask(const ElementSet& s) {
  std::uint64_t m = 0;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) m |= std::uint64_t{1} << i;
  return m;
}

inline ElementSet from_mask(std::size_t n, std::uint64_t mask) {
  ElementSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1U) s.set(i);
  return s;
}

}  // namespace quiztree
