#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quiztree/element_set.hpp"
#include "quiztree/error.hpp"

namespace quiztree {

/// Pivot of the cone family: S = {x_1, ..., x_{floor(n/2)}}.
constexpr std::size_t cone_pivot_size(std::size_t n) { return n / 2; }

/// Index of a cone member. A subset of S is described by floor(n/2) free bits over S;
/// a superset of S by ceil(n/2) free bits over the complement of S.
struct ConeIndex {
  bool superset = false;
  std::vector<bool> free_bits;

  friend bool operator==(const ConeIndex&, const ConeIndex&) = default;
};

/// Flat encoding: leading bit (1 = superset) followed by ceil(n/2) bits. Subset indices leave the
/// final bit zero when n is odd.
inline std::vector<bool> encode_cone_index(const ConeIndex& idx, std::size_t n) {
  std::vector<bool> bits(n - n / 2 + 1, false);
  bits[0] = idx.superset;
  for (std::size_t j = 0; j < idx.free_bits.size() && j + 1 < bits.size(); ++j) bits[j + 1] = idx.free_bits[j];
  return bits;
}

inline ConeIndex decode_cone_index(const std::vector<bool>& bits, std::size_t n) {
  const std::size_t half = cone_pivot_size(n);
  const std::size_t rest = n - half;
  require(n >= 2, ErrorCode::MalformedIndex, "cone family needs n >= 2");
  require(bits.size() == rest + 1, ErrorCode::MalformedIndex,
          "cone index must have " + std::to_string(rest + 1) + " bits, got " + std::to_string(bits.size()));
  ConeIndex idx;
  idx.superset = bits[0];
  const std::size_t width = idx.superset ? rest : half;
  for (std::size_t j = 0; j < rest; ++j) {
    if (j < width) {
      idx.free_bits.push_back(bits[j + 1]);
    } else {
      require(!bits[j + 1], ErrorCode::MalformedIndex, "subset index uses a bit beyond the pivot");
    }
  }
  return idx;
}

inline std::vector<bool> parse_bit_string(const std::string& s) {
  std::vector<bool> bits;
  for (char c : s) {
    require(c == '0' || c == '1', ErrorCode::MalformedIndex, "cone index must be a 0/1 string");
    bits.push_back(c == '1');
  }
  return bits;
}

inline std::string bit_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

/// Membership of x in the cone member named by idx.
inline bool cone_contains(const ConeIndex& idx, Element x, std::size_t n) {
  const std::size_t half = cone_pivot_size(n);
  if (!idx.superset) return x.index < half && idx.free_bits.at(x.index);
  if (x.index < half) return true;
  return idx.free_bits.at(x.index - half);
}

/// Decides x in Q_q from the flat bit index q.
inline bool cone_membership(const std::vector<bool>& q, Element x, std::size_t n) {
  require(x.index < n, ErrorCode::PreconditionViolated, "element outside X_n");
  return cone_contains(decode_cone_index(q, n), x, n);
}

inline ElementSet cone_resolve(const ConeIndex& idx, std::size_t n) {
  ElementSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (cone_contains(idx, Element{i}, n)) s.set(i);
  return s;
}

/// Index of a set that is a subset or superset of the pivot.
inline std::optional<ConeIndex> cone_index_of(const ElementSet& s) {
  const std::size_t n = s.size();
  const std::size_t half = cone_pivot_size(n);
  bool has_outside = false;
  bool covers_pivot = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < half && !s.test(i)) covers_pivot = false;
    if (i >= half && s.test(i)) has_outside = true;
  }
  ConeIndex idx;
  if (!has_outside) {
    idx.superset = false;
    for (std::size_t i = 0; i < half; ++i) idx.free_bits.push_back(s.test(i));
    return idx;
  }
  if (covers_pivot) {
    idx.superset = true;
    for (std::size_t i = half; i < n; ++i) idx.free_bits.push_back(s.test(i));
    return idx;
  }
  return std::nullopt;
}

}  // namespace quiztree
