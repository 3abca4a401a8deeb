#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "quiztree/distribution.hpp"
#include "quiztree/rational.hpp"

namespace qt_test {

inline quiztree::Distribution dist(std::initializer_list<const char*> ws) {
  std::vector<quiztree::Rational> w;
  for (auto s : ws) w.push_back(quiztree::parse_rational(s));
  return quiztree::Distribution(std::move(w));
}

inline quiztree::Rational q(const char* s) { return quiztree::parse_rational(s); }

// Random rational distribution with small integer weights; some zeros when allow_zero.
inline quiztree::Distribution random_dist(std::mt19937_64& rng, std::size_t n, bool allow_zero = false,
                                          unsigned max_weight = 20) {
  std::uniform_int_distribution<unsigned> pick(allow_zero ? 0 : 1, max_weight);
  std::vector<quiztree::Rational> w(n);
  bool any = false;
  for (auto& x : w) {
    x = pick(rng);
    any = any || sgn(x) > 0;
  }
  if (!any) w[0] = 1;
  return quiztree::Distribution::normalized(std::move(w));
}

}  // namespace qt_test
