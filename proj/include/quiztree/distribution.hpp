#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quiztree/element_set.hpp"
#include "quiztree/error.hpp"
#include "quiztree/rational.hpp"

namespace quiztree {

/// Exact probability distribution over X_n = {x_1, ..., x_n}.
class Distribution {
 public:
  explicit Distribution(std::vector<Rational> weights) : weights_(std::move(weights)) {
    require(!weights_.empty(), ErrorCode::InvalidDistribution, "distribution needs n >= 1");
    Rational total(0);
    for (auto& w : weights_) {
      w.canonicalize();
      require(sgn(w) >= 0, ErrorCode::InvalidDistribution, "negative weight " + w.get_str());
      total += w;
    }
    require(total == 1, ErrorCode::InvalidDistribution, "weights sum to " + total.get_str() + ", not 1");
  }

  static Distribution uniform(std::size_t n) {
    return Distribution(std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
  }

  static Distribution point_mass(std::size_t n, Element x) {
    std::vector<Rational> w(n, Rational(0));
    w.at(x.index) = 1;
    return Distribution(std::move(w));
  }

  /// Rescales nonnegative rationals to sum to one.
  static Distribution normalized(std::vector<Rational> raw) {
    Rational total(0);
    for (const auto& w : raw) total += w;
    require(sgn(total) > 0, ErrorCode::InvalidDistribution, "weights sum to zero");
    for (auto& w : raw) w /= total;
    return Distribution(std::move(raw));
  }

  std::size_t size() const { return weights_.size(); }
  const Rational& weight(Element x) const { return weights_.at(x.index); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }

  std::vector<Element> support() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (sgn(weights_[i]) > 0) out.push_back(Element{i});
    return out;
  }

  std::size_t support_size() const {
    std::size_t c = 0;
    for (const auto& w : weights_) c += sgn(w) > 0;
    return c;
  }

  Rational mass(const ElementSet& s) const {
    Rational m(0);
    for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) m += weights_[i];
    return m;
  }

  /// Most probable element; ties go to the smallest index.
  Element argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < weights_.size(); ++i)
      if (weights_[i] > weights_[best]) best = i;
    return Element{best};
  }

  bool is_dyadic() const {
    for (const auto& w : weights_)
      if (sgn(w) != 0 && !dyadic_exponent(w)) return false;
    return true;
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<Rational> weights_;
};

/// Integer numerators over the least common denominator: weights[i] = numerators[i] / denominator.
struct ScaledWeights {
  std::vector<BigInt> numerators;
  BigInt denominator;
};

inline ScaledWeights scaled(const Distribution& d) {
  BigInt lcm(1);
  for (const auto& w : d.weights()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
  ScaledWeights out{{}, lcm};
  out.numerators.reserve(d.size());
  for (const auto& w : d.weights()) out.numerators.push_back(w.get_num() * (lcm / w.get_den()));
  return out;
}

/// Base-2 Shannon entropy with 0 log(1/0) = 0.
inline double entropy(const Distribution& d) {
  double h = 0.0;
  for (const auto& w : d.weights()) {
    if (sgn(w) == 0) continue;
    h -= w.get_d() * log2_of(w);
  }
  return h < 0.0 ? 0.0 : h;
}

/// Binary entropy h(p).
inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Measure whose weights are 0 or 2^{-a}. Doubles as a dyadic sub-distribution (total <= 1).
class DyadicMeasure {
 public:
  using Exponent = std::optional<int>;

  DyadicMeasure() = default;

  explicit DyadicMeasure(std::vector<Exponent> exponents) : exponents_(std::move(exponents)) {
    for (const auto& e : exponents_)
      require(!e || *e >= 0, ErrorCode::PreconditionViolated, "dyadic exponent must be >= 0");
    require(total() <= 1, ErrorCode::PreconditionViolated, "dyadic measure exceeds total mass 1");
  }

  static DyadicMeasure from_distribution(const Distribution& d) {
    std::vector<Exponent> ex;
    ex.reserve(d.size());
    for (const auto& w : d.weights()) {
      if (sgn(w) == 0) {
        ex.emplace_back();
        continue;
      }
      auto a = dyadic_exponent(w);
      require(a.has_value() && *a >= 0, ErrorCode::PreconditionViolated, "weight " + w.get_str() + " is not dyadic");
      ex.emplace_back(static_cast<int>(*a));
    }
    return DyadicMeasure(std::move(ex));
  }

  std::size_t size() const { return exponents_.size(); }
  const Exponent& exponent(std::size_t i) const { return exponents_.at(i); }
  const std::vector<Exponent>& exponents() const { return exponents_; }

  Rational weight(std::size_t i) const {
    const auto& e = exponents_.at(i);
    return e ? pow2_neg(*e) : Rational(0);
  }

  Rational total() const {
    Rational t(0);
    for (const auto& e : exponents_)
      if (e) t += pow2_neg(*e);
    return t;
  }

  bool is_distribution() const { return total() == 1; }

  /// Non-constant means at least two support elements.
  bool is_constant() const {
    std::size_t c = 0;
    for (const auto& e : exponents_) c += e.has_value();
    return c <= 1;
  }

  Rational mass(const ElementSet& s) const {
    Rational m(0);
    for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) m += weight(i);
    return m;
  }

  Distribution to_distribution() const {
    require(is_distribution(), ErrorCode::PreconditionViolated, "dyadic measure is not a distribution");
    std::vector<Rational> w;
    w.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) w.push_back(weight(i));
    return Distribution(std::move(w));
  }

  friend bool operator==(const DyadicMeasure&, const DyadicMeasure&) = default;

 private:
  std::vector<Exponent> exponents_;
};

inline std::string to_string(const DyadicMeasure& mu) {
  std::string s = "(";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) s += ",";
    s += mu.weight(i).get_str();
  }
  return s + ")";
}

}  // namespace quiztree
