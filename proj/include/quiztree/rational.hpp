#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "quiztree/error.hpp"

namespace quiztree {

using Rational = mpq_class;
using BigInt = mpz_class;

/// 2^{-a} as an exact rational (a may be negative).
inline Rational pow2_neg(long a) {
  Rational r(1);
  if (a >= 0) {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(a));
  } else {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(-a));
  }
  return r;
}

/// Accepts "p/q", integers and finite decimals ("0.25").
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.erase(v.begin());
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
  };
  trim(s);
  require(!s.empty(), ErrorCode::PreconditionViolated, "empty rational literal");
  Rational r;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    bool neg = s[0] == '-';
    std::string digits = s.substr(neg ? 1 : 0);
    dot = digits.find('.');
    std::string int_part = digits.substr(0, dot);
    std::string frac_part = digits.substr(dot + 1);
    if (int_part.empty()) int_part = "0";
    for (char c : int_part + frac_part)
      require(std::isdigit(static_cast<unsigned char>(c)), ErrorCode::PreconditionViolated,
              "bad decimal literal '" + s + "'");
    BigInt num(int_part + frac_part, 10);
    BigInt den(1);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    r = Rational(num, den);
    if (neg) r = -r;
  } else {
    require(r.set_str(s, 10) == 0, ErrorCode::PreconditionViolated, "bad rational literal '" + s + "'");
    require(r.get_den() != 0, ErrorCode::PreconditionViolated, "zero denominator in '" + s + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// log2 of a positive rational, accurate for numerators/denominators beyond double range.
inline double log2_of(const Rational& r) {
  long num_exp = 0;
  long den_exp = 0;
  double num = mpz_get_d_2exp(&num_exp, r.get_num_mpz_t());
  double den = mpz_get_d_2exp(&den_exp, r.get_den_mpz_t());
  return std::log2(num) - std::log2(den) + static_cast<double>(num_exp - den_exp);
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// If r = 2^{-a} for an integer a, returns a.
inline std::optional<long> dyadic_exponent(const Rational& r) {
  if (sgn(r) <= 0) return std::nullopt;
  const auto& num = r.get_num();
  const auto& den = r.get_den();
  if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1)
    return static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
  if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1)
    return -static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2) - 1);
  return std::nullopt;
}

}  // namespace quiztree
