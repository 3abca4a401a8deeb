#pragma once

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "quiztree/distribution.hpp"
#include "quiztree/error.hpp"
#include "quiztree/rational.hpp"

namespace quiztree::analysis {

/// f(p) = 1 - h(p) - p.
inline double f_gap(double p) { return 1.0 - binary_entropy(p) - p; }

/// s(x) = 1 - h(x).
inline double s_gap(double x) { return 1.0 - binary_entropy(x); }

/// S(x) = s((1+x)/2) / x. The power series is used below 1/2 to avoid cancellation.
inline double S_ratio(double x) {
  if (x >= 0.5) return s_gap((1.0 + x) / 2.0) / x;
  const double c = 1.0 / std::log(2.0);
  double sum = 0.0;
  double pw = x;
  for (int k = 1; k < 200; ++k) {
    const double term = c / (2.0 * k * (2.0 * k - 1.0)) * pw;
    sum += term;
    if (term < 1e-20 * sum) break;
    pw *= x * x;
  }
  return sum;
}

/// F(x) = f(x) / x.
inline double F_ratio(double x) { return f_gap(x) / x; }

struct GtBound {
  double value = 0.0;      // truncated + edge + tail: an upper bound on the full series expression
  double truncated = 0.0;  // sum over n < terms
  double edge = 0.0;       // max(F(t), F(2t/(1-t)))
  double tail = 0.0;       // bound on the omitted terms
};

/// Right-hand side of the G_t bound:
/// sum_n S(t / (2^n (1-t) + t)) + max(F(t), F(2t/(1-t))).
/// Terms n >= N are bounded using S(x) <= (S(x_N)/x_N) x for x <= x_N, which holds because
/// S(x)/x has nonnegative series coefficients, and x_n <= t / ((1-t) 2^n).
inline GtBound gt_bound(const Rational& t_exact, int terms = 64) {
  require(terms >= 1 && terms <= 1000, ErrorCode::PreconditionViolated, "terms must be in 1..1000");
  require(sgn(t_exact) > 0 && t_exact <= Rational(1, 3), ErrorCode::PreconditionViolated, "t must lie in (0, 1/3]");
  const double t = to_double(t_exact);
  auto x_at = [&](int n) { return t / (std::ldexp(1.0 - t, n) + t); };
  GtBound out;
  for (int n = 0; n < terms; ++n) out.truncated += S_ratio(x_at(n));
  out.edge = std::max(F_ratio(t), F_ratio(2.0 * t / (1.0 - t)));
  const double xn = x_at(terms);
  out.tail = S_ratio(xn) / xn * t / ((1.0 - t) * std::ldexp(1.0, terms - 1));
  out.value = out.truncated + out.edge + out.tail;
  return out;
}

struct ExponentCalculus {
  double eps_star = 0.0;    // argmax of h(e) - 2e on [0,1]
  double eps_value = 0.0;   // 2^{h(eps*) - 2 eps*}
  double beta0 = 0.0;       // where the l = 0 and l = 1 exponents cross on [1/4,1/2]
  double l_beta0 = 0.0;     // L(beta0)
  double l_grid_min = 0.0;  // min of L over a grid of [1/4,1/2], as a cross-check
};

/// exponent for block size l: h(beta/2^l) - 2 beta/2^l
inline double lb_exponent(double beta, int l) {
  const double b = std::ldexp(beta, -l);
  return binary_entropy(b) - 2.0 * b;
}

/// L(beta) = max over l in {0,1} of 2^{h(beta/2^l) - 2 beta/2^l}.
inline double L_beta(double beta) { return std::exp2(std::max(lb_exponent(beta, 0), lb_exponent(beta, 1))); }

inline ExponentCalculus exponent_calculus() {
  using boost::math::tools::eps_tolerance;
  using boost::math::tools::toms748_solve;
  ExponentCalculus out;
  // h(e) - 2e is strictly concave, so its maximiser is the root of the derivative log2((1-e)/e) - 2.
  std::uintmax_t iters = 200;
  auto deriv = [](double e) { return std::log2((1.0 - e) / e) - 2.0; };
  auto r1 = toms748_solve(deriv, 0.01, 0.99, eps_tolerance<double>(52), iters);
  out.eps_star = (r1.first + r1.second) / 2.0;
  out.eps_value = std::exp2(lb_exponent(out.eps_star, 0));

  // On [1/4, 2/5] the l = 0 exponent decreases and the l = 1 exponent increases.
  iters = 200;
  auto cross = [](double b) { return lb_exponent(b, 0) - lb_exponent(b, 1); };
  auto r2 = toms748_solve(cross, 0.25, 0.4, eps_tolerance<double>(52), iters);
  out.beta0 = (r2.first + r2.second) / 2.0;
  out.l_beta0 = L_beta(out.beta0);

  out.l_grid_min = L_beta(0.25);
  constexpr int kGrid = 100000;
  for (int i = 0; i <= kGrid; ++i) out.l_grid_min = std::min(out.l_grid_min, L_beta(0.25 + 0.25 * i / kGrid));
  return out;
}

}  // namespace quiztree::analysis
