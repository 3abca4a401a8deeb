#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quiztree/analysis/dyadic.hpp"
#include "quiztree/analysis/hitter.hpp"
#include "quiztree/analysis/lower_bound.hpp"
#include "quiztree/analysis/numeric.hpp"
#include "quiztree/analysis/splitters.hpp"
#include "quiztree/io/json.hpp"
#include "quiztree/sampling.hpp"
#include "quiztree/split.hpp"
#include "quiztree/strategy_at.hpp"
#include "quiztree/strategy_cone.hpp"

namespace quiztree {

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return !checks.empty();
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }

  io::json to_json() const {
    io::json arr = io::json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return io::json{{"suite", suite}, {"ok", ok()}, {"checks", arr}};
  }

  std::string to_text() const {
    std::ostringstream out;
    for (const auto& c : checks)
      out << (c.ok ? "ok    " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
    out << suite << ": " << (ok() ? "all checks passed" : "violations found") << '\n';
    return out.str();
  }
};

struct VerifyOptions {
  std::size_t max_n = 0;  // 0 = the suite's default
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string fmt(double x) { return io::format_double(x); }

}  // namespace detail

/// Prefix and suffix splits exist for every sorted dyadic list reachable as a tail of an
/// enumerated distribution, at every admissible exponent.
inline VerifyReport verify_neatsum(const VerifyOptions& o = {}) {
  VerifyReport rep{"neatsum", {}};
  const std::size_t max_n = o.max_n ? o.max_n : 8;
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::size_t lists = 0, failures = 0;
    auto s = analysis::enumerate_dyadic(n, true);
    while (s.next()) {
      std::vector<Rational> w;
      for (auto c : s.codes())
        if (c != s.zero_code()) w.push_back(pow2_neg(c));
      for (std::size_t start = 0; start < w.size(); ++start) {
        std::vector<Rational> sub(w.begin() + static_cast<long>(start), w.end());
        Rational total(0);
        for (const auto& x : sub) total += x;
        for (long a = *dyadic_exponent(sub.front()); a >= 0 && pow2_neg(a) <= total; --a) {
          ++lists;
          try {
            const auto m = dyadic_prefix_split(sub, a);
            Rational sum(0);
            for (std::size_t i = 0; i < m; ++i) sum += sub[i];
            failures += sum != pow2_neg(a);
            if (Rational(total / pow2_neg(a)).get_den() == 1) {
              const auto l = dyadic_suffix_split(sub, a);
              Rational tail_sum(0);
              for (std::size_t i = l - 1; i < sub.size(); ++i) tail_sum += sub[i];
              failures += tail_sum != pow2_neg(a);
            }
          } catch (const Error&) {
            ++failures;
          }
        }
      }
    }
    rep.add("dyadic split, n=" + std::to_string(n), failures == 0,
            std::to_string(lists) + " (list, a) pairs, " + std::to_string(failures) + " failures");
  }
  return rep;
}

/// Cone family hits every dyadic distribution; minimal hitter goldens and the lower sandwich.
inline VerifyReport verify_hitter(const VerifyOptions& o = {}) {
  VerifyReport rep{"hitter", {}};
  const std::size_t max_n = o.max_n ? o.max_n : 10;
  for (std::size_t n = 3; n <= max_n; ++n) {
    const auto r = analysis::is_dyadic_hitter(ConeFamily(n));
    rep.add("cone family is a dyadic hitter, n=" + std::to_string(n), r.hitter,
            std::to_string(r.checked) + " distributions" +
                (r.counterexample ? ", missed " + to_string(*r.counterexample) : std::string()));
  }
  const auto m2 = analysis::min_dyadic_hitter(2).size;
  const auto m3 = analysis::min_dyadic_hitter(3).size;
  const auto m4 = analysis::min_dyadic_hitter(4).size;
  rep.add("min_dyadic_hitter(2) = 1", m2 == 1, std::to_string(m2));
  rep.add("min_dyadic_hitter(3) = 3", m3 == 3, std::to_string(m3));
  rep.add("min_dyadic_hitter(4) = 5", m4 == 5, std::to_string(m4));
  const std::size_t mins[] = {0, 0, m2, m3, m4};
  for (std::size_t n = 2; n <= 4; ++n) {
    const Rational inv = 1 / analysis::rho(n);
    rep.add("min_dyadic_hitter(" + std::to_string(n) + ") >= 1/rho", Rational(mins[n]) >= inv,
            std::to_string(mins[n]) + " vs " + inv.get_str());
  }
  ExplicitFamily one(3, {make_set(3, {0})});
  const auto r1 = analysis::is_dyadic_hitter(one);
  rep.add("{{x_1}} misses (0,1/2,1/2) first", !r1.hitter && r1.counterexample && to_string(*r1.counterexample) == "(0,1/2,1/2)",
          r1.counterexample ? to_string(*r1.counterexample) : "none");
  return rep;
}

/// Cone cost equals the Huffman cost exactly, with every question drawn from the cone family.
inline VerifyReport verify_cone(const VerifyOptions& o = {}) {
  VerifyReport rep{"cone", {}};
  const std::size_t max_n = o.max_n ? o.max_n : 64;
  std::mt19937_64 rng(o.seed);
  std::size_t mismatches = 0, out_of_family = 0, brute_mismatches = 0, brute_checked = 0;
  constexpr std::size_t kSamples = 500;
  for (std::size_t i = 0; i < kSamples; ++i) {
    std::uniform_int_distribution<std::size_t> pick_n(2, max_n);
    const auto n = pick_n(rng);
    std::uniform_int_distribution<unsigned> pick_w(0, 40);
    std::vector<Rational> w(n);
    bool any = false;
    for (auto& x : w) {
      x = pick_w(rng);
      any = any || sgn(x) > 0;
    }
    if (!any) w[0] = 1;
    const auto dist = Distribution::normalized(std::move(w));
    const auto tree = cone_optimal_tree(dist);
    const auto opt = huffman(dist).opt_cost;
    mismatches += tree_cost(tree, dist) != opt;
    ConeFamily fam(n);
    out_of_family += !validate_tree(tree, dist, &fam).ok();
    if (dist.support_size() <= 6) {
      ++brute_checked;
      brute_mismatches += brute_force_opt(dist) != opt;
    }
  }
  rep.add("cone cost == huffman cost (exact)", mismatches == 0,
          std::to_string(kSamples) + " distributions, " + std::to_string(mismatches) + " mismatches");
  rep.add("cone questions stay in the cone family", out_of_family == 0, std::to_string(out_of_family) + " invalid trees");
  rep.add("huffman == brute force on small supports", brute_mismatches == 0,
          std::to_string(brute_checked) + " checked, " + std::to_string(brute_mismatches) + " mismatches");
  return rep;
}

inline VerifyReport verify_gt(const VerifyOptions& = {}) {
  VerifyReport rep{"gt", {}};
  const auto g03 = analysis::gt_bound(Rational(3, 10));
  const auto g0294 = analysis::gt_bound(Rational(294, 1000));
  rep.add("gt_bound(0.3) = -0.0312 +- 5e-3", std::abs(g03.value + 0.0312) <= 5e-3, detail::fmt(g03.value));
  rep.add("gt_bound(0.294) = -0.0899 +- 5e-3", std::abs(g0294.value + 0.0899) <= 5e-3, detail::fmt(g0294.value));
  rep.add("series tail below 1e-9 at 64 terms", g03.tail <= 1e-9 && g0294.tail <= 1e-9, detail::fmt(g03.tail));
  constexpr int kPoints = 10000;
  double worst = -1.0;
  for (int i = 0; i < kPoints; ++i) worst = std::max(worst, analysis::f_gap(0.23 + 0.77 * i / (kPoints - 1)));
  rep.add("f(p) <= 1e-12 on a 10^4 grid of [0.23, 1]", worst <= 1e-12, "max " + detail::fmt(worst));
  return rep;
}

inline VerifyReport verify_exponents(const VerifyOptions& = {}) {
  VerifyReport rep{"exponents", {}};
  const auto e = analysis::exponent_calculus();
  rep.add("argmax eps* = 1/5", std::abs(e.eps_star - 0.2) <= 1e-9, detail::fmt(e.eps_star));
  rep.add("2^{h(eps*) - 2 eps*} = 1.25", std::abs(e.eps_value - 1.25) <= 1e-12, detail::fmt(e.eps_value));
  rep.add("beta0 = 0.27052059413118146", std::abs(e.beta0 - 0.27052059413118146) <= 1e-9, detail::fmt(e.beta0));
  rep.add("L(beta0) = 1.23214280723432", std::abs(e.l_beta0 - 1.23214280723432) <= 1e-9, detail::fmt(e.l_beta0));
  rep.add("beta0 minimises L on [1/4, 1/2]", e.l_beta0 <= e.l_grid_min + 1e-12, "grid min " + detail::fmt(e.l_grid_min));
  return rep;
}

inline VerifyReport verify_mrd(const VerifyOptions& o = {}) {
  VerifyReport rep{"mrd", {}};
  const auto mu = analysis::hard_distribution(Rational(1, 5), 2);
  const auto sp = analysis::splitters(mu);
  std::size_t size2 = 0, size8 = 0;
  for (auto m : sp.masks) {
    size2 += __builtin_popcountll(m) == 2;
    size8 += __builtin_popcountll(m) == 8;
  }
  rep.add("hard distribution (eps=1/5, a=2) has n=10", mu.size() == 10, to_string(mu));
  rep.add("splitters: 3 of size 2 and 3 of size 8", sp.size() == 6 && size2 == 3 && size8 == 3,
          std::to_string(sp.size()) + " splitters");
  const auto report = analysis::mrd(sp);
  rep.add("relative density = 1/15", report.max == Rational(1, 15), report.max.get_str());
  const double bound = std::sqrt(10.0) * std::exp2((0.4 - binary_entropy(0.2)) * 10.0);
  rep.add("density below sqrt(n) 2^{(2 eps - h(eps)) n}", to_double(report.max) <= bound, detail::fmt(bound));
  const std::size_t max_n = o.max_n ? o.max_n : 10;
  std::string rhos;
  for (std::size_t n = 2; n <= max_n; ++n) rhos += (n > 2 ? " " : "") + analysis::rho(n).get_str();
  rep.add("rho(2.." + std::to_string(max_n) + ") computed", true, rhos);
  return rep;
}

/// Tail atomicity for all enumerated distributions; antichain structure for full-support ones.
inline VerifyReport verify_tail(const VerifyOptions& o = {}) {
  VerifyReport rep{"tail", {}};
  const std::size_t max_n = o.max_n ? o.max_n : 7;
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::size_t total = 0, with_tail = 0, tail_bad = 0, full = 0, anti_bad = 0;
    auto s = analysis::enumerate_dyadic(n);
    while (s.next()) {
      const auto mu = s.measure();
      const auto sp = analysis::splitters(mu);
      ++total;
      with_tail += analysis::tail(mu).any();
      tail_bad += !analysis::tail_is_atomic(sp);
      const auto& c = s.codes();
      if (std::find(c.begin(), c.end(), s.zero_code()) == c.end()) {
        ++full;
        anti_bad += !analysis::check_splitter_antichain(mu).ok();
      }
    }
    rep.add("splitters contain or miss the tail, n=" + std::to_string(n), tail_bad == 0,
            std::to_string(total) + " distributions, " + std::to_string(with_tail) + " with a tail");
    rep.add("maximal self-complementary antichain, n=" + std::to_string(n), anti_bad == 0,
            std::to_string(full) + " full-support distributions");
  }
  return rep;
}

inline VerifyReport verify_lbfamily(const VerifyOptions& = {}) {
  VerifyReport rep{"lbfamily", {}};
  for (std::size_t n : {5, 6}) {
    const auto r = analysis::prolixity_lb_check(2, n);
    rep.add("k=2 n=" + std::to_string(n) + ": admissible first questions split heavies 2/1, lights together", r.holds,
            std::to_string(r.admissible.size()) + " of " + std::to_string(r.questions) + " admissible");
    rep.add("k=2 n=" + std::to_string(n) + ": huffman == brute force", r.opt_brute && *r.opt_brute == r.opt,
            r.opt.get_str());
  }
  return rep;
}

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"neatsum", "hitter", "cone", "gt", "mrd", "tail", "lbfamily", "exponents"};
  return names;
}

inline VerifyReport run_verify(const std::string& suite, const VerifyOptions& o = {}) {
  if (suite == "neatsum") return verify_neatsum(o);
  if (suite == "hitter") return verify_hitter(o);
  if (suite == "cone") return verify_cone(o);
  if (suite == "gt") return verify_gt(o);
  if (suite == "mrd") return verify_mrd(o);
  if (suite == "tail") return verify_tail(o);
  if (suite == "lbfamily") return verify_lbfamily(o);
  if (suite == "exponents") return verify_exponents(o);
  fail(ErrorCode::PreconditionViolated, "unknown suite '" + suite + "'");
}

}  // namespace quiztree
