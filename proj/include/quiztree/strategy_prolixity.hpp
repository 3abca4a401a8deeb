#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quiztree/family.hpp"
#include "quiztree/huffman.hpp"
#include "quiztree/sampling.hpp"
#include "quiztree/stepper.hpp"

namespace quiztree {

struct ProlixityParams {
  int k = 3;
  std::uint64_t seed = 0;

  ProlixityParams() = default;
  ProlixityParams(int k_, std::uint64_t seed_) : k(k_), seed(seed_) {
    require(k >= 3 && k <= 20, ErrorCode::PreconditionViolated, "prolixity strategy needs 3 <= k <= 20");
  }

  /// r = 4 / 2^k
  Rational r() const { return pow2_neg(k - 2); }
  /// At most 2^k elements may be added to or removed from an interval.
  std::size_t budget() const { return std::size_t{1} << k; }
};

struct FamilySizeBound {
  BigInt count;    // n^2 C(n, 2^k) 3^{2^k}
  double log2_count;
  double log2_rhs;  // log2 of n^2 ((3e/4) r n)^{4/r}
  bool holds;
};

inline FamilySizeBound prolixity_family_size_bound(std::size_t n, int k) {
  require(k >= 1 && k < 31, ErrorCode::PreconditionViolated, "k out of range");
  const unsigned long d = 1UL << k;
  require(n > d, ErrorCode::PreconditionViolated, "family size bound needs n > 2^k");
  BigInt binom, pow3;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), d);
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, d);
  FamilySizeBound out;
  out.count = BigInt(static_cast<unsigned long>(n)) * BigInt(static_cast<unsigned long>(n)) * binom * pow3;
  out.log2_count = log2_of(Rational(out.count));
  const double r = 4.0 / static_cast<double>(d);
  const double nd = static_cast<double>(n);
  out.log2_rhs = 2.0 * std::log2(nd) + (4.0 / r) * std::log2(3.0 * std::exp(1.0) / 4.0 * r * nd);
  out.holds = out.log2_count <= out.log2_rhs + 1e-9;
  return out;
}

/// Smallest |s symmetric-difference I| over cyclic intervals I of X_n (including the empty and full ones).
inline std::size_t cyclic_distance(const ElementSet& s) {
  const std::size_t n = s.size();
  const std::size_t size = s.count();
  std::size_t best = std::min(size, n - size);  // empty or full interval
  for (std::size_t start = 0; start < n; ++start) {
    // mismatches = |s \ I| + |I \ s|, updated as I grows
    std::size_t inside_s = 0;
    for (std::size_t len = 1; len < n; ++len) {
      const std::size_t x = (start + len - 1) % n;
      inside_s += s.test(x);
      const std::size_t mism = (size - inside_s) + (len - inside_s);
      best = std::min(best, mism);
    }
  }
  return best;
}

/// True iff q resolves to a cyclic interval of X_n adjusted by at most 2^k elements.
inline bool certify_question(const CyclicQ& q, std::size_t n, int k) {
  const std::size_t budget = std::size_t{1} << k;
  if (q.added.size() + q.removed.size() <= budget) return true;
  return cyclic_distance(Question(n, q).resolve()) <= budget;
}

/// Cyclic intervals with up to 2^k elements added or removed.
class CyclicFamily final : public QuestionFamily {
 public:
  CyclicFamily(std::size_t n, int k) : n_(n), k_(k) {
    require(n >= 2 && k >= 1 && k < 31, ErrorCode::PreconditionViolated, "bad cyclic family parameters");
  }

  std::size_t ground_size() const override { return n_; }
  std::string name() const override { return "cyclic(k=" + std::to_string(k_) + ")"; }
  /// The counting bound n^2 C(n, 2^k) 3^{2^k} when n > 2^k.
  BigInt cardinality() const override {
    if (n_ > (std::size_t{1} << k_)) return prolixity_family_size_bound(n_, k_).count;
    BigInt all;
    mpz_ui_pow_ui(all.get_mpz_t(), 2, n_ - 1);
    return all;
  }
  bool contains_set(const ElementSet& s) const override {
    if (s.size() != n_) return false;
    return cyclic_distance(s) <= (std::size_t{1} << k_);
  }
  bool contains(const Question& q) const override {
    if (q.ground_size() != n_) return false;
    if (const auto* c = std::get_if<CyclicQ>(&q.spec())) return certify_question(*c, n_, k_);
    return contains_set(q.resolve());
  }
  std::vector<ElementSet> enumerate() const override {
    require(n_ <= 20, ErrorCode::TooLarge, "cyclic family enumeration capped at n = 20");
    std::vector<ElementSet> out;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << (n_ - 1)); ++m) {
      auto s = from_mask(n_, m);
      if (contains_set(s)) out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::size_t n_;
  int k_;
};

/// One update of the maintained sub-distribution (masses in units of 2^{-E}).
struct TrEvent {
  int step;      // 2, 3 or 4
  bool asked;    // false when the question would not split the candidates
  bool answer;   // branch taken
  const std::vector<BigInt>* before;
  const std::vector<BigInt>* after;
  const BigInt* unit_total;             // 2^E, the unit of mass 1
  std::vector<std::size_t> boundary;    // step 4 only
};

using TrObserver = std::function<void(const TrEvent&)>;

/// The randomized cyclic-interval strategy, run online. Randomness for each step is derived from
/// the seed and the answers so far, so one seed fixes one decision tree.
class TrStepper final : public Stepper {
 public:
  TrStepper(const Distribution& dist, ProlixityParams params, TrObserver observer = nullptr)
      : n_(dist.size()), params_(params), observer_(std::move(observer)) {
    const auto mu = huffman(dist).dyadic;
    int e_max = 0;
    for (const auto& e : mu.exponents())
      if (e) e_max = std::max(e_max, *e);
    long log_n = 0;
    while ((std::size_t{1} << log_n) < n_) ++log_n;
    exponent_ = e_max + 1 + 2 * params_.k + static_cast<int>(log_n);
    mpz_ui_pow_ui(unit_total_.get_mpz_t(), 2, static_cast<unsigned long>(exponent_));
    mpz_ui_pow_ui(heavy_.get_mpz_t(), 2, static_cast<unsigned long>(exponent_ - params_.k));
    units_.assign(n_, BigInt(0));
    for (std::size_t i = 0; i < n_; ++i)
      if (const auto& e = mu.exponent(i)) mpz_ui_pow_ui(units_[i].get_mpz_t(), 2, static_cast<unsigned long>(exponent_ - *e));
    path_ = splitmix64(params_.seed);
    advance();
  }

  std::optional<Question> question() const override { return pending_; }

  std::optional<Element> result() const override {
    if (pending_) return std::nullopt;
    for (std::size_t i = 0; i < n_; ++i)
      if (sgn(units_[i]) > 0) return Element{i};
    return std::nullopt;
  }

  void answer(bool yes) override {
    require(pending_.has_value(), ErrorCode::WrongState, "strategy already finished");
    apply(pending_step_, true, yes, yes ? yes_units_ : no_units_, boundary_);
    path_ = splitmix64(path_ ^ (yes ? 0x1ULL : 0x2ULL));
    ++asked_;
    advance();
  }

  /// Current sub-distribution as exact rationals.
  Rational mass(Element x) const { return Rational(units_.at(x.index), unit_total_); }
  const std::vector<BigInt>& units() const { return units_; }
  const BigInt& unit_total() const { return unit_total_; }

 private:
  void apply(int step, bool asked, bool ans, std::vector<BigInt> next, const std::vector<std::size_t>& boundary) {
    if (observer_) {
      TrEvent ev{step, asked, ans, &units_, &next, &unit_total_, boundary};
      observer_(ev);
    }
    units_ = std::move(next);
  }

  // Builds the next splitting question, applying non-splitting steps on the way.
  void advance() {
    pending_.reset();
    for (;;) {
      std::vector<std::size_t> heavy, light;
      BigInt heavy_mass(0), light_mass(0);
      for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(units_[i]) == 0) continue;
        if (units_[i] >= heavy_) {
          heavy.push_back(i);
          heavy_mass += units_[i];
        } else {
          light.push_back(i);
          light_mass += units_[i];
        }
      }
      if (heavy.size() + light.size() <= 1) return;
      boundary_.clear();
      yes_units_.assign(n_, BigInt(0));
      no_units_.assign(n_, BigInt(0));
      std::vector<bool> in_q(n_, false);
      if (2 * heavy_mass >= unit_total_) {
        pending_step_ = 2;
        step_heavy(heavy, in_q);
      } else if (2 * light_mass <= unit_total_) {
        pending_step_ = 3;
        for (auto i : light) in_q[i] = true;
        CyclicQ q{0, n_, {}, heavy};
        pending_.emplace(n_, std::move(q));
        for (auto i : light) yes_units_[i] = 2 * units_[i];
        for (auto i : heavy) no_units_[i] = 2 * units_[i];
      } else {
        pending_step_ = 4;
        step_window(heavy, light, light_mass, in_q);
      }
      bool any_yes = false, any_no = false;
      for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(units_[i]) == 0) continue;
        (in_q[i] ? any_yes : any_no) = true;
      }
      if (any_yes && any_no) return;
      // Everything left is on one side: take that branch without asking.
      pending_.reset();
      apply(pending_step_, false, any_yes, any_yes ? yes_units_ : no_units_, boundary_);
      path_ = splitmix64(path_ ^ 0x3ULL);
    }
  }

  void step_heavy(std::vector<std::size_t> heavy, std::vector<bool>& in_q) {
    std::stable_sort(heavy.begin(), heavy.end(), [&](std::size_t a, std::size_t b) { return units_[a] > units_[b]; });
    BigInt sum(0);
    std::vector<std::size_t> chosen;
    for (auto i : heavy) {
      sum += units_[i];
      chosen.push_back(i);
      if (2 * sum >= unit_total_) break;
    }
    require(2 * sum == unit_total_, ErrorCode::PreconditionViolated, "no heavy subset of mass 1/2");
    std::sort(chosen.begin(), chosen.end());
    for (auto i : chosen) in_q[i] = true;
    CyclicQ q{chosen.front(), 1, std::vector<std::size_t>(chosen.begin() + 1, chosen.end()), {}};
    pending_.emplace(n_, std::move(q));
    for (std::size_t i = 0; i < n_; ++i) {
      if (sgn(units_[i]) == 0) continue;
      (in_q[i] ? yes_units_ : no_units_)[i] = 2 * units_[i];
    }
  }

  BigInt uniform_below(const BigInt& bound) {
    std::mt19937_64 gen(splitmix64(path_ ^ 0x9e3779b97f4a7c15ULL));
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    for (;;) {
      BigInt v(0);
      std::size_t have = 0;
      while (have < bits) {
        const std::size_t take = std::min<std::size_t>(64, bits - have);
        std::uint64_t word = gen();
        if (take < 64) word &= (std::uint64_t{1} << take) - 1;
        BigInt w;
        mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
        v = (v << static_cast<mp_bitcnt_t>(take)) + w;
        have += take;
      }
      if (v < bound) return v;
    }
  }

  void step_window(const std::vector<std::size_t>& heavy, const std::vector<std::size_t>& light, const BigInt& sigma,
                   std::vector<bool>& in_q) {
    const std::size_t m = light.size();
    std::vector<BigInt> start(m), mid(m);
    BigInt pos(0);
    for (std::size_t j = 0; j < m; ++j) {
      start[j] = pos;
      mid[j] = pos + units_[light[j]] / 2;
      pos += units_[light[j]];
    }
    const BigInt p = uniform_below(sigma);
    const BigInt half = unit_total_ / 2;
    BigInt q_end = p + half;
    if (q_end >= sigma) q_end -= sigma;
    auto in_window = [&](const BigInt& x) {
      BigInt off = x - p;
      if (sgn(off) < 0) off += sigma;
      return off < half;
    };
    auto cuts = [&](std::size_t j, const BigInt& point) { return start[j] < point && point < start[j] + units_[light[j]]; };
    std::vector<bool> in_k(m, false), in_b(m, false);
    for (std::size_t j = 0; j < m; ++j) {
      in_k[j] = in_window(mid[j]);
      in_b[j] = cuts(j, p) || cuts(j, q_end);
      if (in_b[j]) boundary_.push_back(light[j]);
    }
    for (std::size_t j = 0; j < m; ++j) {
      const auto i = light[j];
      in_q[i] = in_k[j];
      auto& target = in_k[j] ? yes_units_ : no_units_;
      target[i] = in_b[j] ? units_[i] : BigInt(2 * units_[i]);
    }
    for (auto i : heavy) no_units_[i] = 2 * units_[i];

    // K is a cyclic run of lights; express it as the X_n interval from its first to its last
    // member, minus the heavy candidates inside.
    std::size_t first = m, last = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (!in_k[j]) continue;
      const auto prev = (j + m - 1) % m;
      if (!in_k[prev] || m == 1) first = j;
      const auto next = (j + 1) % m;
      if (!in_k[next] || m == 1) last = j;
    }
    if (first == m) {  // K empty or all lights
      if (m > 0 && in_k[0]) {
        first = 0;
        last = m - 1;
      } else {
        pending_.emplace(n_, CyclicQ{0, 0, {}, {}});
        return;
      }
    }
    const std::size_t s = light[first];
    const std::size_t e = light[last];
    const std::size_t length = (e + n_ - s) % n_ + 1;
    std::vector<std::size_t> removed;
    for (auto i : heavy)
      if (cyclic_interval_contains(s, length, i, n_)) removed.push_back(i);
    pending_.emplace(n_, CyclicQ{s, length, {}, std::move(removed)});
  }

  std::size_t n_;
  ProlixityParams params_;
  TrObserver observer_;
  int exponent_ = 0;
  BigInt unit_total_;
  BigInt heavy_;
  std::vector<BigInt> units_;
  std::uint64_t path_ = 0;

  std::optional<Question> pending_;
  int pending_step_ = 0;
  std::vector<BigInt> yes_units_, no_units_;
  std::vector<std::size_t> boundary_;
};

/// One run against a known secret.
inline Transcript run_tr(const Distribution& dist, const ProlixityParams& params, Element secret,
                         TrObserver observer = nullptr) {
  require(secret.index < dist.size() && sgn(dist[secret.index]) > 0, ErrorCode::SecretNotInTree,
          to_string(secret) + " is outside the support");
  TrStepper s(dist, params, std::move(observer));
  Transcript t{secret, {}};
  while (auto q = s.question()) {
    const bool ans = q->contains(secret);
    t.steps.push_back({*q, ans});
    s.answer(ans);
  }
  require(*s.result() == secret, ErrorCode::InconsistentAnswers, "run ended away from the secret");
  return t;
}

/// The whole decision tree defined by one seed.
inline DecisionTree build_tr_tree(const Distribution& dist, const ProlixityParams& params,
                                  TrObserver observer = nullptr) {
  const std::size_t n = dist.size();
  DecisionTree tree(n);
  struct Work {
    TrStepper state;
    DecisionTree::NodeId parent;
    bool yes_side;
  };
  std::vector<std::pair<DecisionTree::NodeId, DecisionTree::NodeId>> children;
  auto attach = [&](const Work& w, DecisionTree::NodeId id) {
    children.resize(static_cast<std::size_t>(id) + 1, {DecisionTree::kNone, DecisionTree::kNone});
    if (w.parent == DecisionTree::kNone) {
      tree.set_root(id);
      return;
    }
    auto& ch = children[static_cast<std::size_t>(w.parent)];
    (w.yes_side ? ch.first : ch.second) = id;
    tree.set_children(w.parent, ch.first, ch.second);
  };
  std::vector<Work> stack;
  stack.push_back({TrStepper(dist, params, observer), DecisionTree::kNone, false});
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    auto q = w.state.question();
    if (!q) {
      attach(w, tree.add_leaf(*w.state.result()));
      continue;
    }
    auto id = tree.add_internal(*q);
    attach(w, id);
    TrStepper yes = w.state;
    yes.answer(true);
    w.state.answer(false);
    stack.push_back({std::move(w.state), id, false});
    stack.push_back({std::move(yes), id, true});
  }
  return tree;
}

struct ElementCostEstimate {
  Element element;
  double mean_depth = 0.0;
  double stderr_depth = 0.0;
  double bound = 0.0;  // log2(1/mu(x)) + r + r^2
};

struct CostEstimate {
  std::vector<ElementCostEstimate> elements;  // support elements only
  double mean_cost = 0.0;                     // pi-weighted
  double stderr_cost = 0.0;
  double opt = 0.0;
  double r = 0.0;
};

/// Monte Carlo over seeds derived from params.seed: one tree per trial.
inline CostEstimate estimate_expected_cost(const Distribution& dist, const ProlixityParams& params, std::size_t trials,
                                           TrObserver observer = nullptr,
                                           const std::function<void(const DecisionTree&)>& on_tree = nullptr) {
  require(trials >= 1, ErrorCode::PreconditionViolated, "need at least one trial");
  const auto h = huffman(dist);
  const auto support = dist.support();
  std::vector<double> sum(support.size(), 0.0), sum_sq(support.size(), 0.0);
  double cost_sum = 0.0, cost_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    ProlixityParams p = params;
    p.seed = derive_seed(params.seed, t);
    const auto tree = build_tr_tree(dist, p, observer);
    if (on_tree) on_tree(tree);
    const auto depth = tree.depths();
    double cost = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      const double d = static_cast<double>(*depth[support[j].index]);
      sum[j] += d;
      sum_sq[j] += d * d;
      cost += to_double(dist.weight(support[j])) * d;
    }
    cost_sum += cost;
    cost_sq += cost * cost;
  }
  const double nt = static_cast<double>(trials);
  auto stderr_of = [&](double s, double sq) {
    if (trials < 2) return 0.0;
    const double mean = s / nt;
    const double var = std::max(0.0, (sq - nt * mean * mean) / (nt - 1.0));
    return std::sqrt(var / nt);
  };
  CostEstimate out;
  out.r = to_double(params.r());
  out.opt = to_double(h.opt_cost);
  for (std::size_t j = 0; j < support.size(); ++j) {
    const auto e = *h.dyadic.exponent(support[j].index);
    out.elements.push_back({support[j], sum[j] / nt, stderr_of(sum[j], sum_sq[j]),
                            static_cast<double>(e) + out.r + out.r * out.r});
  }
  out.mean_cost = cost_sum / nt;
  out.stderr_cost = stderr_of(cost_sum, cost_sq);
  return out;
}

}  // namespace quiztree
