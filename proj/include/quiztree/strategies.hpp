#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quiztree/huffman.hpp"
#include "quiztree/io/json.hpp"
#include "quiztree/stepper.hpp"
#include "quiztree/strategy_at.hpp"
#include "quiztree/strategy_cone.hpp"
#include "quiztree/strategy_prolixity.hpp"
#include "quiztree/strategy_vector.hpp"

namespace quiztree {

enum class StrategyKind { Huffman, At, Vector, Cone, Prolixity, Tree };

/// A strategy choice with its parameters, as accepted by the CLI and the service.
struct StrategySpec {
  StrategyKind kind = StrategyKind::Huffman;
  Rational t{3, 10};     // at
  double r = 2.0;        // vector
  int k = 3;             // prolixity
  std::uint64_t seed = 0;
  std::optional<io::json> tree;  // tree

  std::string name() const {
    switch (kind) {
      case StrategyKind::Huffman: return "huffman";
      case StrategyKind::At: return "at";
      case StrategyKind::Vector: return "vector";
      case StrategyKind::Cone: return "cone";
      case StrategyKind::Prolixity: return "prolixity";
      case StrategyKind::Tree: return "tree";
    }
    return "unknown";
  }
};

inline StrategyKind parse_strategy_kind(const std::string& s) {
  if (s == "huffman") return StrategyKind::Huffman;
  if (s == "at") return StrategyKind::At;
  if (s == "vector") return StrategyKind::Vector;
  if (s == "cone") return StrategyKind::Cone;
  if (s == "prolixity") return StrategyKind::Prolixity;
  if (s == "tree") return StrategyKind::Tree;
  fail(ErrorCode::BadStrategy, "unknown strategy '" + s + "'");
}

/// "cone", {"kind": "at", "t": "3/10"} or {"kind": ..., "params": {...}}.
inline StrategySpec parse_strategy(const io::json& j) {
  try {
    StrategySpec s;
    if (j.is_string()) {
      s.kind = parse_strategy_kind(j.get<std::string>());
      return s;
    }
    require(j.is_object() && j.contains("kind"), ErrorCode::BadStrategy, "strategy needs a kind");
    s.kind = parse_strategy_kind(j.at("kind").get<std::string>());
    const io::json& p = j.contains("params") ? j.at("params") : j;
    if (p.contains("t")) s.t = io::rational_from_json(p.at("t"));
    if (p.contains("r")) s.r = p.at("r").is_string() ? to_double(parse_rational(p.at("r").get<std::string>())) : p.at("r").get<double>();
    if (p.contains("k")) s.k = p.at("k").get<int>();
    if (p.contains("seed")) s.seed = p.at("seed").get<std::uint64_t>();
    if (p.contains("tree")) s.tree = p.at("tree");
    // validate eagerly so bad parameters surface before a session exists
    if (s.kind == StrategyKind::At) AtParams{s.t};
    if (s.kind == StrategyKind::Vector) vector_length(s.r);
    if (s.kind == StrategyKind::Prolixity) ProlixityParams(s.k, s.seed);
    require(s.kind != StrategyKind::Tree || s.tree.has_value(), ErrorCode::BadStrategy, "tree strategy needs a tree");
    return s;
  } catch (const io::json::exception& e) {
    fail(ErrorCode::BadStrategy, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadStrategy) throw;
    fail(ErrorCode::BadStrategy, e.what());
  }
}

inline io::json strategy_json(const StrategySpec& s) {
  io::json j{{"kind", s.name()}};
  switch (s.kind) {
    case StrategyKind::At: j["t"] = s.t.get_str(); break;
    case StrategyKind::Vector: j["r"] = io::format_double(s.r); break;
    case StrategyKind::Prolixity:
      j["k"] = s.k;
      j["seed"] = s.seed;
      break;
    default: break;
  }
  return j;
}

/// The question family a strategy draws from, when it has a fixed one.
inline std::unique_ptr<QuestionFamily> strategy_family(const StrategySpec& s, std::size_t n) {
  switch (s.kind) {
    case StrategyKind::At: return std::make_unique<ComparisonEqualityFamily>(n);
    case StrategyKind::Vector: return std::make_unique<VectorFamily>(n, vector_length(s.r));
    case StrategyKind::Cone: return std::make_unique<ConeFamily>(n);
    case StrategyKind::Prolixity: return std::make_unique<CyclicFamily>(n, s.k);
    default: return nullptr;
  }
}

/// Number of questions available to the strategy on X_n (all 2^{n-1}-1 partitions if unrestricted).
inline BigInt strategy_family_size(const StrategySpec& s, std::size_t n) {
  if (auto f = strategy_family(s, n)) return f->cardinality();
  BigInt all;
  mpz_ui_pow_ui(all.get_mpz_t(), 2, n - 1);
  return all - 1;
}

inline DecisionTree parsed_tree_for(const StrategySpec& s, const Distribution& dist) {
  auto tree = io::parse_tree(*s.tree);
  require(tree.ground_size() == dist.size(), ErrorCode::BadStrategy, "tree and distribution differ in n");
  const auto rep = validate_tree(tree, dist);
  if (!rep.ok())
    fail(ErrorCode::BadStrategy, "tree is not valid for the distribution: " + to_string(rep.violations.front().kind) +
                                     " " + rep.violations.front().detail);
  return tree;
}

/// Full decision tree of a strategy (for prolixity: the tree of one seed).
inline DecisionTree strategy_tree(const StrategySpec& s, const Distribution& dist) {
  switch (s.kind) {
    case StrategyKind::Huffman: return huffman(dist).tree;
    case StrategyKind::At: return build_at_tree(dist, AtParams{s.t});
    case StrategyKind::Vector: return build_vector_tree(dist, s.r);
    case StrategyKind::Cone: return cone_optimal_tree(dist);
    case StrategyKind::Prolixity: return build_tr_tree(dist, ProlixityParams(s.k, s.seed));
    case StrategyKind::Tree: return parsed_tree_for(s, dist);
  }
  fail(ErrorCode::BadStrategy, "unknown strategy");
}

/// Online form used by sessions. Cone and prolixity compute each question on demand.
inline std::unique_ptr<Stepper> make_stepper(const StrategySpec& s, const Distribution& dist) {
  switch (s.kind) {
    case StrategyKind::Cone: return std::make_unique<ConeStepper>(dist);
    case StrategyKind::Prolixity: return std::make_unique<TrStepper>(dist, ProlixityParams(s.k, s.seed));
    default: return std::make_unique<TreeStepper>(strategy_tree(s, dist), dist);
  }
}

inline io::json strategy_catalog() {
  using io::json;
  return json::array({
      json{{"kind", "huffman"}, {"params", json::object()}, {"description", "optimal tree, unrestricted questions"}},
      json{{"kind", "at"},
           {"params", json{{"t", "3/10"}}},
           {"description", "comparison and equality questions, threshold t"}},
      json{{"kind", "vector"}, {"params", json{{"r", "2"}}}, {"description", "entry-wise questions on a length-floor(r) encoding"}},
      json{{"kind", "cone"}, {"params", json::object()}, {"description", "optimal cost using subsets and supersets of a fixed half"}},
      json{{"kind", "prolixity"},
           {"params", json{{"k", 3}, {"seed", 0}}},
           {"description", "randomised, cost within Opt + r + r^2 in expectation, r = 4/2^k"}},
      json{{"kind", "tree"}, {"params", json{{"tree", "decision tree JSON"}}}, {"description", "replays a supplied tree"}},
  });
}

}  // namespace quiztree
