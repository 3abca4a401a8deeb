#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include "quiztree/distribution.hpp"
#include "quiztree/huffman.hpp"
#include "quiztree/question.hpp"
#include "quiztree/tree.hpp"

namespace quiztree::io {

using json = nlohmann::json;

/// Shortest round-trip text for a double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  fail(ErrorCode::BadDistribution, "expected a rational string or a number, got " + j.dump());
}

/// Accepts ["1/2", "1/4", ...] or {"weights": [...], "normalize": bool}. Weights must sum to
/// one unless normalize is set.
inline Distribution parse_distribution(const json& j) {
  try {
    const json* arr = &j;
    bool normalize = false;
    if (j.is_object()) {
      require(j.contains("weights"), ErrorCode::BadDistribution, "distribution object needs \"weights\"");
      arr = &j.at("weights");
      normalize = j.value("normalize", false);
    }
    require(arr->is_array() && !arr->empty(), ErrorCode::BadDistribution, "weights must be a nonempty array");
    std::vector<Rational> w;
    for (const auto& x : *arr) w.push_back(rational_from_json(x));
    return normalize ? Distribution::normalized(std::move(w)) : Distribution(std::move(w));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadDistribution) throw;
    fail(ErrorCode::BadDistribution, e.what());
  } catch (const json::exception& e) {
    fail(ErrorCode::BadDistribution, e.what());
  }
}

/// "1/2,1/4,1/4" or whitespace separated.
inline Distribution parse_weight_list(const std::string& text, bool normalize = false) {
  std::string s = text;
  for (auto& c : s)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(s);
  std::vector<Rational> w;
  for (std::string tok; in >> tok;) w.push_back(parse_rational(tok));
  require(!w.empty(), ErrorCode::BadDistribution, "no weights given");
  return normalize ? Distribution::normalized(std::move(w)) : Distribution(std::move(w));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IOFailure, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::IOFailure, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IOFailure, "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), ErrorCode::IOFailure, "write failed for " + path);
}

inline json weights_json(const Distribution& d) {
  json w = json::array();
  for (const auto& x : d.weights()) w.push_back(x.get_str());
  return w;
}

/// Weights plus the server-side gauges: entropy and the optimal expected cost.
inline json distribution_json(const Distribution& d) {
  return json{{"n", d.size()},
              {"weights", weights_json(d)},
              {"entropy", format_double(entropy(d))},
              {"opt", huffman(d).opt_cost.get_str()}};
}

inline json labels_json(const ElementSet& s) {
  json out = json::array();
  for (auto x : elements_of(s)) out.push_back(x.label());
  return out;
}

/// {kind, elements?, render}; elements (one-based, the Yes side) are listed for n <= 64.
inline json question_json(const Question& q) {
  json j{{"kind", to_string(q.kind())}, {"render", q.render()}};
  if (q.ground_size() <= 64) j["elements"] = labels_json(q.resolve());
  if (const auto* e = std::get_if<EqualityQ>(&q.spec())) j["target"] = e->target.label();
  if (const auto* c = std::get_if<ComparisonQ>(&q.spec())) j["pivot"] = c->pivot.label();
  return j;
}

inline Element parse_label(const json& j, std::size_t n) {
  require(j.is_number_integer() || j.is_number_unsigned(), ErrorCode::TreeInvalid, "element labels are integers");
  const auto v = j.get<long long>();
  require(v >= 1 && static_cast<std::size_t>(v) <= n, ErrorCode::TreeInvalid,
          "element label " + std::to_string(v) + " outside 1.." + std::to_string(n));
  return Element::from_label(static_cast<std::size_t>(v));
}

/// Inverse of question_json for the kinds a hand-written tree can use: equality, comparison and
/// explicit sets (any other kind is read back through its element list).
inline Question parse_question(const json& j, std::size_t n) {
  require(j.is_object(), ErrorCode::TreeInvalid, "question must be an object");
  const auto kind = j.value("kind", std::string("explicit"));
  if (kind == "equality") return Question::equality(n, parse_label(j.at("target"), n));
  if (kind == "comparison") return Question::comparison(n, parse_label(j.at("pivot"), n));
  require(j.contains("elements") && j.at("elements").is_array(), ErrorCode::TreeInvalid,
          "question of kind " + kind + " needs an element list");
  ElementSet s(n);
  for (const auto& x : j.at("elements")) s.set(parse_label(x, n).index);
  return Question::explicit_set(std::move(s));
}

/// {"n", "root", "nodes": [{"question", "yes", "no"} | {"leaf"}]}; node ids are array positions.
inline json tree_json(const DecisionTree& t) {
  json nodes = json::array();
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    const auto& nd = t.node(static_cast<DecisionTree::NodeId>(i));
    if (nd.is_leaf()) {
      nodes.push_back({{"leaf", nd.leaf.label()}});
    } else {
      nodes.push_back({{"question", question_json(*nd.question)}, {"yes", nd.yes}, {"no", nd.no}});
    }
  }
  return json{{"n", t.ground_size()}, {"root", t.root()}, {"nodes", nodes}};
}

inline DecisionTree parse_tree(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    require(n >= 1, ErrorCode::TreeInvalid, "tree needs n >= 1");
    const auto& nodes = j.at("nodes");
    require(nodes.is_array() && !nodes.empty(), ErrorCode::TreeInvalid, "tree needs a nonempty node list");
    const auto count = static_cast<long long>(nodes.size());
    auto child = [&](const json& nd, const char* key) {
      const auto v = nd.at(key).get<long long>();
      require(v >= 0 && v < count, ErrorCode::TreeInvalid, std::string(key) + " child out of range");
      return static_cast<DecisionTree::NodeId>(v);
    };
    DecisionTree t(n);
    std::vector<std::pair<DecisionTree::NodeId, DecisionTree::NodeId>> links;
    for (const auto& nd : nodes) {
      if (nd.contains("leaf")) {
        t.add_leaf(parse_label(nd.at("leaf"), n));
        links.emplace_back(DecisionTree::kNone, DecisionTree::kNone);
      } else {
        t.add_internal(parse_question(nd.at("question"), n));
        links.emplace_back(child(nd, "yes"), child(nd, "no"));
      }
    }
    const auto root = j.value("root", 0LL);
    require(root >= 0 && root < count, ErrorCode::TreeInvalid, "root out of range");
    // In-degree at most one and none at the root rules out cycles and shared subtrees.
    std::vector<int> parents(links.size(), 0);
    for (std::size_t i = 0; i < links.size(); ++i) {
      if (links[i].first == DecisionTree::kNone) continue;
      t.set_children(static_cast<DecisionTree::NodeId>(i), links[i].first, links[i].second);
      ++parents[static_cast<std::size_t>(links[i].first)];
      ++parents[static_cast<std::size_t>(links[i].second)];
    }
    for (std::size_t i = 0; i < parents.size(); ++i)
      require(parents[i] <= (static_cast<long long>(i) == root ? 0 : 1), ErrorCode::TreeInvalid,
              "node " + std::to_string(i) + " is not in tree shape");
    t.set_root(static_cast<DecisionTree::NodeId>(root));
    return t;
  } catch (const json::exception& e) {
    fail(ErrorCode::TreeInvalid, e.what());
  }
}

}  // namespace quiztree::io
