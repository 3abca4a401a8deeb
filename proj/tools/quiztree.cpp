#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include "quiztree/bench.hpp"
#include "quiztree/http_service.hpp"
#include "quiztree/quiztree.hpp"

using namespace quiztree;
using io::json;

namespace {

struct DistArgs {
  std::string weights;
  std::string file;
  bool normalize = false;

  void attach(CLI::App* app) {
    app->add_option("-w,--weights", weights, "weights, e.g. \"1/2,1/4,1/4\"");
    app->add_option("-f,--file", file, "distribution JSON file");
    app->add_flag("--normalize", normalize, "rescale the weights to sum to one");
  }

  Distribution load() const {
    require(weights.empty() != file.empty(), ErrorCode::BadDistribution, "give exactly one of --weights and --file");
    if (!weights.empty()) return io::parse_weight_list(weights, normalize);
    auto j = io::read_json_file(file);
    if (normalize && j.is_array()) j = json{{"weights", j}, {"normalize", true}};
    return io::parse_distribution(j);
  }
};

struct StrategyArgs {
  std::string kind = "huffman";
  std::string t = "3/10";
  double r = 2.0;
  int k = 3;
  std::uint64_t seed = 0;
  std::string tree_file;

  void attach(CLI::App* app, const char* flag = "-s,--strategy") {
    app->add_option(flag, kind, "huffman | at | vector | cone | prolixity | tree")->capture_default_str();
    app->add_option("--t", t, "threshold for at")->capture_default_str();
    app->add_option("--r", r, "redundancy budget for vector")->capture_default_str();
    app->add_option("--k", k, "prolixity parameter, r = 4/2^k")->capture_default_str();
    app->add_option("--seed", seed, "seed for prolixity")->capture_default_str();
    app->add_option("--tree", tree_file, "decision tree JSON for the tree strategy");
  }

  StrategySpec spec() const {
    json j{{"kind", kind}, {"t", t}, {"r", r}, {"k", k}, {"seed", seed}};
    if (!tree_file.empty()) j["tree"] = io::read_json_file(tree_file);
    return parse_strategy(j);
  }
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::string s = text;
  for (auto& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  for (std::size_t n; in >> n;) out.push_back(n);
  require(in.eof(), ErrorCode::PreconditionViolated, "bad size list '" + text + "'");
  return out;
}

int cmd_huffman(const DistArgs& d, bool as_json) {
  const auto dist = d.load();
  const auto h = huffman(dist);
  if (as_json) {
    json depths = json::array();
    for (auto dep : h.tree.depths()) depths.push_back(dep ? json(*dep) : json(nullptr));
    std::cout << json{{"distribution", io::distribution_json(dist)}, {"opt", h.opt_cost.get_str()},
                      {"depths", depths}, {"tree", io::tree_json(h.tree)}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << "n        " << dist.size() << "\nentropy  " << io::format_double(entropy(dist)) << "\nopt      "
            << h.opt_cost.get_str() << " (" << io::format_double(to_double(h.opt_cost)) << ")\n";
  const auto depths = h.tree.depths();
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (depths[i]) std::cout << "  " << to_string(Element{i}) << "  p=" << dist[i].get_str() << "  depth " << *depths[i] << '\n';
  return 0;
}

int cmd_strategy(const DistArgs& d, const StrategyArgs& sa, std::size_t trials, bool as_json) {
  const auto dist = d.load();
  const auto spec = sa.spec();
  const auto tree = strategy_tree(spec, dist);
  const auto cost = tree_cost(tree, dist);
  const auto opt = huffman(dist).opt_cost;
  const double h = entropy(dist);
  auto family = strategy_family(spec, dist.size());
  const auto report = validate_tree(tree, dist, family.get());
  json out{{"strategy", strategy_json(spec)},
           {"distribution", io::distribution_json(dist)},
           {"cost", cost.get_str()},
           {"redundancy", io::format_double(to_double(cost) - h)},
           {"prolixity", Rational(cost - opt).get_str()},
           {"family", family ? family->name() : "all"},
           {"family_size", strategy_family_size(spec, dist.size()).get_str()},
           {"valid", report.ok()}};
  if (spec.kind == StrategyKind::Prolixity && trials > 0) {
    const auto est = estimate_expected_cost(dist, ProlixityParams(spec.k, spec.seed), trials);
    out["expected_cost"] = {{"trials", trials},
                            {"mean", io::format_double(est.mean_cost)},
                            {"stderr", io::format_double(est.stderr_cost)},
                            {"bound", io::format_double(est.opt + est.r + est.r * est.r)}};
  }
  if (as_json) {
    out["tree"] = io::tree_json(tree);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "strategy    " << spec.name() << "\ncost        " << cost.get_str() << " ("
              << io::format_double(to_double(cost)) << ")\nentropy     " << io::format_double(h) << "\nopt         "
              << opt.get_str() << "\nredundancy  " << out["redundancy"].get<std::string>() << "\nprolixity   "
              << out["prolixity"].get<std::string>() << "\nfamily      " << out["family"].get<std::string>() << " ("
              << out["family_size"].get<std::string>() << " questions)\nvalid       " << (report.ok() ? "yes" : "no")
              << '\n';
    if (out.contains("expected_cost"))
      std::cout << "E[cost]     " << out["expected_cost"]["mean"].get<std::string>() << " +- "
                << out["expected_cost"]["stderr"].get<std::string>() << "  (bound Opt + r + r^2 = "
                << out["expected_cost"]["bound"].get<std::string>() << ")\n";
    for (const auto& v : report.violations) std::cout << "  violation: " << to_string(v.kind) << " " << v.detail << '\n';
  }
  return report.ok() ? 0 : 1;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opts, bool as_json) {
  std::vector<std::string> suites = suite == "all" ? verify_suites() : std::vector<std::string>{suite};
  bool ok = true;
  json all = json::array();
  for (const auto& s : suites) {
    const auto rep = run_verify(s, opts);
    ok = ok && rep.ok();
    if (as_json) {
      all.push_back(rep.to_json());
    } else {
      std::cout << rep.to_text();
    }
  }
  if (as_json) std::cout << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_play(const DistArgs& d, const StrategyArgs& sa, std::size_t secret) {
  SessionStore store;
  const auto dist = d.load();
  auto session = store.create(dist, sa.spec());
  std::cout << "n = " << dist.size() << ", H = " << io::format_double(entropy(dist))
            << ", Opt = " << huffman(dist).opt_cost.get_str() << '\n';
  if (secret) std::cout << "answering honestly for x_" << secret << '\n';
  json p = session->progress();
  while (p["status"] == "awaiting-answer") {
    std::cout << "[" << p["asked"].get<std::size_t>() + 1 << "] " << p["question"]["render"].get<std::string>() << " ";
    bool yes = false;
    if (secret) {
      const auto& elems = p["question"]["elements"];
      yes = std::find(elems.begin(), elems.end(), json(secret)) != elems.end();
      std::cout << (yes ? "y" : "n") << '\n';
    } else {
      std::string line;
      if (!std::getline(std::cin, line) || line == "q") return 0;
      if (line != "y" && line != "n") {
        std::cout << "answer y, n or q\n";
        continue;
      }
      yes = line == "y";
    }
    try {
      p = session->answer(yes);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InconsistentAnswers) throw;
      std::cout << "inconsistent: " << e.what() << '\n';
      if (secret) return 1;
    }
  }
  std::cout << "it is " << p["result"]["render"].get<std::string>() << " after " << p["asked"].get<std::size_t>()
            << " questions\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quiztree: question strategies for the twenty questions game"};
  app.require_subcommand(1);

  bool as_json = false;

  auto* huff = app.add_subcommand("huffman", "optimal tree and cost");
  DistArgs huff_d;
  huff_d.attach(huff);
  huff->add_flag("--json", as_json);

  auto* strat = app.add_subcommand("strategy", "build a strategy tree and report cost, redundancy and prolixity");
  DistArgs strat_d;
  StrategyArgs strat_s;
  std::size_t trials = 0;
  strat_d.attach(strat);
  strat_s.attach(strat, "-s,--strategy,--kind");
  strat->add_option("--trials", trials, "Monte Carlo trials for the expected prolixity cost");
  strat->add_flag("--json", as_json);

  auto* bench = app.add_subcommand("bench", "sampled benchmark, CSV and JSON report");
  StrategyArgs bench_s;
  std::string sizes = "16", family = "uniform-simplex", csv_path, json_path, file;
  BenchConfig cfg;
  bench_s.attach(bench);
  bench->add_option("--n", sizes, "comma separated sizes")->capture_default_str();
  bench->add_option("--family", family, "uniform-simplex | zipf | dyadic-random | file")->capture_default_str();
  bench->add_option("--zipf-s", cfg.zipf_s, "zipf exponent")->capture_default_str();
  bench->add_option("--file", file, "distribution JSON for --family file");
  bench->add_option("--samples", cfg.samples)->capture_default_str();
  bench->add_option("--bench-seed", cfg.seed, "root seed for sampling")->capture_default_str();
  bench->add_option("--threads", cfg.threads)->capture_default_str();
  bench->add_option("--csv", csv_path, "write CSV here instead of stdout");
  bench->add_option("--json-out", json_path, "also write a JSON report");

  auto* verify = app.add_subcommand("verify", "exhaustive and numeric checks");
  std::string suite = "all";
  VerifyOptions vopts;
  verify->add_option("--suite", suite, "neatsum | hitter | cone | gt | mrd | tail | lbfamily | exponents | all")
      ->capture_default_str();
  verify->add_option("--max-n", vopts.max_n, "override the suite's largest n");
  verify->add_option("--seed", vopts.seed)->capture_default_str();
  verify->add_flag("--json", as_json);

  auto* play = app.add_subcommand("play", "answer a strategy's questions in the terminal");
  DistArgs play_d;
  StrategyArgs play_s;
  std::size_t secret = 0;
  play_d.attach(play);
  play_s.attach(play);
  play->add_option("--secret", secret, "answer automatically for this element (1-based)");

  auto* serve = app.add_subcommand("serve", "HTTP session service");
  int port = 8080;
  std::string host = "127.0.0.1";
  ServiceOptions sopts;
  long ttl = 3600;
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--allow-origin", sopts.allow_origin)->capture_default_str();
  serve->add_option("--ttl", ttl, "idle session lifetime in seconds")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*huff) return cmd_huffman(huff_d, as_json);
    if (*strat) return cmd_strategy(strat_d, strat_s, trials, as_json);
    if (*bench) {
      cfg.strategy = bench_s.spec();
      cfg.family = parse_bench_family(family);
      cfg.file = file;
      if (cfg.family != BenchFamily::File) cfg.ns = parse_sizes(sizes);
      const auto rows = bench_run(cfg);
      const auto csv = bench_csv(rows);
      if (csv_path.empty()) {
        std::cout << csv;
      } else {
        io::write_text_file(csv_path, csv);
      }
      if (!json_path.empty()) io::write_text_file(json_path, bench_json(cfg, rows).dump(2) + "\n");
      return 0;
    }
    if (*verify) return cmd_verify(suite, vopts, as_json);
    if (*play) return cmd_play(play_d, play_s, secret);
    if (*serve) {
      sopts.ttl = std::chrono::seconds(ttl);
      HttpService service(sopts);
      std::cerr << "listening on http://" << host << ":" << port << '\n';
      if (!service.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << '\n';
        return 2;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
