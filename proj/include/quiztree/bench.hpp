#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quiztree/io/json.hpp"
#include "quiztree/sampling.hpp"
#include "quiztree/strategies.hpp"

namespace quiztree {

enum class BenchFamily { UniformSimplex, Zipf, DyadicRandom, File };

inline BenchFamily parse_bench_family(const std::string& s) {
  if (s == "uniform-simplex") return BenchFamily::UniformSimplex;
  if (s == "zipf") return BenchFamily::Zipf;
  if (s == "dyadic-random") return BenchFamily::DyadicRandom;
  if (s == "file") return BenchFamily::File;
  fail(ErrorCode::UnknownFamily, "unknown distribution family '" + s + "'");
}

inline std::string to_string(BenchFamily f) {
  switch (f) {
    case BenchFamily::UniformSimplex: return "uniform-simplex";
    case BenchFamily::Zipf: return "zipf";
    case BenchFamily::DyadicRandom: return "dyadic-random";
    case BenchFamily::File: return "file";
  }
  return "unknown";
}

struct BenchConfig {
  StrategySpec strategy;
  std::vector<std::size_t> ns{16};
  BenchFamily family = BenchFamily::UniformSimplex;
  double zipf_s = 1.0;
  std::string file;  // distribution JSON when family == File
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  void validate() const {
    require(samples >= 1, ErrorCode::PreconditionViolated, "samples must be >= 1");
    require(threads >= 1, ErrorCode::PreconditionViolated, "threads must be >= 1");
    require(family == BenchFamily::File || !ns.empty(), ErrorCode::PreconditionViolated, "no n given");
    for (auto n : ns) require(n >= 2, ErrorCode::PreconditionViolated, "bench needs n >= 2");
    require(family != BenchFamily::File || !file.empty(), ErrorCode::IOFailure, "file family needs a path");
  }
};

struct BenchRow {
  std::size_t n = 0;
  std::string strategy;
  std::size_t samples = 0;
  double mean_redundancy = 0.0;  // cost - H
  double max_redundancy = 0.0;
  double mean_prolixity = 0.0;   // cost - Opt
  Rational max_prolixity;        // exact
  BigInt family_size;
};

/// Sample i of size n; the stream depends only on (seed, n, i).
inline Distribution bench_distribution(const BenchConfig& cfg, std::size_t n, std::size_t i,
                                       const std::optional<Distribution>& from_file) {
  std::mt19937_64 rng(derive_seed(derive_seed(cfg.seed, n), i));
  switch (cfg.family) {
    case BenchFamily::UniformSimplex: return sample_uniform_simplex(n, rng);
    case BenchFamily::Zipf: return sample_zipf(n, cfg.zipf_s, rng);
    case BenchFamily::DyadicRandom: return sample_dyadic(n, rng);
    case BenchFamily::File: return *from_file;
  }
  fail(ErrorCode::UnknownFamily, "unknown family");
}

inline std::vector<BenchRow> bench_run(const BenchConfig& cfg) {
  cfg.validate();
  std::optional<Distribution> from_file;
  std::vector<std::size_t> ns = cfg.ns;
  if (cfg.family == BenchFamily::File) {
    from_file = io::parse_distribution(io::read_json_file(cfg.file));
    ns = {from_file->size()};
  }
  std::vector<BenchRow> rows;
  for (auto n : ns) {
    struct Sample {
      double redundancy = 0.0;
      Rational prolixity;
    };
    std::vector<Sample> out(cfg.samples);
    auto work = [&](unsigned tid) {
      for (std::size_t i = tid; i < cfg.samples; i += cfg.threads) {
        const auto dist = bench_distribution(cfg, n, i, from_file);
        StrategySpec spec = cfg.strategy;
        if (spec.kind == StrategyKind::Prolixity) spec.seed = derive_seed(cfg.strategy.seed, i);
        const auto cost = tree_cost(strategy_tree(spec, dist), dist);
        out[i].redundancy = to_double(cost) - entropy(dist);
        out[i].prolixity = cost - huffman(dist).opt_cost;
      }
    };
    if (cfg.threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < cfg.threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    BenchRow row;
    row.n = n;
    row.strategy = cfg.strategy.name();
    row.samples = cfg.samples;
    row.max_redundancy = out.front().redundancy;
    row.max_prolixity = out.front().prolixity;
    for (const auto& s : out) {
      row.mean_redundancy += s.redundancy;
      row.mean_prolixity += to_double(s.prolixity);
      row.max_redundancy = std::max(row.max_redundancy, s.redundancy);
      if (s.prolixity > row.max_prolixity) row.max_prolixity = s.prolixity;
    }
    row.mean_redundancy /= static_cast<double>(cfg.samples);
    row.mean_prolixity /= static_cast<double>(cfg.samples);
    row.family_size = strategy_family_size(cfg.strategy, n);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,strategy,samples,mean_redundancy,max_redundancy,mean_prolixity,max_prolixity,family_size\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.strategy << ',' << r.samples << ',' << fixed(r.mean_redundancy) << ','
        << fixed(r.max_redundancy) << ',' << fixed(r.mean_prolixity) << ',' << r.max_prolixity.get_str() << ','
        << r.family_size.get_str() << '\n';
  return out.str();
}

inline io::json bench_json(const BenchConfig& cfg, const std::vector<BenchRow>& rows) {
  io::json out{{"strategy", strategy_json(cfg.strategy)},
               {"family", to_string(cfg.family)},
               {"seed", cfg.seed},
               {"samples", cfg.samples},
               {"rows", io::json::array()}};
  if (cfg.family == BenchFamily::Zipf) out["zipf_s"] = io::format_double(cfg.zipf_s);
  for (const auto& r : rows)
    out["rows"].push_back({{"n", r.n},
                           {"strategy", r.strategy},
                           {"samples", r.samples},
                           {"mean_redundancy", fixed(r.mean_redundancy)},
                           {"max_redundancy", fixed(r.max_redundancy)},
                           {"mean_prolixity", fixed(r.mean_prolixity)},
                           {"max_prolixity", r.max_prolixity.get_str()},
                           {"family_size", r.family_size.get_str()}});
  return out;
}

}  // namespace quiztree
