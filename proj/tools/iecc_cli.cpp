// Command-line front end: parameter reports, experiment runs, budget
// sweeps, transcript audits, code property audits, and the adversarial
// attack search. Exit code 0 iff every asserted gate passed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "iecc/harness.hpp"
#include "iecc/oracle.hpp"
#include "iecc/protocol.hpp"

using namespace iecc;
using nlohmann::json;

namespace {

json parse_strategy_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return json::parse(arg);
  json spec{{"kind", arg}};
  return spec;
}

std::vector<Frac> parse_fraction_list(const std::string& arg) {
  std::vector<Frac> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Frac::parse(item));
  return out;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
}

BitVector random_input(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitVector x(n);
  for (std::int64_t i = 0; i < n; ++i) x.set(i, rng() & 1);
  return x;
}

struct CommonOpts {
  std::int64_t n = 256;
  std::string epsilon = "0.1";
  std::uint64_t seed = 1;
};

int cmd_params(const CommonOpts& c) {
  ProtocolParams pr = derive_params(c.n, Frac::parse(c.epsilon));
  std::cout << params_report(pr).dump(2) << "\n";
  return 0;
}

int run_codes_audit(const CommonOpts& c, int pairs, int triples, int samples) {
  Frac eps = Frac::parse(c.epsilon);
  ProtocolParams pr = derive_params(c.n, eps);
  CodeSuite suite(pr);
  std::mt19937_64 rng(c.seed);
  int failures = 0;
  auto gate = [&](bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
  };

  // Segment distinctness over random input pairs.
  {
    std::int64_t worst = 0;
    bool ok = true;
    for (int i = 0; i < pairs; ++i) {
      BitVector x0 = random_input(pr.n, rng());
      BitVector x1 = random_input(pr.n, rng());
      if (x0 == x1) continue;
      std::int64_t b = static_cast<std::int64_t>(bad_set(x0, x1, suite).size());
      worst = std::max(worst, b);
      if (b * pr.alpha * eps.den > eps.num * pr.m) ok = false;
    }
    gate(ok, "segment distinctness: max |badSet| = " + std::to_string(worst) + " over " +
                 std::to_string(pairs) + " pairs (bound " +
                 std::to_string(eps.num * pr.m / (eps.den * pr.alpha)) + ")");
  }

  // Sampled inner-code distances at full parameters.
  {
    bool ok = true;
    try {
      quick_distance_selfcheck(suite, samples, rng());
    } catch (const std::exception&) {
      ok = false;
    }
    gate(ok, "inner distance (sampled " + std::to_string(samples) + " pairs)");
  }

  // Exhaustive distances at reduced parameters.
  {
    InnerCode small(6, 3, eps);
    TinyCodeTable table = TinyCodeTable::from_inner(small);
    DistanceReport rep = exhaustive_min_distance(table);
    std::int64_t p = small.p();
    bool ok = 2 * eps.den * rep.min_pairwise >= p * (eps.den - 2 * eps.num) &&
              2 * eps.den * rep.min_to_zero >= p * (eps.den - 2 * eps.num) &&
              2 * eps.den * rep.min_to_ones >= p * (eps.den - 2 * eps.num);
    gate(ok, "exhaustive reduced-parameter distances: pairwise " +
                 std::to_string(rep.min_pairwise) + ", to-zero " +
                 std::to_string(rep.min_to_zero) + ", to-ones " +
                 std::to_string(rep.min_to_ones) + " / p = " + std::to_string(p));
  }

  // Three-codeword overlap (what makes list size 2 non-vacuous).
  {
    bool ok = true;
    std::int64_t worst = 0;
    auto random_message = [&] {
      InnerMessage msg;
      msg.payload = BitVector(pr.alpha);
      for (std::int64_t t = 0; t < pr.alpha; ++t) msg.payload.set(t, rng() & 1);
      int len = static_cast<int>(rng() % (pr.ind_cap + 1));
      for (int t = 0; t < len; ++t) msg.ind.append(rng() & 1);
      return msg;
    };
    for (int i = 0; i < triples; ++i) {
      InnerMessage a = random_message(), b = random_message(), d = random_message();
      if (a == b || a == d || b == d) continue;
      BitVector ca = suite.inner.encode(a);
      BitVector cb = suite.inner.encode(b);
      BitVector cd = suite.inner.encode(d);
      std::int64_t agree = 0;
      auto wa = ca.words();
      auto wb = cb.words();
      auto wd = cd.words();
      for (std::size_t k = 0; k < wa.size(); ++k) {
        std::uint64_t all = ~(wa[k] ^ wb[k]) & ~(wa[k] ^ wd[k]);
        if (k + 1 == wa.size() && (pr.p & 63)) all &= (1ull << (pr.p & 63)) - 1;
        agree += std::popcount(all);
      }
      worst = std::max(worst, agree);
      if (4 * eps.den * agree > pr.p * (eps.den + 6 * eps.num)) ok = false;
    }
    gate(ok, "three-codeword overlap: worst " + std::to_string(worst) + " / bound " +
                 std::to_string(pr.p * (eps.den + 6 * eps.num) / (4 * eps.den)));
  }

  return failures == 0 ? 0 : 1;
}

int run_oracle_search(const CommonOpts& c, const std::string& budget_arg, std::int64_t tries,
                      const std::string& archive) {
  Frac eps = Frac::parse(c.epsilon);
  Frac budget = budget_arg.empty() ? Frac{6, 11} - Frac{4, 1} * eps : Frac::parse(budget_arg);
  CodeSuite suite(derive_params(c.n, eps));
  quick_distance_selfcheck(suite, 64, c.seed);
  BitVector x = random_input(c.n, derive_seed(c.seed, 0xa77));
  AttackSearchResult res = attack_search(suite, x, budget, tries, c.seed);
  std::printf("attack search: %lld runs at budget %s (%.4f)\n",
              static_cast<long long>(res.runs), budget.to_string().c_str(),
              budget.to_double());
  if (!res.found) {
    std::printf("no counterexample found\n");
    return 0;
  }
  std::printf("COUNTEREXAMPLE: strategy %s (trial %lld)\n", res.strategy.c_str(),
              static_cast<long long>(res.trial));
  if (!archive.empty()) {
    std::filesystem::create_directories(archive);
    std::string path = archive + "/counterexample.jsonl";
    write_transcript(res.counterexample, path);
    std::printf("archived to %s\n", path.c_str());
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interactive erasure-code simulator"};
  app.require_subcommand(1);
  CommonOpts common;

  auto* sc_params = app.add_subcommand("params", "print the derived parameter report");
  sc_params->add_option("--n", common.n, "input size (power of two)");
  sc_params->add_option("--epsilon", common.epsilon, "epsilon as decimal or a/b");

  auto* sc_run = app.add_subcommand("run", "run protocol experiments");
  ExperimentConfig cfg;
  std::string strategy_arg = "NoNoise";
  std::string budget_arg;
  std::string config_path;
  sc_run->add_option("--config", config_path, "JSON config file (flags override)");
  sc_run->add_option("--n", common.n, "input size");
  sc_run->add_option("--epsilon", common.epsilon, "epsilon");
  sc_run->add_option("--strategy", strategy_arg, "strategy kind or inline JSON spec");
  sc_run->add_option("--budget", budget_arg, "budget fraction (default 6/11 - 4*eps)");
  sc_run->add_option("--trials", cfg.trials, "number of trials");
  sc_run->add_option("--seed", common.seed, "base seed");
  sc_run->add_option("--format", cfg.format, "json or csv");
  sc_run->add_option("--out", cfg.output_path, "output file (default stdout)");
  sc_run->add_option("--transcripts", cfg.transcript_dir, "archive transcripts here");

  auto* sc_sweep = app.add_subcommand("sweep", "budget sweep over the bundled strategies");
  std::string fractions_arg = "0,0.05,0.1,0.145,0.2,0.3";
  sc_sweep->add_option("--n", common.n, "input size");
  sc_sweep->add_option("--epsilon", common.epsilon, "epsilon");
  sc_sweep->add_option("--fractions", fractions_arg, "comma-separated budget fractions");
  sc_sweep->add_option("--trials", cfg.trials, "trials per (fraction, strategy)");
  sc_sweep->add_option("--seed", common.seed, "base seed");
  sc_sweep->add_option("--format", cfg.format, "json or csv");
  sc_sweep->add_option("--out", cfg.output_path, "output file (default stdout)");

  auto* sc_audit = app.add_subcommand("audit", "audit transcript files");
  std::vector<std::string> audit_files;
  sc_audit->add_option("files", audit_files, "JSON-lines transcript files")->required();

  auto* sc_codes = app.add_subcommand("codes", "code property tooling");
  auto* sc_codes_audit = sc_codes->add_subcommand("audit", "distance and segment audits");
  int pairs = 1000, triples = 10000, samples = 100000;
  sc_codes_audit->add_option("--n", common.n, "input size");
  sc_codes_audit->add_option("--epsilon", common.epsilon, "epsilon");
  sc_codes_audit->add_option("--seed", common.seed, "seed");
  sc_codes_audit->add_option("--pairs", pairs, "random input pairs");
  sc_codes_audit->add_option("--triples", triples, "codeword triples");
  sc_codes_audit->add_option("--samples", samples, "sampled codeword pairs");

  auto* sc_oracle = app.add_subcommand("oracle", "brute-force reference tooling");
  auto* sc_oracle_search = sc_oracle->add_subcommand("search", "randomized attack search");
  std::int64_t tries = 1000;
  std::string archive_dir;
  sc_oracle_search->add_option("--n", common.n, "input size");
  sc_oracle_search->add_option("--epsilon", common.epsilon, "epsilon");
  sc_oracle_search->add_option("--budget", budget_arg, "budget fraction");
  sc_oracle_search->add_option("--tries", tries, "randomized adversaries");
  sc_oracle_search->add_option("--seed", common.seed, "seed");
  sc_oracle_search->add_option("--archive", archive_dir, "directory for counterexamples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_params) return cmd_params(common);

    if (*sc_run) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw std::runtime_error("cannot open config: " + config_path);
        json j = json::parse(f);
        if (j.contains("n")) common.n = j["n"].get<std::int64_t>();
        if (j.contains("epsilon"))
          common.epsilon = j["epsilon"].is_string() ? j["epsilon"].get<std::string>()
                                                    : std::to_string(j["epsilon"].get<double>());
        if (j.contains("strategy")) strategy_arg = j["strategy"].dump();
        if (j.contains("budget")) budget_arg = j["budget"].get<std::string>();
        if (j.contains("trials")) cfg.trials = j["trials"].get<std::int64_t>();
        if (j.contains("seed")) common.seed = j["seed"].get<std::uint64_t>();
      }
      Frac eps = Frac::parse(common.epsilon);
      cfg.n = common.n;
      cfg.epsilon = eps;
      cfg.seed = common.seed;
      cfg.strategy = parse_strategy_arg(strategy_arg);
      cfg.budget_fraction =
          budget_arg.empty() ? Frac{6, 11} - Frac{4, 1} * eps : Frac::parse(budget_arg);
      if (!cfg.transcript_dir.empty()) std::filesystem::create_directories(cfg.transcript_dir);
      CodeSuite suite(derive_params(cfg.n, eps));
      auto metrics = run_experiment(cfg, suite);
      std::int64_t successes = 0;
      double mean_erased = 0, mean_ms = 0;
      for (const auto& m : metrics) {
        successes += m.success;
        mean_erased += m.erased_fraction;
        mean_ms += m.wall_ms;
      }
      if (cfg.format == "csv") {
        SweepRow row{cfg.budget_fraction,
                     make_strategy(cfg.strategy)->name(),
                     cfg.trials,
                     successes,
                     mean_erased / cfg.trials,
                     mean_ms / cfg.trials};
        write_or_print(cfg.output_path, sweep_to_csv({row}));
      } else {
        json out{{"params", params_report(suite.params)},
                 {"strategy", cfg.strategy},
                 {"budgetFraction", cfg.budget_fraction.to_string()},
                 {"successes", successes},
                 {"trials", cfg.trials},
                 {"runs", metrics_to_json(metrics)}};
        write_or_print(cfg.output_path, out.dump(2) + "\n");
      }
      std::fprintf(stderr, "%lld/%lld trials succeeded\n", static_cast<long long>(successes),
                   static_cast<long long>(cfg.trials));
      return successes == cfg.trials ? 0 : 1;
    }

    if (*sc_sweep) {
      Frac eps = Frac::parse(common.epsilon);
      cfg.n = common.n;
      cfg.epsilon = eps;
      cfg.seed = common.seed;
      CodeSuite suite(derive_params(cfg.n, eps));
      auto rows = sweep_budget(cfg, parse_fraction_list(fractions_arg), suite);
      if (cfg.format == "csv") {
        write_or_print(cfg.output_path, sweep_to_csv(rows));
      } else {
        json arr = json::array();
        for (const auto& r : rows)
          arr.push_back({{"fraction", r.fraction.to_string()},
                         {"strategy", r.strategy},
                         {"trials", r.trials},
                         {"successes", r.successes},
                         {"meanErasedFraction", r.mean_erased_fraction},
                         {"meanWallTimeMs", r.mean_wall_ms}});
        write_or_print(cfg.output_path, arr.dump(2) + "\n");
      }
      return 0;
    }

    if (*sc_audit) {
      int failures = 0;
      for (const auto& path : audit_files) {
        Transcript t = read_transcript(path);
        AuditReport rep = audit_transcript(t);
        std::printf("[%s] %s\n", rep.clean() ? "PASS" : "FAIL", path.c_str());
        for (const auto& v : rep.violations) {
          std::printf("  %s @ chunk %lld: %s\n", v.kind.c_str(),
                      static_cast<long long>(v.chunk), v.detail.c_str());
        }
        if (!rep.clean()) ++failures;
      }
      return failures == 0 ? 0 : 1;
    }

    if (*sc_codes_audit) return run_codes_audit(common, pairs, triples, samples);
    if (*sc_oracle_search) return run_oracle_search(common, budget_arg, tries, archive_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
