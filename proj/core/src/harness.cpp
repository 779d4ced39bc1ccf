#include "iecc/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace iecc {

int worker_count() {
  if (const char* env = std::getenv("IECC_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

RunMetrics metrics_from_run(const RunOutput& out) {
  RunMetrics m;
  const Transcript& t = out.transcript;
  m.success = t.success;
  m.erased_alice_bits = t.erased_alice;
  m.erased_bob_bits = t.erased_bob;
  m.erased_fraction = static_cast<double>(t.erased_alice + t.erased_bob) /
                      static_cast<double>(t.params.total_bits);
  m.chunks_p0 = out.phase_chunks[0];
  m.chunks_p1 = out.phase_chunks[1];
  m.chunks_p2 = out.phase_chunks[2];
  m.bob_case_histogram = out.case_histogram;
  return m;
}

namespace {

BitVector random_input(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitVector x(n);
  for (std::int64_t i = 0; i < n; ++i) x.set(i, rng() & 1);
  return x;
}

void parallel_trials(std::int64_t trials, int workers,
                     const std::function<void(std::int64_t)>& body) {
  if (workers <= 1 || trials <= 1) {
    for (std::int64_t i = 0; i < trials; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::int64_t i = next.fetch_add(1);
        if (i >= trials) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<RunMetrics> run_experiment(const ExperimentConfig& cfg, const CodeSuite& suite) {
  quick_distance_selfcheck(suite, 64, derive_seed(cfg.seed, 0xd15c));
  std::vector<RunMetrics> metrics(cfg.trials);
  std::vector<std::string> archived(cfg.trials);
  parallel_trials(cfg.trials, worker_count(), [&](std::int64_t i) {
    std::uint64_t trial_seed = derive_seed(cfg.seed, i);
    BitVector x = random_input(suite.params.n, derive_seed(trial_seed, 1));
    auto strategy = make_strategy(cfg.strategy);
    auto t0 = std::chrono::steady_clock::now();
    RunOutput out = run_protocol(x, *strategy, suite, trial_seed, cfg.budget_fraction);
    auto t1 = std::chrono::steady_clock::now();
    metrics[i] = metrics_from_run(out);
    metrics[i].wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!cfg.transcript_dir.empty()) {
      std::string path = cfg.transcript_dir + "/trial_" + std::to_string(i) + ".jsonl";
      write_transcript(out.transcript, path);
      archived[i] = path;
    }
  });
  return metrics;
}

namespace {

void check_replay(const Transcript& t, const CodeSuite& suite, AuditReport& rep) {
  ReplayStrategy replay(t);
  // Prefix invariant and closure are checked chunk-by-chunk during the
  // replay run; emission equality against the file afterwards.
  std::vector<int> replay_cases(t.chunks.size(), 0);
  ChunkObserver observer = [&](const ChunkRecord& rec, const AliceState& alice,
                               const BobState& bob) {
    if (!bob.xhat_set) {
      bool ok = bob.pair_set ? alice.ind.is_prefix_of(bob.i_bits) : alice.ind.len == 0;
      if (!ok)
        rep.violations.push_back({"prefix", rec.chunk_idx,
                                  "ind=" + alice.ind.to_string() + " not a prefix of i"});
    }
    replay_cases[rec.chunk_idx - 1] = rec.bob_case;
  };
  RunOutput out = run_protocol(t.x, replay, suite, t.seed, t.budget_fraction, observer);

  const std::size_t cap = rep.violations.size() + 24;
  const auto& re = out.transcript;
  for (std::size_t i = 0; i < t.chunks.size(); ++i) {
    if (rep.violations.size() >= cap) {
      rep.violations.push_back({"replay", 0, "further violations suppressed"});
      break;
    }
    const auto& orig = t.chunks[i];
    const auto& rpl = re.chunks[i];
    if (orig.chunk_idx != static_cast<std::int64_t>(i + 1))
      rep.violations.push_back({"replay", orig.chunk_idx, "chunk index out of sequence"});
    if (orig.j != rpl.j)
      rep.violations.push_back({"replay", orig.chunk_idx, "segment index mismatch"});
    if (orig.alice_clean != rpl.alice_clean)
      rep.violations.push_back(
          {"closure", orig.chunk_idx,
           "recorded Alice emission differs from protocol-determined word"});
    if (orig.bob_clean != rpl.bob_clean)
      rep.violations.push_back(
          {"closure", orig.chunk_idx,
           "recorded Bob emission differs from protocol-determined word"});
    if (orig.bob_case != rpl.bob_case)
      rep.violations.push_back({"replay", orig.chunk_idx, "case ladder diverged"});
  }
  if (t.output != re.output)
    rep.violations.push_back({"replay", 0, "replayed output differs from recorded output"});
  if (t.success != re.success)
    rep.violations.push_back({"replay", 0, "success flag differs from replay"});
}

}  // namespace

AuditReport audit_transcript(const Transcript& t, const CodeSuite& suite) {
  AuditReport rep;
  const auto& pr = t.params;

  rep.total_bits = pr.total_bits;
  if (pr.total_bits * 8 != 11 * pr.p * pr.chunk_count)
    rep.violations.push_back({"accounting", 0, "total bits != (11/8) p T"});
  if (static_cast<std::int64_t>(t.chunks.size()) != pr.chunk_count)
    rep.violations.push_back({"accounting", 0, "chunk count != T"});

  for (const auto& c : t.chunks) {
    rep.recounted_alice += c.alice_mask.popcount();
    rep.recounted_bob += c.bob_mask.popcount();
  }
  if (rep.recounted_alice != t.erased_alice || rep.recounted_bob != t.erased_bob)
    rep.violations.push_back({"ledger", 0, "mask recount differs from trailer erasure counts"});
  std::int64_t limit = t.budget_fraction.floor_mul(pr.total_bits);
  if (rep.recounted_alice + rep.recounted_bob > limit)
    rep.violations.push_back({"ledger", 0, "erasures exceed the configured budget"});

  for (const auto& c : t.chunks) {
    int gamma = -1;
    for (int g = 0; g < 4; ++g)
      if (c.bob_clean == bob_encode(g, pr.p)) gamma = g;
    if (gamma < 0) {
      rep.violations.push_back(
          {"closure", c.chunk_idx, "Bob emission is not one of the four feedback words"});
      break;  // replay check will pinpoint the rest
    }
  }

  check_replay(t, suite, rep);
  return rep;
}

AuditReport audit_transcript(const Transcript& t) {
  CodeSuite suite(t.params);
  return audit_transcript(t, suite);
}

std::vector<SweepRow> sweep_budget(const ExperimentConfig& cfg,
                                   const std::vector<Frac>& fractions,
                                   const CodeSuite& suite) {
  std::vector<SweepRow> rows;
  for (const Frac& f : fractions) {
    for (const auto& spec : bundled_strategy_specs(suite.params)) {
      ExperimentConfig sub = cfg;
      sub.strategy = spec;
      sub.budget_fraction = f;
      sub.transcript_dir.clear();
      auto metrics = run_experiment(sub, suite);
      SweepRow row;
      row.fraction = f;
      row.strategy = make_strategy(spec)->name();
      row.trials = cfg.trials;
      for (const auto& m : metrics) {
        row.successes += m.success ? 1 : 0;
        row.mean_erased_fraction += m.erased_fraction;
        row.mean_wall_ms += m.wall_ms;
      }
      row.mean_erased_fraction /= static_cast<double>(cfg.trials);
      row.mean_wall_ms /= static_cast<double>(cfg.trials);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "fraction,strategy,trials,successes,meanErasedFraction,meanWallTimeMs\n";
  for (const auto& r : rows) {
    out << r.fraction.to_double() << ",\"" << r.strategy << "\"," << r.trials << ","
        << r.successes << "," << r.mean_erased_fraction << "," << r.mean_wall_ms << "\n";
  }
  return out.str();
}

nlohmann::json metrics_to_json(const std::vector<RunMetrics>& metrics) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : metrics) {
    arr.push_back({{"success", m.success},
                   {"erasedAliceBits", m.erased_alice_bits},
                   {"erasedBobBits", m.erased_bob_bits},
                   {"erasedFraction", m.erased_fraction},
                   {"chunksInP0", m.chunks_p0},
                   {"chunksInP1", m.chunks_p1},
                   {"chunksInP2", m.chunks_p2},
                   {"bobCaseHistogram", m.bob_case_histogram},
                   {"wallTimeMs", m.wall_ms}});
  }
  return arr;
}

nlohmann::json params_report(const ProtocolParams& pr) {
  return nlohmann::json{
      {"n", pr.n},           {"epsilon", pr.eps.to_string()},
      {"q", pr.q},           {"N", pr.n_outer},
      {"alpha", pr.alpha},   {"m", pr.m},
      {"k_in", pr.k_in},     {"N_in", pr.n_in},
      {"p", pr.p},           {"T", pr.chunk_count},
      {"totalBits", pr.total_bits}};
}

}  // namespace iecc
