// Acceptance suite: one pass/fail line per criterion, exit code equal to
// the number of failures. Criteria and tolerances are pinned in code; the
// safe budget fraction is 6/11 - 4*eps throughout (the slack knob of the
// resilience guarantee).
//
//   1  noiseless correctness, n in {64, 256, 1024}, 50 random inputs each
//   2a segment distinctness over 1000 random input pairs
//   2b inner-code distance: exhaustive at reduced size, sampled at full
//   2c three-codeword overlap over 10^4 triples
//   3  list-decode contract over 10^4 masked codewords + brute equivalence
//   4  resilience: bundled strategies x 100 trials at the safe budget
//   5  attack search: 10^4 randomized adversaries at n = 64
//   6  communication linearity across n
//   7  auditor accounting identity on every archived transcript
//   8  prefix invariant at every chunk of every resilience trial

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "iecc/harness.hpp"
#include "iecc/oracle.hpp"
#include "iecc/protocol.hpp"

using namespace iecc;
namespace fs = std::filesystem;

namespace {

const Frac kEps{1, 10};
const Frac kBudget = Frac{6, 11} - Frac{4, 1} * kEps;  // 8/55

int g_failures = 0;
fs::path g_work_dir = "acceptance_work";

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(const std::string& name, bool pass, const std::string& detail, double secs) {
  std::printf("[%s] %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

BitVector random_input(std::int64_t n, std::mt19937_64& rng) {
  BitVector x(n);
  for (std::int64_t i = 0; i < n; ++i) x.set(i, rng() & 1);
  return x;
}

InnerMessage random_message(const ProtocolParams& pr, std::mt19937_64& rng) {
  InnerMessage msg;
  msg.payload = random_input(pr.alpha, rng);
  int len = static_cast<int>(rng() % (pr.ind_cap + 1));
  for (int t = 0; t < len; ++t) msg.ind.append(rng() & 1);
  return msg;
}

BitVector mask_with_count(std::int64_t len, std::int64_t count, std::mt19937_64& rng) {
  BitVector mask(len);
  for (std::int64_t c = 0; c < count;) {
    std::int64_t i = rng() % len;
    if (!mask.get(i)) {
      mask.set(i, true);
      ++c;
    }
  }
  return mask;
}

// d >= (1/2 - eps) p in exact arithmetic.
bool far_enough(std::int64_t d, std::int64_t p) {
  return 2 * kEps.den * d >= p * (kEps.den - 2 * kEps.num);
}

const CodeSuite& suite_for(std::int64_t n) {
  static std::vector<std::pair<std::int64_t, CodeSuite>> cache;
  for (auto& [sz, suite] : cache)
    if (sz == n) return suite;
  cache.emplace_back(n, make_code_suite(n, kEps));
  return cache.back().second;
}

// --------------------------------------------------------------------------

void criterion1_noiseless() {
  Timer timer;
  std::int64_t failures = 0, runs = 0;
  for (std::int64_t n : {64, 256, 1024}) {
    const CodeSuite& suite = suite_for(n);
    std::mt19937_64 rng(derive_seed(0xC1, n));
    for (int trial = 0; trial < 50; ++trial) {
      BitVector x = random_input(n, rng);
      auto strategy = make_strategy({{"kind", "NoNoise"}});
      RunOutput out = run_protocol(x, *strategy, suite, derive_seed(n, trial), Frac{0, 1});
      ++runs;
      if (!out.transcript.success) ++failures;
    }
  }
  report("criterion 1 (noiseless correctness)", failures == 0,
         std::to_string(runs - failures) + "/" + std::to_string(runs) +
             " runs returned x across n in {64,256,1024}",
         timer.seconds());
}

void criterion2a_segment_distinctness() {
  Timer timer;
  const CodeSuite& suite = suite_for(256);
  const auto& pr = suite.params;
  std::mt19937_64 rng(0xC2A);
  std::int64_t bound = kEps.num * pr.m / (kEps.den * pr.alpha);
  std::int64_t worst = 0, violations = 0;
  for (int i = 0; i < 1000; ++i) {
    BitVector x0 = random_input(pr.n, rng);
    BitVector x1 = x0;
    if (i % 2) {
      x1 = random_input(pr.n, rng);
      if (x0 == x1) continue;
    } else {
      std::int64_t flip = rng() % pr.n;
      x1.set(flip, !x1.get(flip));
    }
    std::int64_t b = static_cast<std::int64_t>(bad_set(x0, x1, suite).size());
    worst = std::max(worst, b);
    if (b > bound) ++violations;
  }
  report("criterion 2a (segment distinctness)", violations == 0,
         "1000 pairs, max |badSet| = " + std::to_string(worst) + " <= " +
             std::to_string(bound),
         timer.seconds());
}

void criterion2b_inner_distance() {
  Timer timer;
  // Exhaustive at reduced parameters (11 and 16 message bits).
  InnerCode small(6, 3, kEps);
  TinyCodeTable small_table = TinyCodeTable::from_inner(small);
  DistanceReport ex = exhaustive_min_distance(small_table);
  bool ok = far_enough(ex.min_pairwise, small.p()) && far_enough(ex.min_to_zero, small.p()) &&
            far_enough(ex.min_to_ones, small.p());

  InnerCode mid(9, 4, kEps);  // 16 variable bits
  TinyCodeTable mid_table = TinyCodeTable::from_inner(mid);
  DistanceReport affine = affine_min_distance(mid_table, mid.offset());
  ok = ok && far_enough(affine.min_pairwise, mid.p()) &&
       far_enough(affine.min_to_zero, mid.p()) && far_enough(affine.min_to_ones, mid.p());
  // The affine scan and the quadratic scan must agree where both run.
  DistanceReport cross = affine_min_distance(small_table, small.offset());
  ok = ok && cross.min_pairwise == ex.min_pairwise && cross.min_to_zero == ex.min_to_zero &&
       cross.min_to_ones == ex.min_to_ones;

  // Sampled at full parameters: zero violations over 10^5 pairs.
  const CodeSuite& suite = suite_for(256);
  const auto& pr = suite.params;
  std::mt19937_64 rng(0xC2B);
  std::int64_t violations = 0;
  for (int i = 0; i < 100000; ++i) {
    InnerMessage a = random_message(pr, rng);
    InnerMessage b = random_message(pr, rng);
    BitVector ca = suite.inner.encode(a);
    std::int64_t w = ca.popcount();
    if (!far_enough(w, pr.p) || !far_enough(pr.p - w, pr.p)) ++violations;
    if (!(a == b) && !far_enough(ca.hamming_distance(suite.inner.encode(b)), pr.p))
      ++violations;
  }
  ok = ok && violations == 0;
  report("criterion 2b (inner-code distance)", ok,
         "exhaustive reduced: pairwise " + std::to_string(ex.min_pairwise) + "/" +
             std::to_string(small.p()) + ", to-const " + std::to_string(ex.min_to_zero) +
             "," + std::to_string(ex.min_to_ones) + "; sampled 10^5 full-parameter pairs, " +
             std::to_string(violations) + " violations",
         timer.seconds());
}

void criterion2c_three_overlap() {
  Timer timer;
  const CodeSuite& suite = suite_for(256);
  const auto& pr = suite.params;
  std::mt19937_64 rng(0xC2C);
  // Agreement of any three codewords <= (1/4 + 3/2 eps) p.
  std::int64_t bound = pr.p * (kEps.den + 6 * kEps.num) / (4 * kEps.den);
  std::int64_t worst = 0, violations = 0;
  for (int i = 0; i < 10000; ++i) {
    InnerMessage a = random_message(pr, rng), b = random_message(pr, rng),
                 c = random_message(pr, rng);
    if (a == b || a == c || b == c) continue;
    BitVector ca = suite.inner.encode(a), cb = suite.inner.encode(b),
              cc = suite.inner.encode(c);
    std::int64_t agree = 0;
    auto wa = ca.words();
    auto wb = cb.words();
    auto wc = cc.words();
    for (std::size_t k = 0; k < wa.size(); ++k)
      agree += std::popcount(~(wa[k] ^ wb[k]) & ~(wa[k] ^ wc[k]) &
                             (k + 1 == wa.size() && (pr.p & 63)
                                  ? (1ull << (pr.p & 63)) - 1
                                  : ~0ull));
    worst = std::max(worst, agree);
    if (agree > bound) ++violations;
  }
  report("criterion 2c (three-codeword overlap)", violations == 0,
         "10^4 triples, worst agreement " + std::to_string(worst) + " <= " +
             std::to_string(bound),
         timer.seconds());
}

void criterion3_list_decode_contract() {
  Timer timer;
  const CodeSuite& suite = suite_for(256);
  const auto& pr = suite.params;
  std::mt19937_64 rng(0xC3);
  std::int64_t threshold = pr.p * (3 * kEps.den - 6 * kEps.num) / (4 * kEps.den);
  std::int64_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    InnerMessage msg = random_message(pr, rng);
    BitVector cw = suite.inner.encode(msg);
    std::int64_t erased = static_cast<std::int64_t>(rng() % threshold);
    TriString received =
        TriString::from_clean_and_mask(cw, mask_with_count(pr.p, erased, rng));
    InnerDecodeResult res = suite.inner.list_decode(received);
    if (res.too_erased || res.candidates.size() > 2) {
      ++violations;
      continue;
    }
    bool truth = false;
    for (const auto& c : res.candidates)
      if (c.kind == InnerCandidate::Kind::Message && c.message == msg) truth = true;
    if (!truth) ++violations;
  }

  // Exact agreement with the brute-force oracle at reduced parameters.
  InnerCode small(6, 3, kEps);
  TinyCodeTable table = TinyCodeTable::from_inner(small);
  std::int64_t small_threshold = small.p() * (3 * kEps.den - 6 * kEps.num) / (4 * kEps.den);
  std::int64_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::uint32_t v = static_cast<std::uint32_t>(rng() % table.codewords.size());
    std::int64_t erased = static_cast<std::int64_t>(rng() % small_threshold);
    TriString received = TriString::from_clean_and_mask(
        table.codewords[v], mask_with_count(small.p(), erased, rng));
    auto brute = brute_list_decode(table, received);
    InnerDecodeResult dec = small.list_decode(received);
    std::vector<std::uint32_t> via_solver;
    for (const auto& c : dec.candidates) {
      if (c.kind != InnerCandidate::Kind::Message) continue;
      BitVector bits = small.serialize(c.message);
      std::uint32_t val = 0;
      for (int b = 0; b < small.var_bits(); ++b)
        if (bits.get(b)) val |= 1u << b;
      via_solver.push_back(val);
    }
    std::vector<std::uint32_t> brute_wellformed;
    for (std::uint32_t hit : brute) {
      BitVector bits(small.var_bits());
      for (int b = 0; b < small.var_bits(); ++b) bits.set(b, (hit >> b) & 1);
      if (small.deserialize(bits)) brute_wellformed.push_back(hit);
    }
    std::sort(via_solver.begin(), via_solver.end());
    std::sort(brute_wellformed.begin(), brute_wellformed.end());
    if (via_solver != brute_wellformed) ++mismatches;
  }
  report("criterion 3 (list-decoding contract)", violations == 0 && mismatches == 0,
         "10^4 masked codewords: " + std::to_string(violations) +
             " violations; 10^3 oracle comparisons: " + std::to_string(mismatches) +
             " mismatches",
         timer.seconds());
}

struct ResilienceOutcome {
  std::int64_t runs = 0;
  std::int64_t failures = 0;
  std::int64_t prefix_violations = 0;
  std::int64_t anomalies = 0;
  std::vector<fs::path> archived;
};

ResilienceOutcome g_resilience;

void criterion4_resilience() {
  Timer timer;
  const CodeSuite& suite = suite_for(256);
  const auto& pr = suite.params;
  const int trials = 100;
  fs::create_directories(g_work_dir / "transcripts");
  std::string summary;

  int strategy_idx = 0;
  for (const auto& spec : bundled_strategy_specs(pr)) {
    std::int64_t strat_failures = 0;
    for (int trial = 0; trial < trials; ++trial) {
      std::uint64_t seed = derive_seed(0xC4, strategy_idx * 1000 + trial);
      std::mt19937_64 rng(derive_seed(seed, 1));
      BitVector x = random_input(pr.n, rng);
      auto strategy = make_strategy(spec);
      ChunkObserver observer = [&](const ChunkRecord&, const AliceState& alice,
                                   const BobState& bob) {
        if (!bob.xhat_set) {
          bool ok = bob.pair_set ? alice.ind.is_prefix_of(bob.i_bits) : alice.ind.len == 0;
          if (!ok) ++g_resilience.prefix_violations;
        }
      };
      RunOutput out = run_protocol(x, *strategy, suite, seed, kBudget, observer);
      ++g_resilience.runs;
      if (!out.transcript.success) {
        ++strat_failures;
        ++g_resilience.failures;
      }
      if (trial == 0) {
        fs::path path = g_work_dir / "transcripts" /
                        ("strategy_" + std::to_string(strategy_idx) + ".jsonl");
        write_transcript(out.transcript, path.string());
        g_resilience.archived.push_back(path);
      }
    }
    if (strat_failures > 0)
      summary += " " + make_strategy(spec)->name() + ":" + std::to_string(strat_failures);
    ++strategy_idx;
  }
  report("criterion 4 (resilience suite at 6/11 - 4eps)", g_resilience.failures == 0,
         std::to_string(g_resilience.runs - g_resilience.failures) + "/" +
             std::to_string(g_resilience.runs) + " trials returned x at budget " +
             kBudget.to_string() + (summary.empty() ? "" : "; failures:" + summary),
         timer.seconds());
}

void criterion5_attack_search() {
  Timer timer;
  const CodeSuite& suite = suite_for(64);
  std::mt19937_64 rng(0xC5);
  BitVector x = random_input(64, rng);
  AttackSearchResult res = attack_search(suite, x, kBudget, 10000, 0xC5);
  if (res.found) {
    fs::create_directories(g_work_dir);
    fs::path path = g_work_dir / "counterexample.jsonl";
    write_transcript(res.counterexample, path.string());
    report("criterion 5 (attack search)", false,
           "counterexample from " + res.strategy + " archived at " + path.string(),
           timer.seconds());
    return;
  }
  report("criterion 5 (attack search)", true,
         std::to_string(res.runs) + " adversaries (10^4 randomized + deterministic suite), "
         "zero counterexamples",
         timer.seconds());
}

void criterion6_linearity() {
  Timer timer;
  double lo = 1e300, hi = 0;
  std::string detail;
  for (std::int64_t n : {64, 256, 1024}) {
    const auto& pr = suite_for(n).params;
    double ratio = static_cast<double>(pr.total_bits) / static_cast<double>(n);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    detail += "n=" + std::to_string(n) + ":" + std::to_string(pr.total_bits / n) + " ";
  }
  report("criterion 6 (communication linearity)", hi < 2 * lo,
         "totalBits/n " + detail + "spread x" + std::to_string(hi / lo), timer.seconds());
}

void criterion7_accounting() {
  Timer timer;
  std::int64_t audited = 0, dirty = 0;
  for (const auto& path : g_resilience.archived) {
    Transcript t = read_transcript(path.string());
    AuditReport rep = audit_transcript(t, suite_for(t.params.n));
    ++audited;
    if (!rep.clean()) ++dirty;
  }
  report("criterion 7 (accounting identity)", audited > 0 && dirty == 0,
         std::to_string(audited) + " archived transcripts audited (replay, ledger, 11/8 pT), " +
             std::to_string(dirty) + " dirty",
         timer.seconds());
}

void criterion8_prefix() {
  report("criterion 8 (prefix invariant)", g_resilience.prefix_violations == 0,
         std::to_string(g_resilience.prefix_violations) + " violations across " +
             std::to_string(g_resilience.runs) + " resilience trials",
         0.0);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--work-dir") == 0) g_work_dir = argv[i + 1];
  fs::create_directories(g_work_dir);

  Timer total;
  criterion1_noiseless();
  criterion2a_segment_distinctness();
  criterion2b_inner_distance();
  criterion2c_three_overlap();
  criterion3_list_decode_contract();
  criterion4_resilience();
  criterion5_attack_search();
  criterion6_linearity();
  criterion7_accounting();
  criterion8_prefix();
  std::printf("%d criterion(s) failed; total %.1fs\n", g_failures, total.seconds());
  return g_failures;
}
