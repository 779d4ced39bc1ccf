#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iecc/adversary.hpp"
#include "iecc/codes.hpp"
#include "iecc/protocol.hpp"
#include "iecc/transcript.hpp"

// Experiment runner, budget sweeps, and the transcript auditor — the
// user-facing machinery behind the CLI.

namespace iecc {

struct ExperimentConfig {
  std::int64_t n = 256;
  Frac epsilon{1, 10};
  nlohmann::json strategy = {{"kind", "NoNoise"}};
  Frac budget_fraction{0, 1};
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
  std::string output_path;     // empty: stdout only
  std::string format = "json"; // "json" | "csv"
  std::string transcript_dir;  // empty: do not archive transcripts
};

struct RunMetrics {
  bool success = false;
  std::int64_t erased_alice_bits = 0;
  std::int64_t erased_bob_bits = 0;
  double erased_fraction = 0.0;
  std::int64_t chunks_p0 = 0, chunks_p1 = 0, chunks_p2 = 0;
  std::array<std::int64_t, 8> bob_case_histogram{};
  double wall_ms = 0.0;
};

RunMetrics metrics_from_run(const RunOutput& out);

// `trials` independent deterministic runs of cfg.strategy. Runs the
// distance self-check gate first; writes metrics and optional transcripts.
std::vector<RunMetrics> run_experiment(const ExperimentConfig& cfg, const CodeSuite& suite);

struct AuditViolation {
  std::string kind;        // "replay", "ledger", "prefix", "closure", "accounting"
  std::int64_t chunk = 0;  // 0 when not chunk-specific
  std::string detail;
};

struct AuditReport {
  std::vector<AuditViolation> violations;
  std::int64_t total_bits = 0;
  std::int64_t recounted_alice = 0;
  std::int64_t recounted_bob = 0;
  bool clean() const { return violations.empty(); }
};

// Replays the transcript and verifies: (a) deterministic replay
// reproduces every emission, case, and the output; (b) the erasure ledger
// matches a recount of the masks; (c) Alice's ind is a prefix of Bob's i
// at every chunk before xhat is set; (d) recorded emissions stay inside
// the legal message spaces; (e) total_bits = (11/8) p T and the chunk
// count is T.
AuditReport audit_transcript(const Transcript& t);
AuditReport audit_transcript(const Transcript& t, const CodeSuite& suite);

struct SweepRow {
  Frac fraction;
  std::string strategy;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double mean_erased_fraction = 0.0;
  double mean_wall_ms = 0.0;
};

// Success rate per budget fraction across the bundled strategy suite.
std::vector<SweepRow> sweep_budget(const ExperimentConfig& cfg,
                                   const std::vector<Frac>& fractions,
                                   const CodeSuite& suite);

// CSV with the fixed column set: fraction,strategy,trials,successes,
// meanErasedFraction,meanWallTimeMs.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
nlohmann::json metrics_to_json(const std::vector<RunMetrics>& metrics);
nlohmann::json params_report(const ProtocolParams& params);

// Worker threads for trial fan-out: IECC_WORKERS or hardware concurrency.
int worker_count();

}  // namespace iecc
