#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "iecc/codes.hpp"
#include "iecc/gf2.hpp"
#include "iecc/transcript.hpp"

// Budgeted online erasure adversaries. A strategy sees everything — both
// parties' states, the clean message on the wire, and the full history —
// which is the strongest adversary the erasure model admits. Masks are
// clamped to the remaining budget by the channel, never trusted.

namespace iecc {

struct AliceState;
struct BobState;
struct CodeSuite;

enum class Direction { AliceToBob, BobToAlice };

struct Budget {
  std::int64_t total_bits = 0;
  Frac allowed_fraction{0, 1};
  std::int64_t spent = 0;

  std::int64_t limit() const { return allowed_fraction.floor_mul(total_bits); }
  std::int64_t remaining() const { return limit() - spent; }
};

struct ChunkContext {
  Direction direction;
  std::int64_t chunk_idx;
  const BitVector& clean;
  const AliceState& alice;
  const BobState& bob;
  const std::vector<ChunkRecord>& history;
  const CodeSuite& suite;
  std::int64_t budget_remaining;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // Called once per protocol run, before chunk 1.
  virtual void begin_run(const CodeSuite& suite, const BitVector& x, std::uint64_t run_seed);
  // Erasure mask for this message; positions set are erased.
  virtual BitVector decide_mask(const ChunkContext& ctx) = 0;
};

// Masked positions become erasures; nothing else changes (erasure-only
// channel).
TriString apply_mask(const BitVector& clean, const BitVector& mask);

// Drops the highest-index masked positions until the mask fits in
// `remaining` bits. Returns true when anything was dropped.
bool clamp_mask(BitVector& mask, std::int64_t remaining);

// StrategySpec: {"kind": "...", "rate": r, "fromChunk": c, "seed": s,
// "tries": t, "stallBlocks": b, "tailFrom": R}. `seed` here perturbs the
// per-run seed; most strategies only use the run seed.
std::unique_ptr<Strategy> make_strategy(const nlohmann::json& spec);

// The deterministic suite run by the resilience gate and the attack
// search: NoNoise, IidRate(0.3/0.5), SilenceBob, FrontLoad, TailErase at
// five cut points, AnalysisGuided.
std::vector<nlohmann::json> bundled_strategy_specs(const ProtocolParams& params);

// Replays recorded masks; the replay path behind transcript audits.
class ReplayStrategy : public Strategy {
 public:
  explicit ReplayStrategy(const Transcript& t) : source_(&t) {}
  std::string name() const override { return "Replay"; }
  BitVector decide_mask(const ChunkContext& ctx) override;

 private:
  const Transcript* source_;
};

// Deterministic per-trial seed derivation (splitmix64 over the base seed).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace iecc
