#include "iecc/adversary.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "iecc/protocol.hpp"

namespace iecc {

void Strategy::begin_run(const CodeSuite&, const BitVector&, std::uint64_t) {}

TriString apply_mask(const BitVector& clean, const BitVector& mask) {
  return TriString::from_clean_and_mask(clean, mask);
}

bool clamp_mask(BitVector& mask, std::int64_t remaining) {
  std::int64_t count = mask.popcount();
  if (count <= remaining) return false;
  std::int64_t excess = count - remaining;
  auto w = mask.words();
  for (std::size_t k = w.size(); k-- > 0 && excess > 0;) {
    while (w[k] && excess > 0) {
      w[k] &= ~(1ull << (63 - std::countl_zero(w[k])));
      --excess;
    }
  }
  return true;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

// Deterministic Bernoulli draw; avoids std::bernoulli_distribution, whose
// output is not pinned down by the standard.
bool coin(std::mt19937_64& rng, double rate) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < rate;
}

BitVector full_mask(std::size_t len) { return BitVector::constant(len, true); }

class NoNoise final : public Strategy {
 public:
  std::string name() const override { return "NoNoise"; }
  BitVector decide_mask(const ChunkContext& ctx) override {
    return BitVector(ctx.clean.size());
  }
};

class IidRate final : public Strategy {
 public:
  explicit IidRate(double rate) : rate_(rate) {}
  std::string name() const override { return "IidRate(" + std::to_string(rate_) + ")"; }
  void begin_run(const CodeSuite&, const BitVector&, std::uint64_t run_seed) override {
    rng_.seed(derive_seed(run_seed, 0x11d));
  }
  BitVector decide_mask(const ChunkContext& ctx) override {
    BitVector mask(ctx.clean.size());
    std::int64_t quota = ctx.budget_remaining;
    for (std::size_t i = 0; i < mask.size() && quota > 0; ++i) {
      if (coin(rng_, rate_)) {
        mask.set(i, true);
        --quota;
      }
    }
    return mask;
  }

 private:
  double rate_;
  std::mt19937_64 rng_;
};

class SilenceBob final : public Strategy {
 public:
  std::string name() const override { return "SilenceBob"; }
  BitVector decide_mask(const ChunkContext& ctx) override {
    if (ctx.direction == Direction::BobToAlice) return full_mask(ctx.clean.size());
    return BitVector(ctx.clean.size());
  }
};

class FrontLoad final : public Strategy {
 public:
  std::string name() const override { return "FrontLoad"; }
  BitVector decide_mask(const ChunkContext& ctx) override {
    if (ctx.budget_remaining <= 0) return BitVector(ctx.clean.size());
    return full_mask(ctx.clean.size());  // channel clamps at the budget edge
  }
};

class TailErase final : public Strategy {
 public:
  explicit TailErase(std::int64_t from_chunk) : from_(from_chunk) {}
  std::string name() const override { return "TailErase(" + std::to_string(from_) + ")"; }
  BitVector decide_mask(const ChunkContext& ctx) override {
    if (ctx.direction == Direction::AliceToBob && ctx.chunk_idx >= from_)
      return full_mask(ctx.clean.size());
    return BitVector(ctx.clean.size());
  }

 private:
  std::int64_t from_;
};

// The attack family read off the resilience lower bound: hold Bob in
// Phase 0 by erasing just past the block threshold, break one block into
// an engineered two-candidate decode, keep the pair alive through Phase 1
// while Bob conveys the index (feedback flows, so he reaches Phase 2),
// then starve the feedback so Alice never hears fin while her pre-switch
// bits feed Bob a misleading last-bit, and finally blank Alice's tail.
// Within the safe budget every stage runs out of bits before Bob runs out
// of protocol.
class AnalysisGuided final : public Strategy {
 public:
  AnalysisGuided(std::int64_t stall_blocks, std::int64_t tail_from)
      : stall_blocks_(stall_blocks), tail_from_(tail_from) {}

  std::string name() const override {
    return "AnalysisGuided(stall=" + std::to_string(stall_blocks_) + ",tail=" +
           (tail_from_ <= 0 ? std::string("auto") : std::to_string(tail_from_)) + ")";
  }

  void begin_run(const CodeSuite& suite, const BitVector& x, std::uint64_t) override {
    const auto& pr = suite.params;
    // Per-chunk erasures keeping a block at or above the decode threshold.
    stall_count_ = (pr.p * (3 * pr.eps.den - 9 * pr.eps.num) + 4 * pr.eps.den - 1) /
                   (4 * pr.eps.den);
    feedback_count_ = (2 * pr.bob_len + 2) / 3;
    x_flip_ = x;
    x_flip_.set(0, !x.get(0));
    if (tail_from_ <= 0) tail_from_ = pr.chunk_count - pr.chunk_count / 10;
  }

  BitVector decide_mask(const ChunkContext& ctx) override {
    const auto& pr = ctx.suite.params;
    const BobState& bob = ctx.bob;
    if (ctx.direction == Direction::AliceToBob) {
      if (ctx.chunk_idx >= tail_from_) return full_mask(ctx.clean.size());
      std::int64_t j = (ctx.chunk_idx - 1) % pr.block_len;
      if (bob.phase == BobPhase::P0) {
        std::int64_t block = (ctx.chunk_idx - 1) / pr.block_len;
        if (block < stall_blocks_) return prefix_mask(ctx.clean.size(), stall_count_);
        // Break block: leave exactly {x, x ^ e0} consistent.
        InnerMessage mine{segment(ctx.alice.ct, j, pr.alpha), ctx.alice.ind};
        BitVector other_ct = ctx.suite.outer.encode(x_flip_);
        InnerMessage theirs{segment(other_ct, j, pr.alpha), ctx.alice.ind};
        return diff_mask(ctx.suite.inner.encode(mine), ctx.suite.inner.encode(theirs));
      }
      if (bob.pair_set && !bob.xhat_set && !bob.bad.empty() && !bob.bad[j]) {
        // Keep both of Bob's candidates alive: erase where they differ.
        // The phantom mirrors Alice's real ind, so the pair stays on the
        // slow lane of the case ladder.
        const BitVector& other_ct = phantom_ct(ctx);
        InnerMessage theirs{segment(other_ct, j, pr.alpha), ctx.alice.ind};
        return diff_mask(ctx.clean, ctx.suite.inner.encode(theirs));
      }
      return BitVector(ctx.clean.size());
    }
    // Feedback direction: let Phase-1 words through so Bob commits to
    // Phase 2, then starve Alice so she never hears fin.
    if (bob.phase == BobPhase::P2 && !bob.xhat_set)
      return prefix_mask(ctx.clean.size(), feedback_count_);
    return BitVector(ctx.clean.size());
  }

 private:
  static BitVector prefix_mask(std::size_t len, std::int64_t count) {
    BitVector mask(len);
    for (std::int64_t i = 0; i < count && i < static_cast<std::int64_t>(len); ++i)
      mask.set(i, true);
    return mask;
  }
  static BitVector diff_mask(const BitVector& a, const BitVector& b) {
    BitVector mask = a;
    mask.xor_assign(b);
    return mask;
  }
  const BitVector& phantom_ct(const ChunkContext& ctx) const {
    // The candidate Bob holds that is not Alice's input.
    return ctx.bob.xhat0 == ctx.alice.x ? ctx.bob.ct1 : ctx.bob.ct0;
  }

  std::int64_t stall_blocks_;
  std::int64_t tail_from_;
  std::int64_t stall_count_ = 0;
  std::int64_t feedback_count_ = 0;
  BitVector x_flip_;
};

// Per-run randomized attacker for the search harness: picks a regime for a
// random span of chunks (blank Alice, blank Bob, iid noise, difference
// masking) and re-rolls when the span expires.
class Randomized final : public Strategy {
 public:
  explicit Randomized(std::uint64_t salt) : salt_(salt) {}
  std::string name() const override { return "Randomized(" + std::to_string(salt_) + ")"; }

  void begin_run(const CodeSuite&, const BitVector&, std::uint64_t run_seed) override {
    rng_.seed(derive_seed(run_seed, salt_));
    regime_left_ = 0;
  }

  BitVector decide_mask(const ChunkContext& ctx) override {
    const auto& pr = ctx.suite.params;
    if (ctx.direction == Direction::AliceToBob && regime_left_ == 0) {
      regime_ = rng_() % 6;
      regime_left_ = 1 + rng_() % (2 * pr.block_len);
      rate_ = static_cast<double>(rng_() % 101) / 100.0;
    }
    if (ctx.direction == Direction::AliceToBob) --regime_left_;
    BitVector mask(ctx.clean.size());
    switch (regime_) {
      case 0:
        break;  // silence
      case 1:
        if (ctx.direction == Direction::AliceToBob) mask = full_mask(ctx.clean.size());
        break;
      case 2:
        if (ctx.direction == Direction::BobToAlice) mask = full_mask(ctx.clean.size());
        break;
      case 3:
        mask = full_mask(ctx.clean.size());
        break;
      case 4: {  // iid at the drawn rate
        std::int64_t quota = ctx.budget_remaining;
        for (std::size_t i = 0; i < mask.size() && quota > 0; ++i)
          if (coin(rng_, rate_)) {
            mask.set(i, true);
            --quota;
          }
        break;
      }
      case 5: {  // difference masking against Bob's live pair, if any
        if (ctx.direction == Direction::AliceToBob && ctx.bob.pair_set &&
            !ctx.bob.xhat_set) {
          const auto& bob = ctx.bob;
          std::int64_t j = (ctx.chunk_idx - 1) % pr.block_len;
          const BitVector& other_ct = bob.xhat0 == ctx.alice.x ? bob.ct1 : bob.ct0;
          InnerMessage theirs{segment(other_ct, j, pr.alpha), ctx.alice.ind};
          mask = ctx.clean;
          mask.xor_assign(ctx.suite.inner.encode(theirs));
        } else if (ctx.direction == Direction::BobToAlice) {
          std::int64_t quota = (2 * static_cast<std::int64_t>(ctx.clean.size()) + 2) / 3;
          for (std::int64_t i = 0; i < quota; ++i) mask.set(i, true);
        }
        break;
      }
      default:
        break;
    }
    return mask;
  }

 private:
  std::uint64_t salt_;
  std::mt19937_64 rng_;
  int regime_ = 0;
  std::int64_t regime_left_ = 0;
  double rate_ = 0.0;
};

}  // namespace

BitVector ReplayStrategy::decide_mask(const ChunkContext& ctx) {
  const auto& chunks = source_->chunks;
  std::size_t idx = static_cast<std::size_t>(ctx.chunk_idx - 1);
  if (idx >= chunks.size()) throw std::out_of_range("replay past end of transcript");
  return ctx.direction == Direction::AliceToBob ? chunks[idx].alice_mask
                                                : chunks[idx].bob_mask;
}

std::vector<nlohmann::json> bundled_strategy_specs(const ProtocolParams& params) {
  using nlohmann::json;
  std::vector<json> specs = {
      {{"kind", "NoNoise"}},
      {{"kind", "IidRate"}, {"rate", 0.3}},
      {{"kind", "IidRate"}, {"rate", 0.5}},
      {{"kind", "SilenceBob"}},
      {{"kind", "FrontLoad"}},
  };
  std::int64_t t_count = params.chunk_count;
  for (std::int64_t r : {t_count / 5, 2 * t_count / 5, 3 * t_count / 5, 4 * t_count / 5,
                         t_count - params.block_len})
    specs.push_back({{"kind", "TailErase"}, {"fromChunk", r}});
  specs.push_back({{"kind", "AnalysisGuided"}});
  return specs;
}

std::unique_ptr<Strategy> make_strategy(const nlohmann::json& spec) {
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "NoNoise") return std::make_unique<NoNoise>();
  if (kind == "IidRate") return std::make_unique<IidRate>(spec.at("rate").get<double>());
  if (kind == "SilenceBob") return std::make_unique<SilenceBob>();
  if (kind == "FrontLoad") return std::make_unique<FrontLoad>();
  if (kind == "TailErase")
    return std::make_unique<TailErase>(spec.at("fromChunk").get<std::int64_t>());
  if (kind == "AnalysisGuided")
    return std::make_unique<AnalysisGuided>(spec.value("stallBlocks", std::int64_t{1}),
                                            spec.value("tailFrom", std::int64_t{0}));
  if (kind == "RandomSearch" || kind == "Randomized")
    return std::make_unique<Randomized>(spec.value("seed", std::uint64_t{0}));
  throw std::invalid_argument("unknown strategy kind: " + kind);
}

}  // namespace iecc
