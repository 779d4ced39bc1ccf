#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "iecc/adversary.hpp"
#include "iecc/codes.hpp"
#include "iecc/gf2.hpp"
#include "iecc/transcript.hpp"

// The two state machines of the interactive protocol. Chunks are numbered
// 1..T; in each chunk Alice sends p bits, then Bob replies with 3p/8 bits.
// Alice rotates through the outer codeword's segments and appends her
// current ind; Bob list-decodes blockwise in Phase 0, narrows to two
// candidate inputs, conveys a distinguishing index bit-by-bit in Phase 1,
// and resolves via a single constant bit in Phase 2.

namespace iecc {

struct AliceState {
  BitVector x;
  BitVector ct;  // outer codeword of x, cached
  IndString ind;
  int mes = 0;  // last feedback value that got through
  bool constant_mode = false;  // absorbing: sends constant_bit^p forever
  bool constant_bit = false;
};

enum class BobPhase { P0, P1, P2 };

struct BobState {
  BobPhase phase = BobPhase::P0;

  bool xhat_set = false;  // absorbing
  BitVector xhat;

  bool pair_set = false;
  BitVector xhat0, xhat1;
  BitVector ct0, ct1;  // outer codewords of the pair, cached
  IndString i_bits;    // distinguishing index, ind_cap bits, MSB first
  std::int64_t i_index = -1;
  std::vector<bool> bad;  // segment indices where the pair's encodings agree

  int mes = 0;   // last word value sent in Phase 1
  int next = 1;  // index bits begun; Phase-1 entry conveys bit 0
  int fin = -1;
  int par = -1;

  TriString block_buffer;  // Phase-0 accumulator, block_len * p trits
  std::int64_t block_filled = 0;
  std::int64_t block_erased = 0;

  int last_alice_bit = -1;  // Phase 2: most recent delivered bit, -1 = none

  int last_case = 0;  // Phase-1 ladder case fired on the latest receive
  // Defensive branches; stays zero as long as the candidate pair contains
  // Alice's true input, which the erasure model guarantees in budget.
  std::int64_t anomaly_count = 0;
};

AliceState make_alice(const BitVector& x, const CodeSuite& suite);
BobState make_bob(const CodeSuite& suite);

// Alice's wire word for this chunk: the inner encoding of the current
// segment with her ind, or her constant bit repeated.
BitVector alice_next_message(const AliceState& s, std::int64_t chunk_idx,
                             const CodeSuite& suite);

// Feedback-word processing: first matching case of {too erased; new value
// gamma in {0,1,2}; gamma == 3}.
void alice_receive(AliceState& s, const TriString& m, const CodeSuite& suite);

// Phase 0 block accumulation and decode, the Phase-1 case ladder, or the
// Phase-2 resolver (bit recorder plus unique-decode check). Updates
// s.last_case.
void bob_receive(BobState& s, const TriString& m, std::int64_t chunk_idx,
                 const CodeSuite& suite);

int bob_next_word(const BobState& s);
BitVector bob_next_message(const BobState& s, const CodeSuite& suite);

BitVector bob_finalize(const BobState& s, const CodeSuite& suite);

struct RunOutput {
  Transcript transcript;
  std::array<std::int64_t, 3> phase_chunks{0, 0, 0};  // chunks processed in P0/P1/P2
  std::array<std::int64_t, 8> case_histogram{};       // [0] = outside the ladder
};

using ChunkObserver =
    std::function<void(const ChunkRecord&, const AliceState&, const BobState&)>;

// Executes all T chunks against `strategy` under the given budget
// fraction; deterministic given (x, strategy, seed).
RunOutput run_protocol(const BitVector& x, Strategy& strategy, const CodeSuite& suite,
                       std::uint64_t seed, Frac budget_fraction,
                       const ChunkObserver& observer = nullptr);

}  // namespace iecc
