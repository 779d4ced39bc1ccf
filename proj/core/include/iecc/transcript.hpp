#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iecc/codes.hpp"
#include "iecc/gf2.hpp"

namespace iecc {

// One chunk of the protocol: Alice's p-bit message, then Bob's 3p/8-bit
// reply, each with the erasure mask the channel applied. Received words
// are clean-with-masked-positions-erased by construction; they are not
// stored separately.
struct ChunkRecord {
  std::int64_t chunk_idx = 0;
  std::int64_t j = 0;  // segment index, (chunk_idx - 1) mod block_len
  BitVector alice_clean;
  BitVector alice_mask;
  BitVector bob_clean;
  BitVector bob_mask;
  int bob_case = 0;  // Phase-1 ladder case that fired, 0 outside the ladder
};

// Everything needed for deterministic replay plus the run outcome.
struct Transcript {
  ProtocolParams params;
  BitVector x;
  std::uint64_t seed = 0;
  std::string strategy_name;
  Frac budget_fraction{0, 1};
  std::vector<ChunkRecord> chunks;
  BitVector output;
  std::int64_t erased_alice = 0;
  std::int64_t erased_bob = 0;
  bool budget_clamped = false;
  bool success = false;
};

// JSON-lines serialization: a header record, one record per chunk, and a
// trailer. Bit-exact round trip.
void write_transcript(const Transcript& t, const std::string& path);
std::string transcript_to_jsonl(const Transcript& t);
Transcript read_transcript(const std::string& path);
Transcript transcript_from_jsonl(const std::string& text);

}  // namespace iecc
