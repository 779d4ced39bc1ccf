#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iecc/codes.hpp"
#include "iecc/gf2.hpp"
#include "iecc/transcript.hpp"

// Independent brute-force references. These deliberately avoid the solver
// path: tables are built by encoding every message, decoded by filtering,
// and distances taken by exhaustive comparison.

namespace iecc {

// Every codeword of an affine code with message space at most 2^16,
// indexed by raw message value.
struct TinyCodeTable {
  int msg_bits = 0;
  std::vector<BitVector> codewords;

  static TinyCodeTable from_inner(const InnerCode& code);
  static TinyCodeTable from_affine(const std::vector<BitVector>& columns,
                                   const BitVector& offset);
};

// All table entries consistent with every unerased position, as raw
// message values.
std::vector<std::uint32_t> brute_list_decode(const TinyCodeTable& table,
                                             const TriString& received);

struct DistanceReport {
  std::int64_t min_pairwise = 0;
  std::int64_t min_to_zero = 0;
  std::int64_t min_to_ones = 0;
};

// Exact minima by full enumeration: O(|table|^2) word operations.
DistanceReport exhaustive_min_distance(const TinyCodeTable& table);

// Exact minima using the affine structure (pairwise distance equals the
// weight of the linear part's image): one pass over the message space.
// Cross-checked against exhaustive_min_distance in the test suite.
DistanceReport affine_min_distance(const TinyCodeTable& table, const BitVector& offset);

struct AttackSearchResult {
  bool found = false;
  std::int64_t trial = -1;  // randomized trial index, -1 for a bundled strategy
  std::string strategy;
  Transcript counterexample;
  std::int64_t runs = 0;
};

// Runs `tries` randomized budgeted adversaries plus the bundled
// deterministic suite against one input; reports the first transcript
// whose output differs from x. Deterministic given seed.
AttackSearchResult attack_search(const CodeSuite& suite, const BitVector& x,
                                 Frac budget_fraction, std::int64_t tries,
                                 std::uint64_t seed);

}  // namespace iecc
