#include "iecc/oracle.hpp"

#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iecc/adversary.hpp"
#include "iecc/protocol.hpp"

namespace iecc {

TinyCodeTable TinyCodeTable::from_affine(const std::vector<BitVector>& columns,
                                         const BitVector& offset) {
  TinyCodeTable t;
  t.msg_bits = static_cast<int>(columns.size());
  if (t.msg_bits > 16) throw std::invalid_argument("message space above 2^16");
  std::uint32_t count = 1u << t.msg_bits;
  t.codewords.reserve(count);
  for (std::uint32_t v = 0; v < count; ++v) {
    BitVector cw = offset;
    for (int b = 0; b < t.msg_bits; ++b)
      if ((v >> b) & 1) cw.xor_assign(columns[b]);
    t.codewords.push_back(std::move(cw));
  }
  return t;
}

TinyCodeTable TinyCodeTable::from_inner(const InnerCode& code) {
  return from_affine(code.columns(), code.offset());
}

std::vector<std::uint32_t> brute_list_decode(const TinyCodeTable& table,
                                             const TriString& received) {
  std::vector<std::uint32_t> hits;
  auto kw = received.known_mask().words();
  auto bw = received.bits().words();
  for (std::uint32_t v = 0; v < table.codewords.size(); ++v) {
    auto cw = table.codewords[v].words();
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < cw.size(); ++k) acc |= kw[k] & (bw[k] ^ cw[k]);
    if (acc == 0) hits.push_back(v);
  }
  return hits;
}

DistanceReport exhaustive_min_distance(const TinyCodeTable& table) {
  DistanceReport rep;
  rep.min_pairwise = std::numeric_limits<std::int64_t>::max();
  rep.min_to_zero = std::numeric_limits<std::int64_t>::max();
  rep.min_to_ones = std::numeric_limits<std::int64_t>::max();
  std::size_t n = table.codewords.size();
  std::size_t len = table.codewords.empty() ? 0 : table.codewords[0].size();
  for (std::size_t a = 0; a < n; ++a) {
    std::int64_t w = table.codewords[a].popcount();
    rep.min_to_zero = std::min(rep.min_to_zero, w);
    rep.min_to_ones = std::min(rep.min_to_ones, static_cast<std::int64_t>(len) - w);
    for (std::size_t b = a + 1; b < n; ++b) {
      std::int64_t d = table.codewords[a].hamming_distance(table.codewords[b]);
      rep.min_pairwise = std::min(rep.min_pairwise, d);
    }
  }
  return rep;
}

DistanceReport affine_min_distance(const TinyCodeTable& table, const BitVector& offset) {
  DistanceReport rep;
  rep.min_pairwise = std::numeric_limits<std::int64_t>::max();
  rep.min_to_zero = std::numeric_limits<std::int64_t>::max();
  rep.min_to_ones = std::numeric_limits<std::int64_t>::max();
  std::size_t len = table.codewords.empty() ? 0 : table.codewords[0].size();
  for (std::uint32_t v = 0; v < table.codewords.size(); ++v) {
    const BitVector& cw = table.codewords[v];
    std::int64_t w = cw.popcount();
    rep.min_to_zero = std::min(rep.min_to_zero, w);
    rep.min_to_ones = std::min(rep.min_to_ones, static_cast<std::int64_t>(len) - w);
    if (v != 0) {
      // cw ^ offset is the linear image of v; its weight is the distance
      // between any two codewords whose messages differ by v.
      std::int64_t d = cw.hamming_distance(offset);
      rep.min_pairwise = std::min(rep.min_pairwise, d);
    }
  }
  return rep;
}

AttackSearchResult attack_search(const CodeSuite& suite, const BitVector& x,
                                 Frac budget_fraction, std::int64_t tries,
                                 std::uint64_t seed) {
  using nlohmann::json;
  AttackSearchResult res;

  std::vector<json> bundled = bundled_strategy_specs(suite.params);
  for (std::size_t i = 0; i < bundled.size(); ++i) {
    auto strat = make_strategy(bundled[i]);
    RunOutput out = run_protocol(x, *strat, suite, derive_seed(seed, i), budget_fraction);
    ++res.runs;
    if (!out.transcript.success) {
      res.found = true;
      res.trial = -1;
      res.strategy = strat->name();
      res.counterexample = std::move(out.transcript);
      return res;
    }
  }

  for (std::int64_t trial = 0; trial < tries; ++trial) {
    json spec{{"kind", "Randomized"}, {"seed", trial}};
    auto strat = make_strategy(spec);
    RunOutput out =
        run_protocol(x, *strat, suite, derive_seed(seed, 1000 + trial), budget_fraction);
    ++res.runs;
    if (!out.transcript.success) {
      res.found = true;
      res.trial = trial;
      res.strategy = strat->name();
      res.counterexample = std::move(out.transcript);
      return res;
    }
  }
  return res;
}

}  // namespace iecc
