#include "iecc/protocol.hpp"

#include <cassert>
#include <stdexcept>

namespace iecc {

AliceState make_alice(const BitVector& x, const CodeSuite& suite) {
  if (static_cast<std::int64_t>(x.size()) != suite.params.n)
    throw std::invalid_argument("input length mismatch");
  AliceState s;
  s.x = x;
  s.ct = suite.outer.encode(x);
  return s;
}

BobState make_bob(const CodeSuite& suite) {
  BobState s;
  s.block_buffer = TriString(suite.params.block_len * suite.params.p);
  return s;
}

BitVector alice_next_message(const AliceState& s, std::int64_t chunk_idx,
                             const CodeSuite& suite) {
  const auto& pr = suite.params;
  if (chunk_idx < 1 || chunk_idx > pr.chunk_count)
    throw std::out_of_range("chunk index out of range");
  if (s.constant_mode) return BitVector::constant(pr.p, s.constant_bit);
  std::int64_t j = (chunk_idx - 1) % pr.block_len;
  InnerMessage msg{segment(s.ct, j, pr.alpha), s.ind};
  return suite.inner.encode(msg);
}

void alice_receive(AliceState& s, const TriString& m, const CodeSuite& suite) {
  if (s.constant_mode) return;  // absorbing, nothing to process
  const auto& pr = suite.params;
  BobDecodeResult d = bob_decode(m, pr.p);
  if (d.ambiguous) return;  // Case 1: >= 2/3 erased
  if (d.gamma <= 2) {       // Case 2
    if (d.gamma == s.mes) return;
    int b = ((d.gamma - s.mes - 1) % 3 + 3) % 3;  // in {0,1} since gamma != mes
    s.ind.append(b != 0);
    s.mes = d.gamma;
    if (s.ind.len == pr.ind_cap) {
      s.constant_mode = true;
      s.constant_bit = s.x.get(s.ind.as_index(pr.ind_cap));
    }
    return;
  }
  // Case 3: gamma == 3, switch to the parity of |ind| for the rest
  s.constant_mode = true;
  s.constant_bit = (s.ind.len % 2) != 0;
}

namespace {

void enter_pair(BobState& s, BlockDecodeResult&& r, const CodeSuite& suite) {
  const auto& pr = suite.params;
  s.pair_set = true;
  s.xhat0 = std::move(r.x0);
  s.xhat1 = std::move(r.x1);
  s.ct0 = suite.outer.encode(s.xhat0);
  s.ct1 = suite.outer.encode(s.xhat1);
  for (std::int64_t idx = 0; idx < pr.n; ++idx) {
    if (s.xhat0.get(idx) != s.xhat1.get(idx)) {
      s.i_index = idx;
      break;
    }
  }
  s.i_bits = IndString::from_index(s.i_index, pr.ind_cap);
  s.bad.assign(pr.block_len, false);
  for (std::int64_t j : bad_set(s.xhat0, s.xhat1, suite)) s.bad[j] = true;
  s.phase = BobPhase::P1;
  s.mes = 1 + (s.i_bits.bit(0) ? 1 : 0);
  s.next = 1;
}

// Segment equality without materializing the slice.
bool payload_matches(const BitVector& payload, const BitVector& ct, std::int64_t j,
                     std::int64_t alpha) {
  for (std::int64_t t = 0; t < alpha; ++t)
    if (payload.get(t) != ct.get(j * alpha + t)) return false;
  return true;
}

}  // namespace

void bob_receive(BobState& s, const TriString& m, std::int64_t chunk_idx,
                 const CodeSuite& suite) {
  const auto& pr = suite.params;
  s.last_case = 0;
  if (s.xhat_set) return;  // ignores all further instructions

  if (s.phase == BobPhase::P0) {
    s.block_buffer.splice(s.block_filled * pr.p, m);
    ++s.block_filled;
    s.block_erased += m.erased_count();
    if (chunk_idx % pr.block_len != 0) return;
    if (!pr.block_too_erased(s.block_erased)) {
      BlockDecodeResult r = block_list_decode(s.block_buffer, suite);
      assert(r.kind != BlockDecodeResult::Kind::TooErased);
      if (r.kind == BlockDecodeResult::Kind::Unique) {
        s.xhat_set = true;
        s.xhat = std::move(r.x0);
      } else {
        enter_pair(s, std::move(r), suite);
      }
    }
    s.block_filled = 0;
    s.block_erased = 0;
    return;
  }

  if (s.phase == BobPhase::P1) {
    std::int64_t j = (chunk_idx - 1) % pr.block_len;
    // Case 1: ignored segment, or too erased to 2-decode.
    if (s.bad[j] || pr.inner_too_erased(m.erased_count())) {
      s.last_case = 1;
      return;
    }
    InnerDecodeResult dec = suite.inner.list_decode(m);
    assert(!dec.too_erased);
    // A candidate matches side b when it is a well-formed (segment_b, ind)
    // message for this chunk's segment. Constant-word candidates match
    // neither side: while Bob is still in Phase 1 he has never sent a 3-bar
    // and has conveyed fewer than ind_cap bits, so the true Alice cannot
    // legally be in constant mode — a consistent constant is always the
    // spurious candidate, and counting it as a match would let the channel
    // stall Case 2 at half-price.
    const InnerMessage* cand[2] = {nullptr, nullptr};
    for (const auto& c : dec.candidates) {
      if (c.kind != InnerCandidate::Kind::Message) continue;
      for (int b = 0; b < 2; ++b) {
        const BitVector& ct = b == 0 ? s.ct0 : s.ct1;
        if (payload_matches(c.message.payload, ct, j, pr.alpha)) cand[b] = &c.message;
      }
    }
    // Case 2: at most one side has a matching decoded form.
    if (!cand[0] || !cand[1]) {
      s.last_case = 2;
      if (cand[0] || cand[1]) {
        s.xhat_set = true;
        s.xhat = cand[0] ? s.xhat0 : s.xhat1;
      } else {
        ++s.anomaly_count;  // no side matched: the pair no longer holds the truth
      }
      return;
    }
    const IndString& ind0 = cand[0]->ind;
    const IndString& ind1 = cand[1]->ind;
    // Case 4: a side whose ind cannot belong to the real Alice.
    auto disqualified = [&](const IndString& ind) {
      if (ind.len != s.next - 1 && ind.len != s.next) return true;
      return !ind.is_prefix_of(s.i_bits);
    };
    bool d0 = disqualified(ind0), d1 = disqualified(ind1);
    if (d0 || d1) {
      s.last_case = 4;
      if (d0 != d1) {
        s.xhat_set = true;
        s.xhat = d0 ? s.xhat1 : s.xhat0;
      } else {
        ++s.anomaly_count;  // both disqualified: the pair no longer holds the truth
      }
      return;
    }
    // Case 5: lengths differ (by one); the parity of |ind_1| separates them.
    if (ind0.len != ind1.len) {
      s.last_case = 5;
      s.phase = BobPhase::P2;
      s.fin = 3;
      s.par = ind1.len % 2;
      return;
    }
    // Case 6: neither Alice heard the current bit yet.
    if (ind0.len == s.next - 1) {
      s.last_case = 6;
      return;
    }
    // Case 7: both caught up; convey bit i[next].
    assert(ind0.len == s.next);
    s.last_case = 7;
    s.mes = (s.mes + 1 + (s.i_bits.bit(s.next) ? 1 : 0)) % 3;
    ++s.next;
    if (s.next == pr.ind_cap) {
      s.phase = BobPhase::P2;
      s.fin = s.mes;
      s.par = s.xhat1.get(s.i_index) ? 1 : 0;
    }
    return;
  }

  // Phase 2: remember the most recent bit that got through, and keep
  // decoding — a uniquely decoded message pins Alice down. If the lone
  // candidate is a constant word, Alice has already switched, and the
  // constant bit resolves the pair exactly as the end-of-protocol rule
  // would.
  auto bit = m.last_known_bit();
  if (bit) s.last_alice_bit = *bit ? 1 : 0;
  std::int64_t j = (chunk_idx - 1) % pr.block_len;
  if (s.bad[j] || pr.inner_too_erased(m.erased_count())) return;
  InnerDecodeResult dec = suite.inner.list_decode(m);
  if (dec.candidates.size() != 1) return;
  const InnerCandidate& c = dec.candidates.front();
  if (c.kind == InnerCandidate::Kind::Message) {
    bool m0 = payload_matches(c.message.payload, s.ct0, j, pr.alpha);
    bool m1 = payload_matches(c.message.payload, s.ct1, j, pr.alpha);
    if (m0 != m1) {
      s.xhat_set = true;
      s.xhat = m0 ? s.xhat0 : s.xhat1;
    } else {
      ++s.anomaly_count;  // unique candidate matching neither side
    }
  } else {
    bool beta = c.kind == InnerCandidate::Kind::Const1;
    s.xhat_set = true;
    s.xhat = (static_cast<int>(beta) == s.par) ? s.xhat1 : s.xhat0;
  }
}

int bob_next_word(const BobState& s) {
  if (s.xhat_set) return 1;  // arbitrary once the output is fixed
  switch (s.phase) {
    case BobPhase::P0:
      return 0;
    case BobPhase::P1:
      return s.mes;
    case BobPhase::P2:
      return s.fin;
  }
  return 0;
}

BitVector bob_next_message(const BobState& s, const CodeSuite& suite) {
  return bob_encode(bob_next_word(s), suite.params.p);
}

BitVector bob_finalize(const BobState& s, const CodeSuite& suite) {
  if (s.xhat_set) return s.xhat;
  if (s.phase == BobPhase::P2) {
    if (s.last_alice_bit == -1) return s.xhat0;  // nothing delivered: beyond budget
    return s.last_alice_bit == s.par ? s.xhat1 : s.xhat0;
  }
  if (s.pair_set) return s.xhat0;  // protocol ended mid-Phase-1: beyond budget
  return BitVector(suite.params.n);  // never left Phase 0: failure sentinel
}

RunOutput run_protocol(const BitVector& x, Strategy& strategy, const CodeSuite& suite,
                       std::uint64_t seed, Frac budget_fraction,
                       const ChunkObserver& observer) {
  const auto& pr = suite.params;
  RunOutput out;
  Transcript& t = out.transcript;
  t.params = pr;
  t.x = x;
  t.seed = seed;
  t.strategy_name = strategy.name();
  t.budget_fraction = budget_fraction;
  t.chunks.reserve(pr.chunk_count);

  AliceState alice = make_alice(x, suite);
  BobState bob = make_bob(suite);
  Budget budget{pr.total_bits, budget_fraction, 0};
  strategy.begin_run(suite, x, seed);

  for (std::int64_t chunk = 1; chunk <= pr.chunk_count; ++chunk) {
    ChunkRecord rec;
    rec.chunk_idx = chunk;
    rec.j = (chunk - 1) % pr.block_len;

    rec.alice_clean = alice_next_message(alice, chunk, suite);
    {
      ChunkContext ctx{Direction::AliceToBob, chunk,       rec.alice_clean, alice, bob,
                       t.chunks,              suite,       budget.remaining()};
      BitVector mask = strategy.decide_mask(ctx);
      if (clamp_mask(mask, budget.remaining())) t.budget_clamped = true;
      std::int64_t spent = mask.popcount();
      budget.spent += spent;
      t.erased_alice += spent;
      rec.alice_mask = std::move(mask);
    }
    bob_receive(bob, apply_mask(rec.alice_clean, rec.alice_mask), chunk, suite);
    rec.bob_case = bob.last_case;

    rec.bob_clean = bob_next_message(bob, suite);
    {
      ChunkContext ctx{Direction::BobToAlice, chunk,       rec.bob_clean, alice, bob,
                       t.chunks,              suite,       budget.remaining()};
      BitVector mask = strategy.decide_mask(ctx);
      if (clamp_mask(mask, budget.remaining())) t.budget_clamped = true;
      std::int64_t spent = mask.popcount();
      budget.spent += spent;
      t.erased_bob += spent;
      rec.bob_mask = std::move(mask);
    }
    alice_receive(alice, apply_mask(rec.bob_clean, rec.bob_mask), suite);

    ++out.phase_chunks[static_cast<int>(bob.phase)];
    ++out.case_histogram[rec.bob_case];
    t.chunks.push_back(std::move(rec));
    if (observer) observer(t.chunks.back(), alice, bob);
  }

  t.output = bob_finalize(bob, suite);
  t.success = (t.output == x);
  return out;
}

}  // namespace iecc
