#include <random>

#include "catch_amalgamated.hpp"
#include "iecc/adversary.hpp"
#include "iecc/protocol.hpp"

using namespace iecc;

namespace {

const CodeSuite& suite64() {
  static CodeSuite suite = make_code_suite(64, Frac{1, 10});
  return suite;
}

BitVector random_bits(std::int64_t len, std::mt19937_64& rng) {
  BitVector v(len);
  for (std::int64_t i = 0; i < len; ++i) v.set(i, rng() & 1);
  return v;
}

}  // namespace

TEST_CASE("apply_mask erases exactly the masked positions", "[adversary]") {
  BitVector clean = BitVector::from_string("101");

  TriString unchanged = apply_mask(clean, BitVector(3));
  CHECK(unchanged.to_string() == "101");
  CHECK(unchanged.erased_count() == 0);

  TriString gone = apply_mask(clean, BitVector::constant(3, true));
  CHECK(gone.to_string() == "???");

  TriString first = apply_mask(clean, BitVector::from_string("100"));
  CHECK(first.to_string() == "?01");

  // Erasure-only: every unerased position carries the clean bit.
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    BitVector c = random_bits(100, rng);
    BitVector m = random_bits(100, rng);
    TriString r = apply_mask(c, m);
    for (int i = 0; i < 100; ++i) {
      CHECK(r.known(i) == !m.get(i));
      if (r.known(i)) CHECK(r.bit(i) == c.get(i));
    }
  }
}

TEST_CASE("clamp_mask drops the highest positions first", "[adversary]") {
  BitVector mask = BitVector::from_string("110101");
  CHECK_FALSE(clamp_mask(mask, 4));  // already within budget
  CHECK(mask == BitVector::from_string("110101"));
  CHECK(clamp_mask(mask, 2));
  CHECK(mask == BitVector::from_string("110000"));
  CHECK(clamp_mask(mask, 0));
  CHECK(mask.is_zero());
}

TEST_CASE("budget ledger is exact across a run", "[adversary]") {
  const CodeSuite& suite = suite64();
  std::mt19937_64 rng(41);
  BitVector x = random_bits(suite.params.n, rng);
  Frac budget{8, 55};
  auto strategy = make_strategy({{"kind", "IidRate"}, {"rate", 0.5}});
  RunOutput out = run_protocol(x, *strategy, suite, 7, budget);
  const Transcript& t = out.transcript;

  std::int64_t alice = 0, bob = 0;
  for (const auto& c : t.chunks) {
    alice += c.alice_mask.popcount();
    bob += c.bob_mask.popcount();
  }
  CHECK(alice == t.erased_alice);
  CHECK(bob == t.erased_bob);
  CHECK(alice + bob <= budget.floor_mul(suite.params.total_bits));
  // IidRate(0.5) wants far more than the budget allows; it must spend it all.
  CHECK(alice + bob == budget.floor_mul(suite.params.total_bits));
}

TEST_CASE("strategy shapes", "[adversary]") {
  const CodeSuite& suite = suite64();
  const auto& pr = suite.params;
  std::mt19937_64 rng(42);
  BitVector x = random_bits(pr.n, rng);

  SECTION("NoNoise never erases") {
    auto s = make_strategy({{"kind", "NoNoise"}});
    RunOutput out = run_protocol(x, *s, suite, 1, Frac{1, 1});
    CHECK(out.transcript.erased_alice + out.transcript.erased_bob == 0);
  }

  SECTION("IidRate(1.0) with an unlimited budget is a full blackout") {
    auto s = make_strategy({{"kind", "IidRate"}, {"rate", 1.0}});
    RunOutput out = run_protocol(x, *s, suite, 2, Frac{1, 1});
    CHECK(out.transcript.erased_alice + out.transcript.erased_bob == pr.total_bits);
  }

  SECTION("SilenceBob touches only the feedback direction") {
    auto s = make_strategy({{"kind", "SilenceBob"}});
    RunOutput out = run_protocol(x, *s, suite, 3, Frac{1, 1});
    CHECK(out.transcript.erased_alice == 0);
    CHECK(out.transcript.erased_bob == pr.bob_len * pr.chunk_count);
    CHECK(out.transcript.success);  // feedback is not needed on a clean forward channel
  }

  SECTION("TailErase leaves the head clean") {
    std::int64_t from = pr.chunk_count / 2;
    auto s = make_strategy({{"kind", "TailErase"}, {"fromChunk", from}});
    RunOutput out = run_protocol(x, *s, suite, 4, Frac{1, 1});
    for (std::int64_t i = 0; i < from - 1; ++i)
      CHECK(out.transcript.chunks[i].alice_mask.is_zero());
    CHECK(out.transcript.chunks[from - 1].alice_mask.popcount() == pr.p);
    CHECK(out.transcript.success);  // the first clean block already decoded
  }

  SECTION("unknown kinds are rejected") {
    CHECK_THROWS_AS(make_strategy({{"kind", "Gremlins"}}), std::invalid_argument);
  }
}

TEST_CASE("seed derivation splits streams", "[adversary]") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("randomized strategies are deterministic per seed", "[adversary]") {
  const CodeSuite& suite = suite64();
  std::mt19937_64 rng(43);
  BitVector x = random_bits(suite.params.n, rng);
  auto a = make_strategy({{"kind", "Randomized"}, {"seed", 5}});
  auto b = make_strategy({{"kind", "Randomized"}, {"seed", 5}});
  RunOutput ra = run_protocol(x, *a, suite, 11, Frac{8, 55});
  RunOutput rb = run_protocol(x, *b, suite, 11, Frac{8, 55});
  CHECK(ra.transcript.erased_alice == rb.transcript.erased_alice);
  CHECK(ra.transcript.erased_bob == rb.transcript.erased_bob);
  CHECK(ra.transcript.output == rb.transcript.output);
}
