#include <algorithm>
#include <random>

#include "catch_amalgamated.hpp"
#include "iecc/gf2.hpp"

using namespace iecc;

namespace {

BitVector random_bits(std::size_t len, std::mt19937_64& rng) {
  BitVector v(len);
  for (std::size_t i = 0; i < len; ++i) v.set(i, rng() & 1);
  return v;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BitMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng() & 1) g.set(r, c, true);
  return g;
}

std::size_t solver_rank(const BitMatrix& g) {
  AffineSolver s(g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) s.add_row(g.row(r), false);
  return s.rank();
}

// All message vectors of a small code consistent with the received word.
std::vector<BitVector> brute_solutions(const BitMatrix& g, const BitVector& offset,
                                       const TriString& received) {
  std::vector<BitVector> out;
  std::size_t k = g.cols();
  for (std::uint64_t m = 0; m < (1ull << k); ++m) {
    BitVector v(k);
    for (std::size_t b = 0; b < k; ++b) v.set(b, (m >> b) & 1);
    BitVector cw = mat_vec_mul(g, v);
    cw.xor_assign(offset);
    bool ok = true;
    for (std::size_t i = 0; i < cw.size() && ok; ++i)
      if (received.known(i) && received.bit(i) != cw.get(i)) ok = false;
    if (ok) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("bit vector basics", "[gf2]") {
  BitVector v = BitVector::from_string("1011");
  CHECK(v.size() == 4);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
  CHECK(v.popcount() == 3);
  CHECK(v.to_string() == "1011");
  CHECK_THROWS_AS(v.get(4), std::out_of_range);
  CHECK_THROWS_AS(v.set(100, true), std::out_of_range);

  std::mt19937_64 rng(1);
  for (std::size_t len : {1u, 7u, 64u, 65u, 300u}) {
    BitVector r = random_bits(len, rng);
    CHECK(BitVector::from_hex(r.to_hex(), len) == r);
  }
}

TEST_CASE("mat_vec_mul examples", "[gf2]") {
  BitVector v = BitVector::from_string("1011");
  CHECK(mat_vec_mul(BitMatrix::identity(4), v) == v);

  BitMatrix zero(5, 4);
  CHECK(mat_vec_mul(zero, v).is_zero());

  // [[1,1],[0,1]] * (1,1) = (0,1)
  BitMatrix g(2, 2);
  g.set(0, 0, true);
  g.set(0, 1, true);
  g.set(1, 1, true);
  CHECK(mat_vec_mul(g, BitVector::from_string("11")) == BitVector::from_string("01"));

  CHECK_THROWS_AS(mat_vec_mul(g, v), std::invalid_argument);
}

TEST_CASE("tri string construction and accounting", "[gf2]") {
  BitVector clean = BitVector::from_string("101");
  BitVector mask = BitVector::from_string("100");
  TriString t = TriString::from_clean_and_mask(clean, mask);
  CHECK(t.to_string() == "?01");
  CHECK(t.erased_count() == 1);
  CHECK(t.last_known_bit().value() == true);
  CHECK(TriString::all_erased(5).erased_count() == 5);
  CHECK_FALSE(TriString::all_erased(5).last_known_bit().has_value());

  // Erased positions carry a zero bit, so equality is canonical.
  TriString a = TriString::from_clean_and_mask(BitVector::from_string("111"), mask);
  TriString b = TriString::from_clean_and_mask(BitVector::from_string("011"), mask);
  CHECK(a == b);
}

TEST_CASE("solve_affine_erasure on a Hamming-style code", "[gf2]") {
  // Systematic [7,4] generator; rows 4..6 are the parity checks.
  BitMatrix g(7, 4);
  for (int i = 0; i < 4; ++i) g.set(i, i, true);
  int parity[3][3] = {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (int r = 0; r < 3; ++r)
    for (int c : parity[r]) g.set(4 + r, c, true);
  BitVector offset(7);

  std::mt19937_64 rng(2);
  BitVector v = random_bits(4, rng);
  BitVector cw = mat_vec_mul(g, v);

  SECTION("zero erasures give the unique message") {
    SolutionSpace s = solve_affine_erasure(g, offset, TriString::fully_known(cw));
    CHECK_FALSE(s.empty);
    CHECK(s.dim() == 0);
    CHECK(s.particular == v);
  }

  SECTION("all positions erased give the whole message space") {
    SolutionSpace s = solve_affine_erasure(g, offset, TriString::all_erased(7));
    CHECK(s.dim() == 4);
  }

  SECTION("three erasures on the parity rows still decode uniquely") {
    BitVector mask(7);
    mask.set(4, true);
    mask.set(5, true);
    mask.set(6, true);
    TriString received = TriString::from_clean_and_mask(cw, mask);
    SolutionSpace s = solve_affine_erasure(g, offset, received);
    CHECK(s.dim() == 0);
    CHECK(s.particular == v);
    // Cross-check against the 16-codeword enumeration.
    auto brute = brute_solutions(g, offset, received);
    REQUIRE(brute.size() == 1);
    CHECK(brute[0] == v);
  }

  SECTION("contradictory constraints give the empty space") {
    BitMatrix one(2, 1);
    one.set(0, 0, true);
    one.set(1, 0, true);
    TriString recv = TriString::fully_known(BitVector::from_string("01"));
    CHECK(solve_affine_erasure(one, BitVector(2), recv).empty);
  }
}

TEST_CASE("enumerate_solutions caps", "[gf2]") {
  SolutionSpace s;
  s.particular = BitVector::from_string("00");
  CHECK(enumerate_solutions(s, 1)->size() == 1);

  s.null_basis.push_back(BitVector::from_string("10"));
  auto two = enumerate_solutions(s, 2);
  REQUIRE(two.has_value());
  REQUIRE(two->size() == 2);
  CHECK((*two)[0] == BitVector::from_string("00"));
  CHECK((*two)[1] == BitVector::from_string("10"));

  s.null_basis.push_back(BitVector::from_string("01"));
  CHECK_FALSE(enumerate_solutions(s, 2).has_value());
  CHECK(enumerate_solutions(s, 4)->size() == 4);
}

TEST_CASE("round trip through full-column-rank systems", "[gf2]") {
  std::mt19937_64 rng(3);
  int done = 0;
  for (int trial = 0; trial < 80 && done < 40; ++trial) {
    BitMatrix g = random_matrix(20, 8, rng);
    if (solver_rank(g) < 8) continue;
    ++done;
    BitVector v = random_bits(8, rng);
    BitVector offset = random_bits(20, rng);
    BitVector cw = mat_vec_mul(g, v);
    cw.xor_assign(offset);
    SolutionSpace s = solve_affine_erasure(g, offset, TriString::fully_known(cw));
    REQUIRE(s.dim() == 0);
    CHECK(s.particular == v);
  }
  CHECK(done == 40);
}

TEST_CASE("erasures only ever grow the solution set", "[gf2]") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    BitMatrix g = random_matrix(12, 8, rng);
    BitVector offset = random_bits(12, rng);
    BitVector v = random_bits(8, rng);
    BitVector cw = mat_vec_mul(g, v);
    cw.xor_assign(offset);

    BitVector mask1(12), mask2(12);
    for (int i = 0; i < 12; ++i) {
      bool a = rng() % 3 == 0;
      mask1.set(i, a);
      mask2.set(i, a || rng() % 3 == 0);  // mask2 is a superset
    }
    auto sols1 = brute_solutions(g, offset, TriString::from_clean_and_mask(cw, mask1));
    auto sols2 = brute_solutions(g, offset, TriString::from_clean_and_mask(cw, mask2));
    for (const auto& s : sols1)
      CHECK(std::find(sols2.begin(), sols2.end(), s) != sols2.end());

    // And the solver agrees with brute force on both instances.
    for (const auto& [mask, brute] : {std::pair{mask1, sols1}, std::pair{mask2, sols2}}) {
      SolutionSpace sp =
          solve_affine_erasure(g, offset, TriString::from_clean_and_mask(cw, mask));
      auto listed = enumerate_solutions(sp, std::size_t{1} << 9);
      REQUIRE(listed.has_value());
      REQUIRE(listed->size() == brute.size());
      for (const auto& s : brute)
        CHECK(std::find(listed->begin(), listed->end(), s) != listed->end());
    }
  }
}
