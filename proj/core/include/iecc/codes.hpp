#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iecc/field.hpp"
#include "iecc/gf2.hpp"

namespace iecc {

// Exact rational, used for epsilon and budget fractions so every threshold
// comparison is integer arithmetic (no floating-point drift in replay).
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Frac parse(const std::string& s);  // "0.1", "1/10", "3"
  Frac reduced() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend Frac operator*(Frac a, Frac b);
  friend Frac operator+(Frac a, Frac b);
  friend Frac operator-(Frac a, Frac b);
  friend bool operator==(Frac a, Frac b);
  friend bool operator<(Frac a, Frac b);

  // floor(*this * total), for budget sizing.
  std::int64_t floor_mul(std::int64_t total) const;
};

// Raised when a list decode finds more than two consistent words below its
// erasure threshold; signals a broken code construction, never expected.
struct InternalListOverflow : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when a received word is consistent with no valid transmission,
// i.e. the channel delivered a non-erasure corruption.
struct NoConsistentWord : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Derived protocol sizes. All divisibility padding happens here.
// ---------------------------------------------------------------------------
struct ProtocolParams {
  std::int64_t n = 0;    // input bits, power of two
  Frac eps;              // in (0, 1/8]

  int q = 0;             // outer symbol bits; alpha == q
  std::int64_t k_outer = 0;   // outer message symbols (n padded up)
  std::int64_t n_outer = 0;   // outer evaluation points
  std::int64_t alpha = 0;     // segment bits
  std::int64_t m = 0;         // outer codeword bits = n_outer * q

  int ind_cap = 0;            // log2(n)
  int len_field_bits = 0;     // ceil(log2(ind_cap + 1))
  int var_bits = 0;           // alpha + len_field_bits + ind_cap (marker excluded)
  std::int64_t k_in = 0;      // inner message bytes (marker included)
  std::int64_t n_in = 0;      // inner evaluation points
  std::int64_t p = 0;         // inner codeword bits = 256 * n_in

  std::int64_t block_len = 0;   // chunks per block = m / alpha
  std::int64_t num_blocks = 0;  // ceil(1/eps)
  std::int64_t chunk_count = 0; // T = num_blocks * block_len
  std::int64_t bob_len = 0;     // 3p/8
  std::int64_t total_bits = 0;  // chunk_count * (p + 3p/8)

  // Threshold predicates, exact in integer arithmetic. Decodability uses
  // strict '<'; the erased side is inclusive '>='.
  bool alice_word_ambiguous(std::int64_t erased) const {  // >= 2/3 of 3p/8
    return 3 * erased >= 2 * bob_len;
  }
  bool inner_too_erased(std::int64_t erased) const {  // >= (3/4 - 3/2 eps) p
    return 4 * eps.den * erased >= p * (3 * eps.den - 6 * eps.num);
  }
  bool block_too_erased(std::int64_t erased) const {  // >= (3/4 - 9/4 eps) L
    return 4 * eps.den * erased >= block_len * p * (3 * eps.den - 9 * eps.num);
  }
};

// Throws std::invalid_argument when n is not a power of two >= 16, when
// epsilon is outside (0, 1/8], or when the inner field cannot host the
// required evaluation points.
ProtocolParams derive_params(std::int64_t n, Frac eps);

// ---------------------------------------------------------------------------
// Alice's growing index string; bit t is the t'th appended bit, and the
// full-length string reads most-significant-first as an index in [0, n).
// ---------------------------------------------------------------------------
struct IndString {
  int len = 0;
  std::uint64_t bits = 0;

  bool bit(int t) const { return (bits >> t) & 1; }
  void append(bool b) {
    bits |= static_cast<std::uint64_t>(b) << len;
    ++len;
  }
  bool is_prefix_of(const IndString& other) const {
    if (len > other.len) return false;
    std::uint64_t mask = len == 64 ? ~0ull : ((1ull << len) - 1);
    return (bits & mask) == (other.bits & mask);
  }
  std::int64_t as_index(int width) const {
    std::int64_t idx = 0;
    for (int t = 0; t < width; ++t) idx |= static_cast<std::int64_t>(bit(t)) << (width - 1 - t);
    return idx;
  }
  static IndString from_index(std::int64_t idx, int width) {
    IndString s;
    for (int t = 0; t < width; ++t) s.append((idx >> (width - 1 - t)) & 1);
    return s;
  }
  bool operator==(const IndString& o) const = default;
  std::string to_string() const;
};

struct InnerMessage {
  BitVector payload;  // alpha bits, a segment of the outer codeword
  IndString ind;

  bool operator==(const InnerMessage& o) const {
    return payload == o.payload && ind == o.ind;
  }
};

// ---------------------------------------------------------------------------
// Outer code: Reed-Solomon over GF(2^q), one symbol per alpha-bit segment.
// Distinct inputs agree on at most k_outer-1 <= eps*m/alpha segments.
// ---------------------------------------------------------------------------
class OuterCode {
 public:
  explicit OuterCode(const ProtocolParams& params);

  // n bits -> m bits via Horner evaluation (the reference route).
  BitVector encode(const BitVector& x) const;

  // Same map through the generator matrix; kept as the second algebraic
  // route for cross-checks and as the row source for block decoding.
  BitVector encode_via_matrix(const BitVector& x) const;

  const BitMatrix& generator() const { return gen_; }
  const GF2m& field() const { return field_; }

  std::vector<std::uint32_t> message_symbols(const BitVector& x) const;
  // Inverse of message_symbols; nullopt when the padding bits beyond n are
  // nonzero (no input maps to these coefficients).
  std::optional<BitVector> symbols_to_input(const std::vector<std::uint32_t>& coeffs) const;

 private:
  std::int64_t n_, k_, points_;
  int q_;
  GF2m field_;
  BitMatrix gen_;  // m x n
};

BitVector segment(const BitVector& codeword, std::int64_t j, std::int64_t alpha);

// ---------------------------------------------------------------------------
// Inner code: serialize(payload, ind) with a constant marker bit, packed
// into bytes, Reed-Solomon over GF(256), each symbol expanded by the
// 256-bit Hadamard code. The marker makes the code a coset of a linear
// code, so no valid message lands near the all-zero word.
// ---------------------------------------------------------------------------
struct InnerCandidate {
  enum class Kind { Message, Const0, Const1 };
  Kind kind;
  InnerMessage message;  // valid when kind == Message
};

struct InnerDecodeResult {
  bool too_erased = false;
  std::vector<InnerCandidate> candidates;
  int malformed_dropped = 0;
};

class InnerCode {
 public:
  InnerCode(std::int64_t alpha, int ind_cap, Frac eps);

  std::int64_t alpha() const { return alpha_; }
  int ind_cap() const { return ind_cap_; }
  int len_field_bits() const { return len_field_bits_; }
  int var_bits() const { return var_bits_; }
  std::int64_t k_in() const { return k_in_; }
  std::int64_t n_in() const { return n_in_; }
  std::int64_t p() const { return p_; }

  BitVector serialize(const InnerMessage& msg) const;
  std::optional<InnerMessage> deserialize(const BitVector& v) const;

  BitVector encode(const InnerMessage& msg) const;       // column-XOR fast path
  BitVector encode_vars(const BitVector& vars) const;    // raw var-bit vector
  BitVector encode_direct(const InnerMessage& msg) const;  // RS+Hadamard route

  // TooErased at >= (3/4 - 3/2 eps) p erased; otherwise every codeword and
  // constant word consistent with the unerased positions (at most 2 in
  // total, or InternalListOverflow).
  InnerDecodeResult list_decode(const TriString& received) const;

  const BitVector& offset() const { return offset_; }
  // One packed word per row; var_bits <= 64 is enforced at construction.
  std::uint64_t row_word(std::int64_t r) const { return rows_[r]; }
  const std::vector<BitVector>& columns() const { return cols_; }

  bool too_erased(std::int64_t erased) const {
    return 4 * eps_.den * erased >= p_ * (3 * eps_.den - 6 * eps_.num);
  }

 private:
  BitVector encode_bits(bool marker, const BitVector& vars) const;

  std::int64_t alpha_;
  int ind_cap_, len_field_bits_, var_bits_;
  std::int64_t k_in_, n_in_, p_;
  Frac eps_;
  GF2m field_;
  BitVector offset_;               // image of the marker alone
  std::vector<BitVector> cols_;    // generator columns, p bits each
  std::vector<std::uint64_t> rows_;  // generator rows, packed
};

// true iff every unerased symbol equals beta.
bool const_consistency(const TriString& received, bool beta);

// ---------------------------------------------------------------------------
// Bob's feedback alphabet: four words of length 3p/8 at pairwise relative
// distance exactly 2/3.
// ---------------------------------------------------------------------------
BitVector bob_encode(int gamma, std::int64_t p);

struct BobDecodeResult {
  bool ambiguous = false;
  int gamma = -1;
};

// Ambiguous at >= 2/3 erased (inclusive); otherwise the unique consistent
// word. Throws NoConsistentWord if no word matches.
BobDecodeResult bob_decode(const TriString& received, std::int64_t p);

// ---------------------------------------------------------------------------
// The block code C: one full rotation of segments, empty-ind serialization.
// ---------------------------------------------------------------------------
struct CodeSuite {
  ProtocolParams params;
  OuterCode outer;
  InnerCode inner;

  explicit CodeSuite(const ProtocolParams& p);
};

CodeSuite make_code_suite(std::int64_t n, Frac eps);

BitVector block_encode(const BitVector& x, const CodeSuite& suite);

struct BlockDecodeResult {
  enum class Kind { TooErased, Unique, Pair };
  Kind kind;
  BitVector x0, x1;  // Unique fills x0; Pair fills both, x0 < x1
};

BlockDecodeResult block_list_decode(const TriString& received, const CodeSuite& suite);

// The affine solve behind block_list_decode, without the erasure-threshold
// gate. Kind is never TooErased; throws InternalListOverflow when more
// than two inputs remain consistent.
BlockDecodeResult block_solve(const TriString& received, const CodeSuite& suite);

// Segment indices where the outer encodings of x0 and x1 coincide.
// Throws std::invalid_argument when x0 == x1.
std::vector<std::int64_t> bad_set(const BitVector& x0, const BitVector& x1,
                                  const CodeSuite& suite);

// Cheap sampled self-check of the inner-code distance bounds; throws
// std::logic_error on violation. Harness entry points run this before any
// protocol experiment.
void quick_distance_selfcheck(const CodeSuite& suite, int samples, std::uint64_t seed);

}  // namespace iecc
