#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Bit-packed GF(2) linear algebra: vectors, matrices, and an incremental
// affine solver used for all erasure decoding. Arithmetic is exact
// (XOR/AND); vectors keep their tail bits zero so word-level comparisons
// are canonical.

namespace iecc {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), w_(word_count(len), 0) {}

  static BitVector from_string(std::string_view bits);  // "1011" -> bits 1,0,1,1
  static BitVector from_hex(std::string_view hex, std::size_t len);
  static BitVector constant(std::size_t len, bool value);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);

  void xor_assign(const BitVector& other);
  std::size_t popcount() const;
  bool is_zero() const;

  // Number of positions where the two vectors differ. Lengths must match.
  std::size_t hamming_distance(const BitVector& other) const;

  // Bits [offset, offset+len) as a new vector.
  BitVector slice(std::size_t offset, std::size_t len) const;

  std::span<const std::uint64_t> words() const { return w_; }
  std::span<std::uint64_t> words() { return w_; }

  // Little-endian within bytes: bit i lives in byte i/8, position i%8.
  std::string to_hex() const;
  std::string to_string() const;  // "1011"

  bool operator==(const BitVector& o) const { return len_ == o.len_ && w_ == o.w_; }
  bool operator!=(const BitVector& o) const { return !(*this == o); }
  bool operator<(const BitVector& o) const;  // lexicographic by bit index

  static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }
  void clear_tail();

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> w_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_(BitVector::word_count(cols)), w_(rows * wpr_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);

  std::span<const std::uint64_t> row(std::size_t r) const { return {&w_[r * wpr_], wpr_}; }
  std::span<std::uint64_t> row(std::size_t r) { return {&w_[r * wpr_], wpr_}; }

  void set_row(std::size_t r, const BitVector& v);
  BitVector row_vector(std::size_t r) const;

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> w_;
};

// result[r] = XOR_c G[r,c] * v[c]. Throws std::invalid_argument on a
// dimension mismatch.
BitVector mat_vec_mul(const BitMatrix& g, const BitVector& v);

// A fixed-length string over {0, 1, erased}. Erased positions carry bit
// value 0 in `bits` so equal TriStrings compare equal word-by-word.
class TriString {
 public:
  TriString() = default;
  explicit TriString(std::size_t len) : bits_(len), known_(len) {}

  // mask bit set => position erased.
  static TriString from_clean_and_mask(const BitVector& clean, const BitVector& mask);
  static TriString all_erased(std::size_t len);
  static TriString fully_known(const BitVector& clean);

  std::size_t size() const { return bits_.size(); }
  bool known(std::size_t i) const { return known_.get(i); }
  bool bit(std::size_t i) const { return bits_.get(i); }

  void set_known(std::size_t i, bool value);
  void set_erased(std::size_t i);

  std::size_t erased_count() const { return size() - known_.popcount(); }

  TriString slice(std::size_t offset, std::size_t len) const;
  void splice(std::size_t offset, const TriString& piece);

  // Last known position, scanning from the end.
  std::optional<bool> last_known_bit() const;

  const BitVector& bits() const { return bits_; }
  const BitVector& known_mask() const { return known_; }

  bool operator==(const TriString& o) const { return bits_ == o.bits_ && known_ == o.known_; }

  std::string to_string() const;  // "01?10" with '?' for erased

 private:
  BitVector bits_;
  BitVector known_;
};

// Affine solution set {v : constraints hold}: a particular solution plus a
// basis of the homogeneous nullspace. `empty` means the constraints are
// contradictory (impossible over a genuine erasure channel).
struct SolutionSpace {
  bool empty = false;
  BitVector particular;
  std::vector<BitVector> null_basis;

  std::size_t dim() const { return null_basis.size(); }
};

// Incremental row-reduction over GF(2). Feed constraint rows one at a
// time; pivot rows are kept in echelon form keyed by leading column.
class AffineSolver {
 public:
  enum class RowOutcome { Inserted, Absorbed, Inconsistent };

  explicit AffineSolver(std::size_t cols);

  RowOutcome add_row(std::span<const std::uint64_t> row, bool rhs);
  RowOutcome add_row(const BitVector& row, bool rhs);

  std::size_t rank() const { return rank_; }
  std::size_t cols() const { return cols_; }
  bool full_rank() const { return rank_ == cols_; }
  bool inconsistent() const { return inconsistent_; }

  SolutionSpace solution() const;

 private:
  std::size_t cols_, wpr_;
  std::size_t rank_ = 0;
  bool inconsistent_ = false;
  std::vector<std::vector<std::uint64_t>> pivot_;  // indexed by leading column
  std::vector<std::uint8_t> pivot_rhs_;
  std::vector<std::uint64_t> scratch_;
};

// All v with (G*v xor offset) matching `received` on every known position.
SolutionSpace solve_affine_erasure(const BitMatrix& g, const BitVector& offset,
                                   const TriString& received);

// All solutions if 2^dim <= cap, otherwise nullopt (TooMany).
std::optional<std::vector<BitVector>> enumerate_solutions(const SolutionSpace& s,
                                                          std::size_t cap);

}  // namespace iecc
