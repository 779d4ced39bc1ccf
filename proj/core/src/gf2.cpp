#include "iecc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace iecc {

namespace {

void check_index(std::size_t i, std::size_t len) {
  if (i >= len) throw std::out_of_range("bit index out of range");
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("bad hex digit");
}

}  // namespace

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("bad bit character");
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t len) {
  if (hex.size() * 4 < len) throw std::invalid_argument("hex string too short");
  BitVector v(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t byte = i / 8;
    int val = hex_digit(hex[2 * byte]) * 16 + hex_digit(hex[2 * byte + 1]);
    if ((val >> (i % 8)) & 1) v.set(i, true);
  }
  return v;
}

BitVector BitVector::constant(std::size_t len, bool value) {
  BitVector v(len);
  if (value) {
    std::fill(v.w_.begin(), v.w_.end(), ~0ull);
    v.clear_tail();
  }
  return v;
}

bool BitVector::get(std::size_t i) const {
  check_index(i, len_);
  return (w_[i >> 6] >> (i & 63)) & 1;
}

void BitVector::set(std::size_t i, bool v) {
  check_index(i, len_);
  if (v)
    w_[i >> 6] |= 1ull << (i & 63);
  else
    w_[i >> 6] &= ~(1ull << (i & 63));
}

void BitVector::xor_assign(const BitVector& other) {
  if (other.len_ != len_) throw std::invalid_argument("length mismatch in xor");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= other.w_[k];
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : w_) n += std::popcount(w);
  return n;
}

bool BitVector::is_zero() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::size_t BitVector::hamming_distance(const BitVector& other) const {
  if (other.len_ != len_) throw std::invalid_argument("length mismatch in distance");
  std::size_t n = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) n += std::popcount(w_[k] ^ other.w_[k]);
  return n;
}

BitVector BitVector::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > len_) throw std::out_of_range("slice out of range");
  BitVector out(len);
  for (std::size_t i = 0; i < len; ++i)
    if (get(offset + i)) out.set(i, true);
  return out;
}

std::string BitVector::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::size_t bytes = (len_ + 7) / 8;
  std::string out(bytes * 2, '0');
  for (std::size_t b = 0; b < bytes; ++b) {
    unsigned val = (w_[b / 8] >> ((b % 8) * 8)) & 0xff;
    out[2 * b] = digits[val >> 4];
    out[2 * b + 1] = digits[val & 0xf];
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string out(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) out[i] = '1';
  return out;
}

bool BitVector::operator<(const BitVector& o) const {
  if (len_ != o.len_) return len_ < o.len_;
  for (std::size_t i = 0; i < len_; ++i) {
    bool a = get(i), b = o.get(i);
    if (a != b) return !a;
  }
  return false;
}

void BitVector::clear_tail() {
  std::size_t tail = len_ & 63;
  if (tail && !w_.empty()) w_.back() &= (1ull << tail) - 1;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  check_index(r, rows_);
  check_index(c, cols_);
  return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  check_index(r, rows_);
  check_index(c, cols_);
  if (v)
    w_[r * wpr_ + (c >> 6)] |= 1ull << (c & 63);
  else
    w_[r * wpr_ + (c >> 6)] &= ~(1ull << (c & 63));
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  check_index(r, rows_);
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  auto src = v.words();
  std::copy(src.begin(), src.end(), w_.begin() + r * wpr_);
}

BitVector BitMatrix::row_vector(std::size_t r) const {
  check_index(r, rows_);
  BitVector v(cols_);
  auto dst = v.words();
  std::copy(row(r).begin(), row(r).end(), dst.begin());
  return v;
}

BitVector mat_vec_mul(const BitMatrix& g, const BitVector& v) {
  if (g.cols() != v.size()) throw std::invalid_argument("mat_vec_mul dimension mismatch");
  BitVector out(g.rows());
  auto vw = v.words();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    auto rw = g.row(r);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < rw.size(); ++k) acc ^= rw[k] & vw[k];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

TriString TriString::from_clean_and_mask(const BitVector& clean, const BitVector& mask) {
  if (clean.size() != mask.size()) throw std::invalid_argument("mask length mismatch");
  TriString t(clean.size());
  auto cw = clean.words();
  auto mw = mask.words();
  auto bw = t.bits_.words();
  auto kw = t.known_.words();
  for (std::size_t k = 0; k < cw.size(); ++k) {
    kw[k] = ~mw[k];
    bw[k] = cw[k] & ~mw[k];
  }
  t.bits_.clear_tail();
  t.known_.clear_tail();
  return t;
}

TriString TriString::all_erased(std::size_t len) { return TriString(len); }

TriString TriString::fully_known(const BitVector& clean) {
  return from_clean_and_mask(clean, BitVector(clean.size()));
}

void TriString::set_known(std::size_t i, bool value) {
  bits_.set(i, value);
  known_.set(i, true);
}

void TriString::set_erased(std::size_t i) {
  bits_.set(i, false);
  known_.set(i, false);
}

TriString TriString::slice(std::size_t offset, std::size_t len) const {
  TriString t(len);
  t.bits_ = bits_.slice(offset, len);
  t.known_ = known_.slice(offset, len);
  return t;
}

void TriString::splice(std::size_t offset, const TriString& piece) {
  if (offset + piece.size() > size()) throw std::out_of_range("splice out of range");
  if ((offset & 63) == 0 && (piece.size() & 63) == 0) {
    std::size_t w0 = offset / 64, nw = piece.size() / 64;
    auto pb = piece.bits_.words();
    auto pk = piece.known_.words();
    std::copy(pb.begin(), pb.begin() + nw, bits_.words().begin() + w0);
    std::copy(pk.begin(), pk.begin() + nw, known_.words().begin() + w0);
    return;
  }
  for (std::size_t i = 0; i < piece.size(); ++i) {
    if (piece.known(i))
      set_known(offset + i, piece.bit(i));
    else
      set_erased(offset + i);
  }
}

std::optional<bool> TriString::last_known_bit() const {
  auto kw = known_.words();
  for (std::size_t k = kw.size(); k-- > 0;) {
    if (kw[k]) {
      std::size_t bit = 63 - std::countl_zero(kw[k]);
      return bits_.get(k * 64 + bit);
    }
  }
  return std::nullopt;
}

std::string TriString::to_string() const {
  std::string out(size(), '?');
  for (std::size_t i = 0; i < size(); ++i)
    if (known(i)) out[i] = bit(i) ? '1' : '0';
  return out;
}

AffineSolver::AffineSolver(std::size_t cols)
    : cols_(cols),
      wpr_(BitVector::word_count(cols)),
      pivot_(cols),
      pivot_rhs_(cols, 0),
      scratch_(wpr_, 0) {}

AffineSolver::RowOutcome AffineSolver::add_row(std::span<const std::uint64_t> row, bool rhs) {
  if (row.size() != wpr_) throw std::invalid_argument("solver row width mismatch");
  std::copy(row.begin(), row.end(), scratch_.begin());
  bool r = rhs;
  for (std::size_t k = 0; k < wpr_;) {
    if (!scratch_[k]) {
      ++k;
      continue;
    }
    std::size_t lead = k * 64 + std::countr_zero(scratch_[k]);
    if (!pivot_[lead].empty()) {
      const auto& pv = pivot_[lead];
      for (std::size_t j = k; j < wpr_; ++j) scratch_[j] ^= pv[j];
      r ^= pivot_rhs_[lead];
      // leading bit cancelled; continue scanning from the same word
    } else {
      pivot_[lead].assign(scratch_.begin(), scratch_.end());
      pivot_rhs_[lead] = r;
      ++rank_;
      return RowOutcome::Inserted;
    }
  }
  if (r) {
    inconsistent_ = true;
    return RowOutcome::Inconsistent;
  }
  return RowOutcome::Absorbed;
}

AffineSolver::RowOutcome AffineSolver::add_row(const BitVector& row, bool rhs) {
  if (row.size() != cols_) throw std::invalid_argument("solver row length mismatch");
  return add_row(row.words(), rhs);
}

SolutionSpace AffineSolver::solution() const {
  SolutionSpace s;
  if (inconsistent_) {
    s.empty = true;
    return s;
  }
  s.particular = BitVector(cols_);
  // Back-substitute from the highest pivot column down. Each pivot row has
  // its leading bit at `c` and support only at columns >= c, so with
  // particular[c] still zero, parity(row & particular) covers exactly the
  // columns beyond c.
  auto dot = [&](const std::vector<std::uint64_t>& row, const BitVector& v) {
    std::uint64_t acc = 0;
    auto vw = v.words();
    for (std::size_t k = 0; k < wpr_; ++k) acc ^= row[k] & vw[k];
    return (std::popcount(acc) & 1) != 0;
  };
  for (std::size_t c = cols_; c-- > 0;) {
    if (pivot_[c].empty()) continue;
    bool val = pivot_rhs_[c] ^ dot(pivot_[c], s.particular);
    s.particular.set(c, val);
  }
  for (std::size_t f = 0; f < cols_; ++f) {
    if (!pivot_[f].empty()) continue;
    BitVector b(cols_);
    b.set(f, true);
    for (std::size_t c = f; c-- > 0;) {
      if (pivot_[c].empty()) continue;
      if (dot(pivot_[c], b)) b.set(c, true);
    }
    s.null_basis.push_back(std::move(b));
  }
  return s;
}

SolutionSpace solve_affine_erasure(const BitMatrix& g, const BitVector& offset,
                                   const TriString& received) {
  if (g.rows() != received.size() || g.rows() != offset.size())
    throw std::invalid_argument("solve_affine_erasure dimension mismatch");
  AffineSolver solver(g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (!received.known(r)) continue;
    bool rhs = received.bit(r) ^ offset.get(r);
    if (solver.add_row(g.row(r), rhs) == AffineSolver::RowOutcome::Inconsistent) {
      SolutionSpace s;
      s.empty = true;
      return s;
    }
  }
  return solver.solution();
}

std::optional<std::vector<BitVector>> enumerate_solutions(const SolutionSpace& s,
                                                          std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  if (s.empty) return std::vector<BitVector>{};
  std::size_t dim = s.dim();
  if (dim >= 63 || (std::size_t{1} << dim) > cap) return std::nullopt;
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << dim);
  BitVector cur = s.particular;
  out.push_back(cur);
  // Gray-code walk: flip exactly one basis vector per step.
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << dim); ++c) {
    cur.xor_assign(s.null_basis[std::countr_zero(c)]);
    out.push_back(cur);
  }
  return out;
}

}  // namespace iecc
