#include "iecc/codes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <numeric>
#include <random>

namespace iecc {

// ---------------------------------------------------------------------------
// Frac
// ---------------------------------------------------------------------------

Frac Frac::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Frac f{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    if (f.den <= 0) throw std::invalid_argument("nonpositive denominator");
    return f.reduced();
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Frac{std::stoll(s), 1};
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::int64_t den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Frac{std::stoll(digits), den}.reduced();
}

Frac Frac::reduced() const {
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) return Frac{0, 1};
  return Frac{num / g, den / g};
}

std::string Frac::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

Frac operator*(Frac a, Frac b) { return Frac{a.num * b.num, a.den * b.den}.reduced(); }
Frac operator+(Frac a, Frac b) {
  return Frac{a.num * b.den + b.num * a.den, a.den * b.den}.reduced();
}
Frac operator-(Frac a, Frac b) {
  return Frac{a.num * b.den - b.num * a.den, a.den * b.den}.reduced();
}
bool operator==(Frac a, Frac b) { return a.num * b.den == b.num * a.den; }
bool operator<(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }

std::int64_t Frac::floor_mul(std::int64_t total) const {
  return (num * total) / den;  // num,total >= 0 in all uses
}

// ---------------------------------------------------------------------------
// Parameter derivation
// ---------------------------------------------------------------------------

namespace {

int ceil_log2(std::int64_t v) {
  int t = 0;
  while ((std::int64_t{1} << t) < v) ++t;
  return t;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

ProtocolParams derive_params(std::int64_t n, Frac eps) {
  eps = eps.reduced();
  if (n < 16 || (n & (n - 1)) != 0)
    throw std::invalid_argument("n must be a power of two, n >= 16");
  if (eps.num <= 0 || 8 * eps.num > eps.den)
    throw std::invalid_argument("epsilon must lie in (0, 1/8]");

  ProtocolParams pr;
  pr.n = n;
  pr.eps = eps;
  pr.ind_cap = ceil_log2(n);

  int log_inv_eps = ceil_log2(ceil_div(eps.den, eps.num));
  pr.q = pr.ind_cap + log_inv_eps + 1;
  if (pr.q > 16)
    throw std::invalid_argument("outer symbol width exceeds 16 bits; reduce n or raise epsilon");

  pr.k_outer = ceil_div(n, pr.q);
  pr.n_outer = ceil_div(n * eps.den, pr.q * eps.num);
  if (pr.n_outer > (std::int64_t{1} << pr.q))
    throw std::invalid_argument("outer code needs more evaluation points than field elements");
  if ((pr.k_outer - 1) * eps.den > eps.num * pr.n_outer)
    throw std::logic_error("segment-distinctness bound violated by derived sizes");

  pr.alpha = pr.q;
  pr.m = pr.n_outer * pr.q;
  pr.block_len = pr.n_outer;

  pr.len_field_bits = ceil_log2(pr.ind_cap + 1);
  pr.var_bits = static_cast<int>(pr.alpha) + pr.len_field_bits + pr.ind_cap;
  if (pr.var_bits > 63)
    throw std::invalid_argument("inner message exceeds 63 variable bits");

  pr.k_in = ceil_div(1 + pr.var_bits, 8);
  pr.n_in = ceil_div((pr.k_in - 1) * eps.den, 2 * eps.num);
  if (pr.n_in > 256)
    throw std::invalid_argument("inner code needs more than 256 evaluation points; raise epsilon");
  pr.p = 256 * pr.n_in;
  pr.bob_len = 3 * pr.p / 8;

  pr.num_blocks = ceil_div(eps.den, eps.num);
  pr.chunk_count = pr.num_blocks * pr.block_len;
  pr.total_bits = pr.chunk_count * (pr.p + pr.bob_len);
  return pr;
}

// ---------------------------------------------------------------------------
// IndString
// ---------------------------------------------------------------------------

std::string IndString::to_string() const {
  std::string s(len, '0');
  for (int t = 0; t < len; ++t)
    if (bit(t)) s[t] = '1';
  return s;
}

// ---------------------------------------------------------------------------
// OuterCode
// ---------------------------------------------------------------------------

OuterCode::OuterCode(const ProtocolParams& params)
    : n_(params.n),
      k_(params.k_outer),
      points_(params.n_outer),
      q_(params.q),
      field_(params.q),
      gen_(params.m, params.n) {
  for (std::int64_t i = 0; i < n_; ++i) {
    BitVector basis(n_);
    basis.set(i, true);
    BitVector col = encode(basis);
    for (std::int64_t r = 0; r < params.m; ++r)
      if (col.get(r)) gen_.set(r, i, true);
  }
}

std::vector<std::uint32_t> OuterCode::message_symbols(const BitVector& x) const {
  if (static_cast<std::int64_t>(x.size()) != n_)
    throw std::invalid_argument("outer encode length mismatch");
  std::vector<std::uint32_t> syms(k_, 0);
  for (std::int64_t i = 0; i < n_; ++i)
    if (x.get(i)) syms[i / q_] |= 1u << (i % q_);
  return syms;
}

std::optional<BitVector> OuterCode::symbols_to_input(
    const std::vector<std::uint32_t>& coeffs) const {
  BitVector x(n_);
  for (std::int64_t s = 0; s < k_; ++s) {
    for (int b = 0; b < q_; ++b) {
      if ((coeffs[s] >> b) & 1) {
        std::int64_t idx = s * q_ + b;
        if (idx >= n_) return std::nullopt;  // nonzero padding: unreachable input
        x.set(idx, true);
      }
    }
  }
  return x;
}

BitVector OuterCode::encode(const BitVector& x) const {
  auto evals = rs_encode(field_, message_symbols(x), static_cast<std::uint32_t>(points_));
  BitVector out(points_ * q_);
  for (std::int64_t i = 0; i < points_; ++i)
    for (int b = 0; b < q_; ++b)
      if ((evals[i] >> b) & 1) out.set(i * q_ + b, true);
  return out;
}

BitVector OuterCode::encode_via_matrix(const BitVector& x) const { return mat_vec_mul(gen_, x); }

BitVector segment(const BitVector& codeword, std::int64_t j, std::int64_t alpha) {
  if (j < 0 || (j + 1) * alpha > static_cast<std::int64_t>(codeword.size()))
    throw std::out_of_range("segment index out of range");
  return codeword.slice(j * alpha, alpha);
}

// ---------------------------------------------------------------------------
// InnerCode
// ---------------------------------------------------------------------------

InnerCode::InnerCode(std::int64_t alpha, int ind_cap, Frac eps)
    : alpha_(alpha), ind_cap_(ind_cap), eps_(eps.reduced()), field_(8) {
  len_field_bits_ = ceil_log2(ind_cap_ + 1);
  var_bits_ = static_cast<int>(alpha_) + len_field_bits_ + ind_cap_;
  if (var_bits_ > 63) throw std::invalid_argument("inner message exceeds 63 variable bits");
  k_in_ = ceil_div(1 + var_bits_, 8);
  n_in_ = ceil_div((k_in_ - 1) * eps_.den, 2 * eps_.num);
  if (n_in_ > 256) throw std::invalid_argument("inner code exceeds 256 evaluation points");
  if (n_in_ < k_in_) throw std::invalid_argument("inner code not injective");
  p_ = 256 * n_in_;

  offset_ = encode_bits(true, BitVector(var_bits_));
  cols_.reserve(var_bits_);
  for (int t = 0; t < var_bits_; ++t) {
    BitVector basis(var_bits_);
    basis.set(t, true);
    cols_.push_back(encode_bits(false, basis));
  }
  rows_.assign(p_, 0);
  for (int t = 0; t < var_bits_; ++t) {
    auto cw = cols_[t].words();
    for (std::int64_t r = 0; r < p_; ++r)
      if ((cw[r >> 6] >> (r & 63)) & 1) rows_[r] |= 1ull << t;
  }
}

BitVector InnerCode::encode_bits(bool marker, const BitVector& vars) const {
  // Pack [marker][var bits] into k_in bytes, evaluate the byte polynomial
  // at points 0..n_in-1, expand each symbol by all GF(2)-linear
  // functionals of its 8 bits.
  std::vector<std::uint32_t> bytes(k_in_, 0);
  if (marker) bytes[0] |= 1;
  for (int t = 0; t < var_bits_; ++t)
    if (vars.get(t)) bytes[(t + 1) / 8] |= 1u << ((t + 1) % 8);
  auto evals = rs_encode(field_, bytes, static_cast<std::uint32_t>(n_in_));
  BitVector out(p_);
  auto w = out.words();
  for (std::int64_t i = 0; i < n_in_; ++i) {
    std::uint32_t s = evals[i];
    for (int a = 0; a < 256; ++a) {
      if (std::popcount(s & static_cast<std::uint32_t>(a)) & 1) {
        std::int64_t pos = i * 256 + a;
        w[pos >> 6] |= 1ull << (pos & 63);
      }
    }
  }
  return out;
}

BitVector InnerCode::serialize(const InnerMessage& msg) const {
  if (static_cast<std::int64_t>(msg.payload.size()) != alpha_)
    throw std::invalid_argument("payload length mismatch");
  if (msg.ind.len < 0 || msg.ind.len > ind_cap_)
    throw std::invalid_argument("malformed ind length");
  BitVector v(var_bits_);
  for (std::int64_t t = 0; t < alpha_; ++t)
    if (msg.payload.get(t)) v.set(t, true);
  for (int t = 0; t < len_field_bits_; ++t)
    if ((msg.ind.len >> (len_field_bits_ - 1 - t)) & 1) v.set(alpha_ + t, true);
  for (int t = 0; t < msg.ind.len; ++t)
    if (msg.ind.bit(t)) v.set(alpha_ + len_field_bits_ + t, true);
  return v;
}

std::optional<InnerMessage> InnerCode::deserialize(const BitVector& v) const {
  if (static_cast<int>(v.size()) != var_bits_) throw std::invalid_argument("var length mismatch");
  InnerMessage msg;
  msg.payload = v.slice(0, alpha_);
  int len = 0;
  for (int t = 0; t < len_field_bits_; ++t)
    len = (len << 1) | (v.get(alpha_ + t) ? 1 : 0);
  if (len > ind_cap_) return std::nullopt;
  for (int t = 0; t < len; ++t) msg.ind.append(v.get(alpha_ + len_field_bits_ + t));
  for (int t = len; t < ind_cap_; ++t)
    if (v.get(alpha_ + len_field_bits_ + t)) return std::nullopt;  // nonzero padding
  return msg;
}

BitVector InnerCode::encode_vars(const BitVector& vars) const {
  BitVector out = offset_;
  for (int t = 0; t < var_bits_; ++t)
    if (vars.get(t)) out.xor_assign(cols_[t]);
  return out;
}

BitVector InnerCode::encode(const InnerMessage& msg) const { return encode_vars(serialize(msg)); }

BitVector InnerCode::encode_direct(const InnerMessage& msg) const {
  return encode_bits(true, serialize(msg));
}

InnerDecodeResult InnerCode::list_decode(const TriString& received) const {
  if (static_cast<std::int64_t>(received.size()) != p_)
    throw std::invalid_argument("inner decode length mismatch");
  InnerDecodeResult res;
  std::int64_t erased = received.erased_count();
  if (too_erased(erased)) {
    res.too_erased = true;
    return res;
  }
  AffineSolver solver(var_bits_);
  auto kw = received.known_mask().words();
  auto bw = received.bits().words();
  auto ow = offset_.words();
  for (std::int64_t r = 0; r < p_; ++r) {
    if (!((kw[r >> 6] >> (r & 63)) & 1)) continue;
    bool rhs = (((bw[r >> 6] ^ ow[r >> 6]) >> (r & 63)) & 1) != 0;
    std::uint64_t row = rows_[r];
    if (solver.add_row(std::span<const std::uint64_t>(&row, 1), rhs) ==
        AffineSolver::RowOutcome::Inconsistent)
      break;  // no codeword fits; constants may still
  }
  std::vector<BitVector> solutions;
  if (!solver.inconsistent()) {
    auto sols = enumerate_solutions(solver.solution(), 2);
    if (!sols) throw InternalListOverflow("more than 2 inner codewords consistent");
    solutions = std::move(*sols);
  }
  int n_consts = 0;
  for (int beta = 0; beta <= 1; ++beta)
    if (const_consistency(received, beta)) ++n_consts;
  if (static_cast<int>(solutions.size()) + n_consts > 2)
    throw InternalListOverflow("more than 2 candidates below erasure threshold");
  for (const auto& v : solutions) {
    auto msg = deserialize(v);
    if (msg)
      res.candidates.push_back({InnerCandidate::Kind::Message, std::move(*msg)});
    else
      ++res.malformed_dropped;
  }
  for (int beta = 0; beta <= 1; ++beta) {
    if (const_consistency(received, beta)) {
      res.candidates.push_back(
          {beta ? InnerCandidate::Kind::Const1 : InnerCandidate::Kind::Const0, {}});
    }
  }
  return res;
}

bool const_consistency(const TriString& received, bool beta) {
  auto kw = received.known_mask().words();
  auto bw = received.bits().words();
  std::uint64_t acc = 0;
  if (beta) {
    for (std::size_t k = 0; k < kw.size(); ++k) acc |= kw[k] & ~bw[k];
  } else {
    for (std::size_t k = 0; k < kw.size(); ++k) acc |= kw[k] & bw[k];
  }
  return acc == 0;
}

// ---------------------------------------------------------------------------
// Bob's four-word alphabet
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::array<int, 3>, 4> kBobPattern = {{
    {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
}};

// The 3-periodic pattern packed into 64-bit words repeats with period 3
// words (lcm(3,64) = 192 bits).
const std::array<std::uint64_t, 3>& pattern_words(int gamma) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 3>, 4> t{};
    for (int g = 0; g < 4; ++g)
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 64; ++i)
          if (kBobPattern[g][(64 * k + i) % 3]) t[g][k] |= 1ull << i;
    return t;
  }();
  return table[gamma];
}

}  // namespace

BitVector bob_encode(int gamma, std::int64_t p) {
  if (gamma < 0 || gamma > 3) throw std::invalid_argument("gamma out of range");
  if (p % 8 != 0) throw std::invalid_argument("p must be divisible by 8");
  std::int64_t len = 3 * p / 8;
  BitVector out(len);
  const auto& pat = pattern_words(gamma);
  auto w = out.words();
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = pat[k % 3];
  out.clear_tail();
  return out;
}

BobDecodeResult bob_decode(const TriString& received, std::int64_t p) {
  std::int64_t len = 3 * p / 8;
  if (static_cast<std::int64_t>(received.size()) != len)
    throw std::invalid_argument("bob decode length mismatch");
  BobDecodeResult res;
  if (3 * static_cast<std::int64_t>(received.erased_count()) >= 2 * len) {
    res.ambiguous = true;
    return res;
  }
  auto kw = received.known_mask().words();
  auto bw = received.bits().words();
  int matches = 0;
  for (int gamma = 0; gamma < 4; ++gamma) {
    const auto& pat = pattern_words(gamma);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < kw.size(); ++k) acc |= kw[k] & (bw[k] ^ pat[k % 3]);
    // tail bits of known are zero, so the pattern tail cannot leak in
    if (acc == 0) {
      ++matches;
      res.gamma = gamma;
    }
  }
  if (matches == 0) throw NoConsistentWord("no feedback word consistent with received symbols");
  if (matches > 1) throw std::logic_error("multiple feedback words consistent below threshold");
  return res;
}

// ---------------------------------------------------------------------------
// Block code
// ---------------------------------------------------------------------------

CodeSuite::CodeSuite(const ProtocolParams& pr)
    : params(pr), outer(pr), inner(pr.alpha, pr.ind_cap, pr.eps) {
  assert(inner.p() == pr.p);
  assert(inner.var_bits() == pr.var_bits);
  assert(inner.k_in() == pr.k_in && inner.n_in() == pr.n_in);
}

CodeSuite make_code_suite(std::int64_t n, Frac eps) {
  return CodeSuite(derive_params(n, eps));
}

BitVector block_encode(const BitVector& x, const CodeSuite& suite) {
  const auto& pr = suite.params;
  BitVector ct = suite.outer.encode(x);
  BitVector out(pr.block_len * pr.p);
  auto ow = out.words();
  std::size_t wpc = pr.p / 64;  // p is a multiple of 256
  for (std::int64_t j = 0; j < pr.block_len; ++j) {
    InnerMessage msg{segment(ct, j, pr.alpha), IndString{}};
    BitVector enc = suite.inner.encode(msg);
    auto ew = enc.words();
    std::copy(ew.begin(), ew.end(), ow.begin() + j * wpc);
  }
  return out;
}

namespace {

// true iff enc agrees with received on every known position.
bool consistent_with(const BitVector& enc, const TriString& received) {
  auto ew = enc.words();
  auto kw = received.known_mask().words();
  auto bw = received.bits().words();
  for (std::size_t k = 0; k < ew.size(); ++k)
    if ((ew[k] ^ bw[k]) & kw[k]) return false;
  return true;
}

}  // namespace

BlockDecodeResult block_list_decode(const TriString& received, const CodeSuite& suite) {
  const auto& pr = suite.params;
  if (static_cast<std::int64_t>(received.size()) != pr.block_len * pr.p)
    throw std::invalid_argument("block decode length mismatch");
  if (pr.block_too_erased(received.erased_count())) {
    BlockDecodeResult res;
    res.kind = BlockDecodeResult::Kind::TooErased;
    return res;
  }
  return block_solve(received, suite);
}

BlockDecodeResult block_solve(const TriString& received, const CodeSuite& suite) {
  const auto& pr = suite.params;
  const auto& inner = suite.inner;
  std::int64_t block_bits = pr.block_len * pr.p;
  if (static_cast<std::int64_t>(received.size()) != block_bits)
    throw std::invalid_argument("block decode length mismatch");

  BlockDecodeResult res;
  auto kw = received.known_mask().words();
  auto bw = received.bits().words();
  auto ow = inner.offset().words();
  const std::uint64_t payload_mask =
      pr.alpha >= 64 ? ~0ull : ((1ull << pr.alpha) - 1);

  // Fast path: chunks whose payload is pinned down by their own unerased
  // positions give outer symbols directly; any k_outer of them determine x.
  // (A second consistent input would have to share those k_outer symbols,
  // forcing an identical outer polynomial.)
  std::vector<std::uint32_t> pts, vals;
  bool chunk_inconsistent = false;
  for (std::int64_t j = 0; j < pr.block_len && static_cast<std::int64_t>(pts.size()) < pr.k_outer;
       ++j) {
    AffineSolver solver(pr.alpha);
    std::int64_t base = j * pr.p;
    for (std::int64_t t = 0; t < pr.p && !solver.full_rank(); ++t) {
      std::int64_t pos = base + t;
      if (!((kw[pos >> 6] >> (pos & 63)) & 1)) continue;
      bool rhs = (((bw[pos >> 6] >> (pos & 63)) ^ (ow[t >> 6] >> (t & 63))) & 1) != 0;
      std::uint64_t row = inner.row_word(t) & payload_mask;
      if (solver.add_row(std::span<const std::uint64_t>(&row, 1), rhs) ==
          AffineSolver::RowOutcome::Inconsistent) {
        chunk_inconsistent = true;
        break;
      }
    }
    if (chunk_inconsistent) break;
    if (!solver.full_rank()) continue;
    BitVector seg = solver.solution().particular;
    std::uint32_t sym = 0;
    for (std::int64_t b = 0; b < pr.alpha; ++b)
      if (seg.get(b)) sym |= 1u << b;
    pts.push_back(static_cast<std::uint32_t>(j));
    vals.push_back(sym);
  }
  if (!chunk_inconsistent && static_cast<std::int64_t>(pts.size()) >= pr.k_outer) {
    auto coeffs = lagrange_interpolate(suite.outer.field(), pts, vals);
    auto x = suite.outer.symbols_to_input(coeffs);
    if (!x || !consistent_with(block_encode(*x, suite), received))
      throw NoConsistentWord("block received word is not an erased codeword");
    res.kind = BlockDecodeResult::Kind::Unique;
    res.x0 = std::move(*x);
    return res;
  }

  // Full solve over the n input unknowns. Row for block position (j, t):
  // the XOR of the outer generator rows selected by the payload support of
  // inner row t, shifted to segment j.
  AffineSolver solver(pr.n);
  const auto& outer_gen = suite.outer.generator();
  std::size_t wpr = outer_gen.words_per_row();
  std::vector<std::uint64_t> scratch(wpr);
  bool short_circuit = false;
  for (std::int64_t j = 0; j < pr.block_len && !short_circuit; ++j) {
    std::int64_t base = j * pr.p;
    for (std::int64_t t = 0; t < pr.p; ++t) {
      std::int64_t pos = base + t;
      if (!((kw[pos >> 6] >> (pos & 63)) & 1)) continue;
      std::fill(scratch.begin(), scratch.end(), 0);
      std::uint64_t support = inner.row_word(t) & payload_mask;
      while (support) {
        int s = std::countr_zero(support);
        support &= support - 1;
        auto orow = outer_gen.row(j * pr.alpha + s);
        for (std::size_t k = 0; k < wpr; ++k) scratch[k] ^= orow[k];
      }
      bool rhs = (((bw[pos >> 6] >> (pos & 63)) ^ (ow[t >> 6] >> (t & 63))) & 1) != 0;
      if (solver.add_row(scratch, rhs) == AffineSolver::RowOutcome::Inconsistent)
        throw NoConsistentWord("block received word is not an erased codeword");
      if (solver.full_rank()) {
        short_circuit = true;
        break;
      }
    }
  }
  SolutionSpace space = solver.solution();
  if (short_circuit) {
    // Remaining rows were skipped; one re-encode pass settles consistency.
    if (!consistent_with(block_encode(space.particular, suite), received))
      throw NoConsistentWord("block received word is not an erased codeword");
  }
  if (space.dim() == 0) {
    res.kind = BlockDecodeResult::Kind::Unique;
    res.x0 = std::move(space.particular);
    return res;
  }
  if (space.dim() == 1) {
    BitVector a = space.particular;
    BitVector b = space.particular;
    b.xor_assign(space.null_basis[0]);
    if (b < a) std::swap(a, b);
    res.kind = BlockDecodeResult::Kind::Pair;
    res.x0 = std::move(a);
    res.x1 = std::move(b);
    return res;
  }
  throw InternalListOverflow("block decode found more than 2 consistent inputs");
}

std::vector<std::int64_t> bad_set(const BitVector& x0, const BitVector& x1,
                                  const CodeSuite& suite) {
  if (x0 == x1) throw std::invalid_argument("bad_set requires distinct inputs");
  const auto& pr = suite.params;
  auto s0 = rs_encode(suite.outer.field(), suite.outer.message_symbols(x0),
                      static_cast<std::uint32_t>(pr.n_outer));
  auto s1 = rs_encode(suite.outer.field(), suite.outer.message_symbols(x1),
                      static_cast<std::uint32_t>(pr.n_outer));
  std::vector<std::int64_t> bad;
  for (std::int64_t j = 0; j < pr.block_len; ++j)
    if (s0[j] == s1[j]) bad.push_back(j);
  return bad;
}

void quick_distance_selfcheck(const CodeSuite& suite, int samples, std::uint64_t seed) {
  const auto& pr = suite.params;
  const auto& inner = suite.inner;
  std::mt19937_64 rng(seed);
  auto random_message = [&] {
    InnerMessage msg;
    msg.payload = BitVector(pr.alpha);
    for (std::int64_t t = 0; t < pr.alpha; ++t) msg.payload.set(t, rng() & 1);
    int len = static_cast<int>(rng() % (pr.ind_cap + 1));
    for (int t = 0; t < len; ++t) msg.ind.append(rng() & 1);
    return msg;
  };
  // d >= (1/2 - eps) p as exact integers: 2*den*d >= p*(den - 2*num).
  auto check_far = [&](std::int64_t d, const char* what) {
    if (2 * pr.eps.den * d < pr.p * (pr.eps.den - 2 * pr.eps.num))
      throw std::logic_error(std::string("inner distance audit failed: ") + what);
  };
  for (int s = 0; s < samples; ++s) {
    InnerMessage a = random_message();
    InnerMessage b = random_message();
    BitVector ca = inner.encode(a);
    std::int64_t w = ca.popcount();
    check_far(w, "weight vs zero word");
    check_far(pr.p - w, "weight vs ones word");
    if (!(a == b)) check_far(ca.hamming_distance(inner.encode(b)), "pairwise");
  }
}

}  // namespace iecc
