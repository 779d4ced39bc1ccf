#include "iecc/field.hpp"

#include <stdexcept>

namespace iecc {

namespace {

// Primitive polynomials over GF(2), degree 2..16 (including the x^q term).
constexpr std::uint32_t kPrimitivePoly[17] = {
    0,       0,       0x7,     0xB,     0x13,   0x25,   0x43,    0x89,
    0x11D,   0x211,   0x409,   0x805,   0x1053, 0x201B, 0x4443,  0x8003,
    0x1100B,
};

}  // namespace

GF2m::GF2m(int q) : q_(q) {
  if (q < 2 || q > 16) throw std::invalid_argument("GF2m supports q in [2,16]");
  size_ = 1u << q;
  poly_ = kPrimitivePoly[q];
  exp_.resize(2 * size_);
  log_.assign(size_, 0);
  std::uint32_t v = 1;
  for (std::uint32_t i = 0; i < order(); ++i) {
    exp_[i] = v;
    log_[v] = i;
    v <<= 1;
    if (v & size_) v ^= poly_;
  }
  if (v != 1) throw std::logic_error("field polynomial is not primitive");
  for (std::uint32_t i = order(); i < 2 * size_; ++i) exp_[i] = exp_[i - order()];
}

std::uint32_t GF2m::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[order() - log_[a]];
}

std::uint32_t GF2m::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  std::uint64_t idx = (static_cast<std::uint64_t>(log_[a]) * (e % order())) % order();
  return exp_[idx];
}

std::uint32_t GF2m::mul_schoolbook(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t acc = 0;
  while (b) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & size_) a ^= poly_;
  }
  return acc;
}

std::uint32_t poly_eval(const GF2m& f, const std::vector<std::uint32_t>& coeffs,
                        std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t s = coeffs.size(); s-- > 0;) acc = f.add(f.mul(acc, x), coeffs[s]);
  return acc;
}

std::vector<std::uint32_t> rs_encode(const GF2m& f, const std::vector<std::uint32_t>& coeffs,
                                     std::uint32_t n_points) {
  if (n_points > f.size()) throw std::invalid_argument("more points than field elements");
  std::vector<std::uint32_t> out(n_points);
  for (std::uint32_t i = 0; i < n_points; ++i) out[i] = poly_eval(f, coeffs, i);
  return out;
}

std::vector<std::uint32_t> lagrange_interpolate(const GF2m& f,
                                                const std::vector<std::uint32_t>& points,
                                                const std::vector<std::uint32_t>& values) {
  std::size_t k = points.size();
  if (values.size() != k) throw std::invalid_argument("points/values size mismatch");
  std::vector<std::uint32_t> coeffs(k, 0);
  // master(x) = prod (x - p_j); over GF(2^q) subtraction is addition.
  std::vector<std::uint32_t> master(k + 1, 0);
  master[0] = 1;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t d = j + 1; d-- > 0;) {
      master[d + 1] ^= master[d];  // shift-up (multiply by x) contribution
      master[d] = f.mul(master[d], points[j]);
    }
  }
  std::vector<std::uint32_t> basis(k);
  for (std::size_t j = 0; j < k; ++j) {
    // basis_j(x) = master(x) / (x - p_j), by synthetic division.
    std::uint32_t carry = master[k];
    for (std::size_t d = k; d-- > 0;) {
      basis[d] = carry;
      carry = f.add(master[d], f.mul(carry, points[j]));
    }
    // carry is now master(p_j) = 0 for distinct points.
    std::uint32_t denom = poly_eval(f, basis, points[j]);
    if (denom == 0) throw std::invalid_argument("duplicate interpolation points");
    std::uint32_t scale = f.mul(values[j], f.inv(denom));
    for (std::size_t d = 0; d < k; ++d) coeffs[d] ^= f.mul(basis[d], scale);
  }
  return coeffs;
}

}  // namespace iecc
