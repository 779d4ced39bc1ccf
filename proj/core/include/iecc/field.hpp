#pragma once

#include <cstdint>
#include <vector>

// GF(2^q) arithmetic for 2 <= q <= 16, backed by log/antilog tables over a
// primitive polynomial. Elements are the integers 0..2^q-1 in the
// polynomial basis, so addition is XOR and multiplication by a constant is
// GF(2)-linear on the bit representation.

namespace iecc {

class GF2m {
 public:
  explicit GF2m(int q);

  int q() const { return q_; }
  std::uint32_t order() const { return size_ - 1; }  // multiplicative group order
  std::uint32_t size() const { return size_; }
  std::uint32_t modulus() const { return poly_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= order()) s -= order();
    return exp_[s];
  }

  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  // Carry-less multiply reduced mod the field polynomial; table-free route
  // used to cross-check the tables.
  std::uint32_t mul_schoolbook(std::uint32_t a, std::uint32_t b) const;

 private:
  int q_;
  std::uint32_t size_;
  std::uint32_t poly_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

// poly(x) = sum coeffs[s] * x^s evaluated by Horner's rule.
std::uint32_t poly_eval(const GF2m& f, const std::vector<std::uint32_t>& coeffs,
                        std::uint32_t x);

// Evaluate the message polynomial at points 0..n_points-1.
std::vector<std::uint32_t> rs_encode(const GF2m& f, const std::vector<std::uint32_t>& coeffs,
                                     std::uint32_t n_points);

// Coefficients of the unique polynomial of degree < k through k
// (point, value) pairs with distinct points.
std::vector<std::uint32_t> lagrange_interpolate(const GF2m& f,
                                                const std::vector<std::uint32_t>& points,
                                                const std::vector<std::uint32_t>& values);

}  // namespace iecc
