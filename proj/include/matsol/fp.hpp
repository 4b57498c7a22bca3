// Arithmetic in the prime field F_p.  Residues are stored as unsigned
// values in [0, p); p must be a prime below 256 so that inverses fit in a
// small lookup table and matrix entries fit in a byte.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace matsol::linalg {

using fp_t = std::uint8_t;

constexpr bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Fp {
public:
  explicit Fp(std::uint32_t p) : p_(p) {
    if (p < 2 || p > 255 || !is_prime_u32(p))
      throw std::invalid_argument("Fp: p must be a prime in [2, 255]");
    inv_.resize(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) {
      std::uint32_t x = 1, b = a, e = p - 2;  // a^(p-2) by square and multiply
      while (e) {
        if (e & 1) x = x * b % p;
        b = b * b % p;
        e >>= 1;
      }
      inv_[a] = static_cast<fp_t>(x);
    }
  }

  std::uint32_t p() const { return p_; }

  fp_t add(fp_t a, fp_t b) const {
    std::uint32_t s = std::uint32_t(a) + b;
    return static_cast<fp_t>(s >= p_ ? s - p_ : s);
  }
  fp_t sub(fp_t a, fp_t b) const {
    return static_cast<fp_t>(a >= b ? a - b : a + p_ - b);
  }
  fp_t neg(fp_t a) const { return static_cast<fp_t>(a == 0 ? 0 : p_ - a); }
  fp_t mul(fp_t a, fp_t b) const {
    return static_cast<fp_t>(std::uint32_t(a) * b % p_);
  }
  fp_t inv(fp_t a) const {
    if (a == 0) throw std::domain_error("Fp::inv of zero");
    return inv_[a];
  }
  // Reduces an arbitrary signed integer to [0, p).
  fp_t reduce(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0) r += p_;
    return static_cast<fp_t>(r);
  }

private:
  std::uint32_t p_;
  std::vector<fp_t> inv_;
};

}  // namespace matsol::linalg
