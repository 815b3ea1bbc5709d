#pragma once

#include <cstdint>
#include <vector>

namespace icx::rnd {

// GF(2^m) for 2 <= m <= 64 in polynomial basis. `low` holds the modulus
// without its leading x^m term.
class WideField {
 public:
  WideField(unsigned m, std::uint64_t low);
  // Lowest-weight irreducible modulus of degree m.
  static WideField irreducible(unsigned m);
  static bool is_irreducible(unsigned m, std::uint64_t low);

  unsigned m() const { return m_; }
  std::uint64_t low() const { return low_; }
  std::uint64_t mask() const { return mask_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sqr(std::uint64_t a) const { return mul(a, a); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

 private:
  unsigned m_;
  std::uint64_t low_, mask_;
  std::vector<unsigned> low_terms_;
};

// Multiplication by a fixed element through byte-sliced tables.
class ConstMul {
 public:
  ConstMul() = default;
  ConstMul(const WideField& f, std::uint64_t c);
  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t r = 0;
    for (unsigned k = 0; k < bytes_; ++k) r ^= tab_[k * 256 + ((x >> (8 * k)) & 0xff)];
    return r;
  }

 private:
  unsigned bytes_ = 0;
  std::vector<std::uint64_t> tab_;
};

}  // namespace icx::rnd
