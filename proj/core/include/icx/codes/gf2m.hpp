#pragma once

#include <cstdint>
#include <vector>

namespace icx::codes {

// Table-driven GF(2^m) for 2 <= m <= 12, built from a primitive polynomial.
class GF2m {
 public:
  explicit GF2m(unsigned m);
  GF2m(unsigned m, std::uint32_t primitive_poly);

  unsigned m() const { return m_; }
  std::uint32_t size() const { return q_; }
  std::uint32_t order() const { return q_ - 1; }
  std::uint32_t poly() const { return poly_; }

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return a ^ b; }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint16_t div(std::uint16_t a, std::uint16_t b) const;
  std::uint16_t inv(std::uint16_t a) const;
  // alpha^e for any integer e.
  std::uint16_t alpha_pow(long long e) const;
  std::uint16_t pow(std::uint16_t a, long long e) const;
  int log(std::uint16_t a) const { return log_[a]; }

  static std::uint32_t default_poly(unsigned m);

 private:
  void build();

  unsigned m_;
  std::uint32_t q_;
  std::uint32_t poly_;
  std::vector<std::uint16_t> exp_;
  std::vector<int> log_;
};

using GFPoly = std::vector<std::uint16_t>;  // coefficient i multiplies x^i

GFPoly poly_mul(const GF2m& f, const GFPoly& a, const GFPoly& b);
std::uint16_t poly_eval(const GF2m& f, const GFPoly& a, std::uint16_t x);

}  // namespace icx::codes
