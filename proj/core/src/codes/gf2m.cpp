#include "icx/codes/gf2m.hpp"

#include <stdexcept>

namespace icx::codes {

std::uint32_t GF2m::default_poly(unsigned m) {
  switch (m) {
    case 2: return 0x7;
    case 3: return 0xb;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x89;
    case 8: return 0x11d;
    case 9: return 0x211;
    case 10: return 0x409;
    case 11: return 0x805;
    case 12: return 0x1053;
    default: throw std::invalid_argument("GF(2^m) supports 2 <= m <= 12");
  }
}

GF2m::GF2m(unsigned m) : GF2m(m, default_poly(m)) {}

GF2m::GF2m(unsigned m, std::uint32_t primitive_poly) : m_(m), q_(1u << m), poly_(primitive_poly) {
  if (m < 2 || m > 12) throw std::invalid_argument("GF(2^m) supports 2 <= m <= 12");
  build();
}

void GF2m::build() {
  exp_.assign(2 * q_, 0);
  log_.assign(q_, -1);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    if (log_[x] != -1) throw std::invalid_argument("polynomial is not primitive");
    exp_[i] = static_cast<std::uint16_t>(x);
    log_[x] = static_cast<int>(i);
    x <<= 1;
    if (x & q_) x ^= poly_;
  }
  for (std::uint32_t i = q_ - 1; i < 2 * q_; ++i) exp_[i] = exp_[i - (q_ - 1)];
}

std::uint16_t GF2m::div(std::uint16_t a, std::uint16_t b) const {
  if (b == 0) throw std::domain_error("division by zero in GF(2^m)");
  if (a == 0) return 0;
  return exp_[log_[a] + static_cast<int>(q_ - 1) - log_[b]];
}

std::uint16_t GF2m::inv(std::uint16_t a) const { return div(1, a); }

std::uint16_t GF2m::alpha_pow(long long e) const {
  long long o = q_ - 1;
  long long r = e % o;
  if (r < 0) r += o;
  return exp_[r];
}

std::uint16_t GF2m::pow(std::uint16_t a, long long e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return alpha_pow(static_cast<long long>(log_[a]) * e);
}

GFPoly poly_mul(const GF2m& f, const GFPoly& a, const GFPoly& b) {
  if (a.empty() || b.empty()) return {};
  GFPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= f.mul(a[i], b[j]);
  }
  return r;
}

std::uint16_t poly_eval(const GF2m& f, const GFPoly& a, std::uint16_t x) {
  std::uint16_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.mul(acc, x) ^ a[i];
  return acc;
}

}  // namespace icx::codes
