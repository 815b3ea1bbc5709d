#include "icx/randomness/gf2_poly.hpp"

#include <bit>
#include <stdexcept>

namespace icx::rnd {

namespace {

__extension__ typedef unsigned __int128 u128;

int degree(u128 a) {
  auto hi = static_cast<std::uint64_t>(a >> 64);
  if (hi) return 127 - std::countl_zero(hi);
  auto lo = static_cast<std::uint64_t>(a);
  return lo ? 63 - std::countl_zero(lo) : -1;
}

u128 poly_mod(u128 a, u128 f) {
  int df = degree(f);
  for (int da = degree(a); da >= df; da = degree(a)) a ^= f << (da - df);
  return a;
}

u128 poly_gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

std::vector<unsigned> prime_factors(unsigned m) {
  std::vector<unsigned> out;
  for (unsigned q = 2; q <= m; ++q) {
    if (m % q == 0) {
      out.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  return out;
}

}  // namespace

WideField::WideField(unsigned m, std::uint64_t low) : m_(m), low_(low) {
  if (m < 2 || m > 64) throw std::invalid_argument("WideField: need 2 <= m <= 64");
  mask_ = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  if (low & ~mask_) throw std::invalid_argument("WideField: modulus term above x^(m-1)");
  for (unsigned e = 0; e < m; ++e) {
    if ((low >> e) & 1u) low_terms_.push_back(e);
  }
  if (low_terms_.empty()) throw std::invalid_argument("WideField: modulus x^m is not irreducible");
}

std::uint64_t WideField::mul(std::uint64_t a, std::uint64_t b) const {
  u128 tab[16];
  tab[0] = 0;
  tab[1] = a;
  for (int i = 2; i < 16; i += 2) {
    tab[i] = tab[i / 2] << 1;
    tab[i + 1] = tab[i] ^ a;
  }
  u128 r = 0;
  for (int sh = 60; sh >= 0; sh -= 4) r = (r << 4) ^ tab[(b >> sh) & 0xf];
  // Fold bits >= m back using x^m = low.
  for (;;) {
    u128 hi = r >> m_;
    if (hi == 0) break;
    r &= (static_cast<u128>(1) << m_) - 1;
    for (unsigned e : low_terms_) r ^= hi << e;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t WideField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool WideField::is_irreducible(unsigned m, std::uint64_t low) {
  if (!(low & 1u)) return false;
  WideField f(m, low);
  u128 full = (static_cast<u128>(1) << m) | low;
  // x^(2^i) mod f for i = 0..m
  std::vector<std::uint64_t> frob(m + 1);
  frob[0] = 2;
  for (unsigned i = 1; i <= m; ++i) frob[i] = f.sqr(frob[i - 1]);
  if (frob[m] != 2) return false;
  for (unsigned q : prime_factors(m)) {
    u128 h = static_cast<u128>(frob[m / q] ^ 2);
    if (degree(poly_gcd(full, h)) != 0) return false;
  }
  return true;
}

WideField WideField::irreducible(unsigned m) {
  if (m < 2 || m > 64) throw std::invalid_argument("WideField: need 2 <= m <= 64");
  for (unsigned k = 1; k < m; ++k) {
    std::uint64_t low = (std::uint64_t{1} << k) | 1u;
    if (is_irreducible(m, low)) return WideField(m, low);
  }
  for (unsigned k3 = 3; k3 < m; ++k3) {
    for (unsigned k2 = 2; k2 < k3; ++k2) {
      for (unsigned k1 = 1; k1 < k2; ++k1) {
        std::uint64_t low = (std::uint64_t{1} << k3) | (std::uint64_t{1} << k2) | (std::uint64_t{1} << k1) | 1u;
        if (is_irreducible(m, low)) return WideField(m, low);
      }
    }
  }
  throw std::runtime_error("no irreducible pentanomial found");
}

ConstMul::ConstMul(const WideField& f, std::uint64_t c) : bytes_((f.m() + 7) / 8), tab_(bytes_ * 256, 0) {
  for (unsigned k = 0; k < bytes_; ++k) {
    for (unsigned bit = 0; bit < 8; ++bit) {
      unsigned e = 8 * k + bit;
      if (e >= f.m()) break;
      std::uint64_t v = f.mul(std::uint64_t{1} << e, c);
      std::size_t step = std::size_t{1} << bit;
      for (std::size_t x = 0; x < 256; ++x) {
        if (x & step) tab_[k * 256 + x] ^= v;
      }
    }
  }
}

}  // namespace icx::rnd
