#include "icx/randomness/small_bias.hpp"

#include <cmath>
#include <stdexcept>

namespace icx::rnd {

SmallBiasGenerator::SmallBiasGenerator(WideField f, std::uint64_t alpha, std::uint64_t beta)
    : f_(std::move(f)), alpha_(alpha & f_.mask()), beta_(beta & f_.mask()), adj_(64, 0) {
  std::uint64_t at = 1;
  for (unsigned t = 0; t < 64; ++t) {
    std::uint64_t v = 0;
    for (unsigned k = 0; k < f_.m(); ++k) {
      if (inner(f_.mul(std::uint64_t{1} << k, at))) v |= std::uint64_t{1} << k;
    }
    adj_[t] = v;
    at = f_.mul(at, alpha_);
  }
  step64_ = ConstMul(f_, at);
}

SmallBiasGenerator SmallBiasGenerator::from_seed(const BitVec& seed, std::size_t offset, unsigned m) {
  if (seed.size() < offset + 2 * m) throw std::invalid_argument("small-bias seed too short");
  return SmallBiasGenerator(WideField::irreducible(m), seed.read_uint(offset, m), seed.read_uint(offset + m, m));
}

bool SmallBiasGenerator::bit(std::uint64_t j) const { return inner(alpha_pow(j)); }

std::uint64_t SmallBiasGenerator::word_at(std::uint64_t p) const {
  std::uint64_t w = 0;
  for (unsigned t = 0; t < 64; ++t) w |= static_cast<std::uint64_t>(parity64(p & adj_[t])) << t;
  return w;
}

std::uint64_t SmallBiasGenerator::word(std::uint64_t j) const { return word_at(alpha_pow(j)); }

BitVec SmallBiasGenerator::bits(std::uint64_t j, std::size_t len) const {
  std::vector<std::uint64_t> words((len + 63) / 64);
  std::uint64_t p = alpha_pow(j);
  for (auto& w : words) {
    w = word_at(p);
    p = step64_(p);
  }
  return BitVec::from_words(std::move(words), len);
}

unsigned small_bias_degree(double L, double delta) {
  if (L < 1 || !(delta > 0 && delta < 1)) throw std::invalid_argument("small-bias: need L >= 1, 0 < delta < 1");
  double need = std::ceil(std::log2(L / delta));
  if (need > 64) throw std::invalid_argument("small-bias: delta needs a field larger than GF(2^64)");
  return static_cast<unsigned>(std::max(2.0, need));
}

double small_bias_bound(double L, unsigned m) { return (L - 1) / std::ldexp(1.0, static_cast<int>(m)); }

BitVec small_bias_stretch(const BitVec& seed, std::size_t L, double delta) {
  unsigned m = small_bias_degree(static_cast<double>(L), delta);
  if (seed.size() < 2 * m) throw std::invalid_argument("small-bias seed too short for (L, delta)");
  return SmallBiasGenerator::from_seed(seed, 0, m).bits(0, L);
}

PolyEvaluator::PolyEvaluator(const WideField& f, std::uint64_t a) {
  std::uint64_t pw[8];
  pw[0] = 1;
  for (int t = 1; t < 8; ++t) pw[t] = f.mul(pw[t - 1], a);
  for (unsigned v = 0; v < 256; ++v) {
    std::uint64_t acc = 0;
    for (int t = 0; t < 8; ++t) {
      if ((v >> t) & 1u) acc ^= pw[t];
    }
    byte_val_[v] = acc;
  }
  times_a8_ = ConstMul(f, f.mul(pw[7], a));
}

std::uint64_t PolyEvaluator::eval(const BitVec& x, std::size_t start, std::size_t len) const {
  if (start + len > x.size()) throw std::out_of_range("PolyEvaluator: range past end");
  std::uint64_t acc = 0;
  std::size_t nbytes = (len + 7) / 8;
  for (std::size_t q = nbytes; q-- > 0;) {
    std::size_t take = std::min<std::size_t>(8, len - 8 * q);
    acc = times_a8_(acc) ^ byte_val_[x.read_uint(start + 8 * q, take)];
  }
  return acc;
}

std::uint64_t PolyEvaluator::eval_uint(std::uint64_t v, unsigned nbits) const {
  if (nbits < 64) v &= (std::uint64_t{1} << nbits) - 1;
  std::uint64_t acc = 0;
  for (unsigned q = (nbits + 7) / 8; q-- > 0;) acc = times_a8_(acc) ^ byte_val_[(v >> (8 * q)) & 0xff];
  return acc;
}

}  // namespace icx::rnd
