#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "icx/bits.hpp"
#include "icx/randomness/gf2_poly.hpp"

namespace icx::rnd {

// Powering small-bias generator: bit j = <alpha^j, beta> over GF(2^m).
// Any nonempty parity of L output bits has bias at most (L-1)/2^m.
class SmallBiasGenerator {
 public:
  SmallBiasGenerator(WideField f, std::uint64_t alpha, std::uint64_t beta);
  // Reads alpha then beta, m bits each, starting at `offset`.
  static SmallBiasGenerator from_seed(const BitVec& seed, std::size_t offset, unsigned m);

  const WideField& field() const { return f_; }
  std::uint64_t alpha() const { return alpha_; }
  std::uint64_t beta() const { return beta_; }

  bool bit(std::uint64_t j) const;
  // Bits j .. j+63, bit j in the LSB.
  std::uint64_t word(std::uint64_t j) const;
  BitVec bits(std::uint64_t j, std::size_t len) const;
  std::uint64_t alpha_pow(std::uint64_t e) const { return f_.pow(alpha_, e); }
  bool inner(std::uint64_t v) const { return parity64(v & beta_) != 0; }

 private:
  std::uint64_t word_at(std::uint64_t p) const;

  WideField f_;
  std::uint64_t alpha_, beta_;
  std::vector<std::uint64_t> adj_;  // <alpha^(j+t), beta> = <alpha^j, adj_[t]>
  ConstMul step64_;
};

// Field degree for L output bits with bias at most delta, capped at 64.
unsigned small_bias_degree(double L, double delta);
// Bias bound (L-1)/2^m of an m-bit generator producing L bits.
double small_bias_bound(double L, unsigned m);
// Expands a seed of at least 2m bits into L bits with bias <= delta
// (throws when delta needs m > 64 or the seed is too short).
BitVec small_bias_stretch(const BitVec& seed, std::size_t L, double delta);

// Evaluates sum_z X_z a^z for a fixed field element a.
class PolyEvaluator {
 public:
  PolyEvaluator() = default;
  PolyEvaluator(const WideField& f, std::uint64_t a);
  std::uint64_t eval(const BitVec& x, std::size_t start, std::size_t len) const;
  std::uint64_t eval(const BitVec& x) const { return eval(x, 0, x.size()); }
  std::uint64_t eval_uint(std::uint64_t v, unsigned nbits) const;

 private:
  std::uint64_t byte_val_[256] = {};
  ConstMul times_a8_;
};

}  // namespace icx::rnd
