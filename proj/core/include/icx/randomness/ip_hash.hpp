#pragma once

#include <cstddef>
#include <cstdint>

#include "icx/bits.hpp"
#include "icx/randomness/small_bias.hpp"

namespace icx::rnd {

// Output bit i is <X, R[i*l, (i+1)*l)> with l = |X|. Requires |R| = l*p, p <= 64.
std::uint64_t inner_product_hash(const BitVec& x, const BitVec& r, std::size_t p);

enum class HashField : unsigned { C = 0, X, K, T, MP1, MP2 };
inline constexpr std::size_t kHashFields = 6;

// Hash inputs: integers are 32-bit values; bit strings are a 32-bit length
// followed by the bits. Both are zero padded to the instance input length.
BitVec hash_input(const BitVec& y);
BitVec hash_input(std::uint32_t v);

// Inner-product hash instances whose seeds are windows of a small-bias string
// S. The seed at `offset` is S[offset, offset + l*p). Because S bit j equals
// <alpha^j, beta>, the hash of X is bit i = <alpha^(offset+i*l) X(alpha), beta>,
// computed without materializing the seed.
class StretchedHasher {
 public:
  StretchedHasher(const SmallBiasGenerator& gen, std::size_t input_len, std::size_t p);

  std::size_t input_len() const { return l_; }
  std::size_t output_len() const { return p_; }
  std::size_t seed_len() const { return l_ * p_; }
  const SmallBiasGenerator& generator() const { return *gen_; }
  const PolyEvaluator& evaluator() const { return eval_; }

  // Hash of an input already evaluated at alpha.
  std::uint64_t from_eval(std::uint64_t x_at_alpha, std::uint64_t offset) const;
  std::uint64_t hash(std::uint32_t v, std::uint64_t offset) const;
  std::uint64_t hash(const BitVec& y, std::uint64_t offset) const;
  // Evaluation of hash_input(y) given y(alpha) and |y|.
  std::uint64_t input_eval(std::uint64_t y_at_alpha, std::size_t len) const;

 private:
  const SmallBiasGenerator* gen_;
  std::size_t l_, p_;
  PolyEvaluator eval_;
  ConstMul times_alpha_l_;
  std::uint64_t alpha32_;
};

// Caches prefix evaluations T[0, kC)(alpha) of a growing, occasionally
// truncated transcript. Entries are revalidated against a shadow copy.
class PrefixEvalCache {
 public:
  PrefixEvalCache(const StretchedHasher& h, std::size_t chunk);
  // T[0, len)(alpha).
  std::uint64_t eval(const BitVec& t, std::size_t len);
  std::uint64_t hash_prefix(const BitVec& t, std::size_t len, std::uint64_t offset);

 private:
  const StretchedHasher* h_;
  std::size_t chunk_;
  BitVec shadow_;
  std::vector<std::uint64_t> prefix_;  // prefix_[k] = shadow_[0, kC)(alpha)
  std::vector<std::uint64_t> apow_;    // alpha^(kC)
};

}  // namespace icx::rnd
