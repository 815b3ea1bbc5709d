#pragma once

#include <cstdint>
#include <random>

#include "icx/bits.hpp"

namespace icx {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a parent seed and a label.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label) {
  return splitmix64(parent ^ splitmix64(label + 0x632be59bd9b4e019ull));
}

// mt19937_64 with portable helpers (std distributions are not bit-reproducible
// across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  bool bit() { return next() >> 63; }
  // Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t lim = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    for (;;) {
      std::uint64_t v = next();
      if (v < lim) return v % n;
    }
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  BitVec bits(std::size_t n) {
    BitVec v(n);
    for (auto& w : v.words_mut()) w = next();
    v.mask_tail();
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace icx
