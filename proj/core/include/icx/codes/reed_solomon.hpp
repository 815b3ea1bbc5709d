#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "icx/codes/gf2m.hpp"

namespace icx::codes {

// Shortened narrow-sense Reed-Solomon code over GF(2^m), systematic with the
// message in the top k coefficients. Roots alpha^1 .. alpha^(n-k).
class ReedSolomon {
 public:
  ReedSolomon(const GF2m& field, std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t parity() const { return n_ - k_; }
  const GF2m& field() const { return *f_; }

  std::vector<std::uint16_t> encode(const std::vector<std::uint16_t>& msg) const;
  // Errors-and-erasures decoding; succeeds when 2*errors + erasures <= n-k.
  // Returns the corrected codeword or nullopt on detected failure.
  std::optional<std::vector<std::uint16_t>> decode(std::vector<std::uint16_t> received,
                                                   const std::vector<std::size_t>& erasures = {}) const;
  std::vector<std::uint16_t> message_of(const std::vector<std::uint16_t>& codeword) const;

 private:
  std::vector<std::uint16_t> syndromes(const std::vector<std::uint16_t>& r) const;

  const GF2m* f_;
  std::size_t n_, k_;
  GFPoly gen_;
};

}  // namespace icx::codes
