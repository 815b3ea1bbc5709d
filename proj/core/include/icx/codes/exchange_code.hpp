#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "icx/bits.hpp"
#include "icx/codes/gf2m.hpp"
#include "icx/codes/reed_solomon.hpp"

namespace icx::codes {

// First-order Reed-Muller RM(1, r): length 2^r, dimension r+1, distance 2^(r-1).
// Message bit 0 is the constant term, bits 1..r the linear coefficients.
class ReedMuller1 {
 public:
  explicit ReedMuller1(unsigned r);
  unsigned r() const { return r_; }
  std::size_t length() const { return std::size_t{1} << r_; }
  std::uint32_t encode_bit(std::uint32_t msg, std::size_t z) const;
  // Maximum-likelihood decoding from soft sums (positive favours bit 0)
  // via the fast Hadamard transform; returns (message, |correlation|).
  std::pair<std::uint32_t, long> decode_soft(const std::vector<long>& soft) const;
  // Hadamard transform: entry v is the correlation with the codeword of linear part v.
  std::vector<long> transform(const std::vector<long>& soft) const;

 private:
  unsigned r_;
};

// Concatenated exchange code: outer Reed-Solomon over GF(2^m), inner
// RM(1, m-1) repeated a near-equal number of times per outer symbol, zero
// padded to the target length. Decoded with generalized minimum distance.
class ExchangeCode {
 public:
  ExchangeCode(std::size_t message_bits, std::size_t target_length, unsigned m = 8);

  // Smallest length >= target whose designed distance is >= rel * length.
  static std::size_t min_feasible_length(std::size_t message_bits, unsigned m = 8, double rel = 0.4);

  std::size_t k() const { return message_bits_; }
  std::size_t n() const { return length_; }
  std::size_t outer_n() const { return No_; }
  std::size_t outer_k() const { return Ko_; }
  // Designed minimum distance in bits.
  std::size_t min_distance() const { return distance_; }
  double relative_distance() const { return static_cast<double>(distance_) / static_cast<double>(length_); }
  const std::vector<std::size_t>& repetitions() const { return reps_; }

  BitVec encode(const BitVec& msg) const;
  std::optional<BitVec> decode(const BitVec& received) const;
  std::string name() const;

  static std::size_t designed_distance(std::size_t length, std::size_t message_bits, unsigned m,
                                       std::size_t* No = nullptr, std::vector<std::size_t>* reps = nullptr);

 private:
  std::vector<std::uint16_t> outer_of(const BitVec& msg) const;
  BitVec inner_encode(const std::vector<std::uint16_t>& symbols) const;

  std::size_t message_bits_, length_;
  unsigned m_;
  std::size_t No_, Ko_, distance_;
  std::vector<std::size_t> reps_;
  std::shared_ptr<GF2m> field_;
  std::shared_ptr<ReedSolomon> rs_;
  ReedMuller1 inner_;
};

}  // namespace icx::codes
