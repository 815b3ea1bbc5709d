#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icx/bits.hpp"

namespace icx::codes {

// Any binary block code usable for control information.
class BlockCode {
 public:
  virtual ~BlockCode() = default;
  virtual std::size_t k() const = 0;
  virtual std::size_t n() const = 0;
  // Verified (or designed) minimum distance.
  virtual std::size_t min_distance() const = 0;
  virtual BitVec encode(const BitVec& msg) const = 0;
  // nullopt signals a detected decoding failure.
  virtual std::optional<BitVec> decode(const BitVec& received) const = 0;
  virtual std::string name() const = 0;
};

struct CodeSearchParams {
  std::size_t max_attempts = 1000;
  std::uint64_t rng_seed = 1;
  std::vector<std::size_t> distance_targets;
};

class BinaryLinearCode : public BlockCode {
 public:
  static constexpr std::size_t kMaxExactK = 24;

  BinaryLinearCode() = default;
  // rows: k generator rows of n bits each.
  BinaryLinearCode(std::vector<BitVec> rows, std::size_t min_distance);

  static BinaryLinearCode random(std::size_t k, std::size_t n, std::uint64_t seed);
  // Uncoded [k, k, 1].
  static BinaryLinearCode identity(std::size_t k);

  std::size_t k() const override { return rows_.size(); }
  std::size_t n() const override { return n_; }
  std::size_t min_distance() const override { return d_; }
  const std::vector<BitVec>& rows() const { return rows_; }

  BitVec encode(const BitVec& msg) const override;
  std::optional<BitVec> decode(const BitVec& received) const override { return nearest_codeword_decode(received); }
  // Brute force over all 2^k messages; ties go to the lexicographically
  // smallest message (bit 0 compared first).
  BitVec nearest_codeword_decode(const BitVec& received) const;
  std::string name() const override;

  // Exact minimum weight over all nonzero messages (0 if not injective).
  std::size_t exact_min_weight() const;
  void set_min_distance(std::size_t d) { d_ = d; }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<BitVec> rows_;
  std::vector<std::uint64_t> rows64_;  // used when n <= 64
};

// Random linear [n, k] code whose exact minimum weight is >= d_target.
BinaryLinearCode gv_search(std::size_t k, std::size_t n, std::size_t d_target, const CodeSearchParams& params);

// Lightest codeword weight among `samples` random nonzero messages; an upper
// bound on the minimum distance for codes too large to enumerate.
std::size_t sampled_min_weight(const BinaryLinearCode& c, std::size_t samples, std::uint64_t seed);

}  // namespace icx::codes
