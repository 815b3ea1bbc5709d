#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icx/bits.hpp"
#include "icx/codes/gf2m.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/codes/reed_solomon.hpp"

namespace icx::codes {

using WindowKey = std::pair<std::size_t, std::size_t>;  // (a, j)

// Code {0,1}^{sb} -> {0,1}^{2sb} cut into 2s chunks of b bits, decodable from
// any cyclic window of j > s chunks.
class RatelessWindowCode {
 public:
  RatelessWindowCode(std::size_t s, std::size_t b);
  virtual ~RatelessWindowCode() = default;

  std::size_t s() const { return s_; }
  std::size_t b() const { return b_; }
  std::size_t message_bits() const { return s_ * b_; }
  std::size_t codeword_bits() const { return 2 * s_ * b_; }

  virtual BitVec encode(const BitVec& x) const = 0;
  std::vector<BitVec> encode_chunks(const BitVec& x) const;
  // Bits ab .. ab+jb-1 (mod 2sb) of a full codeword.
  BitVec window(const BitVec& codeword, std::size_t a, std::size_t j) const;
  // Decodes chunks a, a+1, .., a+j-1 (mod 2s); nullopt on detected failure.
  virtual std::optional<BitVec> window_decode(std::size_t a, std::size_t j, const BitVec& received) const = 0;
  virtual std::string name() const = 0;

  // Verified minimum distance (bits) of every window with j > s.
  const std::map<WindowKey, std::size_t>& window_distances() const { return dist_; }
  std::size_t full_distance() const;
  // True when every stored window meets its target distance.
  bool meets_targets() const;

 protected:
  void check_window(std::size_t a, std::size_t j, const BitVec& received) const;

  std::size_t s_, b_;
  std::map<WindowKey, std::size_t> dist_;
};

// Random linear rateless code for 2sb <= 64 with exact per-window
// verification and brute-force nearest-codeword window decoding.
class RandomRatelessCode : public RatelessWindowCode {
 public:
  RandomRatelessCode(std::size_t s, std::size_t b, std::vector<BitVec> rows);

  BitVec encode(const BitVec& x) const override;
  std::optional<BitVec> window_decode(std::size_t a, std::size_t j, const BitVec& received) const override;
  std::string name() const override;

  // Enumerates all 2^{sb} - 1 nonzero messages; fills window_distances().
  // With stop_below set, returns false as soon as a window falls short.
  bool verify_exact(bool stop_below = false);
  // Lightest window weights over sampled messages; upper bounds only.
  void verify_sampled(std::size_t samples, std::uint64_t seed);
  const std::vector<BitVec>& rows() const { return rows_; }

 private:
  std::uint64_t encode64(std::uint64_t msg) const;
  std::uint64_t window64(std::uint64_t cw, std::size_t a, std::size_t j) const;

  std::vector<BitVec> rows_;
  std::vector<std::uint64_t> rows64_;
};

enum class VerifyMode { Exact, Sampled };

struct RatelessSearchParams {
  CodeSearchParams search;
  VerifyMode mode = VerifyMode::Exact;
  std::size_t samples = 1 << 16;
};

RandomRatelessCode rateless_search(std::size_t s, std::size_t b, const RatelessSearchParams& params);

// Binary image of a Reed-Solomon [2sb/8, sb/8] code over GF(256). Symbols
// outside the window are decoded as erasures. Requires b % 8 == 0.
class RsRatelessCode : public RatelessWindowCode {
 public:
  RsRatelessCode(std::size_t s, std::size_t b);

  BitVec encode(const BitVec& x) const override;
  std::optional<BitVec> window_decode(std::size_t a, std::size_t j, const BitVec& received) const override;
  std::string name() const override;

 private:
  std::shared_ptr<GF2m> field_;
  std::shared_ptr<ReedSolomon> rs_;
};

std::unique_ptr<RatelessWindowCode> make_default_rateless(std::size_t s, std::size_t b, std::uint64_t seed);

}  // namespace icx::codes
