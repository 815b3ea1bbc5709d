#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "icx/bits.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/protocol/tree.hpp"
#include "icx/warmup/trivial.hpp"

namespace icx::warmup {

// Stand-in for the q-ary interactive coder run on top of the chunk code.
// A chunk channel takes b bits and returns the receiver's b bits.
class InnerCoderAdapter {
 public:
  using ChunkChannel = std::function<BitVec(const BitVec&)>;
  virtual ~InnerCoderAdapter() = default;
  virtual std::string name() const = 0;
  // Chunk channel uses per q-ary symbol.
  virtual std::size_t uses_per_symbol() const = 0;
  virtual BitVec transmit(const BitVec& symbol, const ChunkChannel& ch) const = 0;
};

class IdentityAdapter : public InnerCoderAdapter {
 public:
  std::string name() const override { return "identity"; }
  std::size_t uses_per_symbol() const override { return 1; }
  BitVec transmit(const BitVec& symbol, const ChunkChannel& ch) const override { return ch(symbol); }
};

// Sends each symbol r times; a symbol seen at least twice wins, else the first.
class MajorityRepeatAdapter : public InnerCoderAdapter {
 public:
  explicit MajorityRepeatAdapter(std::size_t r = 3);
  std::string name() const override { return "majority-repeat"; }
  std::size_t uses_per_symbol() const override { return r_; }
  BitVec transmit(const BitVec& symbol, const ChunkChannel& ch) const override;

 private:
  std::size_t r_;
};

// "identity", "majority-repeat"; "interactive" names the real coder and
// yields nullptr.
std::unique_ptr<InnerCoderAdapter> make_inner_adapter(const std::string& name);

struct BlockedRandomConfig {
  double eps = 1.0 / 64;
  std::size_t b = 16;
  // b' = b + (2c + delta) * log2(1/eps)^2, distance >= 2c * log2(1/eps).
  double c = 4;
  double delta = 1;
  std::uint64_t code_seed = 1;
  bool strict = false;

  std::size_t chunk_length() const;
  std::size_t min_distance() const;
};

codes::BinaryLinearCode choose_chunk_code(const BlockedRandomConfig& cfg);

// inner == nullptr means the interactive coder is absent: strict mode throws,
// otherwise the identity adapter stands in.
WarmupResult blocked_random_simulate(const protocol::Protocol& proto, const protocol::Inputs& inputs,
                                     const BlockedRandomConfig& cfg, const codes::BinaryLinearCode& chunk_code,
                                     const InnerCoderAdapter* inner, std::uint64_t seed);

}  // namespace icx::warmup
