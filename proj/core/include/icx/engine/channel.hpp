#pragma once

#include <cstddef>
#include <cstdint>

#include "icx/control/control.hpp"

namespace icx::engine {

using control::ErrorPattern;
using control::ErrSym;

enum class ChannelKind : std::uint8_t { Bsc = 0, Adversary };

// Error pattern fixed before execution. Round r carries symbol pattern[r]; a
// round where nobody transmits delivers the forced bit of a Zero/One symbol,
// otherwise 0.
class Channel {
 public:
  static Channel bsc(double eps, std::size_t rounds, std::uint64_t seed);
  // Throws when the pattern is longer than `rounds` or heavier than `budget`.
  static Channel adversarial(ErrorPattern pattern, std::size_t rounds, std::size_t budget);

  ChannelKind kind() const { return kind_; }
  std::size_t rounds() const { return pattern_.size(); }
  std::size_t budget() const { return budget_; }
  std::size_t weight() const { return weight_; }
  const ErrorPattern& pattern() const { return pattern_; }

  ErrSym at(std::size_t round) const { return pattern_.symbols[round]; }
  bool deliver(bool sent, std::size_t round) const { return control::corrupt_bit(sent, at(round)); }
  bool filler(std::size_t round) const { return at(round) == ErrSym::One; }

 private:
  Channel(ChannelKind k, ErrorPattern p, std::size_t budget);

  ChannelKind kind_;
  ErrorPattern pattern_;
  std::size_t budget_ = 0, weight_ = 0;
};

}  // namespace icx::engine
