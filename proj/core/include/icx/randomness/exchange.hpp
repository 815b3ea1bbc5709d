#pragma once

#include <cstddef>
#include <functional>

#include "icx/bits.hpp"
#include "icx/codes/exchange_code.hpp"

namespace icx::rnd {

struct ExchangeOutcome {
  BitVec alice;            // Alice's string, sampled locally
  BitVec bob;              // Bob's decoded copy
  bool decoded = false;    // false: decoding failed, Bob falls back to zeros
  std::size_t corrupted = 0;
};

// Alice sends C^exchange(str) over `channel` (codeword in, received word out).
ExchangeOutcome randomness_exchange(const BitVec& str, const codes::ExchangeCode& code,
                                    const std::function<BitVec(const BitVec&)>& channel);

}  // namespace icx::rnd
