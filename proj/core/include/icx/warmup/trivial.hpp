#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "icx/codes/linear_code.hpp"
#include "icx/protocol/tree.hpp"

namespace icx::warmup {

struct TrivialSchemeConfig {
  std::size_t min_message_length = 24;  // b: every message has at least b bits
  std::size_t piece_bits = 12;          // messages are coded in pieces of this many bits
  double eps = 0.01;
  double target_failure = 1e-3;         // union bound target over all pieces of a run
  std::size_t expected_pieces = 64;
  std::uint64_t code_seed = 1;
};

// Binomial tail P[Bin(n, p) > t].
double binomial_tail_above(std::size_t n, double p, std::size_t t);

// Shortest random linear [n, piece_bits] code whose unique-decoding radius
// keeps expected_pieces * P[Bin(n, eps) > radius] under target_failure.
codes::BinaryLinearCode choose_trivial_code(const TrivialSchemeConfig& cfg);

struct WarmupResult {
  bool success = false;
  std::size_t n = 0;          // rounds of the original protocol
  std::size_t rounds = 0;     // rounds of the encoded protocol
  double rate = 0;
  std::size_t units = 0;      // coded pieces (trivial) or chunks (blocked)
  std::size_t unit_failures = 0;  // units decoded to a wrong message
  std::string code;
  std::string to_json() const;
};

struct TrivialOptions {
  // Replaces the first piece of this message by the sent codeword plus a
  // minimum-weight codeword, forcing a wrong decode.
  std::optional<std::size_t> sabotage_message;
};

// protocol must be non-adaptive with all message lengths >= min_message_length.
WarmupResult trivial_simulate(const protocol::Protocol& proto, const protocol::Inputs& inputs,
                              const codes::BinaryLinearCode& code, double eps, std::uint64_t seed,
                              const TrivialOptions& opts = {});
WarmupResult trivial_simulate(const protocol::Protocol& proto, const protocol::Inputs& inputs,
                              const TrivialSchemeConfig& cfg, std::uint64_t seed);

}  // namespace icx::warmup
