#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icx/analysis/audit.hpp"
#include "icx/analysis/state.hpp"
#include "icx/engine/adversary.hpp"
#include "icx/engine/channel.hpp"
#include "icx/engine/config.hpp"
#include "icx/engine/trace.hpp"
#include "icx/protocol/blocking.hpp"

namespace icx::engine {

struct ChannelSpec {
  ChannelKind kind = ChannelKind::Adversary;
  std::string strategy = "uniform_random";
  // Used instead of the strategy when set.
  std::optional<ErrorPattern> pattern;
};

struct RunMetrics {
  bool success = false;
  bool exchange_ok = true;
  std::size_t n = 0, n_prime = 0, n_iter = 0, b_prime = 0, n_x = 0;
  std::size_t rounds = 0;
  double rate = 0, overhead = 0;
  std::optional<std::size_t> completion_iteration;
  std::size_t rounds_to_completion = 0;
  double overhead_completion = 0;
  std::size_t sound = 0, invalid = 0, malicious = 0, collisions = 0;
  std::size_t transitions = 0;
  std::size_t corrupted_rounds = 0, budget = 0;
  double phi_final = 0;
  std::string final_state;
  analysis::FinalCheck final_check;
  std::string to_json() const;
};

struct SimulationResult {
  BitVec T_A, T_B;
  BitVec reference;  // blocked noiseless transcript
  EngineParams params;
  TraceHeader header;
  std::vector<IterationRecord> trace;
  analysis::StateClass final_state;
  RunMetrics metrics;
};

struct RunOptions {
  const CodeBundle* codes = nullptr;  // built from the config when null
  bool check_invariants = false;
};

SimulationResult run_simulation(const protocol::BlockedProtocol& proto, const protocol::Inputs& inputs,
                                const EngineConfig& cfg, const ChannelSpec& channel, std::uint64_t seed,
                                const RunOptions& opts = {});

// Public shared randomness, fixed eps', round budget set from true_eps.
SimulationResult run_rateless(const protocol::BlockedProtocol& proto, const protocol::Inputs& inputs,
                              const EngineConfig& cfg, double true_eps, const std::string& strategy,
                              std::uint64_t seed, const RunOptions& opts = {});

// Reference transcript and the speaker of every block.
analysis::Reference make_reference(const protocol::BlockedProtocol& proto, const protocol::Inputs& inputs);

}  // namespace icx::engine
