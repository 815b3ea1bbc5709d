#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icx/engine/config.hpp"
#include "icx/protocol/protocol_json.hpp"

namespace icx::tools {

enum class Scheme { Oblivious, Rateless, Trivial, BlockedRandom };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct TrivialSettings {
  std::size_t min_message_length = 24;
  std::size_t piece_bits = 12;
  double target_failure = 1e-3;
};

struct BlockedSettings {
  std::size_t b = 16;
  double c = 4, delta = 1;
  std::string inner = "identity";
  bool strict = false;
};

struct ExperimentConfig {
  Scheme scheme = Scheme::Oblivious;
  // Protocol document; empty means a fresh random segments protocol per run.
  std::string protocol_json;
  std::size_t depth = 4096;
  std::size_t segment_lo = 256, segment_hi = 1024;
  engine::EngineConfig engine;
  std::vector<double> eps_grid{0.01};
  std::vector<std::string> strategies{"uniform_random"};
  std::size_t runs = 1;
  std::uint64_t seed = 1;
  bool audit = false;
  // Error pattern symbols for single oblivious runs; replaces the strategy.
  std::string pattern;
  TrivialSettings trivial;
  BlockedSettings blocked;

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  // Full protocol document, or {"depth": N, "segments": [lo, hi]}.
  void set_protocol(const std::string& text);
};

// Protocol and inputs of run `index` under the config.
protocol::ProtocolDescription make_protocol(const ExperimentConfig& cfg, std::uint64_t run_seed);

struct RunOutcome {
  bool success = false;
  double rate = 0, overhead = 0;
  std::size_t rounds = 0, n_iter = 0;
  std::size_t invalid = 0, malicious = 0, unit_failures = 0, units = 0;
  std::optional<std::size_t> audit_violations;
  std::string metrics_json;  // scheme specific metrics
  std::string audit_json;
  std::string trace;         // JSON lines, filled when requested
};

RunOutcome run_once(const ExperimentConfig& cfg, double eps, const std::string& strategy, std::uint64_t run_seed,
                    bool want_trace = false);

// Full JSON document for `icx run`.
std::string run_document(const ExperimentConfig& cfg, const RunOutcome& out);

struct SweepRow {
  double eps = 0;
  std::string strategy;
  std::size_t runs = 0, successes = 0;
  double mean_rate = 0, mean_overhead = 0, mean_invalid = 0, mean_malicious = 0;
  std::size_t max_n_iter = 0, audit_violations = 0;
};

std::vector<SweepRow> sweep(const ExperimentConfig& cfg);
std::string sweep_csv(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows);

}  // namespace icx::tools
