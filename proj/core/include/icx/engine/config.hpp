#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "icx/analysis/potential.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/codes/rateless.hpp"
#include "icx/control/control.hpp"

namespace icx::engine {

struct EngineConfig {
  std::size_t s = 16, b = 16;
  std::size_t p = 8;        // field hash output bits
  std::size_t o_prime = 8;  // inner control hash output bits
  double eps = 0.01;
  double eps_prime = -1;    // negative: eps^2
  double hash_rel_distance = 0.25;
  // N_iter = ceil((n'/b) * (iter_base + iter_kappa * eps * log2(1/eps))).
  double iter_base = 1.25;
  double iter_kappa = 8;
  std::size_t n_iter = 0;   // nonzero overrides the formula
  // Exchange length N_x = max(exchange_factor * eps * N_iter * b', shortest feasible).
  double exchange_factor = 10;
  unsigned exchange_m = 8;
  bool public_randomness = false;
  std::string rateless = "auto";  // auto | rs | random
  std::uint64_t code_seed = 1;
  // Rateless mode budget: (n'/b) * (iter_base + rl_kappa_h * H(eps) + rl_kappa_p * eps' * log2(1/eps')^2).
  double rl_kappa_h = 6;
  double rl_kappa_p = 1;
  bool record_trace = true;
  analysis::PotentialConstants constants;

  double resolved_eps_prime() const { return eps_prime < 0 ? eps * eps : eps_prime; }
  void validate() const;
  std::string to_json() const;
  static EngineConfig from_json(const std::string& text);
};

// Quantities fixed by a config and the blocked protocol length.
struct EngineParams {
  std::size_t s = 0, b = 0, B = 0, p = 0, o_prime = 0;
  std::size_t l_ctrl = 0, o = 0, b_prime = 0;
  std::size_t n_prime = 0, n_iter = 0, n_x = 0;
  std::size_t t_cap = 0;
  std::size_t rounds = 0, budget = 0;
  std::string hash_code, rateless_code, exchange_code;
};

std::size_t iteration_count(const EngineConfig& cfg, std::size_t n_prime);
std::size_t rateless_iteration_count(const EngineConfig& cfg, std::size_t n_prime, double true_eps);

// Codes shared by both parties; built once per (s, b, p, o', distance).
struct CodeBundle {
  std::shared_ptr<const codes::BlockCode> hash_code;
  std::shared_ptr<const control::ControlCodec> codec;
  std::shared_ptr<const codes::RatelessWindowCode> rateless;
};

CodeBundle build_codes(const EngineConfig& cfg);
EngineParams derive_params(const EngineConfig& cfg, const CodeBundle& codes, std::size_t n_prime,
                           std::size_t n_iter);

}  // namespace icx::engine
