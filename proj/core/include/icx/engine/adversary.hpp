#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "icx/control/control.hpp"

namespace icx::engine {

// Everything an oblivious adversary may know: public layout, never the
// shared string, slot positions or seeds.
struct AdversaryView {
  std::size_t rounds = 0;          // total, exchange included
  std::size_t exchange_rounds = 0; // leading rounds carrying the exchange word
  std::size_t n_iter = 0;
  std::size_t b = 0, b_prime = 0;
  unsigned exchange_m = 8;
  double eps = 0;
  std::size_t budget = 0;
};

struct AdversaryStrategy {
  std::string name;
  std::function<control::ErrorPattern(const AdversaryView&, std::uint64_t seed)> generate;
};

// uniform_random, burst, redundancy_window, control_slot_guess, exchange_attack.
const std::vector<AdversaryStrategy>& adversary_strategies();
const AdversaryStrategy& find_strategy(const std::string& name);

struct WindowSpan {
  std::size_t start = 0, length = 0;
};
// Rounds targeted by redundancy_window for this view and seed.
WindowSpan redundancy_window_span(const AdversaryView& v, std::uint64_t seed);

}  // namespace icx::engine
