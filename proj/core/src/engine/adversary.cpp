#include "icx/engine/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "icx/rng.hpp"

namespace icx::engine {

using control::ErrorPattern;
using control::ErrSym;

namespace {

ErrorPattern none(const AdversaryView& v, std::uint64_t) { return ErrorPattern(v.rounds); }

ErrorPattern uniform_random(const AdversaryView& v, std::uint64_t seed) {
  Rng rng(seed);
  ErrorPattern p(v.rounds);
  std::size_t w = std::min(v.budget, v.rounds);
  std::vector<std::uint32_t> idx(v.rounds);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < w; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(v.rounds - i));
    std::swap(idx[i], idx[j]);
    p.symbols[idx[i]] = ErrSym::Flip;
  }
  return p;
}

// Up to four contiguous runs of flips placed at random.
ErrorPattern burst(const AdversaryView& v, std::uint64_t seed) {
  Rng rng(seed);
  ErrorPattern p(v.rounds);
  std::size_t left = std::min(v.budget, v.rounds);
  std::size_t parts = 1 + static_cast<std::size_t>(rng.below(4));
  for (std::size_t k = 0; k < parts && left > 0; ++k) {
    std::size_t len = k + 1 == parts ? left : left / (parts - k);
    std::size_t start = static_cast<std::size_t>(rng.below(v.rounds - len + 1));
    for (std::size_t r = start; r < start + len; ++r) {
      if (p.symbols[r] == ErrSym::Pass) {
        p.symbols[r] = ErrSym::Flip;
        --left;
      }
    }
  }
  return p;
}

ErrorPattern redundancy_window(const AdversaryView& v, std::uint64_t seed) {
  ErrorPattern p(v.rounds);
  WindowSpan w = redundancy_window_span(v, seed);
  std::size_t left = v.budget;
  for (std::size_t r = w.start; r < w.start + w.length && left > 0; ++r) {
    if ((r - v.exchange_rounds) % v.b_prime >= v.b) {
      p.symbols[r] = ErrSym::Flip;
      --left;
    }
  }
  return p;
}

// Fixed offsets inside every mini-block, overwritten with random bits.
ErrorPattern control_slot_guess(const AdversaryView& v, std::uint64_t seed) {
  Rng rng(seed);
  ErrorPattern p(v.rounds);
  if (v.n_iter == 0) return p;
  std::size_t per = std::min(v.b_prime, v.budget / v.n_iter);
  std::vector<std::size_t> offs(v.b_prime);
  std::iota(offs.begin(), offs.end(), std::size_t{0});
  for (std::size_t i = 0; i < per; ++i) std::swap(offs[i], offs[i + rng.below(v.b_prime - i)]);
  offs.resize(per);
  for (std::size_t it = 0; it < v.n_iter; ++it) {
    std::size_t base = v.exchange_rounds + it * v.b_prime;
    for (std::size_t o : offs) p.symbols[base + o] = rng.bit() ? ErrSym::One : ErrSym::Zero;
  }
  return p;
}

// Spends the budget on the exchange word: just over a quarter of each inner
// codeword span, span after span.
ErrorPattern exchange_attack(const AdversaryView& v, std::uint64_t) {
  ErrorPattern p(v.rounds);
  std::size_t span = std::size_t{1} << (v.exchange_m - 1);
  std::size_t hit = span / 4 + 1;
  std::size_t left = v.budget;
  for (std::size_t base = 0; base + span <= v.exchange_rounds && left > 0; base += span) {
    for (std::size_t i = 0; i < hit && left > 0; ++i, --left) p.symbols[base + i] = ErrSym::Flip;
  }
  return p;
}

}  // namespace

WindowSpan redundancy_window_span(const AdversaryView& v, std::uint64_t seed) {
  WindowSpan w;
  std::size_t region = v.n_iter * v.b_prime;
  if (region == 0 || v.b_prime <= v.b) return w;
  double rho = static_cast<double>(v.b_prime - v.b) / static_cast<double>(v.b_prime);
  std::size_t len = static_cast<std::size_t>(std::ceil(static_cast<double>(v.budget) / rho));
  len = std::min(region, (len + v.b_prime - 1) / v.b_prime * v.b_prime);
  std::size_t blocks = len / v.b_prime;
  Rng rng(seed);
  std::size_t first = static_cast<std::size_t>(rng.below(v.n_iter - blocks + 1));
  w.start = v.exchange_rounds + first * v.b_prime;
  w.length = len;
  return w;
}

const std::vector<AdversaryStrategy>& adversary_strategies() {
  static const std::vector<AdversaryStrategy> all{
      {"none", none},
      {"uniform_random", uniform_random},
      {"burst", burst},
      {"redundancy_window", redundancy_window},
      {"control_slot_guess", control_slot_guess},
      {"exchange_attack", exchange_attack},
  };
  return all;
}

const AdversaryStrategy& find_strategy(const std::string& name) {
  for (const auto& s : adversary_strategies()) {
    if (s.name == name || (name == "uniform" && s.name == "uniform_random")) return s;
  }
  throw std::invalid_argument("unknown adversary strategy: " + name);
}

}  // namespace icx::engine
