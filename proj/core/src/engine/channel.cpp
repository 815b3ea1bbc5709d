#include "icx/engine/channel.hpp"

#include <stdexcept>
#include <string>

#include "icx/rng.hpp"

namespace icx::engine {

Channel::Channel(ChannelKind k, ErrorPattern p, std::size_t budget)
    : kind_(k), pattern_(std::move(p)), budget_(budget), weight_(pattern_.weight()) {}

Channel Channel::bsc(double eps, std::size_t rounds, std::uint64_t seed) {
  if (!(eps >= 0 && eps < 0.5)) throw std::invalid_argument("bsc: eps must be in [0, 0.5)");
  Rng rng(seed);
  ErrorPattern p(rounds);
  if (eps > 0) {
    for (auto& s : p.symbols) {
      if (rng.bernoulli(eps)) s = ErrSym::Flip;
    }
  }
  return Channel(ChannelKind::Bsc, std::move(p), rounds);
}

Channel Channel::adversarial(ErrorPattern pattern, std::size_t rounds, std::size_t budget) {
  if (pattern.size() > rounds) throw std::invalid_argument("error pattern longer than the execution");
  pattern.symbols.resize(rounds, ErrSym::Pass);
  std::size_t w = pattern.weight();
  if (w > budget)
    throw std::invalid_argument("error pattern exceeds budget: weight " + std::to_string(w) + " > " +
                                std::to_string(budget));
  return Channel(ChannelKind::Adversary, std::move(pattern), budget);
}

}  // namespace icx::engine
