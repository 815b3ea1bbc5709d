#include "icx/randomness/exchange.hpp"

#include <stdexcept>

namespace icx::rnd {

ExchangeOutcome randomness_exchange(const BitVec& str, const codes::ExchangeCode& code,
                                    const std::function<BitVec(const BitVec&)>& channel) {
  if (str.size() != code.k()) throw std::invalid_argument("exchange: string length differs from code dimension");
  BitVec cw = code.encode(str);
  BitVec rx = channel(cw);
  if (rx.size() != cw.size()) throw std::invalid_argument("exchange: channel changed the word length");
  ExchangeOutcome out;
  out.alice = str;
  out.corrupted = hamming_distance(cw, rx);
  auto dec = code.decode(rx);
  out.decoded = dec.has_value();
  out.bob = dec ? *dec : BitVec(str.size());
  return out;
}

}  // namespace icx::rnd
