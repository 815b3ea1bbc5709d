#include "icx/warmup/blocked_random.hpp"

#include <cmath>
#include <stdexcept>

#include "icx/analysis/potential.hpp"
#include "icx/protocol/blocking.hpp"
#include "icx/rng.hpp"

namespace icx::warmup {

MajorityRepeatAdapter::MajorityRepeatAdapter(std::size_t r) : r_(r) {
  if (r == 0) throw std::invalid_argument("majority-repeat needs r >= 1");
}

BitVec MajorityRepeatAdapter::transmit(const BitVec& symbol, const ChunkChannel& ch) const {
  std::vector<BitVec> got;
  for (std::size_t i = 0; i < r_; ++i) got.push_back(ch(symbol));
  for (std::size_t i = 0; i < got.size(); ++i) {
    for (std::size_t j = i + 1; j < got.size(); ++j) {
      if (got[i] == got[j]) return got[i];
    }
  }
  return got.front();
}

std::unique_ptr<InnerCoderAdapter> make_inner_adapter(const std::string& name) {
  if (name == "identity") return std::make_unique<IdentityAdapter>();
  if (name == "majority-repeat") return std::make_unique<MajorityRepeatAdapter>(3);
  if (name == "interactive") return nullptr;
  throw std::invalid_argument("unknown inner coder: " + name);
}

std::size_t BlockedRandomConfig::chunk_length() const {
  double l = analysis::log_inv(eps);
  return b + static_cast<std::size_t>(std::ceil((2 * c + delta) * l * l));
}

std::size_t BlockedRandomConfig::min_distance() const {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2 * c * analysis::log_inv(eps))));
}

codes::BinaryLinearCode choose_chunk_code(const BlockedRandomConfig& cfg) {
  codes::CodeSearchParams sp;
  sp.rng_seed = cfg.code_seed;
  sp.max_attempts = 50;
  if (cfg.chunk_length() == cfg.b) return codes::BinaryLinearCode::identity(cfg.b);
  return codes::gv_search(cfg.b, cfg.chunk_length(), cfg.min_distance(), sp);
}

WarmupResult blocked_random_simulate(const protocol::Protocol& proto, const protocol::Inputs& inputs,
                                     const BlockedRandomConfig& cfg, const codes::BinaryLinearCode& chunk_code,
                                     const InnerCoderAdapter* inner, std::uint64_t seed) {
  IdentityAdapter fallback;
  if (!inner) {
    if (cfg.strict) throw std::runtime_error("out-of-scope dependency: the inner interactive coder is not provided");
    inner = &fallback;
  }
  if (chunk_code.k() != cfg.b) throw std::invalid_argument("chunk code dimension must equal b");
  protocol::BlockedProtocol blk(protocol::ProtocolPtr(&proto, [](const protocol::Protocol*) {}), cfg.b);
  Rng rng(seed);

  WarmupResult res;
  res.n = proto.depth();
  res.code = chunk_code.name();
  auto chunk_channel = [&](const BitVec& sym) {
    BitVec cw = chunk_code.encode(sym);
    for (std::size_t i = 0; i < cw.size(); ++i) {
      if (cfg.eps > 0 && rng.bernoulli(cfg.eps)) cw.flip(i);
    }
    BitVec got = chunk_code.nearest_codeword_decode(cw);
    ++res.units;
    if (got != sym) ++res.unit_failures;
    res.rounds += chunk_code.n();
    return got;
  };

  protocol::BlockedCursor curA = blk.start(), curB = blk.start();
  BitVec viewA, viewB;
  bool diverged = false;
  while (!blk.done(curA) && !blk.done(curB)) {
    protocol::Party o = blk.owner(curA);
    if (blk.owner(curB) != o) {
      diverged = true;
      break;
    }
    protocol::BlockedCursor& cs = o == protocol::Party::Alice ? curA : curB;
    protocol::BlockedCursor& cr = o == protocol::Party::Alice ? curB : curA;
    BitVec symbol = blk.block_contents(cs, inputs.of(o));
    BitVec got = inner->transmit(symbol, chunk_channel);
    for (std::size_t i = 0; i < cfg.b && !blk.done(cs); ++i) blk.advance(cs, symbol[i]);
    for (std::size_t i = 0; i < cfg.b && !blk.done(cr); ++i) blk.advance(cr, got[i]);
    (o == protocol::Party::Alice ? viewA : viewB).append(symbol);
    (o == protocol::Party::Alice ? viewB : viewA).append(got);
  }
  BitVec ref = blk.run_noiseless(inputs);
  res.success = !diverged && blk.done(curA) && blk.done(curB) && viewA == ref && viewB == ref;
  res.rate = res.rounds ? static_cast<double>(res.n) / static_cast<double>(res.rounds) : 1.0;
  return res;
}

}  // namespace icx::warmup
