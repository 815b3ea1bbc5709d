#include "icx/warmup/trivial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "icx/rng.hpp"

namespace icx::warmup {

double binomial_tail_above(std::size_t n, double p, std::size_t t) {
  if (t >= n) return 0;
  if (p <= 0) return 0;
  if (p >= 1) return 1;
  double total = 0;
  const double lp = std::log(p), lq = std::log1p(-p);
  for (std::size_t i = t + 1; i <= n; ++i) {
    double lc = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(i) + 1) -
                std::lgamma(static_cast<double>(n - i) + 1);
    total += std::exp(lc + static_cast<double>(i) * lp + static_cast<double>(n - i) * lq);
  }
  return std::min(1.0, total);
}

namespace {

double log2_binom_sum(std::size_t n, std::size_t upto) {
  double s = 0;
  for (std::size_t i = 0; i <= upto && i <= n; ++i) {
    s += std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(i) + 1) -
                  std::lgamma(static_cast<double>(n - i) + 1));
  }
  return std::log2(s);
}

BitVec min_weight_codeword(const codes::BinaryLinearCode& code) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  BitVec out;
  std::uint64_t total = std::uint64_t{1} << code.k();
  for (std::uint64_t msg = 1; msg < total; ++msg) {
    BitVec cw = code.encode(BitVec::from_uint(msg, code.k()));
    if (cw.popcount() < best) {
      best = cw.popcount();
      out = cw;
    }
  }
  return out;
}

}  // namespace

codes::BinaryLinearCode choose_trivial_code(const TrivialSchemeConfig& cfg) {
  std::size_t k = cfg.piece_bits;
  if (k == 0 || k > codes::BinaryLinearCode::kMaxExactK) throw std::invalid_argument("piece_bits must be in [1, 24]");
  double pieces = static_cast<double>(std::max<std::size_t>(1, cfg.expected_pieces));
  if (cfg.eps <= 0) return codes::BinaryLinearCode::identity(k);
  for (std::size_t n = k + 1; n <= k + 400; ++n) {
    std::size_t t = 0;
    while (t < n && pieces * binomial_tail_above(n, cfg.eps, t) > cfg.target_failure) ++t;
    std::size_t d = 2 * t + 1;
    if (d > n) continue;
    // Varshamov: a linear [n, k, d] code exists when sum_{i<=d-2} C(n-1, i) < 2^(n-k).
    if (log2_binom_sum(n - 1, d - 2) >= static_cast<double>(n - k)) continue;
    codes::CodeSearchParams sp;
    sp.rng_seed = cfg.code_seed;
    sp.max_attempts = 200;
    try {
      return codes::gv_search(k, n, d, sp);
    } catch (const std::runtime_error&) {
    }
  }
  throw std::runtime_error("search exhausted");
}

std::string WarmupResult::to_json() const {
  nlohmann::json j{{"success", success},
                   {"n", n},
                   {"rounds", rounds},
                   {"rate", rate},
                   {"counts", {{"units", units}, {"unit_failures", unit_failures}}},
                   {"code", code}};
  return j.dump();
}

WarmupResult trivial_simulate(const protocol::Protocol& proto, const protocol::Inputs& inputs,
                              const codes::BinaryLinearCode& code, double eps, std::uint64_t seed,
                              const TrivialOptions& opts) {
  if (proto.adaptive()) throw std::invalid_argument("trivial scheme needs a non-adaptive protocol");
  auto seq = proto.owner_sequence();
  const std::size_t k = code.k();
  Rng rng(seed);
  BitVec sabotage;
  if (opts.sabotage_message) sabotage = min_weight_codeword(code);

  WarmupResult res;
  res.n = proto.depth();
  res.code = code.name();
  protocol::Cursor curA = proto.start(), curB = proto.start();
  BitVec viewA, viewB;
  std::size_t msg = 0;
  for (std::size_t pos = 0; pos < seq.size(); ++msg) {
    protocol::Party o = seq[pos];
    std::size_t len = 0;
    while (pos + len < seq.size() && seq[pos + len] == o) ++len;
    protocol::Cursor& cs = o == protocol::Party::Alice ? curA : curB;
    protocol::Cursor& cr = o == protocol::Party::Alice ? curB : curA;
    BitVec& vs = o == protocol::Party::Alice ? viewA : viewB;
    BitVec& vr = o == protocol::Party::Alice ? viewB : viewA;
    BitVec message(len);
    for (std::size_t i = 0; i < len; ++i) {
      bool bit = proto.preferred(cs, inputs.of(o));
      message.set(i, bit);
      proto.advance(cs, bit);
    }
    vs.append(message);
    BitVec heard;
    for (std::size_t off = 0; off < len; off += k) {
      BitVec piece(k);
      for (std::size_t i = 0; i < k && off + i < len; ++i) piece.set(i, message[off + i]);
      BitVec cw = code.encode(piece);
      for (std::size_t i = 0; i < cw.size(); ++i) {
        if (eps > 0 && rng.bernoulli(eps)) cw.flip(i);
      }
      if (opts.sabotage_message && *opts.sabotage_message == msg && off == 0) cw ^= sabotage;
      BitVec got = code.nearest_codeword_decode(cw);
      ++res.units;
      if (got != piece) ++res.unit_failures;
      res.rounds += code.n();
      for (std::size_t i = 0; i < k && off + i < len; ++i) heard.push_back(got[i]);
    }
    for (std::size_t i = 0; i < len; ++i) proto.advance(cr, heard[i]);
    vr.append(heard);
    pos += len;
  }
  BitVec ref = protocol::run_noiseless(proto, inputs);
  res.success = viewA == ref && viewB == ref;
  res.rate = res.rounds ? static_cast<double>(res.n) / static_cast<double>(res.rounds) : 1.0;
  return res;
}

WarmupResult trivial_simulate(const protocol::Protocol& proto, const protocol::Inputs& inputs,
                              const TrivialSchemeConfig& cfg, std::uint64_t seed) {
  if (proto.adaptive()) throw std::invalid_argument("trivial scheme needs a non-adaptive protocol");
  auto seq = proto.owner_sequence();
  std::size_t pieces = 0;
  for (std::size_t pos = 0; pos < seq.size();) {
    std::size_t len = 0;
    while (pos + len < seq.size() && seq[pos + len] == seq[pos]) ++len;
    if (len < cfg.min_message_length)
      throw std::invalid_argument("message of " + std::to_string(len) + " bits is below the minimum length " +
                                  std::to_string(cfg.min_message_length));
    pieces += (len + cfg.piece_bits - 1) / cfg.piece_bits;
    pos += len;
  }
  TrivialSchemeConfig c = cfg;
  c.expected_pieces = pieces;
  return trivial_simulate(proto, inputs, choose_trivial_code(c), cfg.eps, seed);
}

}  // namespace icx::warmup
