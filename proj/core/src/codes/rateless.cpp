#include "icx/codes/rateless.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "icx/codes/entropy.hpp"
#include "icx/rng.hpp"

namespace icx::codes {

RatelessWindowCode::RatelessWindowCode(std::size_t s, std::size_t b) : s_(s), b_(b) {
  if (s == 0 || b == 0) throw std::invalid_argument("rateless code needs s, b >= 1");
}

std::vector<BitVec> RatelessWindowCode::encode_chunks(const BitVec& x) const {
  BitVec y = encode(x);
  std::vector<BitVec> out;
  out.reserve(2 * s_);
  for (std::size_t i = 0; i < 2 * s_; ++i) out.push_back(y.slice(i * b_, b_));
  return out;
}

BitVec RatelessWindowCode::window(const BitVec& codeword, std::size_t a, std::size_t j) const {
  if (codeword.size() != codeword_bits()) throw std::invalid_argument("codeword length mismatch");
  if (a >= 2 * s_ || j == 0 || j > 2 * s_) throw std::out_of_range("window out of range");
  BitVec out;
  for (std::size_t c = 0; c < j; ++c) out.append(codeword.slice(((a + c) % (2 * s_)) * b_, b_));
  return out;
}

void RatelessWindowCode::check_window(std::size_t a, std::size_t j, const BitVec& received) const {
  if (a >= 2 * s_) throw std::out_of_range("window start out of range");
  if (j <= s_ || j > 2 * s_) throw std::out_of_range("window length must satisfy s < j <= 2s");
  if (received.size() != j * b_) throw std::invalid_argument("received window length mismatch");
}

std::size_t RatelessWindowCode::full_distance() const {
  auto it = dist_.find({0, 2 * s_});
  return it == dist_.end() ? 0 : it->second;
}

bool RatelessWindowCode::meets_targets() const {
  for (std::size_t a = 0; a < 2 * s_; ++a) {
    for (std::size_t j = s_ + 1; j <= 2 * s_; ++j) {
      auto it = dist_.find({a, j});
      if (it == dist_.end() || it->second < window_distance_target(s_, b_, j)) return false;
    }
  }
  return true;
}

RandomRatelessCode::RandomRatelessCode(std::size_t s, std::size_t b, std::vector<BitVec> rows)
    : RatelessWindowCode(s, b), rows_(std::move(rows)) {
  if (2 * s * b > 64) throw std::invalid_argument("random rateless code limited to 2sb <= 64");
  if (rows_.size() != s * b) throw std::invalid_argument("rateless generator needs sb rows");
  for (auto& r : rows_) {
    if (r.size() != 2 * s * b) throw std::invalid_argument("rateless generator rows need 2sb bits");
    rows64_.push_back(r.read_uint(0, 2 * s * b));
  }
}

std::uint64_t RandomRatelessCode::encode64(std::uint64_t msg) const {
  std::uint64_t cw = 0;
  while (msg) {
    cw ^= rows64_[std::countr_zero(msg)];
    msg &= msg - 1;
  }
  return cw;
}

std::uint64_t RandomRatelessCode::window64(std::uint64_t cw, std::size_t a, std::size_t j) const {
  std::size_t N = codeword_bits();
  std::size_t sh = a * b_;
  std::uint64_t full = N == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N) - 1;
  std::uint64_t rot = sh == 0 ? cw : ((cw >> sh) | (cw << (N - sh))) & full;
  std::size_t len = j * b_;
  return len == 64 ? rot : rot & ((std::uint64_t{1} << len) - 1);
}

BitVec RandomRatelessCode::encode(const BitVec& x) const {
  if (x.size() != message_bits()) throw std::invalid_argument("rateless message length mismatch");
  return BitVec::from_uint(encode64(x.read_uint(0, x.size())), codeword_bits());
}

std::optional<BitVec> RandomRatelessCode::window_decode(std::size_t a, std::size_t j, const BitVec& received) const {
  check_window(a, j, received);
  std::size_t k = message_bits();
  if (k > BinaryLinearCode::kMaxExactK) throw std::invalid_argument("brute-force window decoding limited to sb <= 24");
  std::uint64_t rv = received.read_uint(0, received.size());
  std::vector<std::uint64_t> wrows(k);
  for (std::size_t i = 0; i < k; ++i) wrows[i] = window64(rows64_[i], a, j);
  std::uint64_t total = std::uint64_t{1} << k;
  std::uint64_t cw = 0, gray = 0, best_m = 0;
  int best_d = std::numeric_limits<int>::max();
  auto lex_less = [](std::uint64_t x, std::uint64_t y) {
    // Lowest differing index decides; bit 0 is the first message bit.
    std::uint64_t d = x ^ y;
    if (!d) return false;
    return ((x >> std::countr_zero(d)) & 1u) == 0;
  };
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i > 0) {
      int bit = std::countr_zero(i);
      cw ^= wrows[bit];
      gray ^= std::uint64_t{1} << bit;
    }
    int d = std::popcount(cw ^ rv);
    if (d < best_d || (d == best_d && lex_less(gray, best_m))) {
      best_d = d;
      best_m = gray;
    }
  }
  return BitVec::from_uint(best_m, k);
}

bool RandomRatelessCode::verify_exact(bool stop_below) {
  std::size_t k = message_bits();
  if (k > BinaryLinearCode::kMaxExactK) throw std::invalid_argument("exact verification limited to sb <= 24");
  std::vector<std::size_t> target;
  std::vector<WindowKey> keys;
  for (std::size_t a = 0; a < 2 * s_; ++a) {
    for (std::size_t j = s_ + 1; j <= 2 * s_; ++j) {
      keys.push_back({a, j});
      target.push_back(window_distance_target(s_, b_, j));
    }
  }
  std::vector<std::size_t> best(keys.size(), std::numeric_limits<std::size_t>::max());
  std::uint64_t total = std::uint64_t{1} << k;
  std::uint64_t cw = 0;
  bool ok = true;
  for (std::uint64_t i = 1; i < total; ++i) {
    cw ^= rows64_[std::countr_zero(i)];
    for (std::size_t w = 0; w < keys.size(); ++w) {
      std::size_t wt = static_cast<std::size_t>(std::popcount(window64(cw, keys[w].first, keys[w].second)));
      if (wt < best[w]) {
        best[w] = wt;
        if (wt < target[w]) {
          ok = false;
          if (stop_below) return false;
        }
      }
    }
  }
  dist_.clear();
  for (std::size_t w = 0; w < keys.size(); ++w) dist_[keys[w]] = best[w];
  return ok;
}

void RandomRatelessCode::verify_sampled(std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t k = message_bits();
  dist_.clear();
  for (std::size_t a = 0; a < 2 * s_; ++a) {
    for (std::size_t j = s_ + 1; j <= 2 * s_; ++j) dist_[{a, j}] = std::numeric_limits<std::size_t>::max();
  }
  for (std::size_t i = 0; i < samples; ++i) {
    std::uint64_t m = rng.next() & ((std::uint64_t{1} << k) - 1);
    if (!m) continue;
    std::uint64_t cw = encode64(m);
    for (auto& [key, d] : dist_) {
      d = std::min(d, static_cast<std::size_t>(std::popcount(window64(cw, key.first, key.second))));
    }
  }
}

std::string RandomRatelessCode::name() const {
  return "random-rateless(s=" + std::to_string(s_) + ",b=" + std::to_string(b_) + ")";
}

RandomRatelessCode rateless_search(std::size_t s, std::size_t b, const RatelessSearchParams& params) {
  if (params.search.max_attempts == 0) throw std::invalid_argument("max_attempts must be >= 1");
  Rng seeds(params.search.rng_seed);
  for (std::size_t attempt = 0; attempt < params.search.max_attempts; ++attempt) {
    Rng rng(seeds.next());
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < s * b; ++i) rows.push_back(rng.bits(2 * s * b));
    RandomRatelessCode code(s, b, std::move(rows));
    if (params.mode == VerifyMode::Exact) {
      if (code.verify_exact(true)) {
        code.verify_exact(false);
        return code;
      }
    } else {
      code.verify_sampled(params.samples, rng.next());
      if (code.meets_targets()) return code;
    }
  }
  throw std::runtime_error("search exhausted");
}

RsRatelessCode::RsRatelessCode(std::size_t s, std::size_t b) : RatelessWindowCode(s, b) {
  if (b % 8 != 0) throw std::invalid_argument("Reed-Solomon rateless code needs b % 8 == 0");
  std::size_t n = 2 * s * b / 8, k = s * b / 8;
  if (n > 255) throw std::invalid_argument("Reed-Solomon rateless code limited to 2sb <= 2040");
  field_ = std::make_shared<GF2m>(8);
  rs_ = std::make_shared<ReedSolomon>(*field_, n, k);
  std::size_t per = b / 8;
  for (std::size_t a = 0; a < 2 * s; ++a) {
    for (std::size_t j = s + 1; j <= 2 * s; ++j) dist_[{a, j}] = j * per - k + 1;
  }
}

BitVec RsRatelessCode::encode(const BitVec& x) const {
  if (x.size() != message_bits()) throw std::invalid_argument("rateless message length mismatch");
  std::vector<std::uint16_t> msg(rs_->k());
  for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = static_cast<std::uint16_t>(x.read_uint(8 * i, 8));
  auto cw = rs_->encode(msg);
  BitVec out(codeword_bits());
  for (std::size_t i = 0; i < cw.size(); ++i) out.write_uint(8 * i, 8, cw[i]);
  return out;
}

std::optional<BitVec> RsRatelessCode::window_decode(std::size_t a, std::size_t j, const BitVec& received) const {
  check_window(a, j, received);
  std::size_t per = b_ / 8;
  std::size_t n = rs_->n();
  std::vector<std::uint16_t> r(n, 0);
  std::vector<char> known(n, 0);
  for (std::size_t c = 0; c < j; ++c) {
    std::size_t chunk = (a + c) % (2 * s_);
    for (std::size_t t = 0; t < per; ++t) {
      std::size_t sym = chunk * per + t;
      r[sym] = static_cast<std::uint16_t>(received.read_uint((c * per + t) * 8, 8));
      known[sym] = 1;
    }
  }
  std::vector<std::size_t> erasures;
  for (std::size_t i = 0; i < n; ++i) {
    if (!known[i]) erasures.push_back(i);
  }
  auto cw = rs_->decode(std::move(r), erasures);
  if (!cw) return std::nullopt;
  auto msg = rs_->message_of(*cw);
  BitVec out(message_bits());
  for (std::size_t i = 0; i < msg.size(); ++i) out.write_uint(8 * i, 8, msg[i]);
  return out;
}

std::string RsRatelessCode::name() const {
  return "rs-rateless(s=" + std::to_string(s_) + ",b=" + std::to_string(b_) + ")";
}

std::unique_ptr<RatelessWindowCode> make_default_rateless(std::size_t s, std::size_t b, std::uint64_t seed) {
  if (s * b <= 16 && 2 * s * b <= 64) {
    RatelessSearchParams p;
    p.search.rng_seed = seed;
    p.search.max_attempts = 2000;
    return std::make_unique<RandomRatelessCode>(rateless_search(s, b, p));
  }
  return std::make_unique<RsRatelessCode>(s, b);
}

}  // namespace icx::codes
