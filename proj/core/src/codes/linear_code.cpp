#include "icx/codes/linear_code.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "icx/rng.hpp"

namespace icx::codes {

BinaryLinearCode::BinaryLinearCode(std::vector<BitVec> rows, std::size_t min_distance)
    : d_(min_distance), rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("linear code needs k >= 1");
  n_ = rows_[0].size();
  for (auto& r : rows_) {
    if (r.size() != n_) throw std::invalid_argument("generator rows differ in length");
  }
  if (n_ <= 64) {
    for (auto& r : rows_) rows64_.push_back(r.read_uint(0, n_));
  }
}

BinaryLinearCode BinaryLinearCode::identity(std::size_t k) {
  std::vector<BitVec> rows;
  for (std::size_t i = 0; i < k; ++i) {
    BitVec r(k);
    r.set(i, true);
    rows.push_back(std::move(r));
  }
  return BinaryLinearCode(std::move(rows), 1);
}

BinaryLinearCode BinaryLinearCode::random(std::size_t k, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BitVec> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(rng.bits(n));
  return BinaryLinearCode(std::move(rows), 0);
}

BitVec BinaryLinearCode::encode(const BitVec& msg) const {
  if (msg.size() != k()) throw std::invalid_argument("message length mismatch");
  BitVec out(n_);
  for (std::size_t i = 0; i < k(); ++i) {
    if (msg[i]) out ^= rows_[i];
  }
  return out;
}

namespace {

std::uint64_t lex_key(std::uint64_t m, std::size_t k) {
  // Lexicographic order with bit 0 most significant.
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < k; ++i) r |= ((m >> i) & 1u) << (k - 1 - i);
  return r;
}

}  // namespace

BitVec BinaryLinearCode::nearest_codeword_decode(const BitVec& received) const {
  if (received.size() != n_) throw std::invalid_argument("received length mismatch");
  std::size_t kk = k();
  if (kk > kMaxExactK) throw std::invalid_argument("brute-force decoding limited to k <= 24");
  std::uint64_t total = std::uint64_t{1} << kk;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_key = 0, best_m = 0;
  if (n_ <= 64) {
    std::uint64_t rv = received.read_uint(0, n_);
    std::uint64_t cw = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      if (i > 0) {
        int bit = std::countr_zero(i);
        cw ^= rows64_[bit];
        gray ^= std::uint64_t{1} << bit;
      }
      std::size_t d = static_cast<std::size_t>(std::popcount(cw ^ rv));
      if (d < best_d || (d == best_d && lex_key(gray, kk) < best_key)) {
        best_d = d;
        best_m = gray;
        best_key = lex_key(gray, kk);
      }
    }
  } else {
    BitVec cw(n_);
    std::uint64_t gray = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      if (i > 0) {
        int bit = std::countr_zero(i);
        cw ^= rows_[bit];
        gray ^= std::uint64_t{1} << bit;
      }
      std::size_t d = hamming_distance(cw, received);
      if (d < best_d || (d == best_d && lex_key(gray, kk) < best_key)) {
        best_d = d;
        best_m = gray;
        best_key = lex_key(gray, kk);
      }
    }
  }
  return BitVec::from_uint(best_m, kk);
}

std::size_t BinaryLinearCode::exact_min_weight() const {
  std::size_t kk = k();
  if (kk > kMaxExactK) throw std::invalid_argument("exact minimum weight limited to k <= 24");
  std::uint64_t total = std::uint64_t{1} << kk;
  std::size_t best = n_ + 1;
  if (n_ <= 64) {
    std::uint64_t cw = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
      cw ^= rows64_[std::countr_zero(i)];
      std::size_t w = static_cast<std::size_t>(std::popcount(cw));
      if (w < best) {
        best = w;
        if (w == 0) return 0;
      }
    }
  } else {
    BitVec cw(n_);
    for (std::uint64_t i = 1; i < total; ++i) {
      cw ^= rows_[std::countr_zero(i)];
      std::size_t w = cw.popcount();
      if (w < best) {
        best = w;
        if (w == 0) return 0;
      }
    }
  }
  return best;
}

std::string BinaryLinearCode::name() const {
  return "linear[" + std::to_string(n_) + "," + std::to_string(k()) + "," + std::to_string(d_) + "]";
}

BinaryLinearCode gv_search(std::size_t k, std::size_t n, std::size_t d_target, const CodeSearchParams& params) {
  if (k == 0 || k >= n) throw std::invalid_argument("gv_search requires 0 < k < n");
  if (params.max_attempts == 0) throw std::invalid_argument("max_attempts must be >= 1");
  Rng seeds(params.rng_seed);
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    BinaryLinearCode c = BinaryLinearCode::random(k, n, seeds.next());
    std::size_t w = c.exact_min_weight();
    if (w >= d_target && w > 0) {
      c.set_min_distance(w);
      return c;
    }
  }
  throw std::runtime_error("search exhausted");
}

std::size_t sampled_min_weight(const BinaryLinearCode& c, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t best = c.n() + 1;
  for (std::size_t i = 0; i < samples; ++i) {
    BitVec m = rng.bits(c.k());
    if (m.popcount() == 0) continue;
    best = std::min(best, c.encode(m).popcount());
  }
  return best;
}

}  // namespace icx::codes
