#include "icx/codes/exchange_code.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace icx::codes {

ReedMuller1::ReedMuller1(unsigned r) : r_(r) {
  if (r == 0 || r > 15) throw std::invalid_argument("RM(1,r) needs 1 <= r <= 15");
}

std::uint32_t ReedMuller1::encode_bit(std::uint32_t msg, std::size_t z) const {
  std::uint32_t lin = msg >> 1;
  return (msg & 1u) ^ static_cast<std::uint32_t>(std::popcount(lin & static_cast<std::uint32_t>(z)) & 1);
}

std::vector<long> ReedMuller1::transform(const std::vector<long>& soft) const {
  std::size_t len = length();
  if (soft.size() != len) throw std::invalid_argument("RM soft input length mismatch");
  std::vector<long> F(soft);
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        long x = F[j], y = F[j + h];
        F[j] = x + y;
        F[j + h] = x - y;
      }
    }
  }
  return F;
}

std::pair<std::uint32_t, long> ReedMuller1::decode_soft(const std::vector<long>& soft) const {
  std::size_t len = length();
  std::vector<long> F = transform(soft);
  std::size_t best = 0;
  long best_abs = -1;
  for (std::size_t v = 0; v < len; ++v) {
    long a = F[v] < 0 ? -F[v] : F[v];
    if (a > best_abs) {
      best_abs = a;
      best = v;
    }
  }
  std::uint32_t msg = static_cast<std::uint32_t>(best << 1) | (F[best] < 0 ? 1u : 0u);
  return {msg, best_abs};
}

std::size_t ExchangeCode::designed_distance(std::size_t length, std::size_t message_bits, unsigned m,
                                            std::size_t* No_out, std::vector<std::size_t>* reps_out) {
  std::size_t inner_len = std::size_t{1} << (m - 1);
  std::size_t q1 = (std::size_t{1} << m) - 1;
  std::size_t Ko = (message_bits + m - 1) / m;
  std::size_t total_reps = length / inner_len;
  std::size_t No = std::min(q1, total_reps);
  if (No <= Ko) return 0;
  std::vector<std::size_t> reps(No, total_reps / No);
  for (std::size_t i = 0; i < total_reps % No; ++i) ++reps[i];
  std::vector<std::size_t> sorted(reps);
  std::sort(sorted.begin(), sorted.end());
  std::size_t d_outer = No - Ko + 1;
  std::size_t sum = std::accumulate(sorted.begin(), sorted.begin() + static_cast<long>(d_outer), std::size_t{0});
  if (No_out) *No_out = No;
  if (reps_out) *reps_out = reps;
  return sum * (inner_len / 2);
}

std::size_t ExchangeCode::min_feasible_length(std::size_t message_bits, unsigned m, double rel) {
  std::size_t inner_len = std::size_t{1} << (m - 1);
  std::size_t q1 = (std::size_t{1} << m) - 1;
  std::size_t Ko = (message_bits + m - 1) / m;
  for (std::size_t len = inner_len * (Ko + 1); len <= inner_len * q1 * 64; ++len) {
    std::size_t d = designed_distance(len, message_bits, m);
    if (static_cast<double>(d) >= rel * static_cast<double>(len)) return len;
  }
  throw std::invalid_argument("exchange message too long for the outer field");
}

ExchangeCode::ExchangeCode(std::size_t message_bits, std::size_t target_length, unsigned m)
    : message_bits_(message_bits), m_(m), inner_(m - 1) {
  if (message_bits == 0) throw std::invalid_argument("exchange code needs a nonempty message");
  length_ = std::max(target_length, min_feasible_length(message_bits, m));
  while (static_cast<double>(designed_distance(length_, message_bits, m)) < 0.4 * static_cast<double>(length_)) {
    ++length_;
  }
  distance_ = designed_distance(length_, message_bits, m, &No_, &reps_);
  Ko_ = (message_bits + m - 1) / m;
  field_ = std::make_shared<GF2m>(m);
  rs_ = std::make_shared<ReedSolomon>(*field_, No_, Ko_);
}

std::vector<std::uint16_t> ExchangeCode::outer_of(const BitVec& msg) const {
  std::vector<std::uint16_t> sym(Ko_, 0);
  for (std::size_t i = 0; i < Ko_; ++i) {
    std::size_t start = i * m_;
    std::size_t len = std::min<std::size_t>(m_, message_bits_ - std::min(start, message_bits_));
    if (len) sym[i] = static_cast<std::uint16_t>(msg.read_uint(start, len));
  }
  return sym;
}

BitVec ExchangeCode::inner_encode(const std::vector<std::uint16_t>& cw) const {
  BitVec out(length_);
  std::size_t len = inner_.length();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < No_; ++i) {
    for (std::size_t r = 0; r < reps_[i]; ++r) {
      for (std::size_t z = 0; z < len; ++z) out.set(pos++, inner_.encode_bit(cw[i], z) != 0);
    }
  }
  return out;
}

BitVec ExchangeCode::encode(const BitVec& msg) const {
  if (msg.size() != message_bits_) throw std::invalid_argument("exchange message length mismatch");
  return inner_encode(rs_->encode(outer_of(msg)));
}

std::optional<BitVec> ExchangeCode::decode(const BitVec& received) const {
  if (received.size() != length_) throw std::invalid_argument("exchange received length mismatch");
  std::size_t len = inner_.length();
  std::size_t q = std::size_t{1} << m_;
  std::vector<std::uint16_t> sym(No_);
  std::vector<double> rel(No_);
  // dist[i * q + v]: bit distance of symbol i's received span to the inner image of v.
  std::vector<std::size_t> dist(No_ * q);
  std::size_t pos = 0;
  std::vector<long> soft(len);
  for (std::size_t i = 0; i < No_; ++i) {
    std::fill(soft.begin(), soft.end(), 0);
    for (std::size_t r = 0; r < reps_[i]; ++r) {
      for (std::size_t z = 0; z < len; ++z) soft[z] += received[pos++] ? -1 : 1;
    }
    std::vector<long> F = inner_.transform(soft);
    long total = static_cast<long>(reps_[i] * len);
    long best_abs = -1;
    for (std::size_t v = 0; v < len; ++v) {
      // Codeword with linear part v: constant 0 correlates F[v], constant 1 correlates -F[v].
      dist[i * q + (v << 1)] = static_cast<std::size_t>((total - F[v]) / 2);
      dist[i * q + ((v << 1) | 1)] = static_cast<std::size_t>((total + F[v]) / 2);
      long a = F[v] < 0 ? -F[v] : F[v];
      if (a > best_abs) {
        best_abs = a;
        sym[i] = static_cast<std::uint16_t>((v << 1) | (F[v] < 0 ? 1u : 0u));
      }
    }
    rel[i] = static_cast<double>(best_abs) / static_cast<double>(total);
  }
  std::size_t pad_weight = 0;
  for (std::size_t z = pos; z < length_; ++z) pad_weight += received[z] ? 1 : 0;

  std::vector<std::size_t> order(No_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rel[a] < rel[b]; });

  std::optional<std::vector<std::uint16_t>> best;
  std::size_t best_dist = length_ + 1;
  std::size_t parity = No_ - Ko_;
  for (std::size_t e = 0; e <= parity; e += 2) {
    std::vector<std::size_t> erasures(order.begin(), order.begin() + static_cast<long>(e));
    auto cw = rs_->decode(sym, erasures);
    if (!cw) continue;
    std::size_t d = pad_weight;
    for (std::size_t i = 0; i < No_; ++i) d += dist[i * q + (*cw)[i]];
    if (d < best_dist) {
      best_dist = d;
      best = std::move(cw);
    }
  }
  if (!best) return std::nullopt;
  auto msg_sym = rs_->message_of(*best);
  BitVec out(message_bits_);
  for (std::size_t i = 0; i < Ko_; ++i) {
    std::size_t start = i * m_;
    if (start >= message_bits_) break;
    std::size_t l = std::min<std::size_t>(m_, message_bits_ - start);
    out.write_uint(start, l, msg_sym[i] & ((1u << l) - 1));
  }
  return out;
}

std::string ExchangeCode::name() const {
  return "exchange[" + std::to_string(length_) + "," + std::to_string(message_bits_) + ",d=" +
         std::to_string(distance_) + "]";
}

}  // namespace icx::codes
