#include "icx/randomness/ip_hash.hpp"

#include <stdexcept>

namespace icx::rnd {

std::uint64_t inner_product_hash(const BitVec& x, const BitVec& r, std::size_t p) {
  std::size_t l = x.size();
  if (p > 64) throw std::invalid_argument("inner_product_hash: p > 64");
  if (r.size() != l * p) throw std::invalid_argument("inner_product_hash: seed length must be l*p");
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < p; ++i) {
    int acc = 0;
    std::size_t z = 0;
    for (; z + 64 <= l; z += 64) acc ^= parity64(x.read_uint(z, 64) & r.read_uint(i * l + z, 64));
    if (z < l) acc ^= parity64(x.read_uint(z, l - z) & r.read_uint(i * l + z, l - z));
    out |= static_cast<std::uint64_t>(acc) << i;
  }
  return out;
}

BitVec hash_input(const BitVec& y) {
  if (y.size() > 0xffffffffu) throw std::invalid_argument("hash_input: string too long");
  BitVec out = BitVec::from_uint(y.size(), 32);
  out.append(y);
  return out;
}

BitVec hash_input(std::uint32_t v) { return BitVec::from_uint(v, 32); }

StretchedHasher::StretchedHasher(const SmallBiasGenerator& gen, std::size_t input_len, std::size_t p)
    : gen_(&gen),
      l_(input_len),
      p_(p),
      eval_(gen.field(), gen.alpha()),
      times_alpha_l_(gen.field(), gen.alpha_pow(input_len)),
      alpha32_(gen.alpha_pow(32)) {
  if (p == 0 || p > 64) throw std::invalid_argument("StretchedHasher: need 1 <= p <= 64");
  if (input_len < 32) throw std::invalid_argument("StretchedHasher: input length below 32");
}

std::uint64_t StretchedHasher::from_eval(std::uint64_t x_at_alpha, std::uint64_t offset) const {
  const WideField& f = gen_->field();
  std::uint64_t cur = f.mul(gen_->alpha_pow(offset), x_at_alpha);
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < p_; ++i) {
    if (gen_->inner(cur)) out |= std::uint64_t{1} << i;
    cur = times_alpha_l_(cur);
  }
  return out;
}

std::uint64_t StretchedHasher::hash(std::uint32_t v, std::uint64_t offset) const {
  return from_eval(eval_.eval_uint(v, 32), offset);
}

std::uint64_t StretchedHasher::input_eval(std::uint64_t y_at_alpha, std::size_t len) const {
  if (len + 32 > l_) throw std::invalid_argument("hash input longer than the instance input length");
  return eval_.eval_uint(len, 32) ^ gen_->field().mul(alpha32_, y_at_alpha);
}

std::uint64_t StretchedHasher::hash(const BitVec& y, std::uint64_t offset) const {
  return from_eval(input_eval(eval_.eval(y), y.size()), offset);
}

PrefixEvalCache::PrefixEvalCache(const StretchedHasher& h, std::size_t chunk)
    : h_(&h), chunk_(chunk), prefix_{0}, apow_{1} {
  if (chunk == 0) throw std::invalid_argument("PrefixEvalCache: zero chunk");
}

std::uint64_t PrefixEvalCache::eval(const BitVec& t, std::size_t len) {
  if (len > t.size()) throw std::out_of_range("PrefixEvalCache: prefix past end");
  std::size_t valid = std::min(shadow_.common_prefix(t), shadow_.size()) / chunk_;
  valid = std::min(valid, prefix_.size() - 1);
  prefix_.resize(valid + 1);
  apow_.resize(valid + 1);
  shadow_.resize(valid * chunk_);
  const WideField& f = h_->generator().field();
  std::uint64_t a_chunk = h_->generator().alpha_pow(chunk_);
  std::size_t want = len / chunk_;
  for (std::size_t k = valid; k < want; ++k) {
    std::uint64_t v = h_->evaluator().eval(t, k * chunk_, chunk_);
    prefix_.push_back(prefix_[k] ^ f.mul(apow_[k], v));
    apow_.push_back(f.mul(apow_[k], a_chunk));
  }
  if (want > valid) shadow_ = t.slice(0, want * chunk_);
  std::size_t k = std::min(want, prefix_.size() - 1);
  std::uint64_t tail = h_->evaluator().eval(t, k * chunk_, len - k * chunk_);
  return prefix_[k] ^ f.mul(apow_[k], tail);
}

std::uint64_t PrefixEvalCache::hash_prefix(const BitVec& t, std::size_t len, std::uint64_t offset) {
  return h_->from_eval(h_->input_eval(eval(t, len), len), offset);
}

}  // namespace icx::rnd
