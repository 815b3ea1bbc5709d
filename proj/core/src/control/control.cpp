#include "icx/control/control.hpp"

#include <bit>
#include <stdexcept>

#include "icx/randomness/ip_hash.hpp"

namespace icx::control {

std::size_t counter_width(std::size_t s) { return static_cast<std::size_t>(std::bit_width(2 * s)); }

std::size_t control_width(std::size_t p, std::size_t s) { return 6 * p + counter_width(s) + 1; }

BitVec serialize(const ControlInfo& c, std::size_t p, std::size_t s) {
  if (c.j > 2 * s) throw std::invalid_argument("control: chunk counter exceeds 2s");
  BitVec out(control_width(p, s));
  std::size_t pos = 0;
  for (std::uint64_t h : {c.h_c, c.h_x, c.h_k, c.h_T, c.h_MP1, c.h_MP2}) {
    out.write_uint(pos, p, h);
    pos += p;
  }
  out.write_uint(pos, counter_width(s), c.j);
  pos += counter_width(s);
  out.set(pos, c.sync);
  return out;
}

ControlInfo deserialize(const BitVec& bits, std::size_t p, std::size_t s) {
  if (bits.size() != control_width(p, s)) throw std::invalid_argument("control: width mismatch");
  ControlInfo c;
  std::size_t pos = 0;
  for (std::uint64_t* h : {&c.h_c, &c.h_x, &c.h_k, &c.h_T, &c.h_MP1, &c.h_MP2}) {
    *h = bits.read_uint(pos, p);
    pos += p;
  }
  c.j = static_cast<std::uint32_t>(bits.read_uint(pos, counter_width(s)));
  pos += counter_width(s);
  c.sync = bits[pos];
  return c;
}

ErrorPattern ErrorPattern::parse(std::string_view s) {
  ErrorPattern v;
  for (char ch : s) {
    switch (ch) {
      case '*': v.symbols.push_back(ErrSym::Pass); break;
      case '~':
      case '!': v.symbols.push_back(ErrSym::Flip); break;
      case '0': v.symbols.push_back(ErrSym::Zero); break;
      case '1': v.symbols.push_back(ErrSym::One); break;
      default: throw std::invalid_argument(std::string("error pattern: bad symbol '") + ch + "'");
    }
  }
  return v;
}

std::string ErrorPattern::to_string() const {
  std::string out;
  out.reserve(symbols.size());
  for (ErrSym v : symbols) out.push_back("*~01"[static_cast<int>(v)]);
  return out;
}

std::size_t ErrorPattern::weight() const {
  std::size_t w = 0;
  for (ErrSym v : symbols) w += v != ErrSym::Pass ? 1 : 0;
  return w;
}

bool corrupt_bit(bool x, ErrSym v) {
  switch (v) {
    case ErrSym::Pass: return x;
    case ErrSym::Flip: return !x;
    case ErrSym::Zero: return false;
    case ErrSym::One: return true;
  }
  return x;
}

BitVec corrupt_apply(const BitVec& x, const ErrorPattern& v) {
  if (x.size() != v.size()) throw std::invalid_argument("corrupt_apply: length mismatch");
  BitVec out(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v.symbols[i] != ErrSym::Pass) out.set(i, corrupt_bit(x[i], v.symbols[i]));
  }
  return out;
}

std::uint64_t ip_shift_hash(const BitVec& x, const BitVec& r, std::size_t o_prime) {
  return rnd::inner_product_hash(x, r, o_prime);
}

ControlCodec::ControlCodec(std::shared_ptr<const codes::BlockCode> code, std::size_t l, std::size_t o_prime)
    : code_(std::move(code)), l_(l), o_prime_(o_prime) {
  if (!code_) throw std::invalid_argument("ControlCodec: null code");
  if (code_->k() != l + o_prime) throw std::invalid_argument("ControlCodec: code dimension must be l + o'");
  if (o_prime == 0 || o_prime > 64) throw std::invalid_argument("ControlCodec: need 1 <= o' <= 64");
}

void ControlCodec::check_seed(const BitVec& r) const {
  if (r.size() != seed_bits()) throw std::invalid_argument("ControlCodec: seed must have o + l*o' bits");
}

BitVec ControlCodec::encode(const BitVec& x, const BitVec& r) const {
  if (x.size() != l_) throw std::invalid_argument("ControlCodec: message length mismatch");
  check_seed(r);
  BitVec msg(x);
  msg.append(BitVec::from_uint(ip_shift_hash(x, r.slice(o(), l_ * o_prime_), o_prime_), o_prime_));
  return code_->encode(msg) ^ r.slice(0, o());
}

std::optional<BitVec> ControlCodec::decode(const BitVec& y, const BitVec& r) const {
  if (y.size() != o()) throw std::invalid_argument("ControlCodec: received length mismatch");
  check_seed(r);
  auto z = code_->decode(y ^ r.slice(0, o()));
  if (!z) return std::nullopt;
  BitVec zc = z->slice(0, l_);
  std::uint64_t zh = z->read_uint(l_, o_prime_);
  if (ip_shift_hash(zc, r.slice(o(), l_ * o_prime_), o_prime_) != zh) return std::nullopt;
  return zc;
}

}  // namespace icx::control
