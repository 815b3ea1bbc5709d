#include "icx/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace icx {

BitVec BitVec::from_string(std::string_view s) {
  BitVec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      v.set(i, true);
    } else if (s[i] != '0') {
      throw std::invalid_argument("bit string may only contain 0 and 1");
    }
  }
  return v;
}

BitVec BitVec::from_uint(std::uint64_t v, std::size_t width) {
  if (width > 64) throw std::invalid_argument("from_uint: width > 64");
  BitVec b(width);
  b.write_uint(0, width, v);
  return b;
}

BitVec BitVec::from_words(std::vector<std::uint64_t> words, std::size_t n) {
  BitVec b;
  b.n_ = n;
  words.resize((n + 63) / 64, 0);
  b.w_ = std::move(words);
  b.mask_tail();
  return b;
}

void BitVec::mask_tail() {
  if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
}

void BitVec::push_back(bool v) {
  if ((n_ & 63) == 0) w_.push_back(0);
  ++n_;
  if (v) set(n_ - 1, true);
}

void BitVec::append(const BitVec& o) {
  if (o.n_ == 0) return;
  std::size_t off = n_;
  resize(n_ + o.n_);
  std::size_t shift = off & 63;
  std::size_t base = off >> 6;
  if (shift == 0) {
    for (std::size_t i = 0; i < o.w_.size(); ++i) w_[base + i] = o.w_[i];
  } else {
    for (std::size_t i = 0; i < o.w_.size(); ++i) {
      w_[base + i] |= o.w_[i] << shift;
      if (base + i + 1 < w_.size()) w_[base + i + 1] |= o.w_[i] >> (64 - shift);
    }
  }
  mask_tail();
}

void BitVec::resize(std::size_t n) {
  if (n < n_) {
    n_ = n;
    w_.resize((n + 63) / 64);
    mask_tail();
  } else {
    n_ = n;
    w_.resize((n + 63) / 64, 0);
  }
}

std::uint64_t BitVec::read_uint(std::size_t start, std::size_t len) const {
  if (len == 0) return 0;
  if (len > 64 || start + len > n_) throw std::out_of_range("read_uint out of range");
  std::size_t wi = start >> 6;
  std::size_t sh = start & 63;
  std::uint64_t v = w_[wi] >> sh;
  if (sh != 0 && wi + 1 < w_.size()) v |= w_[wi + 1] << (64 - sh);
  if (len < 64) v &= (std::uint64_t{1} << len) - 1;
  return v;
}

void BitVec::write_uint(std::size_t start, std::size_t len, std::uint64_t v) {
  if (start + len > n_) throw std::out_of_range("write_uint out of range");
  for (std::size_t i = 0; i < len; ++i) set(start + i, (v >> i) & 1u);
}

BitVec BitVec::slice(std::size_t start, std::size_t len) const {
  if (start + len > n_) throw std::out_of_range("slice out of range");
  BitVec out(len);
  std::size_t i = 0;
  for (; i + 64 <= len; i += 64) out.w_[i >> 6] = read_uint(start + i, 64);
  if (i < len) out.w_[i >> 6] = read_uint(start + i, len - i);
  return out;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw std::invalid_argument("xor length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool BitVec::lex_less(const BitVec& o) const {
  std::size_t cp = common_prefix(o);
  if (cp == n_ || cp == o.n_) return n_ < o.n_;
  return !get(cp) && o.get(cp);
}

bool BitVec::is_prefix_of(const BitVec& o) const {
  return n_ <= o.n_ && common_prefix(o) == n_;
}

std::size_t BitVec::common_prefix(const BitVec& o) const {
  std::size_t m = std::min(n_, o.n_);
  std::size_t full = m >> 6;
  for (std::size_t i = 0; i < full; ++i) {
    std::uint64_t d = w_[i] ^ o.w_[i];
    if (d) return i * 64 + static_cast<std::size_t>(std::countr_zero(d));
  }
  if (m & 63) {
    std::uint64_t d = (w_[full] ^ o.w_[full]) & ((std::uint64_t{1} << (m & 63)) - 1);
    if (d) return full * 64 + static_cast<std::size_t>(std::countr_zero(d));
  }
  return m;
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::string BitVec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < n_; i += 4) {
    std::size_t len = std::min<std::size_t>(4, n_ - i);
    s.push_back(digits[read_uint(i, len)]);
  }
  return s;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t n) {
  if (hex.size() != (n + 3) / 4) throw std::invalid_argument("hex length mismatch");
  BitVec b(n);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    char c = hex[k];
    unsigned v;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw std::invalid_argument("bad hex digit");
    }
    std::size_t len = std::min<std::size_t>(4, n - 4 * k);
    if (len < 4 && (v >> len) != 0) throw std::invalid_argument("hex digit exceeds length");
    b.write_uint(4 * k, len, v);
  }
  return b;
}

std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i)
    d += static_cast<std::size_t>(std::popcount(a.words()[i] ^ b.words()[i]));
  return d;
}

}  // namespace icx
