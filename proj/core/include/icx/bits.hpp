#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace icx {

// Packed bit string. Bit i lives in word i/64 at position i%64; unused high
// bits of the last word are kept zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVec from_string(std::string_view s);
  static BitVec from_uint(std::uint64_t v, std::size_t width);
  static BitVec from_words(std::vector<std::uint64_t> words, std::size_t n);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      w_[i >> 6] |= m;
    } else {
      w_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool operator[](std::size_t i) const { return get(i); }

  void push_back(bool v);
  void append(const BitVec& o);
  void resize(std::size_t n);
  void clear() {
    n_ = 0;
    w_.clear();
  }

  BitVec slice(std::size_t start, std::size_t len) const;
  // Bits [start, start+len) read as an integer, bit start is the LSB. len <= 64.
  std::uint64_t read_uint(std::size_t start, std::size_t len) const;
  void write_uint(std::size_t start, std::size_t len, std::uint64_t v);

  std::size_t popcount() const;
  BitVec& operator^=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }
  // Lexicographic order on bit index 0 first; shorter prefix sorts first.
  bool lex_less(const BitVec& o) const;

  // True when *this is a prefix of o.
  bool is_prefix_of(const BitVec& o) const;
  // Length of the longest common prefix.
  std::size_t common_prefix(const BitVec& o) const;

  const std::vector<std::uint64_t>& words() const { return w_; }
  std::vector<std::uint64_t>& words_mut() { return w_; }
  void mask_tail();

  std::string to_string() const;
  std::string to_hex() const;
  static BitVec from_hex(std::string_view hex, std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

std::size_t hamming_distance(const BitVec& a, const BitVec& b);

inline int parity64(std::uint64_t x) { return std::popcount(x) & 1; }

}  // namespace icx
