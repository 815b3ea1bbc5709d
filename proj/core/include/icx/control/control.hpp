#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icx/bits.hpp"
#include "icx/codes/linear_code.hpp"

namespace icx::control {

// Per-iteration control tuple. Hash values hold p bits each.
struct ControlInfo {
  std::uint64_t h_c = 0, h_x = 0, h_k = 0, h_T = 0, h_MP1 = 0, h_MP2 = 0;
  std::uint32_t j = 0;
  bool sync = false;
  bool operator==(const ControlInfo&) const = default;
};

// Bits for the chunk counter: ceil(log2(2s+1)).
std::size_t counter_width(std::size_t s);
// 6p + ceil(log2(2s+1)) + 1.
std::size_t control_width(std::size_t p, std::size_t s);
BitVec serialize(const ControlInfo& c, std::size_t p, std::size_t s);
ControlInfo deserialize(const BitVec& bits, std::size_t p, std::size_t s);

// Channel error symbols: pass (*), flip (¬), force 0, force 1.
enum class ErrSym : std::uint8_t { Pass = 0, Flip, Zero, One };

struct ErrorPattern {
  std::vector<ErrSym> symbols;

  ErrorPattern() = default;
  explicit ErrorPattern(std::size_t n) : symbols(n, ErrSym::Pass) {}
  // Accepts '*', '~' or '!' (flip), '0', '1'.
  static ErrorPattern parse(std::string_view s);
  std::string to_string() const;
  std::size_t size() const { return symbols.size(); }
  std::size_t weight() const;
};

BitVec corrupt_apply(const BitVec& x, const ErrorPattern& v);
bool corrupt_bit(bool x, ErrSym v);

// Inner hash h(X, R): inner-product hash with o' output bits, seed l*o' bits.
std::uint64_t ip_shift_hash(const BitVec& x, const BitVec& r, std::size_t o_prime);

// Enc(X, R) = C^hash(X ∘ h(X, R[o, r))) xor R[0, o), with r = o + l*o'.
class ControlCodec {
 public:
  ControlCodec(std::shared_ptr<const codes::BlockCode> code, std::size_t l, std::size_t o_prime);

  std::size_t l() const { return l_; }
  std::size_t o() const { return code_->n(); }
  std::size_t o_prime() const { return o_prime_; }
  std::size_t seed_bits() const { return o() + l_ * o_prime_; }
  const codes::BlockCode& code() const { return *code_; }

  BitVec encode(const BitVec& x, const BitVec& r) const;
  // nullopt is the ⊥ outcome: decoding failed or the embedded hash disagrees.
  std::optional<BitVec> decode(const BitVec& y, const BitVec& r) const;

 private:
  void check_seed(const BitVec& r) const;

  std::shared_ptr<const codes::BlockCode> code_;
  std::size_t l_, o_prime_;
};

}  // namespace icx::control
