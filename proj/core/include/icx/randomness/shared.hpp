#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "icx/bits.hpp"
#include "icx/protocol/tree.hpp"
#include "icx/randomness/ip_hash.hpp"
#include "icx/randomness/small_bias.hpp"

namespace icx::rnd {

using protocol::Party;

struct RandomnessLayout {
  std::size_t n_iter = 0;
  std::size_t b = 0;        // data bits per mini-block
  std::size_t b_prime = 0;  // mini-block length
  std::size_t o = 0;        // encoded control bits per party
  std::size_t l_ctrl = 0;   // serialized control width
  std::size_t o_prime = 0;  // inner control hash output
  std::size_t p = 0;        // field hash output
  std::size_t t_cap = 0;    // field hash input length
  unsigned m_loc = 64;
  unsigned m = 64;
  std::size_t draw_bits = 24;

  std::size_t seed_bits() const { return 2 * static_cast<std::size_t>(m_loc) + 2 * static_cast<std::size_t>(m); }
  std::size_t slot_bits() const { return (b_prime - b) * draw_bits; }
  std::size_t ctrl_seed_bits() const { return l_ctrl * o_prime; }
  std::size_t loc_bits_per_iter() const { return slot_bits() + 2 * o + 2 * ctrl_seed_bits(); }
  std::size_t hash_bits_per_iter() const { return 2 * kHashFields * p * t_cap; }
  void validate() const;
};

struct SlotAssignment {
  std::vector<std::uint32_t> alice, bob;  // 0-based positions in the mini-block
  std::vector<std::uint8_t> owner;        // per position: 0 data, 1 Alice, 2 Bob
};

struct BudgetLine {
  std::string purpose;
  std::uint64_t allotted = 0;
  std::uint64_t consumed = 0;
};

// One party's view of the shared string. str = str_loc seed ∘ str' seed; each
// seeds a small-bias generator. Per-iteration material sits at fixed offsets,
// so both parties stay aligned regardless of what the channel delivered.
class SharedRandomness {
 public:
  SharedRandomness(const BitVec& str, const RandomnessLayout& layout);
  static SharedRandomness from_public_seed(std::uint64_t seed, const RandomnessLayout& layout);
  SharedRandomness(const SharedRandomness& o);
  SharedRandomness& operator=(const SharedRandomness&) = delete;

  const RandomnessLayout& layout() const { return lay_; }
  const BitVec& str() const { return str_; }

  SlotAssignment slots(std::size_t iter) const;
  BitVec mask(std::size_t iter, Party who) const;
  BitVec ctrl_seed(std::size_t iter, Party who) const;
  std::uint64_t hash_offset(std::size_t iter, Party owner, HashField f) const;
  const StretchedHasher& hasher() const { return *hasher_; }
  const SmallBiasGenerator& loc_generator() const { return *loc_; }
  const SmallBiasGenerator& stretch_generator() const { return *stretch_; }

  double loc_bias() const;
  double stretch_bias() const;
  std::vector<BudgetLine> budget() const;

 private:
  void touch(std::size_t purpose, std::size_t iter) const;
  std::uint64_t loc_base(std::size_t iter) const;

  RandomnessLayout lay_;
  BitVec str_;
  std::unique_ptr<SmallBiasGenerator> loc_, stretch_;
  std::unique_ptr<StretchedHasher> hasher_;
  mutable std::vector<std::vector<bool>> touched_;
};

// Process-wide count of per-iteration material requests; lets tests check that
// code which must stay oblivious never reads shared randomness.
std::uint64_t material_draws();

}  // namespace icx::rnd
