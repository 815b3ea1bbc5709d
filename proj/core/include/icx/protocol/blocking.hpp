#pragma once

#include <cstddef>
#include <memory>

#include "icx/bits.hpp"
#include "icx/protocol/tree.hpp"

namespace icx::protocol {

struct BlockedCursor {
  Cursor inner;
  std::size_t pos = 0;
  Party group_owner = Party::Alice;
  std::size_t group_count = 0;
};

// B-blocked view of a protocol: every maximal same-owner group is padded with
// dummy 0 bits (sent by the group owner) up to a multiple of B.
class BlockedProtocol {
 public:
  BlockedProtocol(ProtocolPtr inner, std::size_t block_size);

  std::size_t block_size() const { return B_; }
  const Protocol& inner() const { return *inner_; }
  ProtocolPtr inner_ptr() const { return inner_; }

  BlockedCursor start() const;
  bool done(const BlockedCursor& c) const;
  bool is_dummy(const BlockedCursor& c) const;
  Party owner(const BlockedCursor& c) const;
  bool preferred(const BlockedCursor& c, const PartyInput& in) const;
  void advance(BlockedCursor& c, bool bit) const;

  // Exact round count for speaker orders fixed in advance (max over paths for
  // explicit trees); otherwise the bound n + kB with k from the run bound.
  std::size_t rounds() const { return rounds_; }
  bool rounds_exact() const { return rounds_exact_; }

  BitVec run_noiseless(const Inputs& in) const;
  // Drops dummy rounds; bits past the end of the blocked protocol are ignored.
  BitVec origin_map(const BitVec& blocked) const;
  // Cursor after consuming `prefix`; stops early if the protocol ends.
  BlockedCursor replay(const BitVec& prefix) const;
  // The B bits `who` would send from a block boundary, or zeros past the end.
  BitVec block_contents(const BlockedCursor& at, const PartyInput& in) const;

 private:
  std::size_t compute_rounds(bool& exact) const;

  ProtocolPtr inner_;
  std::size_t B_;
  std::size_t rounds_ = 0;
  bool rounds_exact_ = false;
};

BlockedProtocol blocking_transform(ProtocolPtr p, std::size_t block_size);

}  // namespace icx::protocol
