#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "icx/bits.hpp"

namespace icx::protocol {

enum class Party : std::uint8_t { Alice = 0, Bob = 1 };

inline Party other(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }
const char* party_name(Party p);

// One party's private input. Explicit trees read `table` (indexed by heap
// node); generated protocols read `seed`, or `table` indexed by round when
// it is non-empty.
struct PartyInput {
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> table;
};

struct Inputs {
  PartyInput alice;
  PartyInput bob;
  const PartyInput& of(Party p) const { return p == Party::Alice ? alice : bob; }
};

// Position inside a protocol tree. Plain data so callers can snapshot it.
struct Cursor {
  std::size_t pos = 0;
  std::uint64_t node = 1;
  std::uint64_t hash = 0;
  Party run_owner = Party::Alice;
  std::size_t run_left = 0;
};

class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::size_t depth() const = 0;
  virtual Cursor start() const;
  virtual Party owner(const Cursor& c) const = 0;
  virtual bool preferred(const Cursor& c, const PartyInput& in) const = 0;
  virtual void advance(Cursor& c, bool bit) const;
  // True when the speaker order may depend on the transcript.
  virtual bool adaptive() const { return false; }
  // Speaker sequence when it does not depend on the transcript.
  std::vector<Party> owner_sequence() const;

  bool done(const Cursor& c) const { return c.pos >= depth(); }
};

using ProtocolPtr = std::shared_ptr<const Protocol>;

// Heap-indexed tree: node 1 is the root, children of v are 2v and 2v+1.
class ExplicitTree : public Protocol {
 public:
  static constexpr std::size_t kMaxDepth = 24;

  // owners[v] for v in [1, 2^depth); index 0 unused.
  ExplicitTree(std::size_t depth, std::vector<Party> owners);

  static ExplicitTree uniform_owner(std::size_t depth, Party p);
  static ExplicitTree alternating(std::size_t depth);
  // Owner depends only on depth via the given per-round sequence.
  static ExplicitTree from_sequence(const std::vector<Party>& seq);
  // Each path gets its own owner runs with lengths drawn in [min_run, max_run].
  static ExplicitTree random(std::size_t depth, std::uint64_t seed, std::size_t min_run, std::size_t max_run);
  static PartyInput random_input(std::size_t depth, std::uint64_t seed);

  std::size_t depth() const override { return depth_; }
  Party owner(const Cursor& c) const override { return owners_[c.node]; }
  bool preferred(const Cursor& c, const PartyInput& in) const override;
  bool adaptive() const override { return true; }
  Party owner_at(std::uint64_t node) const { return owners_[node]; }

 private:
  std::size_t depth_;
  std::vector<Party> owners_;
};

enum class OwnerRule { Alternating, Blocks, Table, Adaptive };

// Protocol generated on the fly from rules; used beyond explicit depths.
class GeneratedProtocol : public Protocol {
 public:
  struct Spec {
    std::size_t depth = 0;
    OwnerRule rule = OwnerRule::Alternating;
    std::vector<std::size_t> blocks;  // Blocks: run lengths, owners alternate from Alice
    std::vector<Party> table;         // Table: owner per round
    std::size_t min_run = 1;          // Adaptive: run length range
    std::size_t max_run = 1;
    std::uint64_t owner_seed = 0;     // Adaptive: salt for run lengths
  };

  explicit GeneratedProtocol(Spec spec);

  // Non-adaptive protocol with owner segments drawn uniformly in [lo, hi]; the
  // last segment absorbs a remainder shorter than lo.
  static GeneratedProtocol random_segments(std::size_t depth, std::size_t lo, std::size_t hi, std::uint64_t seed);

  std::size_t depth() const override { return spec_.depth; }
  Cursor start() const override;
  Party owner(const Cursor& c) const override;
  bool preferred(const Cursor& c, const PartyInput& in) const override;
  void advance(Cursor& c, bool bit) const override;
  bool adaptive() const override { return spec_.rule == OwnerRule::Adaptive; }
  const Spec& spec() const { return spec_; }

 private:
  std::size_t draw_run(const Cursor& c) const;

  Spec spec_;
  std::vector<Party> seq_;  // precomputed owners for Blocks/Alternating
};

std::uint64_t prefix_hash_step(std::uint64_t h, std::size_t pos, bool bit);

struct MessageLengthProfile {
  double avg_message_length = 0;  // n / k
  std::size_t alternation_count = 0;
  // Filled only for depth <= kPathDetailDepth.
  std::map<std::string, std::vector<std::size_t>> per_path_lengths;
  static constexpr std::size_t kPathDetailDepth = 12;
};

// Minimum over all length-n bit strings of the per-path average block length.
MessageLengthProfile average_message_length(const Protocol& p);

BitVec run_noiseless(const Protocol& p, const Inputs& in);

// Block lengths along the path described by `bits`.
std::vector<std::size_t> path_block_lengths(const Protocol& p, const BitVec& bits);

}  // namespace icx::protocol
