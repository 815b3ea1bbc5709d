#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "icx/bits.hpp"
#include "icx/codes/rateless.hpp"
#include "icx/control/control.hpp"
#include "icx/engine/trace.hpp"
#include "icx/protocol/blocking.hpp"
#include "icx/randomness/ip_hash.hpp"
#include "icx/randomness/shared.hpp"

namespace icx::engine {

using protocol::Party;

struct PartyState {
  BitVec T;
  bool has_x = false;
  BitVec x;
  std::vector<BitVec> y_chunks;
  std::size_t c = 1, j = 0, a = 0;
  std::size_t k = 1, kt = 1;
  bool sync = true;
  std::size_t E = 0, v1 = 0, v2 = 0;
  std::size_t MP1 = 0, MP2 = 0;
  bool speak = false;
  std::size_t m = 0;
};

// What a party hashed into its control information this iteration. Only the
// instrumentation reads it, to spot hash collisions on the other side.
struct CtrlTruth {
  std::uint32_t c = 0, k = 0;
  BitVec T;
  std::size_t MP1 = 0, MP2 = 0;
  bool has_x = false;
  BitVec x;
};

struct PartyContext {
  const protocol::BlockedProtocol* proto = nullptr;
  const protocol::PartyInput* input = nullptr;
  const codes::RatelessWindowCode* rateless = nullptr;
  const rnd::SharedRandomness* shared = nullptr;  // this party's copy
};

struct FlowReport {
  Transition transition = Transition::None;
  bool collision = false;  // a hash comparison matched on differing inputs
};

class PartyMachine {
 public:
  PartyMachine(Party me, const PartyContext& ctx);

  Party who() const { return me_; }
  const PartyState& state() const { return st_; }
  PartySnap snap() const;

  control::ControlInfo update_control();
  CtrlTruth truth() const;

  bool sends_data() const { return st_.sync && st_.speak; }
  const BitVec& data_chunk() const;

  // decoded: the other party's control information, nullopt for ⊥.
  // g: data bits heard this iteration (ignored while sending).
  // peer: the other party's truth, passed only when decoding was sound.
  FlowReport control_flow(const std::optional<control::ControlInfo>& decoded, const BitVec& g,
                          const CtrlTruth* peer);

  // Throws std::logic_error when a state invariant fails.
  void check_invariants() const;

 private:
  std::uint64_t off(Party owner, rnd::HashField f) const;
  std::uint64_t h_uint(Party owner, rnd::HashField f, std::uint32_t v) const;
  std::uint64_t h_bits(Party owner, rnd::HashField f, const BitVec& v) const;
  std::uint64_t h_prefix(Party owner, rnd::HashField f, std::size_t len);
  std::uint64_t h_T_then_x(Party owner);

  bool speaker_is_me(std::size_t block) const;
  Party speaker_of(std::size_t block) const;
  void setup_block(bool reset_phase);
  void advance_block(const BitVec* decoded_x);
  void rollback(std::size_t mp);
  void update_sync_status(const std::optional<control::ControlInfo>& d, const BitVec& g, const CtrlTruth* peer);
  void update_estimate(const std::optional<control::ControlInfo>& d, const BitVec& g, const CtrlTruth* peer);
  // Records a collision when hashes agree on inputs the peer knows differ.
  bool match(bool hashes_equal, bool inputs_equal, const CtrlTruth* peer);

  Party me_, other_;
  PartyContext ctx_;
  std::size_t s_, b_, B_;
  PartyState st_;
  std::vector<protocol::BlockedCursor> cursors_;  // cursors_[i]: after i blocks
  std::vector<BitVec> g_tilde_;
  rnd::PrefixEvalCache cache_;
  BitVec nil_;
  bool collision_ = false;
};

}  // namespace icx::engine
