#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "icx/bits.hpp"
#include "icx/protocol/tree.hpp"

namespace icx::analysis {

using protocol::Party;

enum class StateKind : std::uint8_t { PerfectlySynced = 0, AlmostSynced, Unsynced };
const char* state_name(StateKind k);

enum class CtrlOutcome : std::uint8_t { Sound = 0, Invalid, Malicious };
const char* outcome_name(CtrlOutcome o);
// Malicious dominates invalid, invalid dominates sound.
CtrlOutcome combine(CtrlOutcome a, CtrlOutcome b);

// The parts of a party's state the analysis reads.
struct PartyView {
  const BitVec* T = nullptr;
  std::size_t c = 1, j = 0, k = 1, E = 0;
  bool sync = true;
};

// Noiseless execution of the blocked protocol, extended by zero blocks sent
// by Alice.
class Reference {
 public:
  Reference() = default;
  Reference(BitVec transcript, std::vector<Party> speakers, std::size_t B);
  std::size_t block_size() const { return B_; }
  std::size_t length() const { return t_.size(); }
  const BitVec& transcript() const { return t_; }
  // 1-based block index.
  Party speaker(std::size_t c) const;
  bool block_matches(std::size_t c, const BitVec& t, std::size_t start) const;

 private:
  BitVec t_;
  std::vector<Party> speakers_;
  std::size_t B_ = 0;
};

struct StateClass {
  StateKind kind = StateKind::Unsynced;
  int almost_case = 0;  // 1..4 when almost synced
  std::size_t l_plus = 0, l_minus = 0, lA = 0, lB = 0;
  std::size_t j = 0;  // per-state j (0 when unsynced)
  std::size_t kA = 1, kB = 1, EA = 0, EB = 0;
  bool syncA = true, syncB = true;
  std::string label() const;
};

StateClass classify_state(const PartyView& a, const PartyView& b, const Reference& ref);

}  // namespace icx::analysis
