#include "icx/analysis/state.hpp"

#include <algorithm>

namespace icx::analysis {

const char* state_name(StateKind k) {
  switch (k) {
    case StateKind::PerfectlySynced: return "perfectly_synced";
    case StateKind::AlmostSynced: return "almost_synced";
    case StateKind::Unsynced: return "unsynced";
  }
  return "?";
}

const char* outcome_name(CtrlOutcome o) {
  switch (o) {
    case CtrlOutcome::Sound: return "sound";
    case CtrlOutcome::Invalid: return "invalid";
    case CtrlOutcome::Malicious: return "malicious";
  }
  return "?";
}

CtrlOutcome combine(CtrlOutcome a, CtrlOutcome b) { return static_cast<CtrlOutcome>(std::max(+static_cast<std::uint8_t>(a), +static_cast<std::uint8_t>(b))); }

Reference::Reference(BitVec transcript, std::vector<Party> speakers, std::size_t B)
    : t_(std::move(transcript)), speakers_(std::move(speakers)), B_(B) {}

Party Reference::speaker(std::size_t c) const {
  return c >= 1 && c <= speakers_.size() ? speakers_[c - 1] : Party::Alice;
}

bool Reference::block_matches(std::size_t c, const BitVec& t, std::size_t start) const {
  std::size_t off = (c - 1) * B_;
  for (std::size_t i = 0; i < B_; ++i) {
    bool want = off + i < t_.size() ? t_[off + i] : false;
    if (t[start + i] != want) return false;
  }
  return true;
}

std::string StateClass::label() const {
  std::string s = state_name(kind);
  if (kind == StateKind::AlmostSynced) s += "_" + std::to_string(almost_case);
  return s;
}

StateClass classify_state(const PartyView& a, const PartyView& b, const Reference& ref) {
  StateClass st;
  const BitVec& TA = *a.T;
  const BitVec& TB = *b.T;
  std::size_t B = ref.block_size();
  st.lA = TA.size();
  st.lB = TB.size();
  st.l_plus = TA.common_prefix(TB);
  st.l_minus = st.lA + st.lB - 2 * st.l_plus;
  st.kA = a.k;
  st.kB = b.k;
  st.EA = a.E;
  st.EB = b.E;
  st.syncA = a.sync;
  st.syncB = b.sync;
  bool base = a.sync && b.sync && a.k == 1 && b.k == 1;
  if (!base) return st;
  if (st.l_minus == 0 && a.c == b.c) {
    Party spk = ref.speaker(a.c);
    bool ordered = spk == Party::Alice ? a.j >= b.j : b.j >= a.j;
    if (ordered) {
      st.kind = StateKind::PerfectlySynced;
      st.j = std::min(a.j, b.j);
    } else {
      st.kind = StateKind::AlmostSynced;
      st.almost_case = spk == Party::Alice ? 3 : 4;
      st.j = spk == Party::Alice ? b.j : a.j;
    }
    return st;
  }
  if (st.l_minus == B && b.c == a.c + 1 && st.lB == st.lA + B && st.l_plus == st.lA &&
      ref.block_matches(a.c, TB, st.lA)) {
    st.kind = StateKind::AlmostSynced;
    st.almost_case = 1;
    st.j = b.j;
  } else if (st.l_minus == B && a.c == b.c + 1 && st.lA == st.lB + B && st.l_plus == st.lB &&
             ref.block_matches(b.c, TA, st.lB)) {
    st.kind = StateKind::AlmostSynced;
    st.almost_case = 2;
    st.j = a.j;
  }
  return st;
}

}  // namespace icx::analysis
