#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icx/analysis/potential.hpp"
#include "icx/analysis/state.hpp"

namespace icx::engine {

enum class Transition : std::uint8_t { None = 0, RollbackMP1, RollbackMP2, ErrorReset };
const char* transition_name(Transition t);

struct PartySnap {
  std::size_t c = 1, j = 0, k = 1, E = 0, v1 = 0, v2 = 0, T_len = 0;
  bool sync = true, speak = false;
};

struct IterationRecord {
  std::size_t m = 0;
  PartySnap a0, b0, a1, b1;  // before and after the iteration
  analysis::StateClass before, after;
  // outcome_a: how Alice received Bob's control information.
  analysis::CtrlOutcome outcome_a = analysis::CtrlOutcome::Sound;
  analysis::CtrlOutcome outcome_b = analysis::CtrlOutcome::Sound;
  analysis::CtrlOutcome cls = analysis::CtrlOutcome::Sound;
  bool collision_a = false, collision_b = false;
  std::size_t t = 0;  // corrupted data positions
  std::size_t ctrl_err_a = 0, ctrl_err_b = 0;  // corrupted positions in each party's control slots
  Transition trans_a = Transition::None, trans_b = Transition::None;
  analysis::Counters counters;  // after the iteration
  double phi_before = 0, phi_after = 0;
};

struct TraceHeader {
  double eps = 0;
  std::size_t s = 0, b = 0, B = 0, n_iter = 0, n_prime = 0;
  analysis::PotentialConstants constants;
};

std::string to_json_line(const IterationRecord& r);
IterationRecord record_from_json_line(const std::string& line);
std::string header_json_line(const TraceHeader& h);
TraceHeader header_from_json_line(const std::string& line);

void write_trace(std::ostream& os, const TraceHeader& h, const std::vector<IterationRecord>& recs);
// First line is the header.
std::vector<IterationRecord> read_trace(std::istream& is, TraceHeader& h);

}  // namespace icx::engine
