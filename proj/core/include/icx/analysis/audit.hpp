#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "icx/analysis/potential.hpp"
#include "icx/analysis/state.hpp"
#include "icx/engine/trace.hpp"

namespace icx::analysis {

struct AuditRow {
  std::string key;  // "<start>-><end>/<outcome>"
  std::size_t count = 0, violations = 0;
  double min_slack = 0;  // min over iterations of (delta - bound)
};

struct AuditViolation {
  std::size_t m = 0;
  std::string key;
  double delta = 0, bound = 0;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  std::vector<AuditViolation> violations;  // first max_listed only
  std::size_t iterations = 0, total_violations = 0;
  std::size_t phi_mismatches = 0, counter_mismatches = 0;
  bool ok() const { return total_violations == 0 && phi_mismatches == 0 && counter_mismatches == 0; }
  std::string to_json() const;
};

// Lower bound the analysis gives for the change of the potential over one
// iteration.
double delta_phi_bound(const engine::IterationRecord& r, const engine::TraceHeader& h);
std::string audit_key(const engine::IterationRecord& r);

AuditReport audit_trace(const engine::TraceHeader& h, const std::vector<engine::IterationRecord>& recs,
                        std::size_t max_listed = 50);

struct FinalCheck {
  std::string end_case;
  double derived_bound = 0;  // lower bound on l+ from the final potential
  std::size_t actual_l_plus = 0;
  bool derived_ok = false;   // derived_bound >= n'
  bool actual_ok = false;    // both transcripts agree with the reference on n' bits
  bool bound_holds = false;  // derived_bound <= actual l+
  // derived_ok is sufficient for actual_ok, not necessary.
  bool agree() const { return bound_holds && (!derived_ok || actual_ok); }
};

FinalCheck final_progress_check(const StateClass& end, double phi, bool actual_ok, const engine::TraceHeader& h);

}  // namespace icx::analysis
