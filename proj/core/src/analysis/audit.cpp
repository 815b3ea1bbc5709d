#include "icx/analysis/audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

namespace icx::analysis {

using engine::IterationRecord;
using engine::TraceHeader;

namespace {

const char* short_kind(StateKind k) {
  switch (k) {
    case StateKind::PerfectlySynced: return "perfect";
    case StateKind::AlmostSynced: return "almost";
    case StateKind::Unsynced: return "unsynced";
  }
  return "?";
}

}  // namespace

std::string audit_key(const IterationRecord& r) {
  std::string k = short_kind(r.before.kind);
  k += "->";
  k += short_kind(r.after.kind);
  k += "/";
  k += outcome_name(r.cls);
  return k;
}

double delta_phi_bound(const IterationRecord& r, const TraceHeader& h) {
  const auto& k = h.constants;
  const double b = static_cast<double>(h.b);
  const double B = static_cast<double>(h.B);
  const double noise = k.C * static_cast<double>(r.t) * log_inv(h.eps);
  if (r.before.kind == StateKind::PerfectlySynced) {
    if (r.after.kind == StateKind::Unsynced) return -k.C_mal * B;
    if (r.cls == CtrlOutcome::Sound) return b - noise;
    return -noise - (k.D - 1) * b;
  }
  switch (r.cls) {
    case CtrlOutcome::Sound: return b;
    case CtrlOutcome::Invalid: return -k.C_inv * b;
    case CtrlOutcome::Malicious: return -k.C_mal * B;
  }
  return 0;
}

AuditReport audit_trace(const TraceHeader& h, const std::vector<IterationRecord>& recs, std::size_t max_listed) {
  AuditReport rep;
  std::map<std::string, AuditRow> rows;
  CounterTracker tracker;
  PhiParams pp{h.eps, h.b, h.B};
  for (const auto& r : recs) {
    ++rep.iterations;
    double delta = r.phi_after - r.phi_before;
    double bound = delta_phi_bound(r, h);
    std::string key = audit_key(r);
    auto& row = rows[key];
    if (row.count == 0) {
      row.key = key;
      row.min_slack = delta - bound;
    }
    ++row.count;
    row.min_slack = std::min(row.min_slack, delta - bound);
    if (delta < bound - 1e-6) {
      ++row.violations;
      ++rep.total_violations;
      if (rep.violations.size() < max_listed) rep.violations.push_back({r.m, key, delta, bound});
    }
    tracker.record(r.t, r.cls, !r.a0.sync, !r.b0.sync, r.trans_a != engine::Transition::None,
                   r.trans_b != engine::Transition::None);
    Counters c = tracker.counters(r.after.j);
    if (c.err != r.counters.err || c.inv != r.counters.inv || c.malA != r.counters.malA ||
        c.malB != r.counters.malB)
      ++rep.counter_mismatches;
    double phi = compute_phi(r.after, r.counters, h.constants, pp);
    if (std::abs(phi - r.phi_after) > 1e-6 * std::max(1.0, std::abs(phi))) ++rep.phi_mismatches;
  }
  for (auto& [key, row] : rows) rep.rows.push_back(row);
  return rep;
}

std::string AuditReport::to_json() const {
  nlohmann::json j;
  j["iterations"] = iterations;
  j["total_violations"] = total_violations;
  j["phi_mismatches"] = phi_mismatches;
  j["counter_mismatches"] = counter_mismatches;
  j["ok"] = ok();
  auto& jr = j["cases"] = nlohmann::json::array();
  for (const auto& r : rows)
    jr.push_back({{"case", r.key}, {"count", r.count}, {"violations", r.violations}, {"min_slack", r.min_slack}});
  auto& jv = j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    jv.push_back({{"m", v.m}, {"case", v.key}, {"delta", v.delta}, {"bound", v.bound}});
  return j.dump(2);
}

FinalCheck final_progress_check(const StateClass& end, double phi, bool actual_ok, const TraceHeader& h) {
  const auto& k = h.constants;
  const double lead = 1 + k.C0 * binary_entropy(h.eps);
  const double b = static_cast<double>(h.b);
  const double B = static_cast<double>(h.B);
  FinalCheck fc;
  fc.end_case = end.label();
  if (end.kind == StateKind::PerfectlySynced) {
    fc.derived_bound = (phi - 2 * B) / lead;
  } else if (end.kind == StateKind::AlmostSynced) {
    fc.derived_bound = phi / lead - B;
  } else if (end.kA == 1 && end.kB == 1 && end.syncA == end.syncB) {
    fc.end_case += "_k1";
    fc.derived_bound = (phi - 2 * b * k.C2) / lead;
  } else {
    fc.derived_bound = phi / lead;
  }
  fc.actual_l_plus = end.l_plus;
  fc.actual_ok = actual_ok;
  fc.derived_ok = fc.derived_bound >= static_cast<double>(h.n_prime);
  fc.bound_holds = fc.derived_bound <= static_cast<double>(end.l_plus) + 1e-6;
  return fc;
}

}  // namespace icx::analysis
