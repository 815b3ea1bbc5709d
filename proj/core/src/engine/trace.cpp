#include "icx/engine/trace.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace icx::engine {

using nlohmann::json;
using analysis::CtrlOutcome;

const char* transition_name(Transition t) {
  switch (t) {
    case Transition::None: return "none";
    case Transition::RollbackMP1: return "rollback_mp1";
    case Transition::RollbackMP2: return "rollback_mp2";
    case Transition::ErrorReset: return "error_reset";
  }
  return "?";
}

namespace {

json snap_json(const PartySnap& p) {
  return json::array({p.c, p.j, p.k, p.E, p.v1, p.v2, p.T_len, p.sync ? 1 : 0, p.speak ? 1 : 0});
}

PartySnap snap_of(const json& a) {
  PartySnap p;
  p.c = a.at(0);
  p.j = a.at(1);
  p.k = a.at(2);
  p.E = a.at(3);
  p.v1 = a.at(4);
  p.v2 = a.at(5);
  p.T_len = a.at(6);
  p.sync = a.at(7).get<int>() != 0;
  p.speak = a.at(8).get<int>() != 0;
  return p;
}

json state_json(const analysis::StateClass& s) {
  return json{{"kind", static_cast<int>(s.kind)}, {"case", s.almost_case}, {"lp", s.l_plus}, {"lm", s.l_minus},
              {"lA", s.lA},  {"lB", s.lB},  {"j", s.j},  {"kA", s.kA}, {"kB", s.kB}, {"EA", s.EA},
              {"EB", s.EB},  {"sA", s.syncA}, {"sB", s.syncB}};
}

analysis::StateClass state_of(const json& j) {
  analysis::StateClass s;
  s.kind = static_cast<analysis::StateKind>(j.at("kind").get<int>());
  s.almost_case = j.at("case");
  s.l_plus = j.at("lp");
  s.l_minus = j.at("lm");
  s.lA = j.at("lA");
  s.lB = j.at("lB");
  s.j = j.at("j");
  s.kA = j.at("kA");
  s.kB = j.at("kB");
  s.EA = j.at("EA");
  s.EB = j.at("EB");
  s.syncA = j.at("sA");
  s.syncB = j.at("sB");
  return s;
}

json constants_json(const analysis::PotentialConstants& k) {
  return json{{"C0", k.C0}, {"C", k.C},   {"D", k.D},   {"C1", k.C1}, {"C2", k.C2},       {"C3", k.C3},
              {"C4", k.C4}, {"C5", k.C5}, {"C6", k.C6}, {"C7", k.C7}, {"C_inv", k.C_inv}, {"C_mal", k.C_mal}};
}

analysis::PotentialConstants constants_of(const json& j) {
  analysis::PotentialConstants k;
  k.C0 = j.at("C0");
  k.C = j.at("C");
  k.D = j.at("D");
  k.C1 = j.at("C1");
  k.C2 = j.at("C2");
  k.C3 = j.at("C3");
  k.C4 = j.at("C4");
  k.C5 = j.at("C5");
  k.C6 = j.at("C6");
  k.C7 = j.at("C7");
  k.C_inv = j.at("C_inv");
  k.C_mal = j.at("C_mal");
  return k;
}

}  // namespace

std::string to_json_line(const IterationRecord& r) {
  json j{{"m", r.m},
         {"a0", snap_json(r.a0)},
         {"b0", snap_json(r.b0)},
         {"a1", snap_json(r.a1)},
         {"b1", snap_json(r.b1)},
         {"before", state_json(r.before)},
         {"after", state_json(r.after)},
         {"oa", static_cast<int>(r.outcome_a)},
         {"ob", static_cast<int>(r.outcome_b)},
         {"cls", static_cast<int>(r.cls)},
         {"col", json::array({r.collision_a, r.collision_b})},
         {"t", r.t},
         {"ce", json::array({r.ctrl_err_a, r.ctrl_err_b})},
         {"tr", json::array({static_cast<int>(r.trans_a), static_cast<int>(r.trans_b)})},
         {"cnt", json::array({r.counters.err, r.counters.inv, r.counters.malA, r.counters.malB})},
         {"phi0", r.phi_before},
         {"phi1", r.phi_after}};
  return j.dump();
}

IterationRecord record_from_json_line(const std::string& line) {
  json j = json::parse(line);
  IterationRecord r;
  r.m = j.at("m");
  r.a0 = snap_of(j.at("a0"));
  r.b0 = snap_of(j.at("b0"));
  r.a1 = snap_of(j.at("a1"));
  r.b1 = snap_of(j.at("b1"));
  r.before = state_of(j.at("before"));
  r.after = state_of(j.at("after"));
  r.outcome_a = static_cast<CtrlOutcome>(j.at("oa").get<int>());
  r.outcome_b = static_cast<CtrlOutcome>(j.at("ob").get<int>());
  r.cls = static_cast<CtrlOutcome>(j.at("cls").get<int>());
  r.collision_a = j.at("col").at(0);
  r.collision_b = j.at("col").at(1);
  r.t = j.at("t");
  r.ctrl_err_a = j.at("ce").at(0);
  r.ctrl_err_b = j.at("ce").at(1);
  r.trans_a = static_cast<Transition>(j.at("tr").at(0).get<int>());
  r.trans_b = static_cast<Transition>(j.at("tr").at(1).get<int>());
  const json& c = j.at("cnt");
  r.counters.err = c.at(0);
  r.counters.inv = c.at(1);
  r.counters.malA = c.at(2);
  r.counters.malB = c.at(3);
  r.phi_before = j.at("phi0");
  r.phi_after = j.at("phi1");
  return r;
}

std::string header_json_line(const TraceHeader& h) {
  json j{{"trace", "icx"}, {"eps", h.eps},         {"s", h.s},
         {"b", h.b},       {"B", h.B},             {"n_iter", h.n_iter},
         {"n_prime", h.n_prime}, {"constants", constants_json(h.constants)}};
  return j.dump();
}

TraceHeader header_from_json_line(const std::string& line) {
  json j = json::parse(line);
  if (j.value("trace", "") != "icx") throw std::runtime_error("not a trace header");
  TraceHeader h;
  h.eps = j.at("eps");
  h.s = j.at("s");
  h.b = j.at("b");
  h.B = j.at("B");
  h.n_iter = j.at("n_iter");
  h.n_prime = j.at("n_prime");
  h.constants = constants_of(j.at("constants"));
  return h;
}

void write_trace(std::ostream& os, const TraceHeader& h, const std::vector<IterationRecord>& recs) {
  os << header_json_line(h) << '\n';
  for (const auto& r : recs) os << to_json_line(r) << '\n';
}

std::vector<IterationRecord> read_trace(std::istream& is, TraceHeader& h) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty trace");
  h = header_from_json_line(line);
  std::vector<IterationRecord> out;
  while (std::getline(is, line)) {
    if (!line.empty()) out.push_back(record_from_json_line(line));
  }
  return out;
}

}  // namespace icx::engine
