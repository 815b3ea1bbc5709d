#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "icx/analysis/audit.hpp"
#include "icx/engine/simulation.hpp"

using namespace icx;
using namespace icx::analysis;

namespace {

Reference small_reference() {
  // Four blocks of B = 4: Alice, Bob, Alice, Bob.
  return Reference(BitVec::from_string("1011" "0110" "1110" "0001"),
                   {Party::Alice, Party::Bob, Party::Alice, Party::Bob}, 4);
}

PartyView view(const BitVec& t, std::size_t c, std::size_t j = 0) {
  PartyView v;
  v.T = &t;
  v.c = c;
  v.j = j;
  return v;
}

engine::TraceHeader header() {
  engine::TraceHeader h;
  h.eps = 0.01;
  h.s = 16;
  h.b = 16;
  h.B = 256;
  return h;
}

}  // namespace

TEST(Classify, FreshStateIsPerfect) {
  auto ref = small_reference();
  BitVec e;
  auto st = classify_state(view(e, 1), view(e, 1), ref);
  EXPECT_EQ(st.kind, StateKind::PerfectlySynced);
  EXPECT_EQ(st.j, 0u);
  EXPECT_EQ(st.l_plus, 0u);
}

TEST(Classify, RaisedKIsUnsynced) {
  auto ref = small_reference();
  BitVec e;
  auto a = view(e, 1);
  a.k = 2;
  EXPECT_EQ(classify_state(a, view(e, 1), ref).kind, StateKind::Unsynced);
}

TEST(Classify, AlmostSyncedCaseOne) {
  auto ref = small_reference();
  BitVec ta = BitVec::from_string("1011"), tb = BitVec::from_string("1011" "0110");
  auto st = classify_state(view(ta, 2), view(tb, 3, 5), ref);
  EXPECT_EQ(st.kind, StateKind::AlmostSynced);
  EXPECT_EQ(st.almost_case, 1);
  EXPECT_EQ(st.j, 5u);
  EXPECT_EQ(st.l_minus, 4u);
}

TEST(Classify, WrongExtraBlockIsUnsynced) {
  auto ref = small_reference();
  BitVec ta = BitVec::from_string("1011"), tb = BitVec::from_string("1011" "0111");
  EXPECT_EQ(classify_state(view(ta, 2), view(tb, 3), ref).kind, StateKind::Unsynced);
}

TEST(Classify, ListenerAheadIsAlmostSynced) {
  auto ref = small_reference();
  BitVec t = BitVec::from_string("1011");
  // Block 2 is Bob's; Alice as listener has a larger j.
  auto st = classify_state(view(t, 2, 3), view(t, 2, 1), ref);
  EXPECT_EQ(st.kind, StateKind::AlmostSynced);
  EXPECT_EQ(st.almost_case, 4);
  auto ok = classify_state(view(t, 2, 1), view(t, 2, 3), ref);
  EXPECT_EQ(ok.kind, StateKind::PerfectlySynced);
  EXPECT_EQ(ok.j, 1u);
}

TEST(Phi, PerfectOriginIsZero) {
  StateClass st;
  st.kind = StateKind::PerfectlySynced;
  EXPECT_DOUBLE_EQ(compute_phi(st, {}, PotentialConstants{}, {0.01, 16, 256}), 0.0);
}

TEST(Phi, AlmostSyncedOneBlockAhead) {
  StateClass st;
  st.kind = StateKind::AlmostSynced;
  st.lA = 0;
  st.lB = 256;
  PotentialConstants k;
  double want = 256 * (1 + k.C0 * oracle::entropy(0.01)) - 16;
  EXPECT_NEAR(compute_phi(st, {}, k, {0.01, 16, 256}), want, 1e-9);
}

TEST(Phi, UnsyncedBaseline) {
  StateClass st;
  st.kind = StateKind::Unsynced;
  PotentialConstants k;
  EXPECT_NEAR(compute_phi(st, {}, k, {0.01, 16, 256}), 2 * 16 * k.C2 - 16 * k.C4, 1e-9);
}

TEST(Phi, PerfectCountsErrorsAndInvalids) {
  StateClass st;
  st.kind = StateKind::PerfectlySynced;
  st.l_plus = 512;
  st.j = 3;
  Counters c;
  c.err = 4;
  c.inv = 1;
  PotentialConstants k;
  double want = 512 * (1 + k.C0 * oracle::entropy(0.01)) + 3 * 16 - k.C * 4 * std::log2(100.0) - k.D * 16;
  EXPECT_NEAR(compute_phi(st, c, k, {0.01, 16, 256}), want, 1e-9);
}

TEST(Constants, DefaultsFeasible) {
  PotentialConstants k;
  for (const auto& q : constant_constraints(k, 0.05, 16)) EXPECT_TRUE(q.ok()) << q.name << " " << q.lhs << " " << q.rhs;
  EXPECT_TRUE(constants_feasible(k, 0.05, 16));
  k.D = 1.5;
  EXPECT_FALSE(constants_feasible(k, 0.05, 16));
}

TEST(Counters, EmptyIsZero) {
  CounterTracker t;
  auto c = t.counters(5);
  EXPECT_EQ(c.err + c.inv + c.malA + c.malB, 0u);
}

TEST(Counters, MaliciousIncrementsThenResets) {
  CounterTracker t;
  t.record(3, CtrlOutcome::Malicious, true, false, false, false);
  EXPECT_EQ(t.counters(1).malA, 1u);
  EXPECT_EQ(t.counters(1).malB, 0u);
  t.record(0, CtrlOutcome::Sound, true, false, true, false);
  EXPECT_EQ(t.counters(1).malA, 0u);
}

TEST(Counters, WindowCoversLastJ) {
  CounterTracker t;
  t.record(2, CtrlOutcome::Invalid, false, false, false, false);
  t.record(5, CtrlOutcome::Sound, false, false, false, false);
  t.record(1, CtrlOutcome::Malicious, false, false, false, false);
  auto c = t.counters(2);
  EXPECT_EQ(c.err, 6u);
  EXPECT_EQ(c.inv, 1u);
  EXPECT_EQ(t.counters(0).err, 0u);
  EXPECT_EQ(t.counters(10).inv, 2u);
}

TEST(Bound, CaseTable) {
  auto h = header();
  PotentialConstants k;
  engine::IterationRecord r;
  r.before.kind = StateKind::AlmostSynced;
  r.cls = CtrlOutcome::Sound;
  EXPECT_DOUBLE_EQ(delta_phi_bound(r, h), 16.0);
  r.cls = CtrlOutcome::Malicious;
  EXPECT_DOUBLE_EQ(delta_phi_bound(r, h), -k.C_mal * 256);
  r.before.kind = StateKind::Unsynced;
  r.cls = CtrlOutcome::Invalid;
  EXPECT_DOUBLE_EQ(delta_phi_bound(r, h), -k.C_inv * 16);
  r.before.kind = StateKind::PerfectlySynced;
  r.after.kind = StateKind::PerfectlySynced;
  r.cls = CtrlOutcome::Sound;
  r.t = 2;
  EXPECT_NEAR(delta_phi_bound(r, h), 16 - k.C * 2 * std::log2(100.0), 1e-9);
}

TEST(Audit, FlagsViolation) {
  auto h = header();
  engine::IterationRecord r;
  r.before.kind = StateKind::AlmostSynced;
  r.cls = CtrlOutcome::Sound;
  r.phi_before = 100;
  r.phi_after = 110;
  auto rep = audit_trace(h, {r});
  EXPECT_EQ(rep.total_violations, 1u);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_DOUBLE_EQ(rep.violations[0].bound, 16.0);
}

TEST(Audit, LiveCountersMatchRecomputation) {
  engine::EngineConfig cfg;
  cfg.s = 4;
  cfg.b = 8;
  cfg.p = 6;
  cfg.o_prime = 6;
  cfg.eps = 0.03;
  auto codes = engine::build_codes(cfg);
  engine::RunOptions ro;
  ro.codes = &codes;
  const char* strategies[] = {"uniform_random", "burst", "redundancy_window", "control_slot_guess"};
  std::size_t mismatches = 0, runs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto p = std::make_shared<protocol::GeneratedProtocol>(
        protocol::GeneratedProtocol::random_segments(256, 32, 96, seed));
    protocol::BlockedProtocol bp(p, 32);
    protocol::Inputs in;
    in.alice.seed = seed + 1;
    in.bob.seed = seed + 1000;
    engine::ChannelSpec ch;
    ch.strategy = strategies[seed % 4];
    auto res = engine::run_simulation(bp, in, cfg, ch, seed, ro);
    auto rep = audit_trace(res.header, res.trace);
    mismatches += rep.counter_mismatches + rep.phi_mismatches;
    ++runs;
  }
  EXPECT_EQ(runs, 100u);
  EXPECT_EQ(mismatches, 0u);
}

TEST(FinalCheck, AgreesWithTranscripts) {
  auto codes = engine::build_codes(engine::EngineConfig{});
  engine::RunOptions ro;
  ro.codes = &codes;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto p = std::make_shared<protocol::GeneratedProtocol>(
        protocol::GeneratedProtocol::random_segments(1024, 256, 512, seed));
    protocol::BlockedProtocol bp(p, 256);
    protocol::Inputs in;
    in.alice.seed = seed;
    in.bob.seed = seed + 7;
    engine::EngineConfig cfg;
    cfg.eps = 0.02;
    engine::ChannelSpec ch;
    auto res = engine::run_simulation(bp, in, cfg, ch, seed, ro);
    EXPECT_TRUE(res.metrics.final_check.agree()) << res.metrics.to_json();
    EXPECT_EQ(res.metrics.final_check.actual_ok, res.metrics.success);
  }
}
