#include "icx/engine/simulation.hpp"

#include <stdexcept>

#include <json.hpp>

#include "icx/engine/party.hpp"
#include "icx/randomness/exchange.hpp"
#include "icx/rng.hpp"

namespace icx::engine {

using analysis::CtrlOutcome;
using control::ControlInfo;

namespace {

constexpr std::uint64_t kLabelLocal = 1, kLabelAdversary = 2, kLabelBsc = 3, kLabelPublic = 4;

BitVec concat(BitVec a, const BitVec& b) {
  a.append(b);
  return a;
}

analysis::PartyView view_of(const PartyMachine& p) {
  const auto& s = p.state();
  analysis::PartyView v;
  v.T = &s.T;
  v.c = s.c;
  v.j = s.j;
  v.k = s.k;
  v.E = s.E;
  v.sync = s.sync;
  return v;
}

bool matches_reference(const BitVec& t, const BitVec& ref) {
  return t.size() >= ref.size() && t.common_prefix(ref) >= ref.size();
}

}  // namespace

analysis::Reference make_reference(const protocol::BlockedProtocol& proto, const protocol::Inputs& inputs) {
  BitVec t = proto.run_noiseless(inputs);
  std::size_t B = proto.block_size();
  std::vector<protocol::Party> speakers;
  protocol::BlockedCursor c = proto.start();
  for (std::size_t blk = 0; blk * B < t.size(); ++blk) {
    speakers.push_back(proto.owner(c));
    for (std::size_t i = 0; i < B && !proto.done(c); ++i) proto.advance(c, t[blk * B + i]);
  }
  return analysis::Reference(std::move(t), std::move(speakers), B);
}

std::string RunMetrics::to_json() const {
  nlohmann::json j{{"success", success},
                   {"exchange_ok", exchange_ok},
                   {"n", n},
                   {"n_prime", n_prime},
                   {"n_iter", n_iter},
                   {"b_prime", b_prime},
                   {"n_x", n_x},
                   {"rounds", rounds},
                   {"rate", rate},
                   {"overhead", overhead},
                   {"rounds_to_completion", rounds_to_completion},
                   {"overhead_completion", overhead_completion},
                   {"counts", {{"sound", sound}, {"invalid", invalid}, {"malicious", malicious}}},
                   {"collisions", collisions},
                   {"transitions", transitions},
                   {"corrupted_rounds", corrupted_rounds},
                   {"budget", budget},
                   {"phi_final", phi_final},
                   {"final_state", final_state},
                   {"final_check",
                    {{"case", final_check.end_case},
                     {"derived_bound", final_check.derived_bound},
                     {"derived_ok", final_check.derived_ok},
                     {"actual_ok", final_check.actual_ok},
                     {"agree", final_check.agree()}}}};
  j["completion_iteration"] = completion_iteration ? nlohmann::json(*completion_iteration) : nlohmann::json(nullptr);
  return j.dump();
}

SimulationResult run_simulation(const protocol::BlockedProtocol& proto, const protocol::Inputs& inputs,
                                const EngineConfig& cfg, const ChannelSpec& chspec, std::uint64_t seed,
                                const RunOptions& opts) {
  cfg.validate();
  CodeBundle own;
  const CodeBundle* codes = opts.codes;
  if (!codes) {
    own = build_codes(cfg);
    codes = &own;
  }
  if (proto.block_size() != cfg.s * cfg.b)
    throw std::invalid_argument("protocol block size " + std::to_string(proto.block_size()) + " != s*b");
  if (codes->rateless->s() != cfg.s || codes->rateless->b() != cfg.b)
    throw std::invalid_argument("rateless code does not match (s, b)");

  SimulationResult res;
  analysis::Reference ref = make_reference(proto, inputs);
  res.reference = ref.transcript();
  const std::size_t n_prime = ref.length();
  const std::size_t n_iter = iteration_count(cfg, n_prime);
  EngineParams P = derive_params(cfg, *codes, n_prime, n_iter);
  res.params = P;
  res.header = TraceHeader{cfg.eps, P.s, P.b, P.B, P.n_iter, P.n_prime, cfg.constants};

  // The error pattern is fixed before any randomness of the execution exists.
  AdversaryView av{P.rounds, P.n_x, P.n_iter, P.b, P.b_prime, cfg.exchange_m, cfg.eps, P.budget};
  std::optional<Channel> ch;
  if (chspec.kind == ChannelKind::Bsc) {
    ch = Channel::bsc(cfg.eps, P.rounds, derive_seed(seed, kLabelBsc));
  } else if (chspec.pattern) {
    ch = Channel::adversarial(*chspec.pattern, P.rounds, P.budget);
  } else {
    ch = Channel::adversarial(find_strategy(chspec.strategy).generate(av, derive_seed(seed, kLabelAdversary)),
                              P.rounds, P.budget);
  }

  rnd::RandomnessLayout lay;
  lay.n_iter = P.n_iter;
  lay.b = P.b;
  lay.b_prime = P.b_prime;
  lay.o = P.o;
  lay.l_ctrl = P.l_ctrl;
  lay.o_prime = P.o_prime;
  lay.p = P.p;
  lay.t_cap = P.t_cap;

  BitVec strA, strB;
  bool exchange_ok = true;
  if (cfg.public_randomness) {
    strA = rnd::SharedRandomness::from_public_seed(derive_seed(seed, kLabelPublic), lay).str();
    strB = strA;
  } else {
    codes::ExchangeCode xc(lay.seed_bits(), P.n_x, cfg.exchange_m);
    Rng local(derive_seed(seed, kLabelLocal));
    BitVec str = local.bits(lay.seed_bits());
    auto out = rnd::randomness_exchange(str, xc, [&](const BitVec& cw) {
      ErrorPattern sub(cw.size());
      for (std::size_t r = 0; r < cw.size(); ++r) sub.symbols[r] = ch->at(r);
      return control::corrupt_apply(cw, sub);
    });
    strA = out.alice;
    strB = out.bob;
    exchange_ok = strA == strB;
  }
  rnd::SharedRandomness shA(strA, lay), shB(strB, lay);

  PartyMachine A(protocol::Party::Alice, {&proto, &inputs.alice, codes->rateless.get(), &shA});
  PartyMachine Bm(protocol::Party::Bob, {&proto, &inputs.bob, codes->rateless.get(), &shB});
  const control::ControlCodec& codec = *codes->codec;
  analysis::PhiParams pp{cfg.eps, P.b, P.B};
  analysis::CounterTracker tracker;

  analysis::StateClass cls = analysis::classify_state(view_of(A), view_of(Bm), ref);
  double phi = analysis::compute_phi(cls, tracker.counters(cls.j), cfg.constants, pp);
  RunMetrics& M = res.metrics;

  std::vector<std::uint8_t> sendA(P.b_prime), sendB(P.b_prime);
  std::vector<std::uint8_t> bitA(P.b_prime), bitB(P.b_prime);
  for (std::size_t m = 0; m < P.n_iter; ++m) {
    const std::size_t base = P.n_x + m * P.b_prime;
    rnd::SlotAssignment slA = shA.slots(m);
    rnd::SlotAssignment slB = exchange_ok ? slA : shB.slots(m);

    ControlInfo cA = A.update_control();
    ControlInfo cB = Bm.update_control();
    CtrlTruth tA = A.truth(), tB = Bm.truth();
    BitVec rA = codec.encode(control::serialize(cA, P.p, P.s),
                             concat(shA.mask(m, protocol::Party::Alice), shA.ctrl_seed(m, protocol::Party::Alice)));
    BitVec rB = codec.encode(control::serialize(cB, P.p, P.s),
                             concat(shB.mask(m, protocol::Party::Bob), shB.ctrl_seed(m, protocol::Party::Bob)));

    // Who transmits what in each round of the mini-block.
    std::fill(sendA.begin(), sendA.end(), 0);
    std::fill(sendB.begin(), sendB.end(), 0);
    for (std::size_t i = 0; i < slA.alice.size(); ++i) {
      sendA[slA.alice[i]] = 1;
      bitA[slA.alice[i]] = rA[i];
    }
    for (std::size_t i = 0; i < slB.bob.size(); ++i) {
      sendB[slB.bob[i]] = 1;
      bitB[slB.bob[i]] = rB[i];
    }
    const bool dataA = A.sends_data(), dataB = Bm.sends_data();
    if (dataA) {
      const BitVec& y = A.data_chunk();
      std::size_t q = 0;
      for (std::size_t pos = 0; pos < P.b_prime; ++pos) {
        if (slA.owner[pos] == 0) {
          sendA[pos] = 1;
          bitA[pos] = y[q++];
        }
      }
    }
    if (dataB) {
      const BitVec& y = Bm.data_chunk();
      std::size_t q = 0;
      for (std::size_t pos = 0; pos < P.b_prime; ++pos) {
        if (slB.owner[pos] == 0) {
          sendB[pos] = 1;
          bitB[pos] = y[q++];
        }
      }
    }
    auto heard = [&](std::size_t pos, bool by_alice) -> bool {
      std::size_t r = base + pos;
      bool other_sends = by_alice ? sendB[pos] : sendA[pos];
      bool other_bit = by_alice ? bitB[pos] : bitA[pos];
      return other_sends ? ch->deliver(other_bit, r) : ch->filler(r);
    };

    BitVec rxA(slA.bob.size()), rxB(slB.alice.size());
    for (std::size_t i = 0; i < slA.bob.size(); ++i) rxA.set(i, heard(slA.bob[i], true));
    for (std::size_t i = 0; i < slB.alice.size(); ++i) rxB.set(i, heard(slB.alice[i], false));
    BitVec gA, gB;
    if (!dataA) {
      for (std::size_t pos = 0; pos < P.b_prime; ++pos) {
        if (slA.owner[pos] == 0) gA.push_back(heard(pos, true));
      }
    }
    if (!dataB) {
      for (std::size_t pos = 0; pos < P.b_prime; ++pos) {
        if (slB.owner[pos] == 0) gB.push_back(heard(pos, false));
      }
    }

    std::optional<ControlInfo> dA, dB;
    if (auto z = codec.decode(rxA, concat(shA.mask(m, protocol::Party::Bob), shA.ctrl_seed(m, protocol::Party::Bob))))
      dA = control::deserialize(*z, P.p, P.s);
    if (auto z = codec.decode(rxB, concat(shB.mask(m, protocol::Party::Alice), shB.ctrl_seed(m, protocol::Party::Alice))))
      dB = control::deserialize(*z, P.p, P.s);

    IterationRecord rec;
    rec.m = m;
    rec.a0 = A.snap();
    rec.b0 = Bm.snap();
    rec.before = cls;
    rec.outcome_a = !dA ? CtrlOutcome::Invalid : (*dA == cB ? CtrlOutcome::Sound : CtrlOutcome::Malicious);
    rec.outcome_b = !dB ? CtrlOutcome::Invalid : (*dB == cA ? CtrlOutcome::Sound : CtrlOutcome::Malicious);
    for (std::size_t pos = 0; pos < P.b_prime; ++pos) {
      bool hit = ch->at(base + pos) != control::ErrSym::Pass;
      if (!hit) continue;
      if (slA.owner[pos] == 0) ++rec.t;
      if (slA.owner[pos] == 1) ++rec.ctrl_err_a;
      if (slA.owner[pos] == 2) ++rec.ctrl_err_b;
    }

    FlowReport fA = A.control_flow(dA, gA, rec.outcome_a == CtrlOutcome::Sound ? &tB : nullptr);
    FlowReport fB = Bm.control_flow(dB, gB, rec.outcome_b == CtrlOutcome::Sound ? &tA : nullptr);
    if (opts.check_invariants) {
      A.check_invariants();
      Bm.check_invariants();
    }
    rec.collision_a = fA.collision;
    rec.collision_b = fB.collision;
    if (fA.collision) rec.outcome_a = CtrlOutcome::Malicious;
    if (fB.collision) rec.outcome_b = CtrlOutcome::Malicious;
    rec.cls = analysis::combine(rec.outcome_a, rec.outcome_b);
    rec.trans_a = fA.transition;
    rec.trans_b = fB.transition;
    rec.a1 = A.snap();
    rec.b1 = Bm.snap();

    tracker.record(rec.t, rec.cls, !rec.a0.sync, !rec.b0.sync, fA.transition != Transition::None,
                   fB.transition != Transition::None);
    cls = analysis::classify_state(view_of(A), view_of(Bm), ref);
    rec.after = cls;
    rec.counters = tracker.counters(cls.j);
    rec.phi_before = phi;
    phi = analysis::compute_phi(cls, rec.counters, cfg.constants, pp);
    rec.phi_after = phi;

    switch (rec.cls) {
      case CtrlOutcome::Sound: ++M.sound; break;
      case CtrlOutcome::Invalid: ++M.invalid; break;
      case CtrlOutcome::Malicious: ++M.malicious; break;
    }
    M.collisions += (fA.collision ? 1 : 0) + (fB.collision ? 1 : 0);
    M.transitions += (fA.transition != Transition::None ? 1 : 0) + (fB.transition != Transition::None ? 1 : 0);
    if (!M.completion_iteration && matches_reference(A.state().T, ref.transcript()) &&
        matches_reference(Bm.state().T, ref.transcript()))
      M.completion_iteration = m;
    if (cfg.record_trace) res.trace.push_back(std::move(rec));
  }

  res.T_A = A.state().T;
  res.T_B = Bm.state().T;
  res.final_state = cls;
  M.success = matches_reference(res.T_A, ref.transcript()) && matches_reference(res.T_B, ref.transcript());
  M.exchange_ok = exchange_ok;
  M.n = proto.inner().depth();
  M.n_prime = n_prime;
  M.n_iter = P.n_iter;
  M.b_prime = P.b_prime;
  M.n_x = P.n_x;
  M.rounds = P.rounds;
  M.rate = M.rounds ? static_cast<double>(M.n) / static_cast<double>(M.rounds) : 0;
  M.overhead = M.n ? static_cast<double>(M.rounds) / static_cast<double>(M.n) - 1 : 0;
  if (M.completion_iteration) {
    M.rounds_to_completion = P.n_x + (*M.completion_iteration + 1) * P.b_prime;
    M.overhead_completion = M.n ? static_cast<double>(M.rounds_to_completion) / static_cast<double>(M.n) - 1 : 0;
  }
  M.corrupted_rounds = ch->weight();
  M.budget = P.budget;
  M.phi_final = phi;
  M.final_state = cls.label();
  M.final_check = analysis::final_progress_check(cls, phi, M.success, res.header);
  return res;
}

SimulationResult run_rateless(const protocol::BlockedProtocol& proto, const protocol::Inputs& inputs,
                              const EngineConfig& cfg, double true_eps, const std::string& strategy,
                              std::uint64_t seed, const RunOptions& opts) {
  EngineConfig c = cfg;
  c.public_randomness = true;
  c.eps_prime = cfg.resolved_eps_prime();
  c.eps = true_eps;
  BitVec t = proto.run_noiseless(inputs);
  c.n_iter = rateless_iteration_count(cfg, t.size(), true_eps);
  ChannelSpec ch;
  ch.kind = ChannelKind::Adversary;
  ch.strategy = strategy;
  return run_simulation(proto, inputs, c, ch, seed, opts);
}

}  // namespace icx::engine
