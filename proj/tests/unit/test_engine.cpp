#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "icx/engine/adversary.hpp"
#include "icx/engine/parallel.hpp"
#include "icx/engine/simulation.hpp"
#include "icx/randomness/shared.hpp"
#include "icx/rng.hpp"

using namespace icx;
using namespace icx::engine;

namespace {

const CodeBundle& default_codes() {
  static const CodeBundle c = build_codes(EngineConfig{});
  return c;
}

struct Instance {
  std::shared_ptr<protocol::GeneratedProtocol> inner;
  protocol::BlockedProtocol blocked;
  protocol::Inputs inputs;
};

Instance make_instance(std::uint64_t seed, std::size_t depth = 2048) {
  auto p = std::make_shared<protocol::GeneratedProtocol>(
      protocol::GeneratedProtocol::random_segments(depth, 256, 1024, seed));
  protocol::Inputs in;
  in.alice.seed = derive_seed(seed, 1);
  in.bob.seed = derive_seed(seed, 2);
  return {p, protocol::BlockedProtocol(p, 256), in};
}

SimulationResult simulate(const Instance& inst, double eps, const std::string& strategy, std::uint64_t seed,
                          bool invariants = false) {
  EngineConfig cfg;
  cfg.eps = eps;
  ChannelSpec ch;
  ch.strategy = strategy;
  RunOptions ro;
  ro.codes = &default_codes();
  ro.check_invariants = invariants;
  return run_simulation(inst.blocked, inst.inputs, cfg, ch, seed, ro);
}

AdversaryView sample_view() {
  AdversaryView v;
  v.n_iter = 400;
  v.b = 16;
  v.b_prime = 868;
  v.exchange_rounds = 19840;
  v.rounds = v.exchange_rounds + v.n_iter * v.b_prime;
  v.eps = 0.01;
  v.budget = static_cast<std::size_t>(std::floor(v.eps * static_cast<double>(v.rounds)));
  return v;
}

}  // namespace

TEST(Params, DefaultDerivedSizes) {
  EngineConfig cfg;
  auto p = derive_params(cfg, default_codes(), 4096, iteration_count(cfg, 4096));
  EXPECT_EQ(p.B, 256u);
  EXPECT_EQ(p.l_ctrl, 55u);
  EXPECT_EQ(p.o, 426u);
  EXPECT_EQ(p.b_prime, 868u);
  EXPECT_GE(p.n_x, 19840u);
  EXPECT_EQ(p.rounds, p.n_x + p.n_iter * p.b_prime);
  EXPECT_EQ(p.budget, static_cast<std::size_t>(std::floor(0.01 * static_cast<double>(p.rounds))));
}

TEST(Params, IterationCountFormula) {
  EngineConfig cfg;
  for (double eps : {0.001, 0.01, 0.05}) {
    cfg.eps = eps;
    double want = std::ceil(4096.0 / 16 * (1.25 + 8 * eps * std::log2(1 / eps)));
    EXPECT_EQ(iteration_count(cfg, 4096), static_cast<std::size_t>(want));
  }
  cfg.eps = 0;
  EXPECT_EQ(iteration_count(cfg, 4096), static_cast<std::size_t>(std::ceil(4096.0 / 16 * 1.25)));
  cfg.n_iter = 77;
  EXPECT_EQ(iteration_count(cfg, 4096), 77u);
}

TEST(Params, BadConfigRejected) {
  EngineConfig cfg;
  cfg.eps = 0.6;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = EngineConfig{};
  cfg.p = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Params, ConfigJsonRoundTrip) {
  EngineConfig cfg;
  cfg.eps = 0.02;
  cfg.s = 8;
  cfg.public_randomness = true;
  EXPECT_EQ(EngineConfig::from_json(cfg.to_json()).to_json(), cfg.to_json());
}

TEST(ChannelTest, BudgetEnforced) {
  ErrorPattern v(100);
  for (std::size_t i = 0; i < 6; ++i) v.symbols[i] = ErrSym::Flip;
  EXPECT_NO_THROW(Channel::adversarial(v, 100, 6));
  EXPECT_THROW(Channel::adversarial(v, 100, 5), std::invalid_argument);
  EXPECT_THROW(Channel::adversarial(ErrorPattern(101), 100, 5), std::invalid_argument);
}

TEST(ChannelTest, BscDeterministicPerSeed) {
  auto a = Channel::bsc(0.1, 5000, 3), b = Channel::bsc(0.1, 5000, 3);
  EXPECT_EQ(a.pattern().to_string(), b.pattern().to_string());
  EXPECT_NEAR(static_cast<double>(a.weight()) / 5000, 0.1, 0.03);
}

TEST(Adversary, EveryStrategyRespectsBudget) {
  auto v = sample_view();
  for (const auto& s : adversary_strategies()) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto pat = s.generate(v, seed);
      EXPECT_LE(pat.size(), v.rounds) << s.name;
      EXPECT_LE(pat.weight(), v.budget) << s.name;
    }
  }
  EXPECT_THROW(find_strategy("nope"), std::invalid_argument);
}

TEST(Adversary, NeverReadsSharedRandomness) {
  auto v = sample_view();
  auto before = rnd::material_draws();
  for (const auto& s : adversary_strategies()) s.generate(v, 9);
  EXPECT_EQ(rnd::material_draws(), before);
}

TEST(Adversary, UniformMarginalIsFlat) {
  auto v = sample_view();
  const auto& s = find_strategy("uniform_random");
  const std::size_t bins = 10;
  std::vector<double> hits(bins, 0);
  double total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto pat = s.generate(v, seed);
    for (std::size_t r = 0; r < pat.size(); ++r) {
      if (pat.symbols[r] == ErrSym::Pass) continue;
      hits[r * bins / v.rounds] += 1;
      total += 1;
    }
  }
  for (double h : hits) EXPECT_NEAR(h / total, 1.0 / bins, 0.01);
}

TEST(Adversary, RedundancyWindowStaysInSpan) {
  auto v = sample_view();
  const auto& s = find_strategy("redundancy_window");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto span = redundancy_window_span(v, seed);
    auto pat = s.generate(v, seed);
    EXPECT_GT(pat.weight(), 0u);
    for (std::size_t r = 0; r < pat.size(); ++r) {
      if (pat.symbols[r] != ErrSym::Pass) {
        EXPECT_GE(r, span.start);
        EXPECT_LT(r, span.start + span.length);
      }
    }
  }
}

TEST(Simulation, NoiselessRunMatchesReference) {
  auto inst = make_instance(11);
  auto res = simulate(inst, 0.01, "none", 1);
  ASSERT_TRUE(res.metrics.success);
  EXPECT_EQ(res.metrics.corrupted_rounds, 0u);
  EXPECT_EQ(res.metrics.invalid + res.metrics.malicious, 0u);
  BitVec want = protocol::run_noiseless(*inst.inner, inst.inputs);
  EXPECT_EQ(inst.blocked.origin_map(res.T_A), want);
  EXPECT_EQ(inst.blocked.origin_map(res.T_B), want);
  for (const auto& r : res.trace) {
    EXPECT_EQ(r.cls, analysis::CtrlOutcome::Sound);
    EXPECT_NE(r.after.kind, analysis::StateKind::Unsynced);
  }
  ASSERT_TRUE(res.metrics.completion_iteration.has_value());
  EXPECT_LT(*res.metrics.completion_iteration, res.metrics.n_iter);
  EXPECT_TRUE(analysis::audit_trace(res.header, res.trace).ok());
}

TEST(Simulation, SameSeedSameResult) {
  auto inst = make_instance(12);
  auto a = simulate(inst, 0.01, "uniform_random", 5);
  auto b = simulate(inst, 0.01, "uniform_random", 5);
  EXPECT_EQ(a.T_A, b.T_A);
  EXPECT_EQ(a.T_B, b.T_B);
  EXPECT_EQ(a.metrics.to_json(), b.metrics.to_json());
}

TEST(Simulation, InvariantsHoldUnderNoise) {
  for (const char* strat : {"uniform_random", "burst", "control_slot_guess"}) {
    auto inst = make_instance(13);
    SimulationResult res;
    EXPECT_NO_THROW(res = simulate(inst, 0.02, strat, 3, true)) << strat;
    EXPECT_TRUE(res.metrics.success) << strat;
    EXPECT_LE(res.metrics.corrupted_rounds, res.metrics.budget);
  }
}

TEST(Simulation, BlockSizeMismatchRejected) {
  auto p = std::make_shared<protocol::GeneratedProtocol>(protocol::GeneratedProtocol::random_segments(512, 64, 128, 1));
  protocol::BlockedProtocol bp(p, 128);
  EngineConfig cfg;
  RunOptions ro;
  ro.codes = &default_codes();
  EXPECT_THROW(run_simulation(bp, {}, cfg, ChannelSpec{}, 1, ro), std::invalid_argument);
}

TEST(Trace, JsonRoundTrip) {
  auto inst = make_instance(14, 1024);
  auto res = simulate(inst, 0.02, "burst", 2);
  std::stringstream ss;
  write_trace(ss, res.header, res.trace);
  TraceHeader h;
  auto back = read_trace(ss, h);
  ASSERT_EQ(back.size(), res.trace.size());
  EXPECT_EQ(header_json_line(h), header_json_line(res.header));
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(to_json_line(back[i]), to_json_line(res.trace[i]));
  auto a = analysis::audit_trace(h, back), b = analysis::audit_trace(res.header, res.trace);
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> seen(500);
  parallel_for(seen.size(), [&](std::size_t i) { seen[i]++; });
  for (auto& s : seen) EXPECT_EQ(s.load(), 1);
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Parallel, EnvironmentCapsThreads) {
  setenv("ICX_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1u);
  unsetenv("ICX_THREADS");
  EXPECT_GE(thread_count(), 1u);
}
