#include <benchmark/benchmark.h>

#include "icx/engine/simulation.hpp"

using namespace icx;

static void BM_Simulation(benchmark::State& st) {
  engine::EngineConfig cfg;
  cfg.eps = 0.01;
  cfg.record_trace = false;
  auto codes = engine::build_codes(cfg);
  engine::RunOptions ro;
  ro.codes = &codes;
  auto p = std::make_shared<protocol::GeneratedProtocol>(
      protocol::GeneratedProtocol::random_segments(static_cast<std::size_t>(st.range(0)), 256, 1024, 1));
  protocol::BlockedProtocol bp(p, 256);
  protocol::Inputs in;
  in.alice.seed = 1;
  in.bob.seed = 2;
  engine::ChannelSpec ch;
  std::uint64_t seed = 0;
  for (auto _ : st) {
    auto res = engine::run_simulation(bp, in, cfg, ch, ++seed, ro);
    benchmark::DoNotOptimize(res.metrics.success);
  }
}
BENCHMARK(BM_Simulation)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
