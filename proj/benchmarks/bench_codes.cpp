#include <benchmark/benchmark.h>

#include "icx/codes/bch.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/codes/rateless.hpp"
#include "icx/rng.hpp"

using namespace icx;

static void BM_BchDecode(benchmark::State& st) {
  auto code = codes::BchCode::choose(63, 0.25);
  Rng rng(1);
  BitVec y = code.encode(rng.bits(code.k()));
  for (std::size_t i = 0; i < static_cast<std::size_t>(st.range(0)); ++i) y.flip(rng.below(code.n()));
  for (auto _ : st) benchmark::DoNotOptimize(code.decode(y));
}
BENCHMARK(BM_BchDecode)->Arg(0)->Arg(10)->Arg(50);

static void BM_RatelessWindowDecode(benchmark::State& st) {
  codes::RsRatelessCode code(16, 16);
  Rng rng(2);
  BitVec cw = code.encode(rng.bits(code.message_bits()));
  const auto j = static_cast<std::size_t>(st.range(0));
  BitVec w = code.window(cw, 3, j);
  for (std::size_t i = 0; i < j; ++i) w.flip(i * 16);
  for (auto _ : st) benchmark::DoNotOptimize(code.window_decode(3, j, w));
}
BENCHMARK(BM_RatelessWindowDecode)->Arg(17)->Arg(24)->Arg(32);

static void BM_ChunkNearestDecode(benchmark::State& st) {
  codes::CodeSearchParams p;
  auto code = codes::gv_search(16, 340, 48, p);
  Rng rng(3);
  BitVec y = code.encode(rng.bits(16));
  for (int i = 0; i < 5; ++i) y.flip(rng.below(340));
  for (auto _ : st) benchmark::DoNotOptimize(code.nearest_codeword_decode(y));
}
BENCHMARK(BM_ChunkNearestDecode)->Unit(benchmark::kMillisecond);
