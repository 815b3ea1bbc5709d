#include <benchmark/benchmark.h>

#include "icx/randomness/ip_hash.hpp"
#include "icx/randomness/small_bias.hpp"
#include "icx/rng.hpp"

using namespace icx;

static void BM_InnerProductHash(benchmark::State& st) {
  const auto l = static_cast<std::size_t>(st.range(0));
  Rng rng(1);
  BitVec x = rng.bits(l), r = rng.bits(l * 8);
  for (auto _ : st) benchmark::DoNotOptimize(rnd::inner_product_hash(x, r, 8));
}
BENCHMARK(BM_InnerProductHash)->Arg(64)->Arg(1024)->Arg(8192);

static void BM_StretchedHash(benchmark::State& st) {
  const auto l = static_cast<std::size_t>(st.range(0));
  Rng rng(2);
  auto f = rnd::WideField::irreducible(64);
  rnd::SmallBiasGenerator g(f, rng.next() | 2, rng.next());
  rnd::StretchedHasher h(g, l + 32, 8);
  BitVec y = rng.bits(l);
  std::uint64_t off = 0;
  for (auto _ : st) benchmark::DoNotOptimize(h.hash(y, off += 7));
}
BENCHMARK(BM_StretchedHash)->Arg(1024)->Arg(8192);

static void BM_SmallBiasWord(benchmark::State& st) {
  auto f = rnd::WideField::irreducible(64);
  rnd::SmallBiasGenerator g(f, 0x123456789abcdefull, 0xfedcba987654321ull);
  std::uint64_t j = 0;
  for (auto _ : st) benchmark::DoNotOptimize(g.word(j += 64));
}
BENCHMARK(BM_SmallBiasWord);
