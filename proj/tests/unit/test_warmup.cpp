#include <gtest/gtest.h>

#include <cmath>

#include "../oracles.hpp"
#include "icx/rng.hpp"
#include "icx/stats.hpp"
#include "icx/warmup/blocked_random.hpp"
#include "icx/warmup/trivial.hpp"

using namespace icx;
using namespace icx::warmup;

namespace {

struct Desk {
  std::shared_ptr<protocol::GeneratedProtocol> proto;
  protocol::Inputs inputs;
};

Desk desk(std::size_t depth, std::size_t lo, std::size_t hi, std::uint64_t seed) {
  Desk d{std::make_shared<protocol::GeneratedProtocol>(
             protocol::GeneratedProtocol::random_segments(depth, lo, hi, seed)),
         {}};
  d.inputs.alice.seed = seed * 3 + 1;
  d.inputs.bob.seed = seed * 5 + 2;
  return d;
}

oracle::Bits to_bits(const BitVec& v) {
  oracle::Bits b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i];
  return b;
}

std::vector<oracle::Bits> rows_of(const codes::BinaryLinearCode& c) {
  std::vector<oracle::Bits> rows;
  for (std::size_t i = 0; i < c.k(); ++i) {
    BitVec e(c.k());
    e.set(i, true);
    rows.push_back(to_bits(c.encode(e)));
  }
  return rows;
}

}  // namespace

TEST(Tail, MatchesOracle) {
  for (std::size_t n : {10u, 40u, 200u}) {
    for (double p : {0.01, 0.1, 0.3}) {
      for (std::size_t t : {0u, 2u, 5u, 9u}) {
        double want = oracle::binomial_tail_above(n, p, t);
        EXPECT_NEAR(binomial_tail_above(n, p, t), want, 1e-9 + 1e-6 * want);
      }
    }
  }
}

TEST(Trivial, NoiselessIsExactAtFullRate) {
  TrivialSchemeConfig cfg;
  cfg.eps = 0;
  auto code = choose_trivial_code(cfg);
  EXPECT_EQ(code.n(), code.k());
  auto d = desk(1024, 24, 64, 1);
  auto r = trivial_simulate(*d.proto, d.inputs, code, 0, 1);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.rounds % cfg.piece_bits, 0u);
  EXPECT_DOUBLE_EQ(r.rate, static_cast<double>(r.n) / static_cast<double>(r.rounds));
  EXPECT_EQ(r.unit_failures, 0u);
}

TEST(Trivial, ChosenCodeMeetsUnionBound) {
  TrivialSchemeConfig cfg;
  auto code = choose_trivial_code(cfg);
  EXPECT_EQ(code.k(), cfg.piece_bits);
  std::size_t radius = (code.min_distance() - 1) / 2;
  double fail = static_cast<double>(cfg.expected_pieces) * oracle::binomial_tail_above(code.n(), cfg.eps, radius);
  EXPECT_LE(fail, cfg.target_failure);
  EXPECT_GE(oracle::min_weight(rows_of(code)), code.min_distance());
}

TEST(Trivial, SucceedsUnderLightNoise) {
  auto d = desk(1024, 24, 64, 2);
  TrivialSchemeConfig cfg;
  cfg.expected_pieces = 256;
  std::size_t ok = 0;
  for (std::uint64_t s = 0; s < 50; ++s) ok += trivial_simulate(*d.proto, d.inputs, cfg, s).success;
  EXPECT_GE(ok, 49u);
}

TEST(Trivial, SabotagedMessageDerails) {
  auto d = desk(1024, 24, 64, 3);
  TrivialSchemeConfig cfg;
  cfg.eps = 0;
  auto code = choose_trivial_code(TrivialSchemeConfig{});
  TrivialOptions opts;
  opts.sabotage_message = 2;
  auto r = trivial_simulate(*d.proto, d.inputs, code, 0, 1, opts);
  EXPECT_FALSE(r.success);
  EXPECT_GE(r.unit_failures, 1u);
}

TEST(Trivial, ShortMessagesRejected) {
  auto d = desk(512, 4, 8, 4);
  EXPECT_THROW(trivial_simulate(*d.proto, d.inputs, TrivialSchemeConfig{}, 1), std::invalid_argument);
}

TEST(Trivial, OverheadGrowsWithNoise) {
  std::vector<double> x, y;
  auto d = desk(1024, 24, 64, 5);
  for (double eps : {0.001, 0.002, 0.005, 0.01, 0.02, 0.04}) {
    TrivialSchemeConfig cfg;
    cfg.eps = eps;
    auto r = trivial_simulate(*d.proto, d.inputs, cfg, 1);
    x.push_back(eps * std::log2(1 / eps));
    y.push_back(1 - r.rate);
  }
  EXPECT_GE(stats::spearman(x, y), 0.9);
}

TEST(Blocked, ChunkGeometry) {
  BlockedRandomConfig cfg;
  EXPECT_EQ(cfg.chunk_length(), 16u + 9u * 36u);
  EXPECT_EQ(cfg.min_distance(), 48u);
  cfg.eps = 0;
  EXPECT_EQ(cfg.min_distance(), 1u);
}

TEST(Blocked, NoiselessIdentityIsExact) {
  BlockedRandomConfig cfg;
  cfg.eps = 0;
  auto code = choose_chunk_code(cfg);
  auto d = desk(2048, 100, 400, 6);
  IdentityAdapter id;
  auto r = blocked_random_simulate(*d.proto, d.inputs, cfg, code, &id, 1);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.unit_failures, 0u);
}

TEST(Blocked, StrictModeNeedsInnerCoder) {
  BlockedRandomConfig cfg;
  cfg.eps = 0;
  cfg.strict = true;
  auto code = choose_chunk_code(cfg);
  auto d = desk(256, 64, 128, 7);
  EXPECT_EQ(make_inner_adapter("interactive"), nullptr);
  try {
    blocked_random_simulate(*d.proto, d.inputs, cfg, code, nullptr, 1);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("out-of-scope dependency"), std::string::npos);
  }
  EXPECT_THROW(make_inner_adapter("bogus"), std::invalid_argument);
}

TEST(Blocked, SmallChunkDecodeIsNearest) {
  BlockedRandomConfig cfg;
  cfg.eps = 0.25;
  cfg.b = 6;
  cfg.c = 1;
  cfg.delta = 0.5;
  auto code = choose_chunk_code(cfg);
  ASSERT_LE(code.k(), 10u);
  auto rows = rows_of(code);
  EXPECT_GE(oracle::min_weight(rows), cfg.min_distance());
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    BitVec y = rng.bits(code.n());
    auto got = code.nearest_codeword_decode(y);
    EXPECT_EQ(to_bits(got), oracle::nearest(rows, to_bits(y)));
  }
}

TEST(Blocked, MajorityAdapterVotes) {
  MajorityRepeatAdapter maj(3);
  BitVec sym = BitVec::from_string("1010");
  int call = 0;
  auto out = maj.transmit(sym, [&](const BitVec& x) {
    ++call;
    return call == 1 ? BitVec::from_string("0000") : x;
  });
  EXPECT_EQ(out, sym);
  EXPECT_EQ(call, 3);
  auto adapter = make_inner_adapter("majority-repeat");
  ASSERT_NE(adapter, nullptr);
  EXPECT_EQ(adapter->uses_per_symbol(), 3u);
}
