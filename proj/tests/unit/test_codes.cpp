#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "../oracles.hpp"
#include "icx/codes/bch.hpp"
#include "icx/codes/code_file.hpp"
#include "icx/codes/entropy.hpp"
#include "icx/codes/exchange_code.hpp"
#include "icx/codes/gf2m.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/codes/rateless.hpp"
#include "icx/codes/reed_solomon.hpp"
#include "icx/rng.hpp"
#include "icx/stats.hpp"

using namespace icx;
using namespace icx::codes;

namespace {

oracle::Bits to_bits(const BitVec& v) {
  oracle::Bits b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i];
  return b;
}

BitVec from_bits(const oracle::Bits& b) {
  BitVec v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v.set(i, b[i] != 0);
  return v;
}

std::vector<oracle::Bits> rows_of(const std::vector<BitVec>& rows) {
  std::vector<oracle::Bits> out;
  for (const auto& r : rows) out.push_back(to_bits(r));
  return out;
}

}  // namespace

TEST(GvSearch, RepetitionCode) {
  CodeSearchParams p;
  auto c = gv_search(1, 3, 3, p);
  EXPECT_EQ(c.rows()[0].to_string(), "111");
  EXPECT_EQ(c.exact_min_weight(), 3u);
}

TEST(GvSearch, ShortCodeParameters) {
  CodeSearchParams p;
  p.rng_seed = 5;
  auto c = gv_search(4, 10, 4, p);
  EXPECT_GE(oracle::min_weight(rows_of(c.rows())), 4u);
  EXPECT_EQ(c.exact_min_weight(), oracle::min_weight(rows_of(c.rows())));
}

TEST(GvSearch, AttemptSuccessRateRespectsUnionBound) {
  // Pr[min weight < 4] <= 2^k * V(24, 3) / 2^24 for a random [24, 12] code.
  const double v = 1 + 24 + 276 + 2024;
  const double fail_bound = std::pow(2.0, 12) * v / std::pow(2.0, 24);
  std::size_t ok = 0, trials = 120;
  for (std::uint64_t seed = 1; seed <= trials; ++seed) ok += BinaryLinearCode::random(12, 24, seed).exact_min_weight() >= 4;
  double rate = static_cast<double>(ok) / static_cast<double>(trials);
  EXPECT_GE(rate, (1 - fail_bound) - 3 * stats::binomial_sigma(1 - fail_bound, trials));
}

TEST(GvSearch, ExhaustedSearchThrows) {
  CodeSearchParams p;
  p.max_attempts = 20;
  try {
    gv_search(8, 10, 6, p);
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("search exhausted"), std::string::npos);
  }
}

TEST(LinearCode, NearestCodewordMatchesOracle) {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::size_t k = 2 + seed % 7, n = k + 3 + seed % 9;
    auto c = BinaryLinearCode::random(k, n, seed);
    auto rows = rows_of(c.rows());
    for (int t = 0; t < 30; ++t) {
      BitVec r = rng.bits(n);
      EXPECT_EQ(to_bits(c.nearest_codeword_decode(r)), oracle::nearest(rows, to_bits(r)));
    }
  }
}

TEST(LinearCode, WideCodeMatchesOracle) {
  Rng rng(9);
  auto c = BinaryLinearCode::random(6, 90, 4);
  auto rows = rows_of(c.rows());
  for (int t = 0; t < 30; ++t) {
    BitVec r = rng.bits(90);
    EXPECT_EQ(to_bits(c.nearest_codeword_decode(r)), oracle::nearest(rows, to_bits(r)));
  }
  EXPECT_EQ(c.exact_min_weight(), oracle::min_weight(rows));
}

TEST(LinearCode, CorrectsBelowHalfDistance) {
  CodeSearchParams p;
  auto c = gv_search(8, 24, 7, p);
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    BitVec m = rng.bits(8);
    BitVec y = c.encode(m);
    for (int e = 0; e < 3; ++e) y.flip(rng.below(24));
    EXPECT_EQ(c.nearest_codeword_decode(y), m);
  }
}

TEST(Bch, DefaultHashCodeParameters) {
  auto c = BchCode::choose(63, 0.25);
  EXPECT_EQ(c.n(), 426u);
  EXPECT_EQ(c.k(), 63u);
  EXPECT_GE(static_cast<double>(c.min_distance()), 0.25 * 426);
}

TEST(Bch, CorrectsUpToT) {
  BchCode c(6, 3, 20);
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    BitVec m = rng.bits(20);
    BitVec y = c.encode(m);
    std::size_t errs = rng.below(4);
    std::vector<std::size_t> pos;
    while (pos.size() < errs) {
      std::size_t p = rng.below(c.n());
      if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    for (auto p : pos) y.flip(p);
    auto d = c.decode(y);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, m);
  }
}

TEST(ReedSolomon, ErrorsAndErasures) {
  GF2m f(8);
  ReedSolomon rs(f, 40, 20);
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint16_t> msg(20);
    for (auto& s : msg) s = static_cast<std::uint16_t>(rng.below(256));
    auto cw = rs.encode(msg);
    auto r = cw;
    std::size_t errors = rng.below(6), erasures = rng.below(9);
    std::vector<std::size_t> er;
    for (std::size_t i = 0; i < erasures; ++i) {
      er.push_back(i * 4);
      r[i * 4] = 0;
    }
    for (std::size_t i = 0; i < errors; ++i) r[1 + i * 4] ^= static_cast<std::uint16_t>(1 + rng.below(255));
    auto d = rs.decode(r, er);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(rs.message_of(*d), msg);
  }
}

TEST(Entropy, MatchesOracleAndFrozenValues) {
  for (double x : {0.0, 0.001, 0.01, 0.1, 0.3, 0.5, 0.9}) EXPECT_NEAR(binary_entropy(x), oracle::entropy(x), 1e-12);
  EXPECT_NEAR(binary_entropy(0.01), oracle::frozen::kH001, 1e-12);
  EXPECT_NEAR(inverse_binary_entropy(0.5), oracle::frozen::kHinvHalf, 1e-9);
  for (double y : {0.05, 0.2, 0.7}) EXPECT_NEAR(inverse_binary_entropy(y), oracle::inverse_entropy(y), 1e-9);
  EXPECT_NEAR(window_delta(2, 3), oracle::frozen::kDelta_s2_j3, 1e-9);
  EXPECT_NEAR(window_delta(2, 4), oracle::frozen::kDelta_s2_j4, 1e-9);
  EXPECT_EQ(window_delta(2, 2), 0.0);
  for (std::size_t j = 3; j <= 4; ++j) EXPECT_EQ(window_distance_target(2, 4, j), oracle::frozen::kTarget24[j - 3]);
  for (std::size_t j = 5; j <= 8; ++j) EXPECT_EQ(window_distance_target(4, 4, j), oracle::frozen::kTarget44[j - 5]);
}

TEST(Rateless, SearchedCodeWindowsMatchOracle) {
  RatelessSearchParams p;
  p.search.rng_seed = 7;
  auto c = rateless_search(2, 4, p);
  EXPECT_EQ(c.encode(BitVec(8)), BitVec(16));
  auto rows = rows_of(c.rows());
  for (const auto& [key, d] : c.window_distances()) {
    auto [a, j] = key;
    std::size_t actual = oracle::min_weight(oracle::window_rows(rows, a * 4, j * 4));
    EXPECT_EQ(d, actual) << "window " << a << "," << j;
    EXPECT_GE(actual, window_distance_target(2, 4, j));
  }
  EXPECT_TRUE(c.meets_targets());
}

TEST(Rateless, EncodeIsMatrixProduct) {
  RatelessSearchParams p;
  auto c = rateless_search(2, 4, p);
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    BitVec x = rng.bits(8);
    EXPECT_EQ(to_bits(c.encode(x)), oracle::encode(rows_of(c.rows()), to_bits(x)));
    BitVec joined;
    for (const auto& ch : c.encode_chunks(x)) joined.append(ch);
    EXPECT_EQ(joined, c.encode(x));
  }
}

TEST(Rateless, WindowDecodeExactAndOracle) {
  RatelessSearchParams p;
  p.search.rng_seed = 3;
  auto c = rateless_search(2, 4, p);
  auto rows = rows_of(c.rows());
  Rng rng(5);
  BitVec x = rng.bits(8);
  BitVec cw = c.encode(x);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t j = 3; j <= 4; ++j) {
      auto d = c.window_decode(a, j, c.window(cw, a, j));
      ASSERT_TRUE(d.has_value());
      EXPECT_EQ(*d, x);
      for (int t = 0; t < 10; ++t) {
        BitVec r = rng.bits(j * 4);
        auto got = c.window_decode(a, j, r);
        ASSERT_TRUE(got.has_value());
        EXPECT_EQ(to_bits(*got), oracle::nearest(oracle::window_rows(rows, a * 4, j * 4), to_bits(r)));
      }
    }
  }
}

TEST(Rateless, ReedSolomonWindowsDecode) {
  RsRatelessCode c(16, 16);
  Rng rng(6);
  BitVec x = rng.bits(256);
  BitVec cw = c.encode(x);
  for (std::size_t a : {0u, 5u, 31u}) {
    for (std::size_t j : {17u, 20u, 32u}) {
      BitVec w = c.window(cw, a, j);
      w.flip(3);
      auto d = c.window_decode(a, j, w);
      ASSERT_TRUE(d.has_value());
      EXPECT_EQ(*d, x);
    }
  }
}

TEST(ExchangeCode, MinimumFeasibleLengthFor256Bits) {
  EXPECT_EQ(ExchangeCode::min_feasible_length(256), 19840u);
  ExchangeCode c(256, 19840);
  EXPECT_GE(c.relative_distance(), 0.4);
}

TEST(ExchangeCode, RecoversBelowOneFifth) {
  ExchangeCode c(256, 19840);
  Rng rng(12);
  BitVec m = rng.bits(256);
  BitVec y = c.encode(m);
  EXPECT_EQ(c.decode(y), m);
  std::size_t budget = c.n() / 5 - 1;
  BitVec front = y;
  for (std::size_t i = 0; i < budget; ++i) front.flip(i);
  EXPECT_EQ(c.decode(front), m);
  BitVec spread = y;
  for (std::size_t i = 0; i < budget; ++i) spread.flip((i * 7919) % c.n());
  EXPECT_EQ(c.decode(spread), m);
}

TEST(ReedMuller, SoftDecodeMatchesBruteForce) {
  ReedMuller1 rm(4);
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<long> soft(16);
    for (auto& v : soft) v = static_cast<long>(rng.below(9)) - 4;
    auto [msg, corr] = rm.decode_soft(soft);
    long best = -1;
    for (std::uint32_t m = 0; m < 32; ++m) {
      long c = 0;
      for (std::size_t z = 0; z < 16; ++z) c += rm.encode_bit(m, z) ? -soft[z] : soft[z];
      best = std::max(best, c);
    }
    long got = 0;
    for (std::size_t z = 0; z < 16; ++z) got += rm.encode_bit(msg, z) ? -soft[z] : soft[z];
    EXPECT_EQ(got, best);
    (void)corr;
  }
}

TEST(CodeFile, RoundTripAndVerify) {
  RatelessSearchParams p;
  auto c = rateless_search(2, 4, p);
  auto f = code_file_of(c);
  f.meta = R"({"note":"x"})";
  std::stringstream ss;
  write_code_file(ss, f);
  auto g = read_code_file(ss);
  EXPECT_EQ(g.rows, f.rows);
  EXPECT_EQ(g.verified_distances, f.verified_distances);
  EXPECT_EQ(g.meta, f.meta);
  EXPECT_TRUE(verify_code_file(g).ok);
  g.verified_distances["0,3"] += 1;
  EXPECT_FALSE(verify_code_file(g).ok);
}

TEST(CodeFile, SameSeedSameFile) {
  auto write = [](std::uint64_t seed) {
    CodeSearchParams p;
    p.rng_seed = seed;
    std::stringstream ss;
    write_code_file(ss, code_file_of(gv_search(6, 14, 5, p)));
    return ss.str();
  };
  EXPECT_EQ(write(4), write(4));
}
