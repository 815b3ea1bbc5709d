#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/control/control.hpp"
#include "icx/rng.hpp"
#include "icx/stats.hpp"

using namespace icx;
using namespace icx::control;

namespace {

std::shared_ptr<const codes::BlockCode> small_hash_code() {
  codes::CodeSearchParams p;
  p.rng_seed = 2;
  return std::make_shared<codes::BinaryLinearCode>(codes::gv_search(8, 16, 4, p));
}

oracle::Bits to_bits(const BitVec& v) {
  oracle::Bits b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i];
  return b;
}

}  // namespace

TEST(Corrupt, PassAndFlip) {
  BitVec x = BitVec::from_string("1011");
  EXPECT_EQ(corrupt_apply(x, ErrorPattern::parse("****")), x);
  EXPECT_EQ(corrupt_apply(x, ErrorPattern::parse("!!!!")).to_string(), "0100");
}

TEST(Corrupt, MixedPattern) {
  EXPECT_EQ(corrupt_apply(BitVec::from_string("1010"), ErrorPattern::parse("0*!*")).to_string(), "0000");
}

TEST(Corrupt, MatchesOracle) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng.below(50);
    BitVec x = rng.bits(n);
    ErrorPattern v(n);
    std::vector<int> ov(n);
    for (std::size_t i = 0; i < n; ++i) {
      ov[i] = static_cast<int>(rng.below(4));
      v.symbols[i] = static_cast<ErrSym>(ov[i]);
    }
    EXPECT_EQ(to_bits(corrupt_apply(x, v)), oracle::corrupt(to_bits(x), ov));
  }
}

TEST(Corrupt, WeightAndParseErrors) {
  EXPECT_EQ(ErrorPattern::parse("*!01~").weight(), 4u);
  EXPECT_THROW(ErrorPattern::parse("*x"), std::invalid_argument);
  EXPECT_EQ(ErrorPattern::parse("*!01").to_string().size(), 4u);
}

TEST(ControlInfo, SerializeRoundTrip) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    ControlInfo c;
    c.h_c = rng.below(256);
    c.h_x = rng.below(256);
    c.h_k = rng.below(256);
    c.h_T = rng.below(256);
    c.h_MP1 = rng.below(256);
    c.h_MP2 = rng.below(256);
    c.j = static_cast<std::uint32_t>(rng.below(33));
    c.sync = rng.bit();
    BitVec bits = serialize(c, 8, 16);
    EXPECT_EQ(bits.size(), control_width(8, 16));
    EXPECT_EQ(deserialize(bits, 8, 16), c);
  }
  EXPECT_EQ(control_width(8, 16), 6u * 8 + 6 + 1);
}

TEST(ShiftHash, ZeroInput) {
  Rng rng(3);
  EXPECT_EQ(ip_shift_hash(BitVec(8), rng.bits(32), 4), 0u);
}

TEST(ShiftHash, HandComputed) {
  // X = 1100, R blocks 1010 | 0110: <X,1010> = 1, <X,0110> = 1.
  EXPECT_EQ(ip_shift_hash(BitVec::from_string("1100"), BitVec::from_string("10100110"), 2), 3u);
}

TEST(ShiftHash, AdditiveShiftRate) {
  Rng rng(4);
  const std::size_t trials = 20000;
  BitVec x = rng.bits(8), u = BitVec::from_string("01000001");
  std::uint64_t w = 5;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    BitVec r = rng.bits(32);
    hits += ip_shift_hash(x ^ u, r, 4) == (ip_shift_hash(x, r, 4) ^ w);
  }
  EXPECT_LE(static_cast<double>(hits) / trials, stats::upper_limit(1.0 / 16, trials));
}

TEST(Codec, DecodeOfEncodeIsIdentity) {
  ControlCodec codec(small_hash_code(), 4, 4);
  EXPECT_EQ(codec.o(), 16u);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    BitVec x = rng.bits(4), r = rng.bits(codec.seed_bits());
    auto d = codec.decode(codec.encode(x, r), r);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, x);
  }
}

TEST(Codec, DifferentSeedsGiveDifferentMasks) {
  ControlCodec codec(small_hash_code(), 4, 4);
  Rng rng(6);
  BitVec x = rng.bits(4), r1 = rng.bits(codec.seed_bits()), r2 = r1;
  r2.flip(0);
  EXPECT_NE(codec.encode(x, r1), codec.encode(x, r2));
  EXPECT_EQ(codec.encode(x, r1), codec.encode(x, r1));
}

TEST(Codec, CorrectsSingleSymbolErrors) {
  ControlCodec codec(small_hash_code(), 4, 4);
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    BitVec x = rng.bits(4), r = rng.bits(codec.seed_bits());
    BitVec y = codec.encode(x, r);
    for (std::size_t i = 0; i < 16; ++i) {
      for (ErrSym s : {ErrSym::Flip, ErrSym::Zero, ErrSym::One}) {
        ErrorPattern v(16);
        v.symbols[i] = s;
        auto d = codec.decode(corrupt_apply(y, v), r);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(*d, x);
      }
    }
  }
}

TEST(Codec, SeedLengthChecked) {
  ControlCodec codec(small_hash_code(), 4, 4);
  EXPECT_THROW(codec.encode(BitVec(4), BitVec(3)), std::invalid_argument);
  EXPECT_THROW(ControlCodec(small_hash_code(), 5, 4), std::invalid_argument);
}
