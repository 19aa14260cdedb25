#include <gtest/gtest.h>

#include <bit>

#include "swcode/linear_scheme.hpp"
#include "swcode/prg.hpp"

namespace swc {
namespace {

// Dense matrix-vector product over GF(2), independent of the packed columns.
BitString oracle_syndrome(const LinearCode& code, const BitString& z) {
  BitString out(code.checks());
  for (std::size_t r = 0; r < code.checks(); ++r) {
    bool acc = false;
    for (std::size_t c = 0; c < code.n(); ++c) acc ^= code.entry(r, c) && z.get(c);
    out.set(r, acc);
  }
  return out;
}

// Minimum weight over nonzero kernel vectors, by scanning all 2^n strings.
std::size_t oracle_min_distance(const LinearCode& code) {
  std::size_t best = code.n() + 1;
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << code.n()); ++v) {
    const auto z = BitString::from_uint(v, code.n());
    if (weight(oracle_syndrome(code, z)) == 0) best = std::min<std::size_t>(best, std::popcount(v));
  }
  return best;
}

BitString unit(std::size_t n, std::size_t i) {
  BitString e(n);
  e.set(i, true);
  return e;
}

TEST(Hamming, SyndromeExamples) {
  const auto code = hamming_code(3);
  EXPECT_EQ(code.n(), 7u);
  EXPECT_EQ(code.checks(), 3u);
  EXPECT_EQ(code.radius(), 1u);
  EXPECT_EQ(code.syndrome(BitString(7)), BitString(3));
  EXPECT_EQ(code.syndrome(BitString::from_string("1010101")), BitString::from_string("000"));
  EXPECT_EQ(code.syndrome(unit(7, 6)), BitString::from_string("111"));
  EXPECT_THROW(code.syndrome(BitString(6)), UsageError);
}

TEST(Hamming, SyndromeDecode) {
  const auto code = hamming_code(3);
  EXPECT_EQ(code.syndrome_decode(BitString(3)), BitString(7));
  EXPECT_EQ(code.syndrome_decode(BitString::from_string("111")), unit(7, 6));
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(code.syndrome_decode(code.syndrome(unit(7, i))), unit(7, i));
}

TEST(Syndrome, MatchesOracleAndIsLinear) {
  for (const auto& code : {hamming_code(3), hamming_code(4), bch_code(15, 2)}) {
    PrgStream rng(derive_seed(7, code.n(), Role::Workload));
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = BitString::from_uint(rng.next_bits(static_cast<unsigned>(code.n())), code.n());
      const auto y = BitString::from_uint(rng.next_bits(static_cast<unsigned>(code.n())), code.n());
      EXPECT_EQ(code.syndrome(x), oracle_syndrome(code, x));
      EXPECT_EQ(code.syndrome(x ^ y), code.syndrome(x) ^ code.syndrome(y));
    }
  }
  const auto h = hamming_code(3);
  for (std::uint64_t a = 0; a < 128; ++a) {
    for (std::uint64_t b = 0; b < 128; ++b) {
      const auto x = BitString::from_uint(a, 7);
      const auto y = BitString::from_uint(b, 7);
      ASSERT_EQ(h.syndrome(x ^ y), h.syndrome(x) ^ h.syndrome(y));
    }
  }
}

TEST(DetScheme, SplitLengths) {
  const auto code = hamming_code(3);
  const BitString x = BitString::from_string("1011001");
  for (double lambda : {0.0, 0.5, 1.0}) {
    const std::size_t split = det_split(code, lambda);
    const auto a = det_encode_alice(x, code, split);
    const auto b = det_encode_bob(x, code, split);
    EXPECT_EQ(a.size() + b.size(), code.n() + code.checks());
    if (lambda == 0.0) EXPECT_EQ(a.size(), 3u);
    if (lambda == 1.0) EXPECT_EQ(b.size(), 3u);
    if (lambda == 0.5) {
      EXPECT_EQ(split, 2u);
      EXPECT_EQ(a.size(), 5u);
      EXPECT_EQ(b.size(), 5u);
    }
  }
  EXPECT_THROW(det_encode_alice(x, code, 5), UsageError);
}

TEST(DetScheme, HandRunExample) {
  const auto code = hamming_code(3);
  const BitString x(7);
  const BitString y = unit(7, 6);
  const std::size_t split = det_split(code, 0.5);
  const auto out = det_decode(det_encode_alice(x, code, split), det_encode_bob(y, code, split), code, split);
  ASSERT_TRUE(out);
  EXPECT_EQ(out->first, x);
  EXPECT_EQ(out->second, y);
}

TEST(DetScheme, HammingExhaustive) {
  const auto code = hamming_code(3);
  for (double lambda : {0.0, 0.5, 1.0}) {
    const std::size_t split = det_split(code, lambda);
    std::size_t ok = 0;
    for (std::uint64_t v = 0; v < 128; ++v) {
      const auto x = BitString::from_uint(v, 7);
      for (std::size_t flip = 0; flip <= 7; ++flip) {
        BitString y = x;
        if (flip < 7) y.flip(flip);
        const auto out = det_decode(det_encode_alice(x, code, split), det_encode_bob(y, code, split), code, split);
        if (out && out->first == x && out->second == y) ++ok;
      }
    }
    EXPECT_EQ(ok, 1024u) << "lambda " << lambda;
  }
}

TEST(DetScheme, BchRoundTripSampled) {
  const auto code = bch_code(15, 2);
  EXPECT_EQ(code.checks(), 8u);
  EXPECT_EQ(code.radius(), 2u);
  EXPECT_GE(oracle_min_distance(code), 5u);
  PrgStream rng(derive_seed(3, 0, Role::Workload));
  for (double lambda : {0.0, 0.3, 1.0}) {
    const std::size_t split = det_split(code, lambda);
    for (int trial = 0; trial < 2000; ++trial) {
      const auto x = BitString::from_uint(rng.next_bits(15), 15);
      BitString y = x;
      const auto flips = rng.uniform(3);
      for (std::uint64_t f = 0; f < flips; ++f) y.flip(static_cast<std::size_t>(rng.uniform(15)));
      const auto out = det_decode(det_encode_alice(x, code, split), det_encode_bob(y, code, split), code, split);
      ASSERT_TRUE(out);
      ASSERT_EQ(out->first, x);
      ASSERT_EQ(out->second, y);
    }
  }
}

TEST(DetScheme, BchAllErrorPatterns) {
  // Every pattern of weight <= 2 on a fixed X.
  const auto code = bch_code(15, 2);
  const std::size_t split = det_split(code, 0.5);
  const auto x = BitString::from_uint(0x5a3c, 15);
  std::size_t ok = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i <= 15; ++i) {
    for (std::size_t j = i; j <= 15; ++j) {
      BitString y = x;
      if (i < 15) y.flip(i);
      if (j < 15 && j != i) y.flip(j);
      const auto out = det_decode(det_encode_alice(x, code, split), det_encode_bob(y, code, split), code, split);
      ++total;
      if (out && out->first == x && out->second == y) ++ok;
    }
  }
  EXPECT_EQ(ok, total);
}

TEST(DetScheme, OutsideRadiusIsNotCertified) {
  const auto code = hamming_code(3);
  // Weight-2 difference maps to a weight-1 pattern; decode returns some pair, not the truth.
  const BitString x(7);
  BitString y = x;
  y.flip(0);
  y.flip(1);
  const std::size_t split = det_split(code, 0.5);
  const auto out = det_decode(det_encode_alice(x, code, split), det_encode_bob(y, code, split), code, split);
  EXPECT_FALSE(out && out->second == y);
}

TEST(BuildCode, RandomGvIsCertifiedExhaustively) {
  const auto code = random_gv_code(12, 10, 2, 7);
  EXPECT_EQ(code.n(), 12u);
  EXPECT_EQ(code.checks(), 10u);
  EXPECT_GE(oracle_min_distance(code), 5u);
  EXPECT_EQ(code.minimum_distance(), oracle_min_distance(code));
  EXPECT_EQ(build_code("random_gv(12,10,2,7)").serialize(), code.serialize());
}

TEST(BuildCode, Descriptions) {
  EXPECT_EQ(build_code("hamming(3)").n(), 7u);
  EXPECT_EQ(build_code("bch(15,2)").checks(), 8u);
  EXPECT_EQ(hamming_code(4).minimum_distance(), 3u);
  EXPECT_THROW(build_code("golay(23)"), UsageError);
  EXPECT_THROW(build_code("bch(16,2)"), UsageError);
  EXPECT_THROW(random_gv_code(8, 3, 2, 1, 50), UsageError);  // impossible radius
}

TEST(BuildCode, LastMinorInvertible) {
  for (const auto& code : {hamming_code(3), bch_code(15, 2), random_gv_code(12, 10, 2, 7)}) {
    // Unit vectors on the dependent columns must have linearly independent syndromes.
    const std::size_t c = code.checks();
    std::vector<std::uint64_t> pivot(64, 0);  // indexed by leading bit
    for (std::size_t j = code.n() - c; j < code.n(); ++j) {
      const auto syn = code.syndrome(unit(code.n(), code.order()(j)));
      std::uint64_t v = syn.get_bits(0, static_cast<unsigned>(c));
      while (v != 0 && pivot[std::bit_width(v) - 1] != 0) v ^= pivot[std::bit_width(v) - 1];
      ASSERT_NE(v, 0u) << code.name();
      pivot[std::bit_width(v) - 1] = v;
    }
  }
}

TEST(Serialization, RoundTrip) {
  for (const auto& code : {hamming_code(3), bch_code(15, 2), random_gv_code(12, 10, 2, 3)}) {
    const auto back = LinearCode::parse(code.serialize());
    EXPECT_EQ(back.serialize(), code.serialize());
    EXPECT_EQ(back.rows(), code.rows());
    EXPECT_EQ(back.order(), code.order());
    EXPECT_EQ(back.radius(), code.radius());
  }
  EXPECT_THROW(LinearCode::parse("garbage"), UsageError);
}

}  // namespace
}  // namespace swc
