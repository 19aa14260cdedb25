#include <gtest/gtest.h>

#include "swcode/bits.hpp"
#include "swcode/permutation.hpp"
#include "swcode/prg.hpp"

namespace swc {
namespace {

BitString B(const char* s) { return BitString::from_string(s); }

TEST(Weight, Examples) {
  EXPECT_EQ(weight(B("0000")), 0u);
  EXPECT_EQ(weight(B("1111")), 4u);
  EXPECT_EQ(weight(B("10110")), 3u);
}

TEST(Xor, Examples) {
  EXPECT_EQ(bit_xor(B("1010"), B("1010")), B("0000"));
  EXPECT_EQ(bit_xor(B("1010"), B("0000")), B("1010"));
  EXPECT_EQ(bit_xor(B("1100"), B("1010")), B("0110"));
  EXPECT_THROW(bit_xor(B("110"), B("1010")), UsageError);
}

TEST(HammingDistance, Examples) {
  const BitString x = B("1011001110");
  EXPECT_EQ(hamming_distance(x, x), 0u);
  EXPECT_EQ(hamming_distance(B("0000"), B("1111")), 4u);
  EXPECT_EQ(hamming_distance(B("10011"), B("10110")), 2u);
  EXPECT_THROW(hamming_distance(B("1"), B("11")), UsageError);
}

TEST(Extract, Examples) {
  const BitString x = B("10110");
  EXPECT_EQ(extract(x, IndexSet::range(0, 5, 5)), x);
  EXPECT_EQ(extract(x, IndexSet({}, 5)).size(), 0u);
  EXPECT_EQ(extract(x, IndexSet({1, 4}, 5)), B("00"));
  EXPECT_THROW(IndexSet({5}, 5), UsageError);
  EXPECT_THROW(IndexSet({1, 1}, 5), UsageError);
}

TEST(SplitBlocks, Examples) {
  const auto blocks = split_blocks(B("10110100"), 4);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0], B("1011"));
  EXPECT_EQ(blocks[1], B("0100"));
  EXPECT_EQ(split_blocks(B("10110100"), 8).front(), B("10110100"));
  EXPECT_THROW(split_blocks(B("10110100"), 3), UsageError);
}

TEST(ApplyPermutation, Examples) {
  const BitString x = B("101");
  EXPECT_EQ(apply_permutation(x, Permutation::identity(3)), x);
  // Output (x2, x3, x1) in one-based terms.
  const Permutation pi({1, 2, 0});
  EXPECT_EQ(apply_permutation(x, pi), B("011"));
  EXPECT_EQ(apply_permutation(apply_permutation(x, pi), invert(pi)), x);
  EXPECT_THROW(apply_permutation(B("10"), pi), UsageError);
}

TEST(BitString, GetSetBitsAcrossWords) {
  BitString x(200);
  x.set_bits(60, 12, 0xABC);
  EXPECT_EQ(x.get_bits(60, 12), 0xABCu);
  x.set_bits(120, 64, 0x0123456789ABCDEFULL);
  EXPECT_EQ(x.get_bits(120, 64), 0x0123456789ABCDEFULL);
  EXPECT_EQ(x.get_bits(0, 60), 0u);
  EXPECT_THROW(x.get_bits(190, 11), UsageError);
}

TEST(BitString, HexAndBinaryRoundTrip) {
  const BitString x = B("10110");
  EXPECT_EQ(x.to_hex(), "5:b0");
  EXPECT_EQ(BitString::from_hex("5:b0"), x);
  EXPECT_THROW(BitString::from_hex("5:b1"), UsageError);  // padding bit set
  EXPECT_THROW(BitString::from_hex("5:b"), UsageError);
  const auto bin = x.to_binary();
  ASSERT_EQ(bin.size(), 9u);
  EXPECT_EQ(bin[7], 5);
  EXPECT_EQ(bin[8], 0xB0);
  EXPECT_EQ(BitString::from_binary(bin), x);
  EXPECT_EQ(BitString::from_hex(BitString(0).to_hex()), BitString(0));
}

TEST(SampleCorrelatedPair, ZeroAlphaGivesEqualStrings) {
  PrgStream rng(derive_seed(5, 0, Role::Workload));
  const auto p = sample_correlated_pair(100, 0.0, rng);
  EXPECT_EQ(p.x, p.y);
  EXPECT_EQ(p.flips, 0u);
}

TEST(SampleCorrelatedPair, DistanceBoundAndExactFlips) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    PrgStream rng(derive_seed(11, i, Role::Workload));
    const auto p = sample_correlated_pair(8, 0.5, rng);
    EXPECT_LE(hamming_distance(p.x, p.y), 4u);
    EXPECT_EQ(hamming_distance(p.x, p.y), p.flips);
  }
}

TEST(SampleCorrelatedPair, Replay) {
  PrgStream a(derive_seed(3, 7, Role::Workload));
  PrgStream b(derive_seed(3, 7, Role::Workload));
  const auto pa = sample_correlated_pair(1000, 0.1, a);
  const auto pb = sample_correlated_pair(1000, 0.1, b);
  EXPECT_EQ(pa.x, pb.x);
  EXPECT_EQ(pa.y, pb.y);
}

// Properties over random strings.
TEST(BitsProperties, DistanceIsWeightOfXorAndPermutationKeepsWeight) {
  PrgStream rng(derive_seed(99, 0, Role::Workload));
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform(300);
    BitString x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, rng.next_bit());
      y.set(i, rng.next_bit());
    }
    EXPECT_EQ(hamming_distance(x, y), weight(bit_xor(x, y)));
    const Permutation pi = permutation_uniform(derive_seed(99, static_cast<std::uint64_t>(trial), Role::PermA), n);
    EXPECT_EQ(weight(apply_permutation(x, pi)), weight(x));
    for (std::size_t k = 1; k <= n; ++k) {
      if (n % k == 0 && k % 7 == 1) EXPECT_EQ(concat(split_blocks(x, k)), x);
    }
  }
}

}  // namespace
}  // namespace swc
