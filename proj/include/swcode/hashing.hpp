#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swcode/bits.hpp"
#include "swcode/galois_field.hpp"
#include "swcode/prg.hpp"

namespace swc {

/// Toeplitz hash x -> T x + offset over GF(2), T of shape tau x n_in with
/// T[i][j] = diagonals[i - j + n_in - 1].
struct ToeplitzHashSeed {
  BitString diagonals;  // n_in + tau - 1 bits
  BitString offset;     // tau bits

  ToeplitzHashSeed() = default;
  ToeplitzHashSeed(BitString diagonals, BitString offset);

  std::size_t tau() const { return offset.size(); }
  std::size_t n_in() const { return diagonals.size() + 1 - offset.size(); }
  bool entry(std::size_t row, std::size_t col) const { return diagonals.get(row + n_in() - 1 - col); }

  /// Total seed length n_in + 2 tau - 1.
  static std::size_t seed_bits(std::size_t n_in, std::size_t tau) { return n_in + 2 * tau - 1; }
  /// Splits a packed seed: diagonals first, then offset.
  static ToeplitzHashSeed from_bits(const BitString& bits, std::size_t n_in, std::size_t tau);
  BitString to_bits() const;

  /// Diagonals then offset drawn from `rng`. When tau == n_in the draw is
  /// repeated until T is invertible, so the hash is a bijection on blocks.
  static ToeplitzHashSeed expand(PrgStream& rng, std::size_t n_in, std::size_t tau);
};

/// tau-bit digest of `x`. Throws on dimension mismatch.
BitString hash_eval(const ToeplitzHashSeed& seed, const BitString& x, std::size_t tau);

/// Word-packed Toeplitz hash for n_in, tau <= 64. Inputs and digests are
/// MSB-first integers (input bit 0 is the most significant of n_in bits).
class PackedToeplitz {
 public:
  PackedToeplitz() = default;
  explicit PackedToeplitz(const ToeplitzHashSeed& seed);

  std::size_t n_in() const { return columns_.size(); }
  std::size_t tau() const { return tau_; }
  std::uint64_t offset() const { return offset_; }
  /// Digest contribution of input bit `col`, without the offset.
  std::uint64_t column(std::size_t col) const { return columns_[col]; }
  std::uint64_t linear(std::uint64_t x) const;
  std::uint64_t eval(std::uint64_t x) const { return linear(x) ^ offset_; }
  /// Rank over GF(2) of the matrix.
  std::size_t rank() const;

 private:
  std::vector<std::uint64_t> columns_;
  std::uint64_t offset_ = 0;
  std::size_t tau_ = 0;
};

/// Field width of the polynomial used for t-wise independent hash indices.
inline constexpr unsigned kHashIndexWidth = 16;

/// Raw hash indices: a degree t-1 polynomial over GF(2^w) with coefficients
/// drawn from `seed`, evaluated at the field elements 0..m-1.
std::vector<FieldElement> draw_hash_indices(const Seed& seed, std::size_t m, std::size_t t, unsigned w);

/// Expands one raw index into a hash seed through a PRG keyed by the index
/// value (big-endian in the leading key bytes) under role `family`.
ToeplitzHashSeed hash_seed_from_index(FieldElement index, Role family, std::size_t n_in, std::size_t tau);

/// t-wise independent per-block hash seeds.
std::vector<ToeplitzHashSeed> twise_hash_seeds(const Seed& seed, Role family, std::size_t m, std::size_t t,
                                               std::size_t n_in, std::size_t tau);

/// Fully independent per-block hash seeds drawn from one stream.
std::vector<ToeplitzHashSeed> independent_hash_seeds(const Seed& seed, std::size_t m, std::size_t n_in,
                                                     std::size_t tau);

}  // namespace swc
