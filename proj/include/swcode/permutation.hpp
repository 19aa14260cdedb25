#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "swcode/bits.hpp"
#include "swcode/galois_field.hpp"
#include "swcode/prg.hpp"

namespace swc {

/// Bijection on 0..n-1.
class Permutation {
 public:
  Permutation() = default;
  /// Throws UsageError unless `forward` is a bijection on 0..size-1.
  explicit Permutation(std::vector<std::uint32_t> forward);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return forward_.size(); }
  std::size_t operator()(std::size_t i) const { return forward_[i]; }
  const std::vector<std::uint32_t>& forward() const { return forward_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> forward_;
};

Permutation invert(const Permutation& pi);
/// (a then b): i -> b(a(i))
Permutation compose(const Permutation& a, const Permutation& b);

/// Output bit j is input bit pi(j).
BitString apply_permutation(const BitString& x, const Permutation& pi);
/// {pi^-1(i) : i in indices}, sorted.
IndexSet preimage(const IndexSet& indices, const Permutation& pi);

/// Fisher-Yates shuffle driven by a PRG keyed with `seed`.
Permutation permutation_uniform(const Seed& seed, std::size_t n);

/// x -> a x + b in GF(2^e), n = 2^e, a != 0.
Permutation permutation_affine(FieldElement a, FieldElement b, unsigned e);
/// Random affine map; n must be a power of two.
Permutation permutation_affine(const Seed& seed, std::size_t n);
/// Random affine map on the smallest GF(2^e) with 2^e >= n, restricted to
/// 0..n-1 by cycle-walking. Equals permutation_affine when n is a power of two.
Permutation permutation_affine_walk(const Seed& seed, std::size_t n);

/// Source of seeded permutations; lets the protocol swap generator families.
class PermutationSource {
 public:
  virtual ~PermutationSource() = default;
  virtual Permutation draw(const Seed& seed, std::size_t n) const = 0;
  virtual std::string name() const = 0;
};

class UniformPermutationSource final : public PermutationSource {
 public:
  Permutation draw(const Seed& seed, std::size_t n) const override { return permutation_uniform(seed, n); }
  std::string name() const override { return "uniform"; }
};

class AffinePermutationSource final : public PermutationSource {
 public:
  Permutation draw(const Seed& seed, std::size_t n) const override { return permutation_affine_walk(seed, n); }
  std::string name() const override { return "affine"; }
};

}  // namespace swc
