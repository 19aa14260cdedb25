#include "swcode/permutation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace swc {

Permutation::Permutation(std::vector<std::uint32_t> forward) : forward_(std::move(forward)) {
  std::vector<bool> seen(forward_.size(), false);
  for (std::uint32_t v : forward_) {
    if (v >= forward_.size() || seen[v]) throw UsageError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0U);
  return Permutation(std::move(v));
}

Permutation invert(const Permutation& pi) {
  std::vector<std::uint32_t> inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[pi(i)] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw UsageError("composing permutations of different sizes");
  std::vector<std::uint32_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint32_t>(b(a(i)));
  return Permutation(std::move(out));
}

BitString apply_permutation(const BitString& x, const Permutation& pi) {
  if (x.size() != pi.size()) throw UsageError("permutation size does not match string length");
  BitString out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.get(pi(j))) out.set(j, true);
  }
  return out;
}

IndexSet preimage(const IndexSet& indices, const Permutation& pi) {
  if (indices.universe() != pi.size()) throw UsageError("index universe does not match permutation size");
  const Permutation inv = invert(pi);
  std::vector<std::size_t> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(inv(i));
  return IndexSet(std::move(out), pi.size());
}

Permutation permutation_uniform(const Seed& seed, std::size_t n) {
  if (n == 0) throw UsageError("permutation size must be positive");
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0U);
  PrgStream rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(i + 1));
    std::swap(v[i], v[j]);
  }
  return Permutation(std::move(v));
}

Permutation permutation_affine(FieldElement a, FieldElement b, unsigned e) {
  if (e == 0) {
    if (a == 0 || b != 0) throw UsageError("affine map on one point needs a != 0, b = 0");
    return Permutation::identity(1);
  }
  const GaloisField& f = field(e);
  if (a == 0 || !f.contains(a) || !f.contains(b)) throw UsageError("affine map needs a != 0 and a, b in the field");
  std::vector<std::uint32_t> v(f.size());
  for (FieldElement x = 0; x < f.size(); ++x) v[x] = f.mul(a, x) ^ b;
  return Permutation(std::move(v));
}

namespace {

unsigned width_for(std::size_t n) {
  if (n == 0) throw UsageError("permutation size must be positive");
  const auto e = static_cast<unsigned>(std::bit_width(n - 1));
  if (e > kMaxFieldWidth) throw UsageError("affine permutations support n <= 65536");
  return e;
}

}  // namespace

Permutation permutation_affine(const Seed& seed, std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw UsageError("affine permutation needs a power-of-two size");
  return permutation_affine_walk(seed, n);
}

Permutation permutation_affine_walk(const Seed& seed, std::size_t n) {
  const unsigned e = width_for(n);
  if (e == 0) return Permutation::identity(1);
  PrgStream rng(seed);
  const std::uint64_t q = std::uint64_t{1} << e;
  const auto a = static_cast<FieldElement>(1 + rng.uniform(q - 1));
  const auto b = static_cast<FieldElement>(rng.uniform(q));
  const Permutation full = permutation_affine(a, b, e);
  if (full.size() == n) return full;
  std::vector<std::uint32_t> v(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = full(x);
    while (y >= n) y = full(y);
    v[x] = static_cast<std::uint32_t>(y);
  }
  return Permutation(std::move(v));
}

}  // namespace swc
