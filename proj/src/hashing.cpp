#include "swcode/hashing.hpp"

#include <algorithm>
#include <bit>

namespace swc {

ToeplitzHashSeed::ToeplitzHashSeed(BitString diag, BitString off) : diagonals(std::move(diag)), offset(std::move(off)) {
  if (offset.empty() || diagonals.size() < offset.size()) {
    throw UsageError("Toeplitz seed needs tau >= 1 and n_in >= 1");
  }
}

ToeplitzHashSeed ToeplitzHashSeed::from_bits(const BitString& bits, std::size_t n_in, std::size_t tau) {
  if (n_in == 0 || tau == 0) throw UsageError("Toeplitz dimensions must be positive");
  if (bits.size() != seed_bits(n_in, tau)) throw UsageError("Toeplitz seed has the wrong length");
  BitString diag(n_in + tau - 1);
  BitString off(tau);
  for (std::size_t i = 0; i < diag.size(); ++i) diag.set(i, bits.get(i));
  for (std::size_t i = 0; i < tau; ++i) off.set(i, bits.get(diag.size() + i));
  return ToeplitzHashSeed(std::move(diag), std::move(off));
}

BitString ToeplitzHashSeed::to_bits() const {
  const BitString parts[] = {diagonals, offset};
  return concat(parts);
}

ToeplitzHashSeed ToeplitzHashSeed::expand(PrgStream& rng, std::size_t n_in, std::size_t tau) {
  if (n_in == 0 || tau == 0 || tau > n_in) throw UsageError("Toeplitz hash needs 1 <= tau <= n_in");
  for (;;) {
    BitString bits(seed_bits(n_in, tau));
    for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, rng.next_bit());
    ToeplitzHashSeed seed = from_bits(bits, n_in, tau);
    if (tau != n_in || n_in > 64 || PackedToeplitz(seed).rank() == n_in) return seed;
  }
}

BitString hash_eval(const ToeplitzHashSeed& seed, const BitString& x, std::size_t tau) {
  if (tau != seed.tau()) throw UsageError("digest length does not match the hash seed");
  if (x.size() != seed.n_in()) throw UsageError("input length does not match the hash seed");
  BitString out = seed.offset;
  for (std::size_t i = 0; i < tau; ++i) {
    bool acc = out.get(i);
    for (std::size_t j = 0; j < x.size(); ++j) acc ^= seed.entry(i, j) && x.get(j);
    out.set(i, acc);
  }
  return out;
}

PackedToeplitz::PackedToeplitz(const ToeplitzHashSeed& seed) : columns_(seed.n_in(), 0), tau_(seed.tau()) {
  if (seed.n_in() > 64 || tau_ > 64) throw UsageError("packed Toeplitz hash supports at most 64 bits");
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    for (std::size_t i = 0; i < tau_; ++i) {
      if (seed.entry(i, j)) columns_[j] |= std::uint64_t{1} << (tau_ - 1 - i);
    }
  }
  offset_ = seed.offset.get_bits(0, static_cast<unsigned>(tau_));
}

std::uint64_t PackedToeplitz::linear(std::uint64_t x) const {
  std::uint64_t acc = 0;
  const std::size_t n = columns_.size();
  while (x != 0) {
    const int low = std::countr_zero(x);
    acc ^= columns_[n - 1 - static_cast<std::size_t>(low)];
    x &= x - 1;
  }
  return acc;
}

std::size_t PackedToeplitz::rank() const {
  std::vector<std::uint64_t> basis;
  for (std::uint64_t v : columns_) {
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis.size();
}

std::vector<FieldElement> draw_hash_indices(const Seed& seed, std::size_t m, std::size_t t, unsigned w) {
  if (t == 0) throw UsageError("independence parameter t must be at least 1");
  const GaloisField& f = field(w);
  if (m > f.size()) throw UsageError("more hash indices than field elements");
  PrgStream rng(seed);
  std::vector<FieldElement> coeffs(t);
  for (auto& c : coeffs) c = static_cast<FieldElement>(rng.next_bits(w));
  std::vector<FieldElement> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto z = static_cast<FieldElement>(j);
    FieldElement v = 0;
    for (std::size_t i = t; i-- > 0;) v = f.mul(v, z) ^ coeffs[i];
    out[j] = v;
  }
  return out;
}

ToeplitzHashSeed hash_seed_from_index(FieldElement index, Role family, std::size_t n_in, std::size_t tau) {
  Seed key;
  key.role = family;
  for (int b = 0; b < 4; ++b) key.bytes[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(index >> (24 - 8 * b));
  PrgStream rng(key);
  return ToeplitzHashSeed::expand(rng, n_in, tau);
}

std::vector<ToeplitzHashSeed> twise_hash_seeds(const Seed& seed, Role family, std::size_t m, std::size_t t,
                                               std::size_t n_in, std::size_t tau) {
  std::vector<ToeplitzHashSeed> out;
  out.reserve(m);
  for (FieldElement v : draw_hash_indices(seed, m, t, kHashIndexWidth)) {
    out.push_back(hash_seed_from_index(v, family, n_in, tau));
  }
  return out;
}

std::vector<ToeplitzHashSeed> independent_hash_seeds(const Seed& seed, std::size_t m, std::size_t n_in,
                                                     std::size_t tau) {
  PrgStream rng(seed);
  std::vector<ToeplitzHashSeed> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.push_back(ToeplitzHashSeed::expand(rng, n_in, tau));
  return out;
}

}  // namespace swc
