#include "swcode/galois_field.hpp"

#include <array>
#include <mutex>

#include "swcode/bits.hpp"

namespace swc {

namespace {

// Index = width. Widths 3, 4, 8 and 12 use the moduli published in the
// format description; the rest are standard primitive polynomials.
constexpr std::array<std::uint32_t, kMaxFieldWidth + 1> kModuli = {
    0,
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

void check_width(unsigned width) {
  if (width < kMinFieldWidth || width > kMaxFieldWidth) {
    throw UsageError("field width " + std::to_string(width) + " outside 1..16");
  }
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

std::uint32_t pinned_modulus(unsigned width) {
  check_width(width);
  return kModuli[width];
}

FieldElement GaloisField::mul_slow(FieldElement a, FieldElement b, unsigned width, std::uint32_t modulus) {
  FieldElement product = 0;
  const std::uint32_t top = std::uint32_t{1} << width;
  while (b != 0) {
    if (b & 1U) product ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus;
  }
  return product;
}

GaloisField::GaloisField(unsigned width) : GaloisField(width, pinned_modulus(width)) {}

GaloisField::GaloisField(unsigned width, std::uint32_t modulus) : width_(width), modulus_(modulus) {
  check_width(width);
  if ((modulus >> width) != 1U) throw UsageError("modulus degree must equal the field width");
  const std::uint32_t order = (std::uint32_t{1} << width) - 1;

  auto slow_pow = [&](FieldElement a, std::uint32_t e) {
    FieldElement r = 1;
    while (e != 0) {
      if (e & 1U) r = mul_slow(r, a, width, modulus);
      a = mul_slow(a, a, width, modulus);
      e >>= 1;
    }
    return r;
  };

  // A generator exists iff the modulus is irreducible (the unit group is then
  // cyclic of order 2^w - 1).
  const auto factors = prime_factors(order);
  FieldElement generator = 0;
  for (FieldElement g = (width == 1 ? 1 : 2); g <= order && generator == 0; ++g) {
    bool full_order = slow_pow(g, order) == 1;
    for (std::uint32_t p : factors) full_order = full_order && slow_pow(g, order / p) != 1;
    if (full_order) generator = g;
  }
  if (generator == 0) throw UsageError("field modulus is not irreducible");

  auto tables = std::make_shared<Tables>();
  tables->generator = generator;
  tables->exp.resize(2 * static_cast<std::size_t>(order));
  tables->log.assign(std::size_t{order} + 1, 0);
  FieldElement x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    tables->exp[i] = x;
    tables->exp[i + order] = x;
    tables->log[x] = i;
    x = mul_slow(x, generator, width, modulus);
  }
  tables_ = std::move(tables);
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a == 0) throw UsageError("zero has no multiplicative inverse");
  const std::uint32_t order = size() - 1;
  return tables_->exp[(order - tables_->log[a]) % order];
}

FieldElement GaloisField::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement GaloisField::pow(FieldElement a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = size() - 1;
  return tables_->exp[(static_cast<std::uint64_t>(tables_->log[a]) * (e % order)) % order];
}

std::uint32_t GaloisField::log(FieldElement a) const {
  if (a == 0) throw UsageError("log of zero");
  return tables_->log[a];
}

const GaloisField& field(unsigned width) {
  check_width(width);
  static std::array<std::unique_ptr<GaloisField>, kMaxFieldWidth + 1> cache;
  static std::array<std::once_flag, kMaxFieldWidth + 1> once;
  std::call_once(once[width], [width] { cache[width] = std::make_unique<GaloisField>(width); });
  return *cache[width];
}

}  // namespace swc
