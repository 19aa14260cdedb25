#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace swc {

/// Element of GF(2^w) stored as its polynomial-basis bit pattern.
using FieldElement = std::uint32_t;

inline constexpr unsigned kMinFieldWidth = 1;
inline constexpr unsigned kMaxFieldWidth = 16;

/// Pinned irreducible modulus for each supported width (bit w set).
std::uint32_t pinned_modulus(unsigned width);

/// GF(2^w) arithmetic over a fixed irreducible modulus, 1 <= w <= 16.
/// Log/antilog tables are built on construction and shared between copies.
class GaloisField {
 public:
  explicit GaloisField(unsigned width);
  GaloisField(unsigned width, std::uint32_t modulus);

  unsigned width() const { return width_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t size() const { return std::uint32_t{1} << width_; }
  /// Multiplicative generator used for the log tables.
  FieldElement generator() const { return tables_->generator; }

  static FieldElement add(FieldElement a, FieldElement b) { return a ^ b; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a == 0 || b == 0) return 0;
    return tables_->exp[tables_->log[a] + tables_->log[b]];
  }
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  /// generator^e
  FieldElement exp(std::uint64_t e) const { return tables_->exp[e % (size() - 1)]; }
  std::uint32_t log(FieldElement a) const;

  bool contains(FieldElement a) const { return a < size(); }

  /// Shift-and-add product, independent of the tables.
  static FieldElement mul_slow(FieldElement a, FieldElement b, unsigned width, std::uint32_t modulus);

 private:
  struct Tables {
    std::vector<FieldElement> exp;  // doubled so log a + log b never wraps
    std::vector<std::uint32_t> log;
    FieldElement generator = 1;
  };

  unsigned width_;
  std::uint32_t modulus_;
  std::shared_ptr<const Tables> tables_;
};

/// Process-wide field for the pinned modulus of `width`; built once.
const GaloisField& field(unsigned width);

}  // namespace swc
