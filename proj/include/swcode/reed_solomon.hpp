#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swcode/galois_field.hpp"

namespace swc {

/// Shape of a systematic Reed-Solomon checksum code: m data symbols protected
/// by 2s+1 checksum symbols over GF(2^w).
struct RSParams {
  std::size_t m = 0;
  std::size_t s = 0;
  unsigned w = 0;

  std::size_t checksum_count() const { return 2 * s + 1; }
  std::size_t codeword_length() const { return m + checksum_count(); }
  /// Throws UsageError unless 1 <= w <= 16, m >= 1 and m+2s+1 <= 2^w.
  void validate() const;
};

/// Data symbol i sits at field element i+1; checksum j at m+1+j.
class ReedSolomon {
 public:
  explicit ReedSolomon(RSParams params);

  const RSParams& params() const { return params_; }
  const GaloisField& gf() const { return *gf_; }

  /// Evaluations of the degree < m interpolant of `blocks` at the checksum points.
  std::vector<FieldElement> checksums(std::span<const FieldElement> blocks) const;

  /// Berlekamp-Welch over all m+2s+1 positions with the checksum symbols
  /// trusted. Returns the original data when at most s data symbols differ;
  /// nullopt when no codeword within that radius agrees with every checksum.
  std::optional<std::vector<FieldElement>> correct(std::span<const FieldElement> received,
                                                   std::span<const FieldElement> checksums) const;

 private:
  FieldElement point(std::size_t position) const { return static_cast<FieldElement>(position + 1); }
  void check_symbols(std::span<const FieldElement> symbols, std::size_t expected, const char* what) const;

  RSParams params_;
  const GaloisField* gf_;
  std::vector<FieldElement> bary_;  // barycentric weights of the data points
};

std::vector<FieldElement> rs_checksums(std::span<const FieldElement> blocks, const RSParams& params);
std::optional<std::vector<FieldElement>> rs_correct(std::span<const FieldElement> received,
                                                    std::span<const FieldElement> checksums,
                                                    const RSParams& params);

}  // namespace swc
