#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "swcode/bits.hpp"
#include "swcode/permutation.hpp"

namespace swc {

/// Binary linear code given by a parity-check matrix H (checks x n, n <= 64)
/// with a certified error-correction radius.
///
/// Columns are reordered internally so that the last `checks` columns form an
/// invertible minor; `order()` maps internal column j to original column
/// order()(j). Strings passed to the public API are always in original order.
class LinearCode {
 public:
  /// Certifies rank, radius (distinct syndromes for all errors of weight
  /// <= radius) and picks the column order. Throws UsageError on failure.
  LinearCode(std::string name, std::size_t n, std::vector<BitString> rows, std::size_t radius);

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  std::size_t checks() const { return rows_.size(); }
  std::size_t radius() const { return radius_; }
  const std::vector<BitString>& rows() const { return rows_; }
  const Permutation& order() const { return order_; }
  bool entry(std::size_t row, std::size_t col) const { return rows_[row].get(col); }

  BitString syndrome(const BitString& z) const;
  /// Minimum-weight pattern with the given syndrome, if one of weight <= radius exists.
  std::optional<BitString> syndrome_decode(const BitString& syn) const;
  /// Exhaustive over the codewords; needs n - checks <= 30.
  std::size_t minimum_distance() const;

  /// Solves the dependent (last `checks` internal) bits of `internal` so its
  /// syndrome equals `syn`; the free bits are read from `internal`.
  BitString complete(BitString internal, const BitString& syn) const;

  std::string serialize() const;
  static LinearCode parse(const std::string& text);

 private:
  std::uint64_t column(std::size_t col) const { return columns_[col]; }
  std::uint64_t packed_syndrome(const BitString& z) const;

  std::string name_;
  std::size_t n_;
  std::vector<BitString> rows_;
  std::size_t radius_;
  std::vector<std::uint64_t> columns_;  // original order, row r at bit checks-1-r
  Permutation order_;
  std::vector<std::uint64_t> minor_inverse_;  // row c: coefficients of d_c
  std::unordered_map<std::uint64_t, BitString> table_;
};

/// Hamming code of length 2^r - 1; column j holds j+1 with the MSB in row 0.
LinearCode hamming_code(unsigned r);
/// Narrow-sense binary BCH code of length n = 2^e - 1 and design radius t.
LinearCode bch_code(std::size_t n, std::size_t t);
/// Rejection-sampled random parity-check matrix with certified radius.
LinearCode random_gv_code(std::size_t n, std::size_t checks, std::size_t radius, std::uint64_t seed,
                          std::size_t max_attempts = 10000);
/// "hamming(3)", "bch(15,2)" or "random_gv(12,10,2,7)".
LinearCode build_code(const std::string& description);

struct DetMessage {
  BitString bits;      // Alice: internal bits [0, split); Bob: [split, n - checks)
  BitString syndrome;

  std::size_t size() const { return bits.size() + syndrome.size(); }
  friend bool operator==(const DetMessage&, const DetMessage&) = default;
};

/// floor(lambda (n - checks)).
std::size_t det_split(const LinearCode& code, double lambda);

DetMessage det_encode_alice(const BitString& x, const LinearCode& code, std::size_t split);
DetMessage det_encode_bob(const BitString& y, const LinearCode& code, std::size_t split);
/// Recovers (X, Y) when their distance is within the code radius.
std::optional<std::pair<BitString, BitString>> det_decode(const DetMessage& alice, const DetMessage& bob,
                                                          const LinearCode& code, std::size_t split);

}  // namespace swc
