#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swc {

class PrgStream;

/// Raised when two operands disagree on a length or an index leaves its range.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-length bit sequence.
///
/// Positions are 0-based in this API; position i is the (i+1)-th bit of the
/// string. Bits are packed MSB-first into 64-bit words and the unused tail of
/// the last word is always zero, so equality and hashing are bitwise.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t len);

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view bits);
  /// Low `len` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t len);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  /// Reads `count` (<= 64) bits starting at `pos` as an MSB-first integer.
  std::uint64_t get_bits(std::size_t pos, unsigned count) const;
  /// Writes the low `count` bits of `value` MSB-first starting at `pos`.
  void set_bits(std::size_t pos, unsigned count, std::uint64_t value);

  std::string to_string() const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString lhs, const BitString& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend bool operator==(const BitString&, const BitString&) = default;

  std::span<const std::uint64_t> words() const { return words_; }

  /// Packed bytes, MSB-first, final byte zero-padded.
  std::vector<std::uint8_t> to_bytes() const;
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t len);

  /// `<len>:<hex bytes>`, e.g. "5:b0" for 10110.
  std::string to_hex() const;
  static BitString from_hex(std::string_view text);

  /// 64-bit big-endian length in bits followed by the packed bytes.
  std::vector<std::uint8_t> to_binary() const;
  static BitString from_binary(std::span<const std::uint8_t> data);

 private:
  void check_index(std::size_t i) const;

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Strictly increasing positions within 0..n-1.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and validates; duplicates or positions >= universe are rejected.
  IndexSet(std::vector<std::size_t> indices, std::size_t universe);

  static IndexSet range(std::size_t first, std::size_t last, std::size_t universe);

  std::size_t size() const { return indices_.size(); }
  std::size_t universe() const { return universe_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

 private:
  std::vector<std::size_t> indices_;
  std::size_t universe_ = 0;
};

std::size_t weight(const BitString& x);
BitString bit_xor(const BitString& x, const BitString& y);
std::size_t hamming_distance(const BitString& x, const BitString& y);

/// Bits of `x` at the positions of `indices`, in increasing position order.
BitString extract(const BitString& x, const IndexSet& indices);

std::vector<BitString> split_blocks(const BitString& x, std::size_t block_len);
BitString concat(std::span<const BitString> parts);

/// Copy of `x` extended with zero bits to `len`.
BitString zero_pad(const BitString& x, std::size_t len);
BitString truncate(const BitString& x, std::size_t len);

struct CorrelatedPair {
  BitString x;
  BitString y;
  std::size_t flips = 0;
};

/// X uniform; Y is X with exactly d flipped positions, d uniform in
/// 0..floor(alpha*n), positions uniform without replacement.
CorrelatedPair sample_correlated_pair(std::size_t n, double alpha, PrgStream& rng);

/// floor(fraction * count), tolerant of representation error just below an integer.
std::size_t floor_fraction(double fraction, std::size_t count);

}  // namespace swc
