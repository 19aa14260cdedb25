#include "swcode/bits.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numeric>

#include "swcode/prg.hpp"

namespace swc {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t len) { return (len + kWordBits - 1) / kWordBits; }

std::uint64_t bit_mask(std::size_t i) { return std::uint64_t{1} << (kWordBits - 1 - i % kWordBits); }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t len) : len_(len), words_(word_count(len), 0) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw UsageError("bit string may only contain '0' and '1'");
    }
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t len) {
  if (len > 64) throw UsageError("from_uint supports at most 64 bits");
  BitString out(len);
  if (len > 0) out.set_bits(0, static_cast<unsigned>(len), value);
  return out;
}

void BitString::check_index(std::size_t i) const {
  if (i >= len_) {
    throw UsageError("bit index " + std::to_string(i) + " out of range for length " + std::to_string(len_));
  }
}

bool BitString::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] & bit_mask(i)) != 0;
}

void BitString::set(std::size_t i, bool value) {
  check_index(i);
  if (value) {
    words_[i / kWordBits] |= bit_mask(i);
  } else {
    words_[i / kWordBits] &= ~bit_mask(i);
  }
}

void BitString::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= bit_mask(i);
}

std::uint64_t BitString::get_bits(std::size_t pos, unsigned count) const {
  if (count > 64 || pos + count > len_) throw UsageError("get_bits range out of bounds");
  if (count == 0) return 0;
  const std::size_t word = pos / kWordBits;
  const unsigned offset = pos % kWordBits;
  const std::uint64_t hi = words_[word] << offset;
  if (offset + count <= kWordBits) return hi >> (kWordBits - count);
  // Field straddles two words.
  const std::uint64_t lo = words_[word + 1] >> (kWordBits - offset);
  return (hi | lo) >> (kWordBits - count);
}

void BitString::set_bits(std::size_t pos, unsigned count, std::uint64_t value) {
  if (count > 64 || pos + count > len_) throw UsageError("set_bits range out of bounds");
  for (unsigned b = 0; b < count; ++b) {
    set(pos + b, ((value >> (count - 1 - b)) & 1U) != 0);
  }
}

std::string BitString::to_string() const {
  std::string out(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.len_ != len_) {
    throw UsageError("xor of bit strings with lengths " + std::to_string(len_) + " and " +
                     std::to_string(other.len_));
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
  for (std::size_t b = 0; b < out.size(); ++b) {
    const std::uint64_t word = words_[b / 8];
    out[b] = static_cast<std::uint8_t>(word >> (56 - 8 * (b % 8)));
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t len) {
  if (bytes.size() != (len + 7) / 8) throw UsageError("byte count does not match bit length");
  BitString out(len);
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    out.words_[b / 8] |= static_cast<std::uint64_t>(bytes[b]) << (56 - 8 * (b % 8));
  }
  if (len % 8 != 0) {
    const std::uint8_t tail = bytes.back() & static_cast<std::uint8_t>(0xFFu >> (len % 8));
    if (tail != 0) throw UsageError("non-zero padding bits");
  }
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = std::to_string(len_) + ":";
  for (std::uint8_t byte : to_bytes()) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xF]);
  }
  return out;
}

BitString BitString::from_hex(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) throw UsageError("hex bit string must look like <len>:<hex>");
  std::size_t len = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') throw UsageError("bad length in hex bit string");
    len = len * 10 + static_cast<std::size_t>(c - '0');
  }
  const std::string_view digits = text.substr(colon + 1);
  if (digits.size() != 2 * ((len + 7) / 8)) throw UsageError("hex digit count does not match bit length");
  std::vector<std::uint8_t> bytes(digits.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const int hi = hex_value(digits[2 * i]);
    const int lo = hex_value(digits[2 * i + 1]);
    if (hi < 0 || lo < 0) throw UsageError("bad hex digit");
    bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return from_bytes(bytes, len);
}

std::vector<std::uint8_t> BitString::to_binary() const {
  std::vector<std::uint8_t> out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(len_) >> (56 - 8 * i));
  const auto payload = to_bytes();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

BitString BitString::from_binary(std::span<const std::uint8_t> data) {
  if (data.size() < 8) throw UsageError("binary bit string shorter than its length prefix");
  std::uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len = len << 8 | data[i];
  if ((len + 7) / 8 != data.size() - 8) throw UsageError("binary bit string length prefix does not match payload");
  return from_bytes(data.subspan(8), static_cast<std::size_t>(len));
}

IndexSet::IndexSet(std::vector<std::size_t> indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw UsageError("index set contains duplicates");
  }
  if (!indices_.empty() && indices_.back() >= universe_) {
    throw UsageError("index " + std::to_string(indices_.back()) + " outside universe of size " +
                     std::to_string(universe_));
  }
}

IndexSet IndexSet::range(std::size_t first, std::size_t last, std::size_t universe) {
  std::vector<std::size_t> v(last > first ? last - first : 0);
  std::iota(v.begin(), v.end(), first);
  return IndexSet(std::move(v), universe);
}

std::size_t weight(const BitString& x) {
  std::size_t total = 0;
  for (std::uint64_t w : x.words()) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitString bit_xor(const BitString& x, const BitString& y) { return x ^ y; }

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw UsageError("hamming distance of strings with different lengths");
  std::size_t total = 0;
  const auto a = x.words();
  const auto b = y.words();
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return total;
}

BitString extract(const BitString& x, const IndexSet& indices) {
  if (indices.universe() > x.size()) throw UsageError("index set universe exceeds string length");
  BitString out(indices.size());
  std::size_t j = 0;
  for (std::size_t i : indices) out.set(j++, x.get(i));
  return out;
}

std::vector<BitString> split_blocks(const BitString& x, std::size_t block_len) {
  if (block_len == 0 || x.size() % block_len != 0) {
    throw UsageError("block length " + std::to_string(block_len) + " does not divide " + std::to_string(x.size()));
  }
  std::vector<BitString> blocks;
  blocks.reserve(x.size() / block_len);
  for (std::size_t start = 0; start < x.size(); start += block_len) {
    BitString block(block_len);
    for (std::size_t i = 0; i < block_len; ++i) block.set(i, x.get(start + i));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

BitString concat(std::span<const BitString> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  BitString out(total);
  std::size_t pos = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i) out.set(pos++, p.get(i));
  }
  return out;
}

BitString zero_pad(const BitString& x, std::size_t len) {
  if (len < x.size()) throw UsageError("zero_pad target shorter than input");
  BitString out(len);
  for (std::size_t i = 0; i < x.size(); ++i) out.set(i, x.get(i));
  return out;
}

BitString truncate(const BitString& x, std::size_t len) {
  if (len > x.size()) throw UsageError("truncate target longer than input");
  BitString out(len);
  for (std::size_t i = 0; i < len; ++i) out.set(i, x.get(i));
  return out;
}

std::size_t floor_fraction(double fraction, std::size_t count) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 1e-9));
}

CorrelatedPair sample_correlated_pair(std::size_t n, double alpha, PrgStream& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  CorrelatedPair pair{BitString(n), BitString(n), 0};
  for (std::size_t i = 0; i < n; ++i) pair.x.set(i, rng.next_bit());
  pair.y = pair.x;
  const std::size_t max_flips = floor_fraction(alpha, n);
  pair.flips = static_cast<std::size_t>(rng.uniform(max_flips + 1));
  // Partial Fisher-Yates: the first `flips` slots become a uniform subset.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  for (std::size_t i = 0; i < pair.flips; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform(n - i));
    std::swap(positions[i], positions[j]);
    pair.y.flip(positions[i]);
  }
  return pair;
}

}  // namespace swc
