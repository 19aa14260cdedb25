#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace swc {

/// Role tags keep the streams of different consumers apart even when they
/// are keyed by the same bytes.
enum class Role : std::uint8_t {
  PermI = 1,
  PermA = 2,
  PermB = 3,
  HashIndicesA = 4,
  HashIndicesB = 5,
  HashFamilyA = 6,
  HashFamilyB = 7,
  Workload = 8,
  Derive = 0x7F,
};

bool is_valid_role(std::uint8_t tag);

struct Seed {
  static constexpr std::size_t kBytes = 32;

  Role role = Role::Derive;
  std::array<std::uint8_t, kBytes> bytes{};

  /// One role byte followed by the key bytes.
  std::vector<std::uint8_t> serialize() const;
  static Seed parse(std::span<const std::uint8_t> data);

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Seed for `role` derived from a master seed and an index (trial number,
/// party number, ...). Distinct (master, index, role) triples give
/// independent-looking seeds.
Seed derive_seed(std::uint64_t master, std::uint64_t index, Role role);

/// RFC 8439 ChaCha20 block function: 64 keystream bytes for one counter value.
std::array<std::uint8_t, 64> chacha20_block(std::span<const std::uint8_t, 32> key, std::uint32_t counter,
                                            std::span<const std::uint8_t, 12> nonce);

/// Deterministic expandable stream: ChaCha20 keyed by the seed bytes with the
/// role tag in the first nonce byte, counter starting at 0. Single consumer.
class PrgStream {
 public:
  explicit PrgStream(const Seed& seed);

  std::uint8_t next_byte();
  /// Little-endian assembly of the next four bytes.
  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Bits are taken MSB-first from successive bytes.
  bool next_bit();
  /// `count` (<= 64) bits, first drawn bit most significant.
  std::uint64_t next_bits(unsigned count);
  /// Unbiased draw from [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 12> nonce_{};
  std::uint32_t counter_ = 0;
  std::array<std::uint8_t, 64> block_{};
  std::size_t pos_ = 64;
  std::uint8_t bit_byte_ = 0;
  unsigned bits_left_ = 0;
};

}  // namespace swc
