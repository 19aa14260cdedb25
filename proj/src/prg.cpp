#include "swcode/prg.hpp"

#include <bit>
#include <stdexcept>

#include "swcode/bits.hpp"

namespace swc {

namespace {

std::uint32_t load_le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) {
  a += b; d ^= a; d = std::rotl(d, 16);
  c += d; b ^= c; b = std::rotl(b, 12);
  a += b; d ^= a; d = std::rotl(d, 8);
  c += d; b ^= c; b = std::rotl(b, 7);
}

}  // namespace

bool is_valid_role(std::uint8_t tag) { return (tag >= 1 && tag <= 8) || tag == 0x7F; }

std::vector<std::uint8_t> Seed::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(1 + kBytes);
  out.push_back(static_cast<std::uint8_t>(role));
  out.insert(out.end(), bytes.begin(), bytes.end());
  return out;
}

Seed Seed::parse(std::span<const std::uint8_t> data) {
  if (data.size() != 1 + kBytes) throw UsageError("seed must be 33 bytes (role tag + 32 key bytes)");
  if (!is_valid_role(data[0])) throw UsageError("unknown seed role tag");
  Seed seed;
  seed.role = static_cast<Role>(data[0]);
  std::copy(data.begin() + 1, data.end(), seed.bytes.begin());
  return seed;
}

std::array<std::uint8_t, 64> chacha20_block(std::span<const std::uint8_t, 32> key, std::uint32_t counter,
                                            std::span<const std::uint8_t, 12> nonce) {
  std::array<std::uint32_t, 16> state{0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
  for (int i = 0; i < 8; ++i) state[4 + i] = load_le32(key.data() + 4 * i);
  state[12] = counter;
  for (int i = 0; i < 3; ++i) state[13 + i] = load_le32(nonce.data() + 4 * i);

  auto x = state;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  std::array<std::uint8_t, 64> out{};
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t v = x[i] + state[i];
    for (int b = 0; b < 4; ++b) out[4 * i + b] = static_cast<std::uint8_t>(v >> (8 * b));
  }
  return out;
}

Seed derive_seed(std::uint64_t master, std::uint64_t index, Role role) {
  std::array<std::uint8_t, 32> key{};
  for (int i = 0; i < 8; ++i) key[i] = static_cast<std::uint8_t>(master >> (8 * i));
  std::array<std::uint8_t, 12> nonce{};
  nonce[0] = static_cast<std::uint8_t>(Role::Derive);
  nonce[1] = static_cast<std::uint8_t>(role);
  for (int i = 0; i < 8; ++i) nonce[2 + i] = static_cast<std::uint8_t>(index >> (8 * i));
  const auto block = chacha20_block(key, 0, nonce);
  Seed seed;
  seed.role = role;
  std::copy(block.begin(), block.begin() + Seed::kBytes, seed.bytes.begin());
  return seed;
}

PrgStream::PrgStream(const Seed& seed) : key_(seed.bytes) { nonce_[0] = static_cast<std::uint8_t>(seed.role); }

void PrgStream::refill() {
  block_ = chacha20_block(key_, counter_++, nonce_);
  pos_ = 0;
}

std::uint8_t PrgStream::next_byte() {
  if (pos_ == block_.size()) refill();
  return block_[pos_++];
}

std::uint32_t PrgStream::next_u32() {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(next_byte()) << (8 * i);
  return v;
}

std::uint64_t PrgStream::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return hi << 32 | lo;
}

bool PrgStream::next_bit() {
  if (bits_left_ == 0) {
    bit_byte_ = next_byte();
    bits_left_ = 8;
  }
  --bits_left_;
  return ((bit_byte_ >> bits_left_) & 1U) != 0;
}

std::uint64_t PrgStream::next_bits(unsigned count) {
  if (count > 64) throw UsageError("next_bits supports at most 64 bits");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = v << 1 | static_cast<std::uint64_t>(next_bit());
  return v;
}

std::uint64_t PrgStream::uniform(std::uint64_t bound) {
  if (bound == 0) throw UsageError("uniform bound must be positive");
  // Reject the low partial range so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace swc
