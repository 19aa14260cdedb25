#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "swcode/params.hpp"
#include "swcode/protocol.hpp"

namespace swc {

/// Malformed or inconsistent message bytes.
class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kWireVersion = 1;

enum class Party : std::uint8_t { Alice = 1, Bob = 2 };

/// Big-endian layout:
///   "SWC1" | version u8 | mode u8 (party << 4 | mode) | n u64 | original_len u64
///   | alpha u32/u32 | lambda u32/u32 | k u16 | s u16 | w u8 | r u8 | kappa1 u8
///   | kappa2 u8 | [Model 3: count u8, then (role u8, len u16, bytes) triples]
///   | payload bits, MSB-first, zero padded to a byte.
/// Alice's payload is sampled bits, m hashes, 2s+1 checksums; Bob's omits the
/// sampled bits.
std::vector<std::uint8_t> serialize(const AliceMessage& msg);
std::vector<std::uint8_t> serialize(const BobMessage& msg);

/// delta and t are not on the wire; they come from the defaults or `overrides`.
AliceMessage deserialize_alice(std::span<const std::uint8_t> bytes, const ParamOverrides& overrides = {});
BobMessage deserialize_bob(std::span<const std::uint8_t> bytes, const ParamOverrides& overrides = {});

/// Reads only the party nibble of a message (after validating the magic).
Party message_party(std::span<const std::uint8_t> bytes);

/// Side-channel seed file: "SWS1" | count u8 | count x 33-byte seeds.
std::vector<std::uint8_t> serialize_seeds(const std::vector<Seed>& seeds);
std::vector<Seed> deserialize_seeds(std::span<const std::uint8_t> bytes);

}  // namespace swc
