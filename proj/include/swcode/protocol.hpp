#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swcode/bits.hpp"
#include "swcode/galois_field.hpp"
#include "swcode/hashing.hpp"
#include "swcode/params.hpp"
#include "swcode/permutation.hpp"
#include "swcode/prg.hpp"

namespace swc {

struct AliceSeeds {
  Seed perm_i;
  Seed perm_a;
  Seed hash_indices_a;

  friend bool operator==(const AliceSeeds&, const AliceSeeds&) = default;
};

struct BobSeeds {
  Seed perm_b;
  Seed hash_indices_b;

  friend bool operator==(const BobSeeds&, const BobSeeds&) = default;
};

/// Seeds for run `index` under `master`, each with its own role.
AliceSeeds make_alice_seeds(std::uint64_t master, std::uint64_t index = 0);
BobSeeds make_bob_seeds(std::uint64_t master, std::uint64_t index = 0);

struct AliceMessage {
  ProtocolParams params;
  std::optional<AliceSeeds> seeds;  // present in Model 3 only
  BitString sampled;                // X restricted to I
  std::vector<std::uint64_t> hashes;
  std::vector<FieldElement> checksums;

  std::size_t payload_bits() const;
  friend bool operator==(const AliceMessage&, const AliceMessage&) = default;
};

struct BobMessage {
  ProtocolParams params;
  std::optional<BobSeeds> seeds;
  std::vector<std::uint64_t> hashes;
  std::vector<FieldElement> checksums;

  std::size_t payload_bits() const;
  friend bool operator==(const BobMessage&, const BobMessage&) = default;
};

/// Permutation family and per-block hashes for a mode.
const PermutationSource& permutation_source(Mode mode);
std::vector<ToeplitzHashSeed> block_hash_seeds(const Seed& seed, Role family, const ProtocolParams& params,
                                               std::size_t tau);
/// I = pi_I({0, ..., floor(lambda n) - 1}), sorted.
IndexSet sampled_indices(const Seed& perm_i, const ProtocolParams& params);

/// `x` may be shorter than params.n; it is zero padded.
AliceMessage alice_encode(const BitString& x, const ProtocolParams& params, const AliceSeeds& seeds);
BobMessage bob_encode(const BitString& y, const ProtocolParams& params, const BobSeeds& seeds);

enum class FailureKind { None, PhaseYOverflow, PhaseXOverflow, Wire, WrongOutput };

const char* to_string(FailureKind kind);

struct PhaseStats {
  std::size_t direct = 0;        // unique search result confirmed by RS
  std::size_t repaired = 0;      // blocks replaced by RS decoding
  std::size_t no_candidate = 0;
  std::size_t ambiguous = 0;
  std::uint64_t candidates = 0;  // total candidates enumerated
  bool rs_ok = false;
};

struct DecodeReport {
  bool success = false;
  FailureKind failure = FailureKind::None;
  BitString x;  // original_len bits, valid on success
  BitString y;
  std::size_t distance = 0;
  PhaseStats phase_y;
  PhaseStats phase_x;
};

/// Joint decoder. Seeds come from the messages in Model 3 and from the
/// optional arguments otherwise; missing seeds raise UsageError.
DecodeReport charlie_decode(const AliceMessage& a, const BobMessage& b,
                            const std::optional<AliceSeeds>& alice_seeds = std::nullopt,
                            const std::optional<BobSeeds>& bob_seeds = std::nullopt);

/// Reference-model payload sum: (1 + h(alpha)) n plus the overhead E(n).
struct RateBreakdown {
  std::size_t payload_a = 0;
  std::size_t payload_b = 0;
  double ideal = 0;     // lambda n + h(a)(1-lambda) n + (1-lambda) n + h(a) lambda n
  double overhead = 0;  // payload_a + payload_b - ideal
};
RateBreakdown rate_breakdown(const ProtocolParams& params);

}  // namespace swc
