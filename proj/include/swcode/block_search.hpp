#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swcode/hashing.hpp"

namespace swc {

enum class BlockOutcome { Unique, NoCandidate, Ambiguous };

const char* to_string(BlockOutcome outcome);

struct BlockResult {
  BlockOutcome outcome = BlockOutcome::NoCandidate;
  std::uint64_t value = 0;        // valid when outcome == Unique
  std::uint64_t candidates = 0;   // size of the candidate set searched
  std::uint64_t matches = 0;      // candidates whose digest matched (capped at 2)

  friend bool operator==(const BlockResult&, const BlockResult&) = default;
};

/// One block-reconstruction problem on k <= 64 local positions. Blocks are
/// MSB-first integers: local position p is bit k-1-p.
///
/// Candidates agree with `reference` on `fixed`, differ from it in at most
/// `flip_budget` of the `flippable` positions, and take every value on the
/// remaining (free) positions. The result is the unique candidate whose
/// digest under `hash` equals `target`.
struct BlockProblem {
  unsigned k = 0;
  std::uint64_t reference = 0;
  std::vector<unsigned> fixed;
  std::vector<unsigned> flippable;
  std::size_t flip_budget = 0;
  std::uint64_t target = 0;
};

/// Number of candidates: sum_{i <= budget} C(|flippable|, i) * 2^free.
std::uint64_t candidate_count(const BlockProblem& problem);

/// Enumerates flip sets by size, then lexicographically, against a
/// precomputed table of digest contributions of the free positions.
BlockResult structured_search(const PackedToeplitz& hash, const BlockProblem& problem);

/// Y-side search: `known` positions carry Alice's bits (flippable within the
/// budget), every other position is free.
BlockResult reconstruct_block_y(const PackedToeplitz& hash, unsigned k, std::uint64_t alice_bits,
                                const std::vector<unsigned>& known, std::uint64_t target, std::size_t flip_budget);

/// X-side search: `known` positions carry Alice's bits (fixed), the rest start
/// from `y_block` and may be flipped within the budget.
BlockResult reconstruct_block_x(const PackedToeplitz& hash, unsigned k, std::uint64_t alice_bits,
                                std::uint64_t y_block, const std::vector<unsigned>& known, std::uint64_t target,
                                std::size_t flip_budget);

}  // namespace swc
