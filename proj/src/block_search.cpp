#include "swcode/block_search.hpp"

#include <algorithm>

namespace swc {

const char* to_string(BlockOutcome outcome) {
  switch (outcome) {
    case BlockOutcome::Unique: return "unique";
    case BlockOutcome::NoCandidate: return "no-candidate";
    case BlockOutcome::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

namespace {

std::uint64_t bit_of(unsigned k, unsigned pos) { return std::uint64_t{1} << (k - 1 - pos); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t v = 1;
  for (std::uint64_t i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

constexpr unsigned kMaxFree = 26;

struct Layout {
  std::vector<unsigned> free;
  std::uint64_t mask = 0;  // fixed and flippable positions
};

Layout layout(const BlockProblem& p) {
  if (p.k == 0 || p.k > 64) throw UsageError("block length must be in 1..64");
  std::vector<bool> used(p.k, false);
  Layout out;
  for (const auto* list : {&p.fixed, &p.flippable}) {
    for (unsigned pos : *list) {
      if (pos >= p.k || used[pos]) throw UsageError("block positions must be distinct and below k");
      used[pos] = true;
      out.mask |= bit_of(p.k, pos);
    }
  }
  for (unsigned pos = 0; pos < p.k; ++pos) {
    if (!used[pos]) out.free.push_back(pos);
  }
  if (out.free.size() > kMaxFree) throw UsageError("too many free positions for the block search table");
  return out;
}

}  // namespace

std::uint64_t candidate_count(const BlockProblem& p) {
  const Layout lay = layout(p);
  std::uint64_t flips = 0;
  for (std::size_t i = 0; i <= std::min(p.flip_budget, p.flippable.size()); ++i) flips += binomial(p.flippable.size(), i);
  return flips << lay.free.size();
}

BlockResult structured_search(const PackedToeplitz& hash, const BlockProblem& p) {
  if (hash.n_in() != p.k) throw UsageError("hash input length differs from the block length");
  const Layout lay = layout(p);
  BlockResult result;
  result.candidates = candidate_count(p);

  // Digest contribution of every assignment to the free positions; assignment
  // a sets free[i] when bit (f-1-i) of a is set. Sorted by contribution so the
  // matching assignments of a flip set form one contiguous range.
  const std::size_t f = lay.free.size();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> table(std::size_t{1} << f);
  for (std::size_t a = 0; a < table.size(); ++a) {
    std::uint64_t block = 0;
    for (std::size_t i = 0; i < f; ++i) {
      if ((a >> (f - 1 - i)) & 1U) block |= bit_of(p.k, lay.free[i]);
    }
    table[a] = {hash.linear(block), block};
  }
  std::sort(table.begin(), table.end());

  const std::uint64_t base_block = p.reference & lay.mask;
  const std::uint64_t base_digest = hash.eval(base_block);
  const std::size_t L = p.flippable.size();
  const std::size_t budget = std::min(p.flip_budget, L);

  std::vector<std::size_t> combo;
  for (std::size_t size = 0; size <= budget && result.matches < 2; ++size) {
    combo.resize(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = i;
    for (;;) {
      std::uint64_t block = base_block;
      std::uint64_t digest = base_digest;
      for (std::size_t i : combo) {
        const unsigned pos = p.flippable[i];
        block ^= bit_of(p.k, pos);
        digest ^= hash.column(pos);
      }
      const std::uint64_t need = digest ^ p.target;
      auto lo = std::lower_bound(table.begin(), table.end(), std::make_pair(need, std::uint64_t{0}));
      for (auto it = lo; it != table.end() && it->first == need && result.matches < 2; ++it) {
        if (result.matches == 0) result.value = block | it->second;
        ++result.matches;
      }
      if (result.matches >= 2) break;
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && combo[i - 1] == L - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  if (result.matches == 0) {
    result.outcome = BlockOutcome::NoCandidate;
  } else if (result.matches == 1) {
    result.outcome = BlockOutcome::Unique;
  } else {
    result.outcome = BlockOutcome::Ambiguous;
    result.value = 0;
  }
  return result;
}

BlockResult reconstruct_block_y(const PackedToeplitz& hash, unsigned k, std::uint64_t alice_bits,
                                const std::vector<unsigned>& known, std::uint64_t target, std::size_t flip_budget) {
  BlockProblem p;
  p.k = k;
  p.reference = alice_bits;
  p.flippable = known;
  p.flip_budget = flip_budget;
  p.target = target;
  return structured_search(hash, p);
}

BlockResult reconstruct_block_x(const PackedToeplitz& hash, unsigned k, std::uint64_t alice_bits,
                                std::uint64_t y_block, const std::vector<unsigned>& known, std::uint64_t target,
                                std::size_t flip_budget) {
  BlockProblem p;
  p.k = k;
  std::uint64_t known_mask = 0;
  for (unsigned pos : known) {
    if (pos >= k) throw UsageError("block position out of range");
    known_mask |= bit_of(k, pos);
  }
  p.reference = (alice_bits & known_mask) | (y_block & ~known_mask);
  p.fixed = known;
  for (unsigned pos = 0; pos < k; ++pos) {
    if (!(known_mask & bit_of(k, pos))) p.flippable.push_back(pos);
  }
  p.flip_budget = flip_budget;
  p.target = target;
  return structured_search(hash, p);
}

}  // namespace swc
