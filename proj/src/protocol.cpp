#include "swcode/protocol.hpp"

#include "swcode/block_search.hpp"
#include "swcode/rates.hpp"
#include "swcode/reed_solomon.hpp"

namespace swc {

AliceSeeds make_alice_seeds(std::uint64_t master, std::uint64_t index) {
  return {derive_seed(master, index, Role::PermI), derive_seed(master, index, Role::PermA),
          derive_seed(master, index, Role::HashIndicesA)};
}

BobSeeds make_bob_seeds(std::uint64_t master, std::uint64_t index) {
  return {derive_seed(master, index, Role::PermB), derive_seed(master, index, Role::HashIndicesB)};
}

std::size_t AliceMessage::payload_bits() const {
  return sampled.size() + hashes.size() * params.tau_a + checksums.size() * params.w;
}

std::size_t BobMessage::payload_bits() const { return hashes.size() * params.tau_b + checksums.size() * params.w; }

const PermutationSource& permutation_source(Mode mode) {
  static const UniformPermutationSource uniform;
  static const AffinePermutationSource affine;
  if (mode == Mode::Model1) return uniform;
  return affine;
}

std::vector<ToeplitzHashSeed> block_hash_seeds(const Seed& seed, Role family, const ProtocolParams& params,
                                               std::size_t tau) {
  if (params.mode == Mode::Model1) return independent_hash_seeds(seed, params.m, params.k, tau);
  return twise_hash_seeds(seed, family, params.m, params.t, params.k, tau);
}

IndexSet sampled_indices(const Seed& perm_i, const ProtocolParams& params) {
  const Permutation pi = permutation_source(params.mode).draw(perm_i, params.n);
  std::vector<std::size_t> out(params.sampled_bits());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pi(i);
  return IndexSet(std::move(out), params.n);
}

namespace {

BitString padded(const BitString& x, const ProtocolParams& params) {
  if (x.size() != params.original_len && x.size() != params.n) {
    throw UsageError("input has " + std::to_string(x.size()) + " bits, expected " +
                     std::to_string(params.original_len));
  }
  return zero_pad(x, params.n);
}

std::vector<FieldElement> block_symbols(const BitString& x, std::size_t k) {
  std::vector<FieldElement> out(x.size() / k);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = static_cast<FieldElement>(x.get_bits(j * k, static_cast<unsigned>(k)));
  }
  return out;
}

BitString from_symbols(const std::vector<FieldElement>& symbols, std::size_t k) {
  BitString out(symbols.size() * k);
  for (std::size_t j = 0; j < symbols.size(); ++j) out.set_bits(j * k, static_cast<unsigned>(k), symbols[j]);
  return out;
}

std::vector<std::uint64_t> block_hashes(const BitString& permuted, const std::vector<ToeplitzHashSeed>& seeds,
                                        std::size_t k) {
  std::vector<std::uint64_t> out(seeds.size());
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    out[j] = PackedToeplitz(seeds[j]).eval(permuted.get_bits(j * k, static_cast<unsigned>(k)));
  }
  return out;
}

RSParams rs_params(const ProtocolParams& p) { return RSParams{p.m, p.s, p.w}; }

// Local positions of `indices` inside each block, grouped by block.
std::vector<std::vector<unsigned>> per_block(const IndexSet& indices, std::size_t k, std::size_t m) {
  std::vector<std::vector<unsigned>> out(m);
  for (std::size_t i : indices) out[i / k].push_back(static_cast<unsigned>(i % k));
  return out;
}

bool same_shape(const ProtocolParams& a, const ProtocolParams& b) {
  return a.n == b.n && a.original_len == b.original_len && a.alpha == b.alpha && a.lambda == b.lambda &&
         a.k == b.k && a.s == b.s && a.w == b.w && a.r == b.r && a.kappa1 == b.kappa1 && a.kappa2 == b.kappa2 &&
         a.mode == b.mode && a.tau_a == b.tau_a && a.tau_b == b.tau_b && a.t == b.t;
}

// Runs the per-block searches and the RS repair for one phase. Returns the
// repaired permuted string or nullopt on RS failure.
template <typename Search>
std::optional<BitString> run_phase(const ProtocolParams& p, const std::vector<FieldElement>& checksums,
                                   PhaseStats& stats, Search&& search) {
  std::vector<FieldElement> symbols(p.m, 0);
  std::vector<bool> unique(p.m, false);
  for (std::size_t j = 0; j < p.m; ++j) {
    const BlockResult r = search(j);
    stats.candidates += r.candidates;
    if (r.outcome == BlockOutcome::Unique) {
      symbols[j] = static_cast<FieldElement>(r.value);
      unique[j] = true;
    } else if (r.outcome == BlockOutcome::NoCandidate) {
      ++stats.no_candidate;
    } else {
      ++stats.ambiguous;
    }
  }
  const auto fixed = ReedSolomon(rs_params(p)).correct(symbols, checksums);
  if (!fixed) return std::nullopt;
  for (std::size_t j = 0; j < p.m; ++j) {
    if (unique[j] && (*fixed)[j] == symbols[j]) {
      ++stats.direct;
    } else {
      ++stats.repaired;
    }
  }
  for (FieldElement v : *fixed) {
    if (v >> p.k) return std::nullopt;  // symbol does not fit a block
  }
  stats.rs_ok = true;
  return from_symbols(*fixed, p.k);
}

}  // namespace

AliceMessage alice_encode(const BitString& x_in, const ProtocolParams& params, const AliceSeeds& seeds) {
  const BitString x = padded(x_in, params);
  AliceMessage msg;
  msg.params = params;
  if (params.mode == Mode::Model3) msg.seeds = seeds;
  msg.sampled = extract(x, sampled_indices(seeds.perm_i, params));
  const Permutation pi_a = permutation_source(params.mode).draw(seeds.perm_a, params.n);
  const BitString xp = apply_permutation(x, pi_a);
  msg.hashes = block_hashes(xp, block_hash_seeds(seeds.hash_indices_a, Role::HashFamilyA, params, params.tau_a),
                            params.k);
  msg.checksums = ReedSolomon(rs_params(params)).checksums(block_symbols(xp, params.k));
  return msg;
}

BobMessage bob_encode(const BitString& y_in, const ProtocolParams& params, const BobSeeds& seeds) {
  const BitString y = padded(y_in, params);
  BobMessage msg;
  msg.params = params;
  if (params.mode == Mode::Model3) msg.seeds = seeds;
  const Permutation pi_b = permutation_source(params.mode).draw(seeds.perm_b, params.n);
  const BitString ypp = apply_permutation(y, pi_b);
  msg.hashes = block_hashes(ypp, block_hash_seeds(seeds.hash_indices_b, Role::HashFamilyB, params, params.tau_b),
                            params.k);
  msg.checksums = ReedSolomon(rs_params(params)).checksums(block_symbols(ypp, params.k));
  return msg;
}

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::None: return "none";
    case FailureKind::PhaseYOverflow: return "phase-y-rs-overflow";
    case FailureKind::PhaseXOverflow: return "phase-x-rs-overflow";
    case FailureKind::Wire: return "wire-error";
    case FailureKind::WrongOutput: return "wrong-output";
  }
  return "unknown";
}

DecodeReport charlie_decode(const AliceMessage& a, const BobMessage& b, const std::optional<AliceSeeds>& alice_seeds,
                            const std::optional<BobSeeds>& bob_seeds) {
  const ProtocolParams& p = a.params;
  if (!same_shape(p, b.params)) throw UsageError("Alice's and Bob's messages use different parameters");
  const std::optional<AliceSeeds> sa = a.seeds ? a.seeds : alice_seeds;
  const std::optional<BobSeeds> sb = b.seeds ? b.seeds : bob_seeds;
  if (!sa || !sb) throw UsageError("decoding needs both parties' seeds (side channel outside Model 3)");
  if (a.sampled.size() != p.sampled_bits() || a.hashes.size() != p.m || b.hashes.size() != p.m ||
      a.checksums.size() != 2 * p.s + 1 || b.checksums.size() != 2 * p.s + 1) {
    throw UsageError("message field sizes do not match the parameters");
  }

  DecodeReport report;
  const PermutationSource& source = permutation_source(p.mode);
  const IndexSet sampled = sampled_indices(sa->perm_i, p);
  const Permutation pi_a = source.draw(sa->perm_a, p.n);
  const Permutation pi_b = source.draw(sb->perm_b, p.n);
  const unsigned k = static_cast<unsigned>(p.k);

  // Alice's sampled bits spread back over their positions in X.
  BitString x_known(p.n);
  {
    std::size_t i = 0;
    for (std::size_t pos : sampled) x_known.set(pos, a.sampled.get(i++));
  }

  // Phase Y: positions of I in Bob's permuted order.
  const IndexSet i_pp = preimage(sampled, pi_b);
  const BitString x_pp = apply_permutation(x_known, pi_b);
  const auto known_y = per_block(i_pp, p.k, p.m);
  const auto hashes_b = block_hash_seeds(sb->hash_indices_b, Role::HashFamilyB, p, p.tau_b);
  const auto ypp = run_phase(p, b.checksums, report.phase_y, [&](std::size_t j) {
    const PackedToeplitz h(hashes_b[j]);
    return reconstruct_block_y(h, k, x_pp.get_bits(j * k, k), known_y[j], b.hashes[j],
                               p.flip_budget(known_y[j].size()));
  });
  if (!ypp) {
    report.failure = FailureKind::PhaseYOverflow;
    return report;
  }
  const BitString y = apply_permutation(*ypp, invert(pi_b));

  // Phase X: positions of I in Alice's permuted order, Y as the reference.
  const IndexSet i_p = preimage(sampled, pi_a);
  const BitString x_p_known = apply_permutation(x_known, pi_a);
  const BitString y_p = apply_permutation(y, pi_a);
  const auto known_x = per_block(i_p, p.k, p.m);
  const auto hashes_a = block_hash_seeds(sa->hash_indices_a, Role::HashFamilyA, p, p.tau_a);
  const auto xp = run_phase(p, a.checksums, report.phase_x, [&](std::size_t j) {
    const PackedToeplitz h(hashes_a[j]);
    return reconstruct_block_x(h, k, x_p_known.get_bits(j * k, k), y_p.get_bits(j * k, k), known_x[j], a.hashes[j],
                               p.flip_budget(p.k - known_x[j].size()));
  });
  if (!xp) {
    report.failure = FailureKind::PhaseXOverflow;
    return report;
  }
  const BitString x = apply_permutation(*xp, invert(pi_a));

  report.success = true;
  report.x = truncate(x, p.original_len);
  report.y = truncate(y, p.original_len);
  report.distance = hamming_distance(report.x, report.y);
  return report;
}

RateBreakdown rate_breakdown(const ProtocolParams& p) {
  RateBreakdown r;
  r.payload_a = p.payload_a_bits();
  r.payload_b = p.payload_b_bits();
  r.ideal = (1 + binary_entropy(p.alpha.value())) * static_cast<double>(p.n);
  r.overhead = static_cast<double>(r.payload_a + r.payload_b) - r.ideal;
  return r;
}

}  // namespace swc
