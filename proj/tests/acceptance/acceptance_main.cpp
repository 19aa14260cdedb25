// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "swcode/bits.hpp"
#include "swcode/block_search.hpp"
#include "swcode/hashing.hpp"
#include "swcode/linear_scheme.hpp"
#include "swcode/params.hpp"
#include "swcode/permutation.hpp"
#include "swcode/protocol.hpp"
#include "swcode/rates.hpp"
#include "swcode/reed_solomon.hpp"
#include "swcode/simulation.hpp"

namespace {

using namespace swc;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Monte-Carlo success rate at the default schedule.
Verdict protocol_end_to_end() {
  SimulationConfig cfg;
  cfg.n = 4096;
  cfg.alpha = Rational{1, 50};
  cfg.lambda = Rational{1, 2};
  cfg.trials = 200;
  cfg.master_seed = 1;
  cfg.mode = Mode::Model1;
  const auto start = std::chrono::steady_clock::now();
  const auto result = run_simulation(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto& s = result.summary;
  const std::size_t rs_overflow = s.phase_y_overflow + s.phase_x_overflow;
  const std::size_t other = s.wire_errors + s.wrong_output;
  const bool rs_dominant = rs_overflow >= other;
  const bool ok = s.params.n == 4104 && s.success_fraction() >= 0.95 && secs <= 300 && rs_dominant;
  return {ok, fmt("n=%zu successes=%zu/%zu (%.3f) failures: phase-Y RS=%zu phase-X RS=%zu wire=%zu wrong=%zu; "
                  "%.1fs on %u workers",
                  s.params.n, s.successes, s.trials, s.success_fraction(), s.phase_y_overflow, s.phase_x_overflow,
                  s.wire_errors, s.wrong_output, secs, default_workers())};
}

// 2. Exact payload sizes and a shrinking overhead ratio.
Verdict rate_identity() {
  const Rational alpha{1, 50};
  const Rational lambda{1, 2};
  const double h = binary_entropy(alpha.value());
  bool exact = true;
  std::vector<double> ratios;
  for (std::size_t len : {1024u, 4096u, 16384u}) {
    const auto p = derive_params(len, alpha, lambda, Mode::Model1);
    PrgStream rng(derive_seed(9, len, Role::Workload));
    BitString x(len);
    for (std::size_t i = 0; i < len; ++i) x.set(i, rng.next_bit());
    const auto a = alice_encode(x, p, make_alice_seeds(9));
    const auto b = bob_encode(x, p, make_bob_seeds(9));
    const std::size_t want_a = lambda.floor_times(p.n) + p.m * p.tau_a + (2 * p.s + 1) * p.w;
    const std::size_t want_b = p.m * p.tau_b + (2 * p.s + 1) * p.w;
    exact = exact && a.payload_bits() == want_a && b.payload_bits() == want_b;
    const double nd = static_cast<double>(p.n);
    ratios.push_back((static_cast<double>(a.payload_bits() + b.payload_bits()) - (1 + h) * nd) / nd);
  }
  const bool decreasing = ratios[0] > ratios[1] && ratios[1] > ratios[2];
  return {exact && decreasing,
          fmt("payload formula exact=%s; E(n)/n = %.4f, %.4f, %.4f", exact ? "yes" : "no", ratios[0], ratios[1],
              ratios[2])};
}

// 3. Every corruption of at most s positions is repaired.
Verdict reed_solomon_round_trip() {
  const RSParams params{8, 2, 4};
  PrgStream rng(derive_seed(3, 0, Role::Workload));
  std::vector<std::vector<std::size_t>> subsets{{}};
  for (std::size_t i = 0; i < 8; ++i) {
    subsets.push_back({i});
    for (std::size_t j = i + 1; j < 8; ++j) subsets.push_back({i, j});
  }
  std::size_t runs = 0;
  std::size_t failures = 0;
  for (const auto& subset : subsets) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<FieldElement> data(8);
      for (auto& d : data) d = static_cast<FieldElement>(rng.uniform(16));
      const auto checks = rs_checksums(data, params);
      auto received = data;
      for (std::size_t pos : subset) received[pos] ^= static_cast<FieldElement>(1 + rng.uniform(15));
      const auto out = rs_correct(received, checks, params);
      ++runs;
      if (!out || *out != data) ++failures;
    }
  }
  return {failures == 0 && subsets.size() == 37,
          fmt("%zu position subsets x 50 values = %zu decodes, %zu failures", subsets.size(), runs, failures)};
}

// 4. Collision probability exactly 2^-tau for every distinct pair.
Verdict toeplitz_universality() {
  constexpr std::size_t kIn = 4;
  constexpr std::size_t kTau = 2;
  const std::size_t seed_bits = ToeplitzHashSeed::seed_bits(kIn, kTau);
  std::vector<std::vector<std::uint64_t>> digests;  // [seed][x]
  bool matches_dense = true;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << seed_bits); ++s) {
    const auto seed_string = BitString::from_uint(s, seed_bits);
    const auto seed = ToeplitzHashSeed::from_bits(seed_string, kIn, kTau);
    std::vector<std::uint64_t> row;
    for (std::uint64_t x = 0; x < 16; ++x) {
      // Dense product: T[i][j] = diagonal bit (i - j + n_in - 1), then the offset.
      std::uint64_t dense = 0;
      for (std::size_t i = 0; i < kTau; ++i) {
        bool bit = seed_string.get(kIn + kTau - 1 + i);
        for (std::size_t j = 0; j < kIn; ++j) {
          bit ^= seed_string.get(i + kIn - 1 - j) && ((x >> (kIn - 1 - j)) & 1U);
        }
        dense = dense << 1 | (bit ? 1U : 0U);
      }
      const auto digest = hash_eval(seed, BitString::from_uint(x, kIn), kTau).get_bits(0, kTau);
      matches_dense = matches_dense && digest == dense;
      row.push_back(digest);
    }
    digests.push_back(row);
  }
  std::size_t pairs = 0;
  std::size_t exact = 0;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = a + 1; b < 16; ++b) {
      std::size_t collisions = 0;
      for (const auto& row : digests) collisions += row[a] == row[b] ? 1 : 0;
      ++pairs;
      if (collisions * 4 == digests.size()) ++exact;
    }
  }
  return {matches_dense && exact == pairs,
          fmt("%zu seeds, %zu/%zu pairs collide on exactly 1/4 of seeds, dense-product check %s", digests.size(),
              exact, pairs, matches_dense ? "ok" : "MISMATCH")};
}

// 5. Affine maps on GF(8) are exactly 2-independent.
Verdict affine_two_independence() {
  std::vector<Permutation> perms;
  for (FieldElement a = 1; a < 8; ++a) {
    for (FieldElement b = 0; b < 8; ++b) perms.push_back(permutation_affine(a, b, 3));
  }
  std::size_t input_pairs = 0;
  std::size_t uniform = 0;
  for (std::size_t i1 = 0; i1 < 8; ++i1) {
    for (std::size_t i2 = 0; i2 < 8; ++i2) {
      if (i1 == i2) continue;
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
      bool collide = false;
      for (const auto& p : perms) {
        collide = collide || p(i1) == p(i2);
        ++counts[{p(i1), p(i2)}];
      }
      ++input_pairs;
      const bool flat = !collide && counts.size() == 56 &&
                        std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; });
      if (flat) ++uniform;
    }
  }
  return {perms.size() == 56 && uniform == input_pairs,
          fmt("%zu seeds; %zu/%zu input pairs hit all 56 ordered output pairs once", perms.size(), uniform,
              input_pairs)};
}

// 6. Syndrome scheme on Hamming(7,4), exhaustive.
Verdict deterministic_scheme() {
  const auto code = hamming_code(3);
  bool all = true;
  std::string detail;
  for (double lambda : {0.0, 0.5, 1.0}) {
    const std::size_t split = det_split(code, lambda);
    std::size_t ok = 0;
    std::size_t total = 0;
    bool lengths = true;
    for (std::uint64_t v = 0; v < 128; ++v) {
      const auto x = BitString::from_uint(v, 7);
      for (std::size_t e = 0; e <= 7; ++e) {
        BitString y = x;
        if (e < 7) y.flip(e);
        const auto ma = det_encode_alice(x, code, split);
        const auto mb = det_encode_bob(y, code, split);
        lengths = lengths && ma.size() + mb.size() == code.n() + code.checks();
        const auto out = det_decode(ma, mb, code, split);
        ++total;
        if (out && out->first == x && out->second == y) ++ok;
      }
    }
    all = all && ok == 1024 && total == 1024 && lengths;
    detail += fmt("%slambda=%.1f %zu/%zu (m_A+m_B=n+k_H %s)", detail.empty() ? "" : "; ", lambda, ok, total,
                  lengths ? "holds" : "FAILS");
  }
  return {all, detail};
}

// 7. Region math.
Verdict region_math() {
  const bool ap = alpha_prime(3.0 / 16) == 0.25;
  const bool half = binary_entropy(0.5) == 1.0;
  const long double oracle = 2.0L - 0.75L * std::log2(3.0L);
  const double quarter = binary_entropy(0.25);
  const bool quarter_ok = std::fabs(quarter - static_cast<double>(oracle)) <= 1e-6 &&
                          std::fabs(quarter - 0.8112781) <= 1e-6;
  std::size_t points = 0;
  std::size_t conflicts = 0;
  for (double a : {0.02, 0.05, 0.1, 0.2}) {
    for (const auto& row : region_grid(a, 0.01, 0)) {
      ++points;
      if (labels_conflict(row.labels)) ++conflicts;
    }
  }
  return {ap && half && quarter_ok && conflicts == 0,
          fmt("alpha'(3/16)=%.17g h(1/2)=%.17g h(1/4)=%.10f; %zu grid points, %zu conflicts", alpha_prime(3.0 / 16),
              binary_entropy(0.5), quarter, points, conflicts)};
}

// 8. Johnson-bound verifier on random low-weight sets.
Verdict johnson() {
  PrgStream rng(derive_seed(8, 0, Role::Workload));
  std::size_t counterexamples = 0;
  std::size_t bad_pairs = 0;
  std::size_t max_dist = 0;
  for (int set = 0; set < 1000; ++set) {
    std::vector<BitString> vectors;
    while (vectors.size() < 61) {
      BitString v(30);
      const auto w = rng.uniform(4);
      for (std::uint64_t i = 0; i < w; ++i) v.set(static_cast<std::size_t>(rng.uniform(30)), true);
      if (std::find(vectors.begin(), vectors.end(), v) == vectors.end()) vectors.push_back(v);
    }
    const auto pair = johnson_pair_search(vectors, 0.1);
    if (!pair) {
      ++counterexamples;
      continue;
    }
    const std::size_t d = hamming_distance(vectors[pair->first], vectors[pair->second]);
    max_dist = std::max(max_dist, d);
    if (d > 6) ++bad_pairs;
  }
  return {counterexamples == 0 && bad_pairs == 0,
          fmt("1000 sets of 61 vectors: %zu counterexamples, %zu pairs beyond distance 6 (max found %zu)",
              counterexamples, bad_pairs, max_dist)};
}

// 9. Structured block search against the full 2^k filter.
Verdict block_search_oracle() {
  constexpr unsigned kK = 8;
  PrgStream rng(derive_seed(9, 0, Role::Workload));
  std::size_t agree = 0;
  std::map<BlockOutcome, std::size_t> seen;
  for (int inst = 0; inst < 500; ++inst) {
    const std::size_t tau = 3 + rng.uniform(6);
    const auto seed = ToeplitzHashSeed::expand(rng, kK, tau);
    const PackedToeplitz hash(seed);
    const bool y_side = rng.next_bit();
    std::vector<unsigned> known;
    for (unsigned p = 0; p < kK; ++p) {
      if (rng.next_bit()) known.push_back(p);
    }
    const std::uint64_t alice = rng.next_bits(kK);
    const std::uint64_t y_block = rng.next_bits(kK);
    const std::size_t budget = rng.uniform(3);
    std::uint64_t truth = rng.next_bits(kK);
    if (rng.uniform(4) != 0) {
      // Usually plant a consistent truth so Unique outcomes occur.
      truth = y_side ? alice : y_block;
      for (unsigned p : known) {
        const bool bit = (alice >> (kK - 1 - p)) & 1U;
        truth = (truth & ~(std::uint64_t{1} << (kK - 1 - p))) | (std::uint64_t{bit} << (kK - 1 - p));
      }
    }
    const auto digest = [&](std::uint64_t z) {
      return hash_eval(seed, BitString::from_uint(z, kK), tau).get_bits(0, static_cast<unsigned>(tau));
    };
    const std::uint64_t target = digest(truth);

    // Brute force over all 2^k blocks with the dense hash.
    std::size_t matches = 0;
    std::uint64_t value = 0;
    for (std::uint64_t z = 0; z < (1U << kK); ++z) {
      std::size_t flips = 0;
      bool ok = true;
      for (unsigned p = 0; p < kK; ++p) {
        const bool is_known = std::find(known.begin(), known.end(), p) != known.end();
        const std::uint64_t bit = std::uint64_t{1} << (kK - 1 - p);
        if (y_side) {
          if (is_known && ((z ^ alice) & bit)) ++flips;
        } else if (is_known) {
          ok = ok && !((z ^ alice) & bit);
        } else if ((z ^ y_block) & bit) {
          ++flips;
        }
      }
      if (!ok || flips > budget || digest(z) != target) continue;
      if (matches++ == 0) value = z;
    }
    const BlockOutcome want = matches == 0 ? BlockOutcome::NoCandidate
                                           : (matches == 1 ? BlockOutcome::Unique : BlockOutcome::Ambiguous);

    const BlockResult got = y_side ? reconstruct_block_y(hash, kK, alice, known, target, budget)
                                   : reconstruct_block_x(hash, kK, alice, y_block, known, target, budget);
    ++seen[want];
    if (got.outcome == want && (want != BlockOutcome::Unique || got.value == value)) ++agree;
  }
  return {agree == 500, fmt("%zu/500 agree (unique=%zu none=%zu ambiguous=%zu)", agree,
                            seen[BlockOutcome::Unique], seen[BlockOutcome::NoCandidate],
                            seen[BlockOutcome::Ambiguous])};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"randomized protocol end to end", protocol_end_to_end},
      {"rate identity and overhead trend", rate_identity},
      {"Reed-Solomon exhaustive round trip", reed_solomon_round_trip},
      {"Toeplitz hash universality", toeplitz_universality},
      {"affine permutation 2-independence", affine_two_independence},
      {"deterministic scheme exhaustive", deterministic_scheme},
      {"region math", region_math},
      {"Johnson verifier", johnson},
      {"block search oracle equivalence", block_search_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
