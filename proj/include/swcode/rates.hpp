#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swcode/bits.hpp"

namespace swc {

/// h(a) = -a log2 a - (1-a) log2(1-a), with h(0) = h(1) = 0.
double binary_entropy(double alpha);

/// (1 - sqrt(1 - 4a)) / 2 for 0 < a <= 1/4 (a = 0 maps to 0).
double alpha_prime(double alpha);

/// Elias-Bassalygo exponent F(x) = h(1/2 - sqrt(1 - 2x)/2) for 0 <= x <= 1/2.
/// Arguments above 1/2 saturate at 1.
double elias_bassalygo_F(double x);

/// True when the corner (m_A, m_B) = ((h(a) + d2) n, (1 - d1) n) violates
/// d2 >= (1 - d1) F(2a / (1 - d1)) - h(a), i.e. no scheme reaches it.
bool orlitsky_forbidden(double delta1, double delta2, double alpha);

struct RatePoint {
  double rho_a = 0;
  double rho_b = 0;
};

/// Bit set of region labels; tokens are emitted in declaration order.
enum RegionLabel : unsigned {
  kForbiddenCounting = 1U << 0,
  kForbiddenSemilinear = 1U << 1,
  kForbiddenOrlitsky = 1U << 2,
  kAchievableDeterministic = 1U << 3,
  kAchievableRandomized = 1U << 4,
};
using RegionLabels = unsigned;

/// "forbidden-counting|achievable-randomized", or "unknown" for the empty set.
std::string labels_to_string(RegionLabels labels);

/// Labels from the counting bound, the semi-linear bound (via alpha_prime),
/// the Elias-Bassalygo corner bound, the linear syndrome scheme and the
/// randomized protocol. `slack` absorbs all lower-order terms.
RegionLabels classify_rate_pair(RatePoint p, double alpha, double slack);

/// True when `labels` mixes a forbidden label with an achievable label for
/// the same class of schemes. Counting bounds cover every scheme; the
/// semi-linear and corner bounds only cover deterministic schemes.
bool labels_conflict(RegionLabels labels);

struct RegionRow {
  double rho_a = 0;
  double rho_b = 0;
  RegionLabels labels = 0;
};

/// Grid over [0, 1.2]^2 with the given step, rho_a outer, rho_b inner.
std::vector<RegionRow> region_grid(double alpha, double step, double slack);
/// CSV with header `rho_a,rho_b,labels`.
std::string region_csv(double alpha, double step, double slack);

/// First pair (i < j, lexicographic) at distance <= floor(2 alpha n), if any.
std::optional<std::pair<std::size_t, std::size_t>> johnson_pair_search(const std::vector<BitString>& vectors,
                                                                       double alpha);

}  // namespace swc
