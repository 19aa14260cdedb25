#include "swcode/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace swc {

namespace {

constexpr double kEps = 1e-9;

void check_fraction(double x, double hi, const char* what) {
  if (!(x >= 0.0 && x <= hi)) throw UsageError(std::string(what) + " out of range");
}

}  // namespace

double binary_entropy(double a) {
  check_fraction(a, 1.0, "entropy argument");
  if (a == 0.0 || a == 1.0) return 0.0;
  return -a * std::log2(a) - (1 - a) * std::log2(1 - a);
}

double alpha_prime(double a) {
  check_fraction(a, 0.25, "alpha for alpha_prime");
  return (1 - std::sqrt(1 - 4 * a)) / 2;
}

double elias_bassalygo_F(double x) {
  if (!(x >= 0.0)) throw UsageError("Elias-Bassalygo argument must be non-negative");
  if (x >= 0.5) return 1.0;
  return binary_entropy(0.5 - 0.5 * std::sqrt(1 - 2 * x));
}

bool orlitsky_forbidden(double delta1, double delta2, double alpha) {
  if (!(delta1 >= 0.0 && delta1 < 1.0)) throw UsageError("delta1 must lie in [0, 1)");
  check_fraction(alpha, 0.5, "alpha");
  const double scale = 1 - delta1;
  return delta2 < scale * elias_bassalygo_F(2 * alpha / scale) - binary_entropy(alpha);
}

std::string labels_to_string(RegionLabels labels) {
  static constexpr const char* kNames[] = {"forbidden-counting", "forbidden-semilinear", "forbidden-orlitsky",
                                           "achievable-deterministic", "achievable-randomized"};
  std::string out;
  for (unsigned i = 0; i < 5; ++i) {
    if (labels & (1U << i)) {
      if (!out.empty()) out += '|';
      out += kNames[i];
    }
  }
  return out.empty() ? "unknown" : out;
}

RegionLabels classify_rate_pair(RatePoint p, double alpha, double slack) {
  check_fraction(alpha, 0.5, "alpha");
  if (!(slack >= 0)) throw UsageError("slack must be non-negative");
  const double lo = std::min(p.rho_a, p.rho_b);
  const double sum = p.rho_a + p.rho_b;
  RegionLabels out = 0;

  const double h = binary_entropy(alpha);
  if (lo < h - slack - kEps || sum < 1 + h - slack - kEps) out |= kForbiddenCounting;

  if (alpha > 0 && alpha < 0.25) {
    const double hp = binary_entropy(alpha_prime(alpha));
    if (lo < hp - slack - kEps || sum < 1 + hp - slack - kEps) out |= kForbiddenSemilinear;
  }

  // Corner bound, applied at each party's side of the region.
  const auto corner = [&](double low, double high) {
    const double d1 = std::max(0.0, 1 - high);
    if (d1 >= 1) return false;
    return orlitsky_forbidden(d1, low - h + slack + kEps, alpha);
  };
  if (alpha > 0 && (corner(p.rho_a, p.rho_b) || corner(p.rho_b, p.rho_a))) out |= kForbiddenOrlitsky;

  if (alpha < 0.25) {
    const double h2 = binary_entropy(2 * alpha);
    if (lo >= h2 + slack - kEps && sum >= 1 + h2 + slack - kEps) out |= kAchievableDeterministic;
  }
  if (lo >= h + slack - kEps && sum >= 1 + h + slack - kEps) out |= kAchievableRandomized;
  return out;
}

bool labels_conflict(RegionLabels labels) {
  const bool any_achievable = (labels & (kAchievableDeterministic | kAchievableRandomized)) != 0;
  if ((labels & kForbiddenCounting) && any_achievable) return true;
  return (labels & (kForbiddenSemilinear | kForbiddenOrlitsky)) && (labels & kAchievableDeterministic);
}

std::vector<RegionRow> region_grid(double alpha, double step, double slack) {
  if (!(step > 0)) throw UsageError("grid step must be positive");
  const auto count = static_cast<std::size_t>(std::floor(1.2 / step + kEps)) + 1;
  std::vector<RegionRow> rows;
  rows.reserve(count * count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      const double a = static_cast<double>(i) * step;
      const double b = static_cast<double>(j) * step;
      rows.push_back({a, b, classify_rate_pair({a, b}, alpha, slack)});
    }
  }
  return rows;
}

std::string region_csv(double alpha, double step, double slack) {
  std::string out = "rho_a,rho_b,labels\n";
  char buf[64];
  for (const auto& row : region_grid(alpha, step, slack)) {
    std::snprintf(buf, sizeof buf, "%.6g,%.6g,", row.rho_a, row.rho_b);
    out += buf;
    out += labels_to_string(row.labels);
    out += '\n';
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> johnson_pair_search(const std::vector<BitString>& vectors,
                                                                       double alpha) {
  if (vectors.empty()) return std::nullopt;
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw UsageError("vectors must share one length");
  }
  const auto limit = static_cast<std::size_t>(std::floor(2 * alpha * static_cast<double>(n) + kEps));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      if (hamming_distance(vectors[i], vectors[j]) <= limit) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace swc
