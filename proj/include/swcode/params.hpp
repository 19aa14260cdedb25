#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace swc {

/// Non-negative fraction num/den with u32 parts, as carried on the wire.
struct Rational {
  std::uint32_t num = 0;
  std::uint32_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// floor(value * count), exact.
  std::size_t floor_times(std::size_t count) const;
  Rational reduced() const;
  std::string to_string() const;
  /// Accepts "p/q" or a plain decimal such as "0.02".
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<std::uint64_t>(a.num) * b.den == static_cast<std::uint64_t>(b.num) * a.den;
  }
};

enum class Mode : std::uint8_t {
  Model1 = 1,  // uniform permutations, independent hashes, shared seeds
  Model2 = 2,  // affine permutations, t-wise hash indices, shared seeds
  Model3 = 3,  // Model 2 generators, seeds sent inside the messages
};

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Optional replacements for the default parameter schedule.
struct ParamOverrides {
  std::optional<std::size_t> k;
  std::optional<double> delta;
  std::optional<unsigned> r;
  std::optional<unsigned> kappa1;
  std::optional<unsigned> kappa2;
  std::optional<double> sigma;
  std::optional<std::size_t> s;
  std::optional<unsigned> w;
  std::optional<std::size_t> t;
};

struct ProtocolParams {
  std::size_t n = 0;              // padded length, multiple of k
  std::size_t original_len = 0;   // caller's length before zero padding
  Rational alpha;
  Rational lambda;
  std::size_t k = 0;
  std::size_t m = 0;
  double delta = 0;
  unsigned r = 0;
  unsigned kappa1 = 3;
  unsigned kappa2 = 2;
  double sigma = 0.1;
  std::size_t s = 0;
  std::size_t tau_a = 0;
  std::size_t tau_b = 0;
  bool tau_a_capped = false;
  bool tau_b_capped = false;
  unsigned w = 0;
  std::size_t t = 1;
  Mode mode = Mode::Model1;

  std::size_t sampled_bits() const { return lambda.floor_times(n); }
  std::size_t checksum_bits() const { return (2 * s + 1) * w; }
  std::size_t payload_a_bits() const { return sampled_bits() + m * tau_a + checksum_bits(); }
  std::size_t payload_b_bits() const { return m * tau_b + checksum_bits(); }
  /// floor((alpha + delta) * size): the per-block flip budget.
  std::size_t flip_budget(std::size_t size) const;
  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

/// ceil(log2 n) for n >= 2.
std::size_t ceil_log2(std::size_t n);

/// Unpadded tau_A / tau_B before capping at k.
double tau_a_formula(double h_alpha, double lambda, std::size_t k, double delta, unsigned kappa1, unsigned kappa2,
                     unsigned r);
double tau_b_formula(double h_alpha, double lambda, std::size_t k, double delta, unsigned kappa1, unsigned kappa2,
                     unsigned r);

/// Default schedule for an input of `length` bits: k = ceil(log2 length),
/// n = length rounded up to a multiple of k, delta = k^-0.49,
/// r = ceil(2 log2 k), s = ceil(sigma m), w = max(k, ceil(log2(m+2s+2))),
/// t = ceil(sqrt m). Throws UsageError on inconsistent values.
ProtocolParams derive_params(std::size_t length, Rational alpha, Rational lambda, Mode mode,
                             const ParamOverrides& overrides = {});

/// Rebuilds parameters from the fields carried in a message header; delta
/// and t come from the defaults or `overrides`.
ProtocolParams params_from_header(std::size_t n, std::size_t original_len, Rational alpha, Rational lambda, Mode mode,
                                  std::size_t k, std::size_t s, unsigned w, unsigned r, unsigned kappa1,
                                  unsigned kappa2, const ParamOverrides& overrides = {});

}  // namespace swc
