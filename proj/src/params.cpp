#include "swcode/params.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>

#include "swcode/bits.hpp"
#include "swcode/galois_field.hpp"
#include "swcode/rates.hpp"

namespace swc {

namespace {

constexpr double kRoundingSlack = 1e-9;

std::size_t ceil_tolerant(double x) { return static_cast<std::size_t>(std::ceil(x - kRoundingSlack)); }

std::uint64_t parse_u64(std::string_view text, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::size_t Rational::floor_times(std::size_t count) const {
  // Split to keep num * count within 64 bits for any count below 2^32 * den.
  const std::uint64_t q = count / den;
  const std::uint64_t rem = count % den;
  return static_cast<std::size_t>(q * num + rem * num / den);
}

Rational Rational::reduced() const {
  const std::uint32_t g = std::gcd(num, den);
  return g == 0 ? *this : Rational{num / g, den / g};
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_u64(text.substr(0, slash), "numerator");
    const auto den = parse_u64(text.substr(slash + 1), "denominator");
    if (den == 0 || num > UINT32_MAX || den > UINT32_MAX) throw UsageError("fraction out of range");
    return Rational{static_cast<std::uint32_t>(num), static_cast<std::uint32_t>(den)}.reduced();
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (frac.size() > 9) throw UsageError("too many decimal places in '" + std::string(text) + "'");
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole, "number");
  const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac, "number");
  if (whole.empty() && frac.empty()) throw UsageError("empty number");
  const std::uint64_t num = w * den + f;
  if (num > UINT32_MAX || den > UINT32_MAX) throw UsageError("fraction out of range");
  const std::uint64_t g = std::gcd(num, den);
  return Rational{static_cast<std::uint32_t>(num / g), static_cast<std::uint32_t>(den / g)};
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Model1: return "model1";
    case Mode::Model2: return "model2";
    case Mode::Model3: return "model3";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "model1" || text == "1") return Mode::Model1;
  if (text == "model2" || text == "2") return Mode::Model2;
  if (text == "model3" || text == "3") return Mode::Model3;
  throw UsageError("unknown mode '" + std::string(text) + "' (expected model1, model2 or model3)");
}

std::size_t ProtocolParams::flip_budget(std::size_t size) const {
  return static_cast<std::size_t>(std::floor((alpha.value() + delta) * static_cast<double>(size) + kRoundingSlack));
}

std::size_t ceil_log2(std::size_t n) {
  if (n < 2) throw UsageError("ceil_log2 needs n >= 2");
  return static_cast<std::size_t>(std::bit_width(n - 1));
}

double tau_a_formula(double h_alpha, double lambda, std::size_t k, double delta, unsigned kappa1, unsigned kappa2,
                     unsigned r) {
  const double kd = static_cast<double>(k);
  return h_alpha * (1 - lambda) * kd + kappa1 * delta * kd + kappa2 * std::log2(kd) + r;
}

double tau_b_formula(double h_alpha, double lambda, std::size_t k, double delta, unsigned kappa1, unsigned kappa2,
                     unsigned r) {
  const double kd = static_cast<double>(k);
  return (1 - lambda) * kd + h_alpha * lambda * kd + kappa1 * delta * kd + kappa2 * std::log2(kd) + r;
}

namespace {

void finish(ProtocolParams& p, const ParamOverrides& o) {
  if (p.k == 0 || p.k > kMaxFieldWidth) throw UsageError("block length k must be in 1..16");
  if (p.n % p.k != 0) throw UsageError("padded length is not a multiple of k");
  if (p.alpha.value() >= 0.5) throw UsageError("alpha must be below 1/2");
  if (p.lambda.value() > 1.0) throw UsageError("lambda must lie in [0, 1]");
  p.m = p.n / p.k;
  p.delta = o.delta.value_or(std::pow(static_cast<double>(p.k), -0.49));
  if (!(p.delta >= 0)) throw UsageError("delta must be non-negative");
  p.t = o.t.value_or(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p.m)))));
  if (p.t == 0) throw UsageError("t must be at least 1");
  const double h = binary_entropy(p.alpha.value());
  const double lam = p.lambda.value();
  const auto cap = [&](double raw, std::size_t& tau, bool& capped) {
    const std::size_t v = std::max<std::size_t>(1, ceil_tolerant(raw));
    capped = v > p.k;
    tau = capped ? p.k : v;
  };
  cap(tau_a_formula(h, lam, p.k, p.delta, p.kappa1, p.kappa2, p.r), p.tau_a, p.tau_a_capped);
  cap(tau_b_formula(h, lam, p.k, p.delta, p.kappa1, p.kappa2, p.r), p.tau_b, p.tau_b_capped);
  if (p.w < p.k || p.w > kMaxFieldWidth) throw UsageError("symbol width w must satisfy k <= w <= 16");
  if (p.m + 2 * p.s + 1 > (std::size_t{1} << p.w)) throw UsageError("m + 2s + 1 exceeds the field size 2^w");
}

}  // namespace

ProtocolParams derive_params(std::size_t length, Rational alpha, Rational lambda, Mode mode,
                             const ParamOverrides& o) {
  if (length < 4) throw UsageError("input length must be at least 4 bits");
  if (alpha.den == 0 || lambda.den == 0) throw UsageError("zero denominator");
  ProtocolParams p;
  p.original_len = length;
  p.alpha = alpha;
  p.lambda = lambda;
  p.mode = mode;
  p.k = o.k.value_or(ceil_log2(length));
  if (p.k == 0) throw UsageError("block length k must be positive");
  p.n = (length + p.k - 1) / p.k * p.k;
  p.m = p.n / p.k;
  p.r = o.r.value_or(static_cast<unsigned>(ceil_tolerant(2 * std::log2(static_cast<double>(p.k)))));
  p.kappa1 = o.kappa1.value_or(3);
  p.kappa2 = o.kappa2.value_or(2);
  p.sigma = o.sigma.value_or(0.1);
  if (!(p.sigma >= 0)) throw UsageError("sigma must be non-negative");
  p.s = o.s.value_or(ceil_tolerant(p.sigma * static_cast<double>(p.m)));
  p.w = o.w.value_or(static_cast<unsigned>(
      std::max<std::size_t>(p.k, ceil_tolerant(std::log2(static_cast<double>(p.m + 2 * p.s + 2))))));
  finish(p, o);
  return p;
}

ProtocolParams params_from_header(std::size_t n, std::size_t original_len, Rational alpha, Rational lambda, Mode mode,
                                  std::size_t k, std::size_t s, unsigned w, unsigned r, unsigned kappa1,
                                  unsigned kappa2, const ParamOverrides& o) {
  if (alpha.den == 0 || lambda.den == 0) throw UsageError("zero denominator");
  if (k == 0 || n == 0 || n % k != 0) throw UsageError("n must be a positive multiple of k");
  if (original_len > n || original_len + k <= n) throw UsageError("original length inconsistent with n and k");
  ProtocolParams p;
  p.n = n;
  p.original_len = original_len;
  p.alpha = alpha;
  p.lambda = lambda;
  p.mode = mode;
  p.k = k;
  p.s = s;
  p.w = w;
  p.r = r;
  p.kappa1 = kappa1;
  p.kappa2 = kappa2;
  p.m = n / k;
  p.sigma = static_cast<double>(s) / static_cast<double>(p.m);
  finish(p, o);
  return p;
}

}  // namespace swc
