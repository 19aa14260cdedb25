#include "swcode/linear_scheme.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <sstream>

#include "swcode/galois_field.hpp"
#include "swcode/prg.hpp"

namespace swc {

namespace {

bool parity(std::uint64_t v) { return (std::popcount(v) & 1) != 0; }

// Visits every subset of 0..n-1 of size <= limit (including the empty set).
template <typename Fn>
void for_each_pattern(std::size_t n, std::size_t limit, Fn&& fn) {
  std::vector<std::size_t> combo;
  for (std::size_t size = 0; size <= std::min(limit, n); ++size) {
    combo.resize(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = i;
    for (;;) {
      fn(combo);
      std::size_t i = size;
      while (i > 0 && combo[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
}

BitString to_bits(std::uint64_t v, std::size_t len) { return BitString::from_uint(v, len); }

}  // namespace

LinearCode::LinearCode(std::string name, std::size_t n, std::vector<BitString> rows, std::size_t radius)
    : name_(std::move(name)), n_(n), rows_(std::move(rows)), radius_(radius) {
  const std::size_t c = rows_.size();
  if (n_ == 0 || n_ > 64) throw UsageError("code length must be in 1..64");
  if (c == 0 || c > n_) throw UsageError("number of checks must be in 1..n");
  for (const auto& row : rows_) {
    if (row.size() != n_) throw UsageError("parity-check row has the wrong length");
  }
  columns_.assign(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t r = 0; r < c; ++r) {
      if (rows_[r].get(j)) columns_[j] |= std::uint64_t{1} << (c - 1 - r);
    }
  }

  // Greedy independent columns from the right end become the dependent block.
  std::vector<std::uint64_t> basis;
  std::vector<std::size_t> chosen;
  for (std::size_t j = n_; j-- > 0 && chosen.size() < c;) {
    std::uint64_t v = columns_[j];
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
      chosen.push_back(j);
    }
  }
  if (chosen.size() != c) throw UsageError("parity-check matrix does not have full row rank");
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::uint32_t> order;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!std::binary_search(chosen.begin(), chosen.end(), j)) order.push_back(static_cast<std::uint32_t>(j));
  }
  for (std::size_t j : chosen) order.push_back(static_cast<std::uint32_t>(j));
  order_ = Permutation(std::move(order));

  // Gauss-Jordan on [B | I] with B[r][col] = H[r][chosen[col]].
  std::vector<std::uint64_t> b(c, 0), inv(c, 0);
  for (std::size_t r = 0; r < c; ++r) {
    for (std::size_t col = 0; col < c; ++col) {
      if (rows_[r].get(chosen[col])) b[r] |= std::uint64_t{1} << (c - 1 - col);
    }
    inv[r] = std::uint64_t{1} << (c - 1 - r);
  }
  for (std::size_t col = 0; col < c; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << (c - 1 - col);
    std::size_t p = col;
    while (p < c && !(b[p] & bit)) ++p;
    if (p == c) throw UsageError("dependent minor is singular");
    std::swap(b[p], b[col]);
    std::swap(inv[p], inv[col]);
    for (std::size_t r = 0; r < c; ++r) {
      if (r != col && (b[r] & bit)) {
        b[r] ^= b[col];
        inv[r] ^= inv[col];
      }
    }
  }
  minor_inverse_ = std::move(inv);

  // Radius certificate: every pattern of weight <= radius has its own syndrome.
  for_each_pattern(n_, radius_, [&](const std::vector<std::size_t>& combo) {
    std::uint64_t syn = 0;
    BitString e(n_);
    for (std::size_t j : combo) {
      syn ^= columns_[j];
      e.set(j, true);
    }
    if (!table_.emplace(syn, std::move(e)).second) {
      throw UsageError("code " + name_ + " does not correct " + std::to_string(radius_) + " errors");
    }
  });
}

std::uint64_t LinearCode::packed_syndrome(const BitString& z) const {
  if (z.size() != n_) throw UsageError("string length does not match the code length");
  std::uint64_t syn = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (z.get(j)) syn ^= columns_[j];
  }
  return syn;
}

BitString LinearCode::syndrome(const BitString& z) const { return to_bits(packed_syndrome(z), checks()); }

std::optional<BitString> LinearCode::syndrome_decode(const BitString& syn) const {
  if (syn.size() != checks()) throw UsageError("syndrome length does not match the code");
  const auto it = table_.find(syn.get_bits(0, static_cast<unsigned>(checks())));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::size_t LinearCode::minimum_distance() const {
  const std::size_t c = checks();
  const std::size_t dim = n_ - c;
  if (dim == 0) return n_ + 1;
  if (dim > 30) throw UsageError("code dimension too large for exhaustive distance");
  // Kernel basis in internal order: free bit i set, dependent bits solved.
  std::vector<BitString> basis;
  for (std::size_t i = 0; i < dim; ++i) {
    BitString internal(n_);
    internal.set(i, true);
    basis.push_back(apply_permutation(complete(internal, BitString(c)), invert(order_)));
  }
  std::size_t best = n_ + 1;
  BitString word(n_);
  // Gray-code walk over all nonzero codewords.
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << dim); ++g) {
    word ^= basis[static_cast<std::size_t>(std::countr_zero(g))];
    best = std::min(best, weight(word));
  }
  return best;
}

BitString LinearCode::complete(BitString internal, const BitString& syn) const {
  const std::size_t c = checks();
  if (internal.size() != n_ || syn.size() != c) throw UsageError("dimension mismatch in linear solve");
  std::uint64_t v = syn.get_bits(0, static_cast<unsigned>(c));
  for (std::size_t j = 0; j + c < n_; ++j) {
    if (internal.get(j)) v ^= columns_[order_(j)];
  }
  for (std::size_t i = 0; i < c; ++i) internal.set(n_ - c + i, parity(minor_inverse_[i] & v));
  return internal;
}

std::string LinearCode::serialize() const {
  std::ostringstream out;
  out << "swc-linear-code 1\n";
  out << "name " << name_ << "\n";
  out << "n " << n_ << "\n";
  out << "checks " << checks() << "\n";
  out << "radius " << radius_ << "\n";
  out << "order";
  for (std::uint32_t v : order_.forward()) out << ' ' << v;
  out << "\n";
  for (const auto& row : rows_) out << "row " << row.to_string() << "\n";
  return out.str();
}

LinearCode LinearCode::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "swc-linear-code 1") throw UsageError("not a linear code file");
  std::string name;
  std::size_t n = 0, checks = 0, radius = 0;
  std::vector<std::uint32_t> order;
  std::vector<BitString> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "name") {
      fields >> name;
    } else if (key == "n") {
      fields >> n;
    } else if (key == "checks") {
      fields >> checks;
    } else if (key == "radius") {
      fields >> radius;
    } else if (key == "order") {
      std::uint32_t v;
      while (fields >> v) order.push_back(v);
    } else if (key == "row") {
      std::string bits;
      fields >> bits;
      rows.push_back(BitString::from_string(bits));
    } else {
      throw UsageError("unknown key '" + key + "' in code file");
    }
    if (fields.fail() && !fields.eof()) throw UsageError("malformed line in code file: " + line);
  }
  if (rows.size() != checks) throw UsageError("code file row count does not match 'checks'");
  LinearCode code(name, n, std::move(rows), radius);
  if (!order.empty() && order != code.order().forward()) {
    throw UsageError("recorded column order does not match the matrix");
  }
  return code;
}

LinearCode hamming_code(unsigned r) {
  if (r < 2 || r > 6) throw UsageError("hamming(r) supports 2 <= r <= 6");
  const std::size_t n = (std::size_t{1} << r) - 1;
  std::vector<BitString> rows(r, BitString(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (unsigned i = 0; i < r; ++i) rows[i].set(j, ((j + 1) >> (r - 1 - i)) & 1U);
  }
  return LinearCode("hamming(" + std::to_string(r) + ")", n, std::move(rows), 1);
}

LinearCode bch_code(std::size_t n, std::size_t t) {
  if (n < 3 || !std::has_single_bit(n + 1)) throw UsageError("BCH length must be 2^e - 1");
  const auto e = static_cast<unsigned>(std::countr_zero(n + 1));
  if (e > 6) throw UsageError("BCH length too large");
  if (t == 0 || 2 * t >= n) throw UsageError("BCH radius out of range");
  const GaloisField& f = field(e);
  // Union of cyclotomic cosets of 1..2t.
  std::vector<bool> in_set(n, false);
  for (std::size_t i = 1; i <= 2 * t; ++i) {
    std::size_t c = i % n;
    while (!in_set[c]) {
      in_set[c] = true;
      c = (2 * c) % n;
    }
  }
  // g(x) = prod (x - a^c), coefficients in GF(2^e), low degree first.
  std::vector<FieldElement> g{1};
  for (std::size_t c = 0; c < n; ++c) {
    if (!in_set[c]) continue;
    const FieldElement root = f.exp(c);
    std::vector<FieldElement> next(g.size() + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      next[i + 1] ^= g[i];
      next[i] ^= f.mul(g[i], root);
    }
    g = std::move(next);
  }
  const std::size_t checks = g.size() - 1;
  std::uint64_t gmask = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > 1) throw UsageError("generator polynomial is not binary");
    if (g[i]) gmask |= std::uint64_t{1} << i;
  }
  // Column j is x^j mod g(x); row r is the coefficient of x^r.
  std::vector<BitString> rows(checks, BitString(n));
  std::uint64_t rem = 1;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < checks; ++r) rows[r].set(j, (rem >> r) & 1U);
    rem <<= 1;
    if (rem >> checks & 1U) rem ^= gmask;
  }
  return LinearCode("bch(" + std::to_string(n) + "," + std::to_string(t) + ")", n, std::move(rows), t);
}

LinearCode random_gv_code(std::size_t n, std::size_t checks, std::size_t radius, std::uint64_t seed,
                          std::size_t max_attempts) {
  const std::string name = "random_gv(" + std::to_string(n) + "," + std::to_string(checks) + "," +
                           std::to_string(radius) + "," + std::to_string(seed) + ")";
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    PrgStream rng(derive_seed(seed, attempt, Role::Derive));
    std::vector<BitString> rows(checks, BitString(n));
    for (auto& row : rows) {
      for (std::size_t j = 0; j < n; ++j) row.set(j, rng.next_bit());
    }
    try {
      return LinearCode(name, n, std::move(rows), radius);
    } catch (const UsageError&) {
      // rank or radius certificate failed; draw again
    }
  }
  throw UsageError(name + ": no certified matrix after " + std::to_string(max_attempts) + " attempts");
}

LinearCode build_code(const std::string& description) {
  static const std::regex pattern(R"(\s*(hamming|bch|random_gv)\s*\(([0-9,\s]*)\)\s*)");
  std::smatch match;
  if (!std::regex_match(description, match, pattern)) throw UsageError("unknown code description '" + description + "'");
  std::vector<std::uint64_t> args;
  std::stringstream list(match[2].str());
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) throw UsageError("empty argument in code description");
    args.push_back(std::stoull(item));
  }
  const std::string kind = match[1].str();
  if (kind == "hamming" && args.size() == 1) return hamming_code(static_cast<unsigned>(args[0]));
  if (kind == "bch" && args.size() == 2) return bch_code(args[0], args[1]);
  if (kind == "random_gv" && args.size() == 4) return random_gv_code(args[0], args[1], args[2], args[3]);
  throw UsageError("wrong number of arguments in '" + description + "'");
}

std::size_t det_split(const LinearCode& code, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("lambda must lie in [0, 1]");
  return floor_fraction(lambda, code.n() - code.checks());
}

namespace {

BitString slice(const BitString& x, std::size_t first, std::size_t last) {
  BitString out(last - first);
  for (std::size_t i = first; i < last; ++i) out.set(i - first, x.get(i));
  return out;
}

void check_split(const LinearCode& code, std::size_t split) {
  if (split > code.n() - code.checks()) throw UsageError("split exceeds n - checks");
}

}  // namespace

DetMessage det_encode_alice(const BitString& x, const LinearCode& code, std::size_t split) {
  check_split(code, split);
  const BitString internal = apply_permutation(x, code.order());
  return {slice(internal, 0, split), code.syndrome(x)};
}

DetMessage det_encode_bob(const BitString& y, const LinearCode& code, std::size_t split) {
  check_split(code, split);
  const BitString internal = apply_permutation(y, code.order());
  return {slice(internal, split, code.n() - code.checks()), code.syndrome(y)};
}

std::optional<std::pair<BitString, BitString>> det_decode(const DetMessage& alice, const DetMessage& bob,
                                                          const LinearCode& code, std::size_t split) {
  check_split(code, split);
  const std::size_t free = code.n() - code.checks();
  if (alice.bits.size() != split || bob.bits.size() != free - split) throw UsageError("message bit counts do not match the split");
  const auto diff = code.syndrome_decode(alice.syndrome ^ bob.syndrome);
  if (!diff) return std::nullopt;
  const BitString e = apply_permutation(*diff, code.order());
  BitString x(code.n()), y(code.n());
  for (std::size_t i = 0; i < free; ++i) {
    const bool known = i < split ? alice.bits.get(i) : bob.bits.get(i - split);
    const bool other = known ^ e.get(i);
    x.set(i, i < split ? known : other);
    y.set(i, i < split ? other : known);
  }
  const Permutation back = invert(code.order());
  return std::make_pair(apply_permutation(code.complete(std::move(x), alice.syndrome), back),
                        apply_permutation(code.complete(std::move(y), bob.syndrome), back));
}

}  // namespace swc
