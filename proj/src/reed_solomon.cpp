#include "swcode/reed_solomon.hpp"

#include <string>

#include "swcode/bits.hpp"

namespace swc {

void RSParams::validate() const {
  if (w < kMinFieldWidth || w > kMaxFieldWidth) throw UsageError("symbol width must be in 1..16");
  if (m == 0) throw UsageError("Reed-Solomon code needs at least one data symbol");
  if (codeword_length() > (std::size_t{1} << w)) {
    throw UsageError("m + 2s + 1 = " + std::to_string(codeword_length()) + " exceeds 2^" + std::to_string(w));
  }
}

ReedSolomon::ReedSolomon(RSParams params) : params_(params) {
  params_.validate();
  gf_ = &field(params_.w);
  const std::size_t m = params_.m;
  bary_.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    FieldElement denom = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) denom = gf_->mul(denom, point(i) ^ point(j));
    }
    bary_[i] = gf_->inv(denom);
  }
}

void ReedSolomon::check_symbols(std::span<const FieldElement> symbols, std::size_t expected, const char* what) const {
  if (symbols.size() != expected) {
    throw UsageError(std::string(what) + ": expected " + std::to_string(expected) + " symbols, got " +
                     std::to_string(symbols.size()));
  }
  for (FieldElement v : symbols) {
    if (!gf_->contains(v)) throw UsageError(std::string(what) + ": symbol outside the field");
  }
}

std::vector<FieldElement> ReedSolomon::checksums(std::span<const FieldElement> blocks) const {
  check_symbols(blocks, params_.m, "data");
  const GaloisField& f = *gf_;
  std::vector<FieldElement> out(params_.checksum_count(), 0);
  for (std::size_t c = 0; c < out.size(); ++c) {
    // Second barycentric form: P(z) = l(z) * sum_i w_i y_i / (z - x_i).
    const FieldElement z = point(params_.m + c);
    FieldElement ell = 1;
    FieldElement acc = 0;
    for (std::size_t i = 0; i < params_.m; ++i) {
      const FieldElement diff = z ^ point(i);
      ell = f.mul(ell, diff);
      acc ^= f.div(f.mul(bary_[i], blocks[i]), diff);
    }
    out[c] = f.mul(ell, acc);
  }
  return out;
}

namespace {

// Solves A x = b in place (rows of [A | b]); free variables are set to zero.
// Returns nullopt if the system is inconsistent.
std::optional<std::vector<FieldElement>> solve(std::vector<std::vector<FieldElement>>& rows, std::size_t unknowns,
                                               const GaloisField& f) {
  const std::size_t height = rows.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < height; ++c) {
    std::size_t p = r;
    while (p < height && rows[p][c] == 0) ++p;
    if (p == height) continue;
    std::swap(rows[p], rows[r]);
    const FieldElement scale = f.inv(rows[r][c]);
    auto& pivot = rows[r];
    for (std::size_t j = c; j <= unknowns; ++j) pivot[j] = f.mul(pivot[j], scale);
    for (std::size_t i = 0; i < height; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const FieldElement factor = rows[i][c];
      auto& row = rows[i];
      for (std::size_t j = c; j <= unknowns; ++j) {
        if (pivot[j] != 0) row[j] ^= f.mul(factor, pivot[j]);
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < height; ++i) {
    if (rows[i][unknowns] != 0) return std::nullopt;
  }
  std::vector<FieldElement> x(unknowns, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = rows[i][unknowns];
  return x;
}

FieldElement horner(std::span<const FieldElement> coeffs, FieldElement z, const GaloisField& f) {
  FieldElement v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = f.mul(v, z) ^ coeffs[i];
  return v;
}

}  // namespace

std::optional<std::vector<FieldElement>> ReedSolomon::correct(std::span<const FieldElement> received,
                                                              std::span<const FieldElement> checksums_in) const {
  check_symbols(received, params_.m, "received");
  check_symbols(checksums_in, params_.checksum_count(), "checksums");
  const GaloisField& f = *gf_;
  const std::size_t m = params_.m;
  const std::size_t s = params_.s;

  std::vector<FieldElement> data(received.begin(), received.end());
  if (checksums(data) == std::vector<FieldElement>(checksums_in.begin(), checksums_in.end())) return data;
  if (s == 0) return std::nullopt;

  // Unknowns: Q_0..Q_{m+s-1}, then E_0..E_{s-1}; E is monic of degree s.
  // Row for point x with symbol y: sum Q_j x^j - y sum E_j x^j = y x^s.
  const std::size_t nq = m + s;
  const std::size_t unknowns = nq + s;
  const std::size_t length = params_.codeword_length();
  std::vector<std::vector<FieldElement>> rows(length, std::vector<FieldElement>(unknowns + 1, 0));
  for (std::size_t pos = 0; pos < length; ++pos) {
    const FieldElement x = point(pos);
    const FieldElement y = pos < m ? received[pos] : checksums_in[pos - m];
    auto& row = rows[pos];
    FieldElement xp = 1;
    for (std::size_t j = 0; j < nq; ++j) {
      row[j] = xp;
      if (j < s) row[nq + j] = f.mul(y, xp);
      if (j + 1 == s) row[unknowns] = f.mul(y, f.mul(xp, x));
      xp = f.mul(xp, x);
    }
  }
  auto solution = solve(rows, unknowns, f);
  if (!solution) return std::nullopt;

  // P = Q / E by long division; a nonzero remainder means no valid codeword.
  std::vector<FieldElement> q(solution->begin(), solution->begin() + static_cast<std::ptrdiff_t>(nq));
  std::vector<FieldElement> e(solution->begin() + static_cast<std::ptrdiff_t>(nq), solution->end());
  e.push_back(1);
  std::vector<FieldElement> p(m, 0);
  for (std::size_t d = nq; d-- > s;) {
    const FieldElement lead = q[d];
    p[d - s] = lead;
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= s; ++j) q[d - s + j] ^= f.mul(lead, e[j]);
  }
  for (std::size_t j = 0; j < s; ++j) {
    if (q[j] != 0) return std::nullopt;
  }

  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < m; ++i) {
    data[i] = horner(p, point(i), f);
    if (data[i] != received[i]) ++disagreements;
  }
  if (disagreements > s) return std::nullopt;
  for (std::size_t c = 0; c < checksums_in.size(); ++c) {
    if (horner(p, point(m + c), f) != checksums_in[c]) return std::nullopt;
  }
  return data;
}

std::vector<FieldElement> rs_checksums(std::span<const FieldElement> blocks, const RSParams& params) {
  return ReedSolomon(params).checksums(blocks);
}

std::optional<std::vector<FieldElement>> rs_correct(std::span<const FieldElement> received,
                                                    std::span<const FieldElement> checksums,
                                                    const RSParams& params) {
  return ReedSolomon(params).correct(received, checksums);
}

}  // namespace swc
