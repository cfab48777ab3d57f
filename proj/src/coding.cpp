#include "cdmm/coding.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace cdmm {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kMatDot: return "matdot";
    case SchemeKind::kAmd: return "amd";
    case SchemeKind::kRepetition: return "repetition";
  }
  return "?";
}

SchemeKind scheme_from_string(std::string_view name) {
  if (name == "matdot") return SchemeKind::kMatDot;
  if (name == "amd") return SchemeKind::kAmd;
  if (name == "repetition") return SchemeKind::kRepetition;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected matdot, amd or repetition)");
}

int recovery_threshold(SchemeKind kind, int p) {
  switch (kind) {
    case SchemeKind::kMatDot: return 2 * p - 1;
    case SchemeKind::kAmd: return p;
    case SchemeKind::kRepetition: return 1;
  }
  throw std::invalid_argument("recovery_threshold: bad scheme");
}

BlockPartition partition(const RatMatrix& u, const RatMatrix& v, int p) {
  if (p < 1) throw std::invalid_argument("partition: p must be >= 1");
  int w = u.cols();
  if (v.rows() != w) throw std::invalid_argument("partition: inner dimensions of U and V differ");
  if (w % p != 0) throw std::invalid_argument("partition: p does not divide the inner dimension");
  int step = w / p;
  BlockPartition bp;
  bp.p = p;
  for (int b = 0; b < p; ++b) {
    RatMatrix ub(u.rows(), step), vb(step, v.cols());
    for (int i = 0; i < u.rows(); ++i)
      for (int j = 0; j < step; ++j) ub.at(i, j) = u.at(i, b * step + j);
    for (int i = 0; i < step; ++i)
      for (int j = 0; j < v.cols(); ++j) vb.at(i, j) = v.at(b * step + i, j);
    bp.u_blocks.push_back(std::move(ub));
    bp.v_blocks.push_back(std::move(vb));
  }
  return bp;
}

void SchemeSpec::validate() const {
  if (p < 1) throw std::invalid_argument("scheme spec: p must be >= 1");
  if (num_servers < 1) throw std::invalid_argument("scheme spec: N must be >= 1");
  if (base < 2) throw std::invalid_argument("scheme spec: base must be >= 2");
  if (upload_digits && *upload_digits < 0) throw std::invalid_argument("scheme spec: gamma_u must be >= 0");
  if (download_digits && *download_digits < 0) throw std::invalid_argument("scheme spec: gamma_y must be >= 0");
  if (kind == SchemeKind::kRepetition) {
    if (!eval_points.empty()) throw std::invalid_argument("scheme spec: repetition takes no evaluation points");
    return;
  }
  if (static_cast<int>(eval_points.size()) != num_servers)
    throw std::invalid_argument("scheme spec: need one evaluation point per server");
  std::set<Rational> distinct(eval_points.begin(), eval_points.end());
  if (static_cast<int>(distinct.size()) != num_servers)
    throw std::invalid_argument("scheme spec: evaluation points must be pairwise distinct");
}

const FpMatrix& ShareMatrix::fixed() const {
  if (!is_fixed()) throw std::logic_error("ShareMatrix: exact payload has no fixed-point view");
  return std::get<FpMatrix>(payload_);
}

const RatMatrix& ShareMatrix::exact() const {
  if (is_fixed()) throw std::logic_error("ShareMatrix: fixed payload has no exact view");
  return std::get<RatMatrix>(payload_);
}

int ShareMatrix::rows() const {
  return is_fixed() ? std::get<FpMatrix>(payload_).rows() : std::get<RatMatrix>(payload_).rows();
}

int ShareMatrix::cols() const {
  return is_fixed() ? std::get<FpMatrix>(payload_).cols() : std::get<RatMatrix>(payload_).cols();
}

RatMatrix ShareMatrix::values() const {
  return is_fixed() ? to_rational(std::get<FpMatrix>(payload_)) : std::get<RatMatrix>(payload_);
}

DigitBudget ShareMatrix::scale() const {
  if (!is_fixed()) return std::nullopt;
  const FpMatrix& m = std::get<FpMatrix>(payload_);
  return m.size() ? DigitBudget(m.cells().front().scale()) : DigitBudget(0);
}

namespace {

ShareMatrix budgeted(RatMatrix m, DigitBudget gamma, int base) {
  if (gamma) return ShareMatrix(truncate(m, *gamma, base));
  return ShareMatrix(std::move(m));
}

// Horner evaluation of sum_k blocks[k] alpha^k over matrices.
RatMatrix eval_blocks(const std::vector<RatMatrix>& blocks, const Rational& alpha) {
  RatMatrix acc = blocks.back();
  for (auto it = std::next(blocks.rbegin()); it != blocks.rend(); ++it) {
    RatMatrix scaled(acc.rows(), acc.cols());
    for (int i = 0; i < acc.rows(); ++i)
      for (int j = 0; j < acc.cols(); ++j) scaled.at(i, j) = acc.at(i, j) * alpha + it->at(i, j);
    acc = std::move(scaled);
  }
  return acc;
}

}  // namespace

std::pair<ShareMatrix, ShareMatrix> encode_matdot(const BlockPartition& bp, const Rational& alpha,
                                                  DigitBudget gamma_u, int base) {
  if (bp.u_blocks.empty() || static_cast<int>(bp.u_blocks.size()) != bp.p ||
      static_cast<int>(bp.v_blocks.size()) != bp.p)
    throw std::invalid_argument("encode_matdot: invalid partition");
  // F coefficients ascend U_1..U_p; G coefficients descend V_p..V_1.
  RatMatrix f = eval_blocks(bp.u_blocks, alpha);
  std::vector<RatMatrix> v_rev(bp.v_blocks.rbegin(), bp.v_blocks.rend());
  RatMatrix g = eval_blocks(v_rev, alpha);
  return {budgeted(std::move(f), gamma_u, base), budgeted(std::move(g), gamma_u, base)};
}

std::pair<ShareMatrix, ShareMatrix> encode_repetition(const RatMatrix& u, const RatMatrix& v,
                                                      DigitBudget gamma_u, int base) {
  return {budgeted(u, gamma_u, base), budgeted(v, gamma_u, base)};
}

std::vector<Rational> equispaced_points(const Rational& alpha_max, int n) {
  if (n < 1) throw std::invalid_argument("equispaced_points: n must be >= 1");
  std::vector<Rational> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) points.push_back(alpha_max * Rational(i, n));
  return points;
}

Rational amd_alpha_bound(const Rational& epsilon, const Rational& eta_sq, int p) {
  if (p < 2) throw std::invalid_argument("amd_alpha_bound: p must be >= 2");
  if (eta_sq.sign() <= 0) throw std::invalid_argument("amd_alpha_bound: eta^2 must be positive");
  if (epsilon.sign() <= 0) throw std::invalid_argument("amd_alpha_bound: epsilon must be positive");
  // Upper bound on sqrt(2p-1) makes the quotient an under-approximation.
  auto [lo, hi] = sqrt_bounds(mpz_class(2 * p - 1), 12);
  (void)lo;
  Rational denom = Rational(6) * eta_sq * hi * Rational(static_cast<long>(p) * p - p);
  return epsilon / denom;
}

std::vector<Rational> select_amd_points(const Rational& epsilon, const Rational& eta_sq, int p, int n) {
  if (p < 2) throw std::invalid_argument("select_amd_points: p must be >= 2");
  if (n < 1) throw std::invalid_argument("select_amd_points: n must be >= 1");
  if (epsilon.sign() <= 0) throw std::invalid_argument("select_amd_points: epsilon must be positive");
  // Admissible range: epsilon <= min(2, 3 eta^2 sqrt(2p-1)); checked against a
  // lower bound on the sqrt so acceptance is conservative.
  auto [sqrt_lo, sqrt_hi] = sqrt_bounds(mpz_class(2 * p - 1), 12);
  (void)sqrt_hi;
  if (epsilon > Rational(2) || epsilon > Rational(3) * eta_sq * sqrt_lo)
    throw std::invalid_argument("select_amd_points: epsilon outside the admissible range");
  return equispaced_points(amd_alpha_bound(epsilon, eta_sq, p), n);
}

Rational effective_delta(const std::vector<Rational>& eval_points, int base) {
  if (eval_points.empty()) throw std::invalid_argument("effective_delta: no evaluation points");
  Rational max_abs(0);
  for (const Rational& a : eval_points) {
    Rational m = a.abs();
    if (m > max_abs) max_abs = m;
  }
  if (max_abs.is_zero()) throw std::invalid_argument("effective_delta: all points are zero");
  if (max_abs > Rational(1)) throw std::invalid_argument("effective_delta: max |alpha| exceeds 1");

  double d = -log_rational(max_abs, base);
  // Exact when max|alpha| is an integer power of the base.
  long k = std::lround(d);
  if (k >= 0) {
    mpz_class scaled = max_abs.num() * int_pow(static_cast<std::uint32_t>(base), static_cast<std::uint64_t>(k));
    if (scaled == max_abs.den()) return Rational(mpz_class(k));
  }
  return Rational(mpz_class(static_cast<long>(std::llround(d * 1e9))), mpz_class(1000000000L));
}

}  // namespace cdmm
