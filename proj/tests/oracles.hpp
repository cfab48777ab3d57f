#pragma once

// Test-side reference implementations, deliberately independent of the
// library code paths they check.

#include <cmath>
#include <string>
#include <vector>

#include "cdmm/matrix.hpp"
#include "cdmm/rational.hpp"

namespace oracles {

// Schoolbook long division: decimal rendering of num/den (both >= 0) with
// exactly `digits` digits after the point, truncated.
inline std::string long_division_digits(mpz_class num, const mpz_class& den, int digits) {
  mpz_class q = num / den;  // floor for nonnegative operands
  mpz_class rem = num - q * den;
  std::string out = q.get_str();
  if (digits == 0) return out;
  out += '.';
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    mpz_class d = rem / den;
    out += d.get_str();
    rem -= d * den;
  }
  return out;
}

// Brute-force triple loop, kept separate from cdmm::multiply on purpose.
inline cdmm::RatMatrix naive_matmul(const cdmm::RatMatrix& a, const cdmm::RatMatrix& b) {
  cdmm::RatMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      cdmm::Rational acc(0);
      for (int k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
      out.at(i, j) = acc;
    }
  return out;
}

// Closed-form 2-norm condition number of a 2x2 matrix via the quadratic
// formula on the eigenvalues of A^T A. Double precision; adequate for
// well-conditioned inputs only.
inline double condition_2x2(const cdmm::RatMatrix& a) {
  auto d = [](const cdmm::Rational& r) { return r.to_double(); };
  double g00 = d(a.at(0, 0) * a.at(0, 0) + a.at(1, 0) * a.at(1, 0));
  double g01 = d(a.at(0, 0) * a.at(0, 1) + a.at(1, 0) * a.at(1, 1));
  double g11 = d(a.at(0, 1) * a.at(0, 1) + a.at(1, 1) * a.at(1, 1));
  double tr = g00 + g11;
  double det = g00 * g11 - g01 * g01;
  double disc = std::sqrt(tr * tr - 4.0 * det);
  double lmax = (tr + disc) / 2.0;
  double lmin = (tr - disc) / 2.0;
  return std::sqrt(lmax / lmin);
}

// Minimum-norm solution via the 2x2 cofactor inverse of M M^T (p = 2 only);
// an independent route around ExactLinearSolver.
inline std::vector<cdmm::Rational> min_norm_2x2(const cdmm::RatMatrix& m, const std::vector<cdmm::Rational>& y) {
  using cdmm::Rational;
  cdmm::RatMatrix gram(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Rational acc(0);
      for (int k = 0; k < m.cols(); ++k) acc += m.at(i, k) * m.at(j, k);
      gram.at(i, j) = acc;
    }
  Rational det = gram.at(0, 0) * gram.at(1, 1) - gram.at(0, 1) * gram.at(1, 0);
  Rational w0 = (gram.at(1, 1) * y[0] - gram.at(0, 1) * y[1]) / det;
  Rational w1 = (gram.at(0, 0) * y[1] - gram.at(1, 0) * y[0]) / det;
  std::vector<Rational> x(static_cast<std::size_t>(m.cols()));
  for (int k = 0; k < m.cols(); ++k) x[static_cast<std::size_t>(k)] = m.at(0, k) * w0 + m.at(1, k) * w1;
  return x;
}

// Tiny deterministic generator for test inputs (xorshift64*).
struct TestRng {
  std::uint64_t s = 0x243F6A8885A308D3ULL;
  std::uint64_t next() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return s * 0x2545F4914F6CDD1DULL;
  }
  long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
  cdmm::Rational unit_fraction(long denom) { return cdmm::Rational(below(denom), denom); }
  cdmm::Rational small_integer(long span) { return cdmm::Rational(below(2 * span + 1) - span); }
};

inline cdmm::RatMatrix random_matrix(TestRng& rng, int rows, int cols, long denom) {
  cdmm::RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.unit_fraction(denom);
  return m;
}

inline cdmm::RatMatrix random_integer_matrix(TestRng& rng, int rows, int cols, long span) {
  cdmm::RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.small_integer(span);
  return m;
}

}  // namespace oracles
