#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace cdmm {

// base^exp as an arbitrary-precision integer.
mpz_class int_pow(std::uint32_t base, std::uint64_t exp);

// Exact base-B digit count of |z|; digit_count(0) == 1.
int digit_count(const mpz_class& z, int base);

/// Exact rational number backed by arbitrary-precision integers.
/// Always stored reduced with a positive denominator; closed under
/// +, -, *, / (nonzero divisor) with no rounding anywhere.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
  Rational(long num, long den);
  explicit Rational(const mpz_class& n) : q_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "42", "-0.125", "1e-4", "2.5e+3" or "7/3" exactly. Decimal only;
  /// throws std::invalid_argument on malformed input.
  static Rational from_decimal(std::string_view text);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Rational abs() const;

  static Rational pow(const Rational& base, std::uint64_t e);

  double to_double() const { return q_.get_d(); }

  /// "n" when integral, "n/d" otherwise.
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

/// Rational bracket around sqrt(n): returns (lo, hi) with
/// lo <= sqrt(n) <= hi and hi - lo = 10^-digits.
std::pair<Rational, Rational> sqrt_bounds(const mpz_class& n, int digits);

/// log2 of a positive rational, accurate to ~1e-13 relative.
/// Reporting path only; never feeds exact arithmetic.
double log2_rational(const Rational& x);

/// log_base of a positive rational (reporting path only).
double log_rational(const Rational& x, int base);

}  // namespace cdmm
