#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cdmm/rational.hpp"

namespace cdmm {

/// Exact base-B fixed-point scalar: mantissa * base^(-scale).
/// `scale` is exact metadata -- no hidden digits exist beyond it.
/// Immutable value type; all arithmetic on it is exact.
class TruncatedValue {
 public:
  TruncatedValue() : mantissa_(0), scale_(0), base_(10) {}
  TruncatedValue(mpz_class mantissa, std::int32_t scale, std::int32_t base);

  const mpz_class& mantissa() const { return mantissa_; }
  std::int32_t scale() const { return scale_; }
  std::int32_t base() const { return base_; }

  Rational value() const { return Rational(mantissa_, int_pow(static_cast<std::uint32_t>(base_), static_cast<std::uint64_t>(scale_))); }
  bool is_zero() const { return mantissa_ == 0; }

  /// Base-B digits of |mantissa| (>= 1); operand size for the digit cost model.
  int mantissa_digits() const { return digit_count(mantissa_, base_); }

  /// Fixed-point rendering with exactly scale() digits after the radix point,
  /// e.g. "0.0700", "-1.2300", "42". Digits beyond 9 use lowercase letters.
  std::string to_string() const;

  /// Inverse of to_string(): bit-exact round trip (mantissa, scale, base).
  static TruncatedValue parse(std::string_view text, std::int32_t base = 10);

  /// Field-wise equality (mantissa, scale, base). Use value() to compare
  /// mathematical values across scales.
  friend bool operator==(const TruncatedValue&, const TruncatedValue&) = default;

 private:
  mpz_class mantissa_;
  std::int32_t scale_;
  std::int32_t base_;
};

/// Truncation toward zero at gamma digits after the radix point:
/// sign(x) * floor(|x| * B^gamma) * B^(-gamma). Total function; |result - x| < B^(-gamma).
TruncatedValue truncate(const Rational& x, std::int32_t gamma, std::int32_t base = 10);

/// Re-truncates to exactly gamma digits (drops digits, or zero-pads when
/// gamma exceeds the current scale; the value is unchanged in that case).
TruncatedValue truncate(const TruncatedValue& x, std::int32_t gamma);

/// Exact sum; result scale = max of the operand scales. Throws on base mismatch.
TruncatedValue fp_add(const TruncatedValue& a, const TruncatedValue& b);

/// Exact product; result scale = sum of the operand scales. Throws on base mismatch.
TruncatedValue fp_mul(const TruncatedValue& a, const TruncatedValue& b);

/// Integer formed by the top nu digits of w_bar in [0, 1): floor(B^nu * w_bar).
mpz_class top_digits(const Rational& w_bar, std::int32_t nu, std::int32_t base = 10);

}  // namespace cdmm
