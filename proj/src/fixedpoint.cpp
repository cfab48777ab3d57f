#include "cdmm/fixedpoint.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdmm {

namespace {

void require_same_base(const TruncatedValue& a, const TruncatedValue& b) {
  if (a.base() != b.base())
    throw std::invalid_argument("fixed-point base mismatch: " + std::to_string(a.base()) + " vs " +
                                std::to_string(b.base()));
}

int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

TruncatedValue::TruncatedValue(mpz_class mantissa, std::int32_t scale, std::int32_t base)
    : mantissa_(std::move(mantissa)), scale_(scale), base_(base) {
  if (base_ < 2) throw std::invalid_argument("TruncatedValue: base must be >= 2");
  if (base_ > 36) throw std::invalid_argument("TruncatedValue: bases above 36 are not renderable");
  if (scale_ < 0) throw std::invalid_argument("TruncatedValue: scale must be >= 0");
}

std::string TruncatedValue::to_string() const {
  mpz_class a = ::abs(mantissa_);
  std::string digits = a.get_str(base_);
  std::string out;
  if (mantissa_ < 0) out += '-';
  if (scale_ == 0) {
    out += digits;
    return out;
  }
  auto s = static_cast<std::size_t>(scale_);
  if (digits.size() <= s) digits.insert(0, s + 1 - digits.size(), '0');
  out += digits.substr(0, digits.size() - s);
  out += '.';
  out += digits.substr(digits.size() - s);
  return out;
}

TruncatedValue TruncatedValue::parse(std::string_view text, std::int32_t base) {
  const auto fail = [&] {
    throw std::invalid_argument("TruncatedValue::parse: malformed fixed-point literal '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  std::int32_t scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) fail();
      seen_dot = true;
      continue;
    }
    int d = char_digit(c);
    if (d < 0 || d >= base) fail();
    digits += c;
    seen_digit = true;
    if (seen_dot) ++scale;
  }
  if (!seen_digit) fail();
  mpz_class m(digits, base);
  if (neg) m = -m;
  return TruncatedValue(std::move(m), scale, base);
}

TruncatedValue truncate(const Rational& x, std::int32_t gamma, std::int32_t base) {
  if (gamma < 0) throw std::invalid_argument("truncate: gamma must be >= 0");
  if (base < 2) throw std::invalid_argument("truncate: base must be >= 2");
  mpz_class scaled_num = x.num() * int_pow(static_cast<std::uint32_t>(base), static_cast<std::uint64_t>(gamma));
  mpz_class m;
  // tdiv rounds toward zero; den > 0, so the sign rides on the numerator.
  mpz_tdiv_q(m.get_mpz_t(), scaled_num.get_mpz_t(), x.den().get_mpz_t());
  return TruncatedValue(std::move(m), gamma, base);
}

TruncatedValue truncate(const TruncatedValue& x, std::int32_t gamma) {
  if (gamma < 0) throw std::invalid_argument("truncate: gamma must be >= 0");
  if (gamma == x.scale()) return x;
  mpz_class step = int_pow(static_cast<std::uint32_t>(x.base()),
                           static_cast<std::uint64_t>(gamma > x.scale() ? gamma - x.scale() : x.scale() - gamma));
  mpz_class m;
  if (gamma > x.scale()) {
    m = x.mantissa() * step;
  } else {
    mpz_tdiv_q(m.get_mpz_t(), x.mantissa().get_mpz_t(), step.get_mpz_t());
  }
  return TruncatedValue(std::move(m), gamma, x.base());
}

TruncatedValue fp_add(const TruncatedValue& a, const TruncatedValue& b) {
  require_same_base(a, b);
  std::int32_t scale = std::max(a.scale(), b.scale());
  auto lift = [&](const TruncatedValue& t) {
    return mpz_class(t.mantissa() * int_pow(static_cast<std::uint32_t>(t.base()),
                                            static_cast<std::uint64_t>(scale - t.scale())));
  };
  return TruncatedValue(lift(a) + lift(b), scale, a.base());
}

TruncatedValue fp_mul(const TruncatedValue& a, const TruncatedValue& b) {
  require_same_base(a, b);
  return TruncatedValue(mpz_class(a.mantissa() * b.mantissa()), a.scale() + b.scale(), a.base());
}

mpz_class top_digits(const Rational& w_bar, std::int32_t nu, std::int32_t base) {
  if (nu < 0) throw std::invalid_argument("top_digits: nu must be >= 0");
  if (w_bar.sign() < 0 || w_bar >= Rational(1))
    throw std::domain_error("top_digits: argument must lie in [0, 1)");
  mpz_class scaled = w_bar.num() * int_pow(static_cast<std::uint32_t>(base), static_cast<std::uint64_t>(nu));
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), scaled.get_mpz_t(), w_bar.den().get_mpz_t());
  return out;
}

}  // namespace cdmm
