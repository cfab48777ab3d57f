#include "cdmm/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace cdmm {

mpz_class int_pow(std::uint32_t base, std::uint64_t exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

int digit_count(const mpz_class& z, int base) {
  if (base < 2) throw std::invalid_argument("digit_count: base must be >= 2");
  if (z == 0) return 1;
  mpz_class a = ::abs(z);
  // mpz_sizeinbase may overestimate by one for non-power-of-two bases.
  auto n = static_cast<int>(mpz_sizeinbase(a.get_mpz_t(), base));
  if (n > 1 && a < int_pow(static_cast<std::uint32_t>(base), static_cast<std::uint64_t>(n) - 1)) --n;
  return n;
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
  return Rational(mpq_class(a.q_ / b.q_));
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(const Rational& base, std::uint64_t e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), e);
  return Rational(n, d);
}

std::string Rational::to_string() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational Rational::from_decimal(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("Rational::from_decimal: malformed number '" + std::string(text) + "'");
  };
  std::string_view s = text;
  if (s.empty()) fail();

  // "a/b" form
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    bool neg = false;
    if (!ns.empty() && (ns.front() == '-' || ns.front() == '+')) {
      neg = ns.front() == '-';
      ns.remove_prefix(1);
    }
    if (!all_digits(ns) || !all_digits(ds)) fail();
    mpz_class n(std::string(ns), 10), d(std::string(ds), 10);
    if (d == 0) fail();
    return Rational(neg ? mpz_class(-n) : n, d);
  }

  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }

  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    s = s.substr(0, e);
    bool eneg = false;
    if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 9) fail();
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }

  std::string_view ip = s, fp;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
  }
  if (ip.empty() && fp.empty()) fail();
  if (!ip.empty() && !all_digits(ip)) fail();
  if (!fp.empty() && !all_digits(fp)) fail();

  std::string digits = std::string(ip) + std::string(fp);
  mpz_class mant(digits.empty() ? "0" : digits, 10);
  if (neg) mant = -mant;

  long scale = static_cast<long>(fp.size()) - exp10;
  if (scale >= 0) return Rational(mant, int_pow(10, static_cast<std::uint64_t>(scale)));
  return Rational(mpz_class(mant * int_pow(10, static_cast<std::uint64_t>(-scale))), mpz_class(1));
}

std::pair<Rational, Rational> sqrt_bounds(const mpz_class& n, int digits) {
  if (n < 0) throw std::invalid_argument("sqrt_bounds: negative argument");
  if (digits < 0) throw std::invalid_argument("sqrt_bounds: negative digits");
  mpz_class scale = int_pow(10, static_cast<std::uint64_t>(digits));
  mpz_class shifted = n * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), shifted.get_mpz_t());  // floor sqrt
  return {Rational(root, scale), Rational(mpz_class(root + 1), scale)};
}

double log2_rational(const Rational& x) {
  if (x.sign() <= 0) throw std::domain_error("log2_rational: nonpositive argument");
  long en = 0, ed = 0;
  double dn = mpz_get_d_2exp(&en, x.num().get_mpz_t());
  double dd = mpz_get_d_2exp(&ed, x.den().get_mpz_t());
  return (std::log2(dn) + static_cast<double>(en)) - (std::log2(dd) + static_cast<double>(ed));
}

double log_rational(const Rational& x, int base) {
  if (base < 2) throw std::invalid_argument("log_rational: base must be >= 2");
  return log2_rational(x) / std::log2(static_cast<double>(base));
}

}  // namespace cdmm
