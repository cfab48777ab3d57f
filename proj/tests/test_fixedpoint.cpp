#include <stdexcept>

#include "cdmm/fixedpoint.hpp"
#include "doctest.h"
#include "oracles.hpp"

using cdmm::Rational;
using cdmm::TruncatedValue;

TEST_SUITE("rational") {
  TEST_CASE("decimal parsing is exact") {
    CHECK(Rational::from_decimal("0.123456") == Rational(123456, 1000000));
    CHECK(Rational::from_decimal("-0.5") == Rational(-1, 2));
    CHECK(Rational::from_decimal("1e-4") == Rational(1, 10000));
    CHECK(Rational::from_decimal("2.5e+3") == Rational(2500));
    CHECK(Rational::from_decimal("7/3") == Rational(7, 3));
    CHECK(Rational::from_decimal("-7/3") == Rational(-7, 3));
    CHECK(Rational::from_decimal(".25") == Rational(1, 4));
    CHECK_THROWS_AS(Rational::from_decimal("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_decimal("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_decimal(""), std::invalid_argument);
  }

  TEST_CASE("arithmetic closure and reduction") {
    Rational a(3, 6), b(-2, 8);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK(a + b == Rational(1, 4));
    CHECK(a * b == Rational(-1, 8));
    CHECK(a / b == Rational(-2));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
    CHECK(Rational::pow(Rational(2, 3), 3) == Rational(8, 27));
  }

  TEST_CASE("sqrt_bounds bracket the root") {
    auto [lo, hi] = cdmm::sqrt_bounds(mpz_class(3), 12);
    CHECK(lo * lo <= Rational(3));
    CHECK(hi * hi >= Rational(3));
    CHECK(hi - lo == Rational(1, 1000000000000L));
  }

  TEST_CASE("digit_count is exact at boundaries") {
    CHECK(cdmm::digit_count(mpz_class(0), 10) == 1);
    CHECK(cdmm::digit_count(mpz_class(9), 10) == 1);
    CHECK(cdmm::digit_count(mpz_class(10), 10) == 2);
    CHECK(cdmm::digit_count(mpz_class(999), 10) == 3);
    CHECK(cdmm::digit_count(mpz_class(1000), 10) == 4);
    CHECK(cdmm::digit_count(mpz_class(-1000), 10) == 4);
  }
}

TEST_SUITE("fixedpoint") {
  TEST_CASE("truncate drops digits past gamma") {
    auto t = truncate(Rational::from_decimal("0.123456"), 4);
    CHECK(t.mantissa() == 1234);
    CHECK(t.scale() == 4);
    CHECK(t.to_string() == "0.1234");
  }

  TEST_CASE("truncate is the identity on already-truncated values") {
    Rational x = Rational::from_decimal("0.1234");
    auto t = truncate(x, 4);
    CHECK(t.value() == x);
    CHECK(truncate(t, 4) == t);
  }

  TEST_CASE("truncate(7/3, 5) matches the long division oracle") {
    CHECK(oracles::long_division_digits(mpz_class(7), mpz_class(3), 5) == "2.33333");
    auto t = truncate(Rational(7, 3), 5);
    CHECK(t.to_string() == "2.33333");
  }

  TEST_CASE("truncation contract: error below one digit unit, both signs") {
    const Rational cases[] = {Rational(7, 3),      Rational(-7, 3),  Rational(1, 7),
                              Rational(-999, 1000), Rational(22, 7), Rational(-1, 3)};
    for (const Rational& x : cases)
      for (int gamma : {0, 1, 4, 9}) {
        auto t = truncate(x, gamma);
        Rational err = (t.value() - x).abs();
        CHECK(err < Rational(mpz_class(1), cdmm::int_pow(10, static_cast<std::uint64_t>(gamma))));
        CHECK(truncate(t, gamma) == t);                      // idempotence
        CHECK(t.value().abs() <= x.abs());                   // toward zero
      }
  }

  TEST_CASE("truncate is monotone on nonnegative inputs") {
    Rational prev(-1);
    for (int k = 0; k < 50; ++k) {
      Rational x(k * 7919 % 1000, 999);
      for (int j = 0; j <= k; ++j) {
        Rational y(j * 7919 % 1000, 999);
        if (y <= x) CHECK(truncate(y, 3).value() <= truncate(x, 3).value());
      }
      prev = x;
    }
  }

  TEST_CASE("fp_add is exact with carries") {
    auto a = TruncatedValue::parse("0.12");
    auto b = TruncatedValue::parse("0.345");
    CHECK(fp_add(a, b).to_string() == "0.465");

    auto zero = TruncatedValue(mpz_class(0), 3, 10);
    CHECK(fp_add(a, zero).value() == a.value());

    auto c = TruncatedValue::parse("0.9999");
    auto d = TruncatedValue::parse("0.0001");
    CHECK(fp_add(c, d).to_string() == "1.0000");
  }

  TEST_CASE("fp_mul is exact; scale adds") {
    auto a = TruncatedValue::parse("0.2");
    auto b = TruncatedValue::parse("0.3");
    auto ab = fp_mul(a, b);
    CHECK(ab.to_string() == "0.06");
    CHECK(ab.scale() == 2);

    auto one = TruncatedValue::parse("1");
    CHECK(fp_mul(a, one).value() == a.value());

    // Mantissa product oracle: 1234 * 5678 = 7006652.
    CHECK(mpz_class(1234) * mpz_class(5678) == 7006652);
    auto x = TruncatedValue::parse("0.1234");
    auto y = TruncatedValue::parse("0.5678");
    CHECK(fp_mul(x, y).to_string() == "0.07006652");
  }

  TEST_CASE("fp ops commute with exact rational arithmetic") {
    auto a = TruncatedValue::parse("12.0345");
    auto b = TruncatedValue::parse("-3.21");
    CHECK(fp_add(a, b).value() == a.value() + b.value());
    CHECK(fp_mul(a, b).value() == a.value() * b.value());
  }

  TEST_CASE("fp ops reject mixed bases") {
    auto a = TruncatedValue(mpz_class(5), 1, 10);
    auto b = TruncatedValue(mpz_class(5), 1, 2);
    CHECK_THROWS_AS(fp_add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(fp_mul(a, b), std::invalid_argument);
  }

  TEST_CASE("top_digits extracts the leading digits") {
    CHECK(cdmm::top_digits(Rational::from_decimal("0.123456"), 5) == 12345);
    CHECK(cdmm::top_digits(Rational(0), 7) == 0);
    // Long division oracle: 1/3 = 0.333...
    CHECK(oracles::long_division_digits(mpz_class(1), mpz_class(3), 3) == "0.333");
    CHECK(cdmm::top_digits(Rational(1, 3), 3) == 333);
    CHECK_THROWS_AS(cdmm::top_digits(Rational(1), 3), std::domain_error);
    CHECK_THROWS_AS(cdmm::top_digits(Rational(-1, 2), 3), std::domain_error);
  }

  TEST_CASE("top_digits rescaling: dropping one digit divides by the base") {
    const Rational cases[] = {Rational(1, 3), Rational(1, 7), Rational(123456, 1000000), Rational(0)};
    for (const Rational& w : cases)
      for (int nu : {0, 1, 3, 8}) {
        mpz_class wide = cdmm::top_digits(w, nu + 1);
        mpz_class narrow = cdmm::top_digits(w, nu);
        CHECK(narrow == wide / 10);
      }
  }

  TEST_CASE("rendering round-trips bit-exactly") {
    const char* cases[] = {"0.1234", "-0.0700", "42", "-7.000", "0.0001", "1.0000", "0"};
    for (const char* s : cases) {
      auto t = TruncatedValue::parse(s);
      CHECK(t.to_string() == s);
      CHECK(TruncatedValue::parse(t.to_string()) == t);
    }
    // Other bases render with the same digit conventions.
    auto hex = TruncatedValue(mpz_class(255), 2, 16);
    CHECK(hex.to_string() == "0.ff");
    CHECK(TruncatedValue::parse("0.ff", 16) == hex);
    CHECK_THROWS_AS(TruncatedValue::parse("0.9", 8), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedValue::parse("1..2"), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedValue::parse(""), std::invalid_argument);
  }

  TEST_CASE("base and scale validation") {
    CHECK_THROWS_AS(TruncatedValue(mpz_class(1), -1, 10), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedValue(mpz_class(1), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(truncate(Rational(1, 3), -2), std::invalid_argument);
  }
}
