#include <stdexcept>

#include "cdmm/coding.hpp"
#include "doctest.h"
#include "oracles.hpp"

using cdmm::BlockPartition;
using cdmm::RatMatrix;
using cdmm::Rational;
using cdmm::SchemeKind;

namespace {

RatMatrix row_vector(std::vector<long> xs) {
  RatMatrix m(1, static_cast<int>(xs.size()));
  for (int j = 0; j < m.cols(); ++j) m.at(0, j) = Rational(xs[static_cast<std::size_t>(j)]);
  return m;
}

RatMatrix col_vector(std::vector<long> xs) {
  RatMatrix m(static_cast<int>(xs.size()), 1);
  for (int i = 0; i < m.rows(); ++i) m.at(i, 0) = Rational(xs[static_cast<std::size_t>(i)]);
  return m;
}

// Coefficients of F(a)G(a) = sum_k X_k a^k built directly from the block
// expansion: X_k = sum over (i, j) with (p-1) + i - j == k of U_i V_j.
std::vector<RatMatrix> product_coefficients(const BlockPartition& bp) {
  int p = bp.p;
  int rows = bp.u_blocks[0].rows(), cols = bp.v_blocks[0].cols();
  std::vector<RatMatrix> coeffs(static_cast<std::size_t>(2 * p - 1), RatMatrix(rows, cols));
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j) {
      int k = (p - 1) + i - j;
      RatMatrix term = oracles::naive_matmul(bp.u_blocks[static_cast<std::size_t>(i) - 1],
                                             bp.v_blocks[static_cast<std::size_t>(j) - 1]);
      coeffs[static_cast<std::size_t>(k)] = cdmm::add(coeffs[static_cast<std::size_t>(k)], term);
    }
  return coeffs;
}

}  // namespace

TEST_SUITE("coding") {
  TEST_CASE("partition splits scalars for the 1x3 by 3x1 case") {
    RatMatrix u = row_vector({1, 2, 3});
    RatMatrix v = col_vector({4, 5, 6});
    BlockPartition bp = cdmm::partition(u, v, 3);
    REQUIRE(bp.u_blocks.size() == 3);
    for (int b = 0; b < 3; ++b) {
      CHECK(bp.u_blocks[static_cast<std::size_t>(b)].at(0, 0) == Rational(b + 1));
      CHECK(bp.v_blocks[static_cast<std::size_t>(b)].at(0, 0) == Rational(b + 4));
    }
  }

  TEST_CASE("partition with p=1 passes the matrices through") {
    oracles::TestRng rng;
    RatMatrix u = oracles::random_matrix(rng, 2, 3, 97);
    RatMatrix v = oracles::random_matrix(rng, 3, 2, 97);
    BlockPartition bp = cdmm::partition(u, v, 1);
    CHECK(bp.u_blocks[0] == u);
    CHECK(bp.v_blocks[0] == v);
  }

  TEST_CASE("partition block sums reproduce the product") {
    oracles::TestRng rng;
    RatMatrix u = oracles::random_matrix(rng, 2, 4, 89);
    RatMatrix v = oracles::random_matrix(rng, 4, 2, 89);
    BlockPartition bp = cdmm::partition(u, v, 2);
    RatMatrix sum(2, 2);
    for (int b = 0; b < 2; ++b)
      sum = cdmm::add(sum, oracles::naive_matmul(bp.u_blocks[static_cast<std::size_t>(b)],
                                                 bp.v_blocks[static_cast<std::size_t>(b)]));
    CHECK(sum == oracles::naive_matmul(u, v));
  }

  TEST_CASE("partition rejects bad shapes") {
    RatMatrix u(2, 3), v(4, 2);
    CHECK_THROWS_AS(cdmm::partition(u, v, 1), std::invalid_argument);   // inner mismatch
    RatMatrix v3(3, 2);
    CHECK_THROWS_AS(cdmm::partition(u, v3, 2), std::invalid_argument);  // p does not divide w
    CHECK_THROWS_AS(cdmm::partition(u, v3, 0), std::invalid_argument);
  }

  TEST_CASE("matdot encoding at p=1 is plain truncation") {
    RatMatrix u = row_vector({1});
    RatMatrix v = col_vector({2});
    auto bp = cdmm::partition(u, v, 1);
    auto [f, g] = cdmm::encode_matdot(bp, Rational(5, 7), 4, 10);
    CHECK(f.fixed().at(0, 0).to_string() == "1.0000");
    CHECK(g.fixed().at(0, 0).to_string() == "2.0000");
  }

  TEST_CASE("matdot encoding at alpha=0 keeps U_1 and V_p") {
    RatMatrix u = row_vector({7, 8, 9});
    RatMatrix v = col_vector({1, 2, 3});
    auto bp = cdmm::partition(u, v, 3);
    auto [f, g] = cdmm::encode_matdot(bp, Rational(0), 2, 10);
    CHECK(f.fixed().at(0, 0).value() == Rational(7));  // U_1
    CHECK(g.fixed().at(0, 0).value() == Rational(3));  // V_3
  }

  TEST_CASE("matdot encoding matches the Horner oracle") {
    // 1 + 2*(1/10) + 3*(1/100) = 1.23
    RatMatrix u = row_vector({1, 2, 3});
    RatMatrix v = col_vector({0, 0, 0});
    auto bp = cdmm::partition(u, v, 3);
    auto [f, g] = cdmm::encode_matdot(bp, Rational(1, 10), 4, 10);
    CHECK(f.fixed().at(0, 0).to_string() == "1.2300");
    (void)g;
  }

  TEST_CASE("repetition encoding is idempotent truncation") {
    RatMatrix u(1, 1), v(1, 1);
    u.at(0, 0) = Rational::from_decimal("0.9876");
    v.at(0, 0) = Rational::from_decimal("0.987654");
    auto [f, g] = cdmm::encode_repetition(u, v, 4, 10);
    CHECK(f.fixed().at(0, 0).value() == u.at(0, 0));
    CHECK(g.fixed().at(0, 0).to_string() == "0.9876");
  }

  TEST_CASE("repetition encoding stays within one truncation unit") {
    oracles::TestRng rng;
    RatMatrix u = oracles::random_matrix(rng, 3, 4, 1000003);
    auto [f, g] = cdmm::encode_repetition(u, u, 4, 10);
    Rational unit(1, 10000);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) CHECK((f.fixed().at(i, j).value() - u.at(i, j)).abs() < unit);
    (void)g;
  }

  TEST_CASE("encoder is linear before truncation") {
    oracles::TestRng rng;
    for (int round = 0; round < 10; ++round) {
      RatMatrix u1 = oracles::random_matrix(rng, 2, 4, 101);
      RatMatrix u2 = oracles::random_matrix(rng, 2, 4, 103);
      RatMatrix v = oracles::random_matrix(rng, 4, 2, 107);
      Rational alpha = rng.unit_fraction(91) - Rational(1, 2);
      auto f1 = cdmm::encode_matdot(cdmm::partition(u1, v, 2), alpha, std::nullopt).first;
      auto f2 = cdmm::encode_matdot(cdmm::partition(u2, v, 2), alpha, std::nullopt).first;
      auto fsum = cdmm::encode_matdot(cdmm::partition(cdmm::add(u1, u2), v, 2), alpha, std::nullopt).first;
      CHECK(fsum.exact() == cdmm::add(f1.exact(), f2.exact()));
    }
  }

  TEST_CASE("share product expands into the block coefficient polynomial") {
    oracles::TestRng rng;
    for (int p : {1, 2, 3, 4}) {
      RatMatrix u = oracles::random_matrix(rng, 2, 2 * p, 61);
      RatMatrix v = oracles::random_matrix(rng, 2 * p, 1, 67);
      auto bp = cdmm::partition(u, v, p);
      auto coeffs = product_coefficients(bp);

      // The desired coefficient p-1 is exactly U*V.
      CHECK(coeffs[static_cast<std::size_t>(p) - 1] == oracles::naive_matmul(u, v));

      for (long anum : {-3L, 1L, 2L, 5L}) {
        Rational alpha(anum, 7);
        auto [f, g] = cdmm::encode_matdot(bp, alpha, std::nullopt);
        RatMatrix lhs = oracles::naive_matmul(f.exact(), g.exact());
        RatMatrix rhs(lhs.rows(), lhs.cols());
        Rational apow(1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          for (int i = 0; i < rhs.rows(); ++i)
            for (int j = 0; j < rhs.cols(); ++j) rhs.at(i, j) += coeffs[k].at(i, j) * apow;
          apow *= alpha;
        }
        CHECK(lhs == rhs);
      }
    }
  }

  TEST_CASE("amd point selection satisfies the magnitude bound strictly") {
    // p=2, eta^2=1, eps=1/10: bound is eps / (12 sqrt(3)), about 0.00481.
    Rational eps(1, 10);
    auto points = cdmm::select_amd_points(eps, Rational(1), 2, 4);
    REQUIRE(points.size() == 4);
    Rational alpha_max = points.back();
    // alpha_max <= eps/(12 sqrt(3))  <=>  432 alpha_max^2 <= eps^2 (exact check).
    CHECK(Rational(432) * alpha_max * alpha_max <= eps * eps);
    CHECK(alpha_max.to_double() == doctest::Approx(0.00481125).epsilon(1e-4));
    for (std::size_t i = 1; i < points.size(); ++i) CHECK(points[i - 1] < points[i]);
  }

  TEST_CASE("equispaced rule emits i/N multiples of alpha_max") {
    Rational alpha_max(1, 10000);
    auto points = cdmm::equispaced_points(alpha_max, 3);
    CHECK(points[0] == Rational(1, 30000));
    CHECK(points[1] == Rational(2, 30000));
    CHECK(points[2] == alpha_max);
  }

  TEST_CASE("amd bound scales linearly toward zero with epsilon") {
    Rational eps(1, 10);
    Rational b1 = cdmm::amd_alpha_bound(eps, Rational(1), 2);
    Rational b2 = cdmm::amd_alpha_bound(eps / Rational(10), Rational(1), 2);
    CHECK(b2 == b1 / Rational(10));
    Rational b3 = cdmm::amd_alpha_bound(eps / Rational(1000000), Rational(1), 2);
    CHECK(b3 == b1 / Rational(1000000));
  }

  TEST_CASE("amd point selection rejects out-of-range epsilon") {
    CHECK_THROWS_AS(cdmm::select_amd_points(Rational(0), Rational(1), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(cdmm::select_amd_points(Rational(3), Rational(1), 2, 3), std::invalid_argument);   // > 2
    CHECK_THROWS_AS(cdmm::select_amd_points(Rational(2), Rational(1, 100), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(cdmm::select_amd_points(Rational(1, 10), Rational(1), 1, 3), std::invalid_argument);
  }

  TEST_CASE("effective_delta is exact on integer powers of the base") {
    CHECK(cdmm::effective_delta({Rational(1, 10000)}, 10) == Rational(4));
    CHECK(cdmm::effective_delta({Rational(1)}, 10) == Rational(0));
    CHECK(cdmm::effective_delta({Rational(1, 30000), Rational(1, 15000), Rational(1, 10000)}, 10) == Rational(4));
    CHECK(cdmm::effective_delta({Rational(1, 256)}, 2) == Rational(8));
  }

  TEST_CASE("effective_delta approximates fractional exponents") {
    // 10^(-2.5) = sqrt(10)/1000, taken as a tight rational approximation.
    auto [lo, hi] = cdmm::sqrt_bounds(mpz_class(10), 9);
    (void)hi;
    Rational alpha = lo / Rational(1000);
    double delta = cdmm::effective_delta({alpha}, 10).to_double();
    CHECK(delta == doctest::Approx(2.5).epsilon(1e-6));
  }

  TEST_CASE("effective_delta rejects degenerate inputs") {
    CHECK_THROWS_AS(cdmm::effective_delta({}, 10), std::invalid_argument);
    CHECK_THROWS_AS(cdmm::effective_delta({Rational(0)}, 10), std::invalid_argument);
    CHECK_THROWS_AS(cdmm::effective_delta({Rational(2)}, 10), std::invalid_argument);
  }

  TEST_CASE("scheme spec validation") {
    cdmm::SchemeSpec spec;
    spec.kind = SchemeKind::kAmd;
    spec.p = 2;
    spec.num_servers = 2;
    spec.eval_points = {Rational(1, 10), Rational(1, 10)};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);  // repeated points
    spec.eval_points = {Rational(1, 10)};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);  // one point per server
    spec.eval_points = {Rational(1, 10), Rational(1, 5)};
    CHECK_NOTHROW(spec.validate());
    spec.kind = SchemeKind::kRepetition;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);  // repetition takes no points
    spec.eval_points.clear();
    CHECK_NOTHROW(spec.validate());
  }

  TEST_CASE("recovery thresholds per scheme") {
    CHECK(cdmm::recovery_threshold(SchemeKind::kMatDot, 3) == 5);
    CHECK(cdmm::recovery_threshold(SchemeKind::kAmd, 3) == 3);
    CHECK(cdmm::recovery_threshold(SchemeKind::kRepetition, 3) == 1);
  }
}
