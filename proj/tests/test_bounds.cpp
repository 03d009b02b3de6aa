#include <doctest.h>

#include <cmath>

#include "adlab/bounds.hpp"
#include "adlab/primal.hpp"

using namespace adlab;

TEST_CASE("mertens product exact fractions") {
  CHECK(mertens_product_exact(2) == mpq_class(1, 2));
  CHECK(mertens_product_exact(7) == mpq_class(8, 35));
  CHECK(mertens_product_exact(10) == mpq_class(8, 35));  // no prime in (7, 10]
  CHECK(mertens_product_exact(23) == mpq_class(110592, 676039));
  CHECK(mertens_product_exact(1) == mpq_class(1));
  CHECK_THROWS_AS(mertens_product_exact(kMertensExactCap + 1), std::invalid_argument);
}

TEST_CASE("mertens product double is a round-down of the exact value") {
  CHECK(mertens_product(100) == doctest::Approx(0.12031729047493518).epsilon(1e-15));
  for (std::uint64_t r : {2u, 3u, 10u, 100u, 541u, 9973u}) {
    mpq_class exact = mertens_product_exact(r);
    double lower = mertens_product(r);
    CHECK(mpq_class(lower) <= exact);
    CHECK(exact.get_d() - lower < 1e-12);
  }
  // the guaranteed extraction floor at r = 100
  CHECK(static_cast<std::uint64_t>(std::ceil(100 * mertens_product(100))) == 13);
}

TEST_CASE("mertens product strictly decreases exactly at primes") {
  double prev = mertens_product(1);
  for (std::uint64_t r = 2; r <= 60; ++r) {
    double cur = mertens_product(r);
    if (is_prime_64(r)) {
      CHECK(cur < prev);
    } else {
      CHECK(cur == prev);
    }
    prev = cur;
  }
}

TEST_CASE("mertens beyond the exact cap stays within the analytic corridor") {
  double v = mertens_product(20000);
  CHECK(v > rosser_schoenfeld_lower(20000.0));
  double asym = std::exp(-kEulerGamma) / std::log(20000.0);
  CHECK(v < asym * 1.01);
  CHECK(v < mertens_product(9973));
}

TEST_CASE("MertensSweep matches batch evaluation") {
  MertensSweep sweep;
  for (std::uint64_t r = 2; r <= 300; ++r) {
    double v = sweep.advance_to(r);
    CHECK(v == mertens_product(r));
    CHECK(sweep.current_r() == r);
  }
  mpq_class q(sweep.numerator(), sweep.denominator());
  q.canonicalize();
  CHECK(q == mertens_product_exact(300));
  CHECK_THROWS_AS(sweep.advance_to(10), std::invalid_argument);
}

TEST_CASE("rosser_schoenfeld_lower pinned values") {
  CHECK(rosser_schoenfeld_lower(25.0) == doctest::Approx(0.15759248136339832).epsilon(1e-15));
  CHECK(rosser_schoenfeld_lower(1e6) == doctest::Approx(0.04042687202516520).epsilon(1e-15));
  CHECK_THROWS_AS(rosser_schoenfeld_lower(1.0), std::domain_error);
  CHECK_THROWS_AS(rosser_schoenfeld_lower(0.5), std::domain_error);
  // below e the parenthesis goes negative
  CHECK(rosser_schoenfeld_lower(2.0) < 0.0);
}

TEST_CASE("half_log_bound pinned values") {
  CHECK(half_log_bound(25.0) == doctest::Approx(0.15533373363990295).epsilon(1e-15));
  CHECK(half_log_bound(std::exp(1.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(half_log_bound(1.0), std::domain_error);
}

TEST_CASE("sandwich: mertens above rosser above half-log for r in [25, 2000]") {
  for (std::uint64_t r = 25; r <= 2000; ++r) {
    const double m = mertens_product(r);
    const double lo = rosser_schoenfeld_lower(static_cast<double>(r));
    const double h = half_log_bound(static_cast<double>(r));
    CAPTURE(r);
    CHECK(m > lo);
    CHECK(lo >= h);
  }
}

TEST_CASE("required_r for B=3, C=1") {
  SizingReport s = required_r(3, 1.0);
  REQUIRE(s.r_exact.has_value());
  CHECK(*s.r_exact == 404);
  CHECK(s.lhs == doctest::Approx(3.5162724429791385).epsilon(1e-9));
  CHECK(s.chain_mid == doctest::Approx(3.5150933502119997).epsilon(1e-9));
  CHECK(s.chain_holds);
  CHECK(s.lhs >= s.chain_mid);
  CHECK(s.chain_mid > 3.0);
}

TEST_CASE("required_r for B=4, C=1") {
  SizingReport s = required_r(4, 1.0);
  REQUIRE(s.r_exact.has_value());
  CHECK(*s.r_exact == 2981);
  CHECK(s.lhs == doctest::Approx(5.2274236097300831).epsilon(1e-9));
  CHECK(s.chain_mid == doctest::Approx(5.2274112777602188).epsilon(1e-9));
  CHECK(s.chain_holds);
}

TEST_CASE("required_r with a 2606-digit result keeps the exact integer") {
  SizingReport s = required_r(3, 1000.0);
  REQUIRE(s.r_exact.has_value());
  CHECK(s.r_exact->get_str().size() == 2606);
  CHECK(s.chain_holds);
  CHECK(s.r.exponent10() == 2605);
  CHECK(s.r.mantissa() == doctest::Approx(5.8464389565021147).epsilon(1e-12));
  CHECK(s.r.log10_approx() == doctest::Approx(2605.766891419511).epsilon(1e-12));
}

TEST_CASE("required_r past the materialization budget reports magnitude only") {
  // t = 2 * 3 * 5000 = 30000 natural-log units, beyond the exact-integer cap
  SizingReport s = required_r(3, 5000.0);
  CHECK_FALSE(s.r_exact.has_value());
  CHECK(s.chain_holds);
  CHECK(s.r.log10_approx() == doctest::Approx(30000.0 / std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("required_r rejects parameter ranges where the chain fails") {
  CHECK_THROWS_AS(required_r(3, 0.5), ChainViolation);
  CHECK_THROWS_AS(required_r(1, 1.0), ChainViolation);
  CHECK_THROWS_AS(required_r(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(required_r(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(required_r(3, -1.0), std::invalid_argument);
}

TEST_CASE("required_r chain holds across a parameter grid") {
  for (std::uint64_t b = 3; b <= 10; ++b) {
    for (double c : {1.0, 2.0, 5.0, 10.0}) {
      SizingReport s = required_r(b, c);
      CAPTURE(b);
      CAPTURE(c);
      CHECK(s.chain_holds);
      CHECK(s.chain_mid > static_cast<double>(b));
    }
  }
}

TEST_CASE("log_factorial small and pinned values") {
  CHECK(log_factorial(std::uint64_t{0}).value.is_zero());
  CHECK(log_factorial(std::uint64_t{1}).value.is_zero());
  CHECK(log_factorial(std::uint64_t{2}).value.to_double() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_factorial(std::uint64_t{20}).value.to_double() ==
        doctest::Approx(42.335616460753485).epsilon(1e-15));
  CHECK(log_factorial(std::uint64_t{1000000}).value.to_double() ==
        doctest::Approx(12815518.384658169624).epsilon(1e-14));
}

TEST_CASE("log_factorial crossover is continuous") {
  double exact = log_factorial(std::uint64_t{1000000}).value.to_double();
  double stirl = log_factorial(std::uint64_t{1000001}).value.to_double();
  // consecutive values differ by ln(M+1) regardless of evaluation path
  CHECK(stirl - exact == doctest::Approx(std::log(1000001.0)).epsilon(1e-9));
  double r1 = log_factorial(std::uint64_t{1000001}).rel_error;
  CHECK(r1 < 1e-12);
}

TEST_CASE("log_factorial consecutive-ratio property in the Stirling regime") {
  for (std::uint64_t m : {2000000ULL, 123456789ULL}) {
    double a = log_factorial(m).value.to_double();
    double b = log_factorial(m + 1).value.to_double();
    // the difference of two large sums carries their absolute error
    CHECK(b - a == doctest::Approx(std::log(static_cast<double>(m) + 1.0)).epsilon(1e-4));
  }
}

TEST_CASE("log_factorial mpz overload matches u64 and extends beyond") {
  mpz_class m(720);
  CHECK(log_factorial(m).value.to_double() ==
        doctest::Approx(log_factorial(std::uint64_t{720}).value.to_double()).epsilon(1e-15));
  // 2^80: way above u64
  mpz_class huge = mpz_class(1) << 80;
  LogFactorialResult r = log_factorial(huge);
  // ln(M!) ~ M (ln M - 1), so log10 ln(M!) ~ log10(80 ln 2 - 1) + 80 log10 2
  double want = std::log10(80.0 * std::log(2.0) - 1.0) + 80.0 * std::log10(2.0);
  CHECK(r.value.log10_approx() == doctest::Approx(want).epsilon(1e-6));
  CHECK(r.rel_error < 1e-12);
}

TEST_CASE("log_factorial of extended-real magnitudes") {
  // M = 10^100: ln(M!) ~ 10^100 * (100 ln 10 - 1)
  ExtendedReal m = ExtendedReal::make(1, 1.0, mpz_class(100));
  LogFactorialResult r = log_factorial(m);
  double factor = 100.0 * std::log(10.0) - 1.0;  // 229.25...
  CHECK(r.value.exponent10() == 102);  // 2.2925e102
  CHECK(r.value.mantissa() == doctest::Approx(factor / 100.0).epsilon(1e-10));
  CHECK_THROWS_AS(log_factorial(ExtendedReal::from_double(1.5)), std::domain_error);
}
