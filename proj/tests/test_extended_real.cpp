#include <doctest.h>

#include <cmath>
#include <string>

#include "adlab/extended_real.hpp"

using adlab::ExtendedReal;

namespace {

double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace

TEST_CASE("from_double round trips representable values") {
  const double xs[] = {1.0, -1.0, 0.5, 3.25, 1e300, -1e-300, 6.022e23, 9.999999999999998};
  for (double x : xs) {
    ExtendedReal e = ExtendedReal::from_double(x);
    CHECK(rel_err(e.to_double(), x) < 1e-15);
  }
  CHECK(ExtendedReal::from_double(0.0).is_zero());
  CHECK(ExtendedReal::from_double(0.0).to_double() == 0.0);
}

TEST_CASE("mantissa stays normalized in [1, 10)") {
  ExtendedReal e = ExtendedReal::make(1, 123.456, 0);
  CHECK(e.mantissa() >= 1.0);
  CHECK(e.mantissa() < 10.0);
  CHECK(e.exponent10() == 2);
  ExtendedReal tiny = ExtendedReal::make(-1, 0.00042, mpz_class(-5));
  CHECK(tiny.mantissa() >= 1.0);
  CHECK(tiny.mantissa() < 10.0);
  CHECK(tiny.sign() == -1);
  CHECK(tiny.exponent10() == mpz_class(-9));  // -0.00042e-5 = -4.2e-9
}

TEST_CASE("from_mpz matches decimal digits") {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 10, 100);
  z *= 7;  // 7e100
  ExtendedReal e = ExtendedReal::from_mpz(z);
  CHECK(e.sign() == 1);
  CHECK(e.exponent10() == 100);
  CHECK(rel_err(e.mantissa(), 7.0) < 1e-12);
  CHECK(ExtendedReal::from_mpz(mpz_class(0)).is_zero());
  ExtendedReal neg = ExtendedReal::from_mpz(mpz_class(-12345));
  CHECK(neg.sign() == -1);
  CHECK(neg.exponent10() == 4);
  CHECK(rel_err(neg.mantissa(), 1.2345) < 1e-12);
}

TEST_CASE("multiplication and division track doubles") {
  ExtendedReal a = ExtendedReal::from_double(3.7);
  ExtendedReal b = ExtendedReal::from_double(-2.5e10);
  CHECK(rel_err((a * b).to_double(), 3.7 * -2.5e10) < 1e-14);
  CHECK(rel_err((b / a).to_double(), -2.5e10 / 3.7) < 1e-14);
  CHECK((a * ExtendedReal()).is_zero());
}

TEST_CASE("multiplication works far outside double range") {
  ExtendedReal big = ExtendedReal::make(1, 2.0, mpz_class(5000));
  ExtendedReal sq = big * big;
  CHECK(sq.exponent10() == 10000);
  CHECK(rel_err(sq.mantissa(), 4.0) < 1e-14);
  ExtendedReal inv = ExtendedReal::from_double(1.0) / big;
  CHECK(inv.exponent10() == mpz_class(-5001));
  CHECK(rel_err(inv.mantissa(), 5.0) < 1e-14);
}

TEST_CASE("addition aligns nearby exponents") {
  ExtendedReal a = ExtendedReal::from_double(1.5e8);
  ExtendedReal b = ExtendedReal::from_double(2.25e6);
  CHECK(rel_err((a + b).to_double(), 1.5225e8) < 1e-14);
  CHECK(rel_err((a - b).to_double(), 1.4775e8) < 1e-14);
  ExtendedReal c = ExtendedReal::from_double(-1.5e8);
  CHECK((a + c).is_zero());
}

TEST_CASE("addition absorbs operands more than 25 digits apart") {
  ExtendedReal a = ExtendedReal::make(1, 1.0, mpz_class(100));
  ExtendedReal b = ExtendedReal::make(1, 9.0, mpz_class(0));
  ExtendedReal s = a + b;
  CHECK(s.exponent10() == 100);
  CHECK(s.mantissa() == 1.0);
  // within the window the small term still registers
  ExtendedReal c = ExtendedReal::make(1, 1.0, mpz_class(10));
  ExtendedReal d = ExtendedReal::make(1, 5.0, mpz_class(-5));
  CHECK(rel_err((c + d).to_double(), 1e10 + 5e-5) < 1e-14);
}

TEST_CASE("ln matches std::log in double range") {
  const double xs[] = {2.0, 10.0, 0.5, 1e-12, 6.9e250};
  for (double x : xs) {
    CHECK(rel_err(ExtendedReal::from_double(x).ln().to_double(), std::log(x)) < 1e-13);
  }
}

TEST_CASE("ln handles exponents beyond double range") {
  // ln(10^(10^6)) = 1e6 * ln 10
  ExtendedReal e = ExtendedReal::make(1, 1.0, mpz_class(1000000));
  double want = 1e6 * std::log(10.0);
  CHECK(rel_err(e.ln().to_double(), want) < 1e-14);
  // mantissa contributes too: ln(5 * 10^1000000)
  ExtendedReal f = ExtendedReal::make(1, 5.0, mpz_class(1000000));
  CHECK(rel_err(f.ln().to_double(), want + std::log(5.0)) < 1e-14);
}

TEST_CASE("exp_of inverts ln for moderate arguments") {
  const double xs[] = {0.0, 1.0, -1.0, 50.0, -700.0, 700.0, 12345.6789};
  for (double x : xs) {
    ExtendedReal e = ExtendedReal::exp_of(ExtendedReal::from_double(x));
    // compare in log space to dodge double overflow
    CHECK(rel_err(e.ln().to_double(), x) < 1e-12);
  }
}

TEST_CASE("exp_of produces exact decimal exponents for large arguments") {
  // e^(2 * 3 * 1000) has log10 = 6000 / ln 10 = 2605.76...
  ExtendedReal e = ExtendedReal::exp_of(ExtendedReal::from_double(6000.0));
  CHECK(e.exponent10() == 2605);
  CHECK(rel_err(e.mantissa(), 5.8464389565021147) < 1e-12);
}

TEST_CASE("exp_of of huge negative arguments keeps the exponent magnitude") {
  // e^(-1e18): log10 = -1e18 / ln 10 ~ -4.34e17
  ExtendedReal x = ExtendedReal::make(-1, 1.0, mpz_class(18));
  ExtendedReal e = ExtendedReal::exp_of(x);
  CHECK(e.sign() == 1);
  CHECK(e.exponent10() < mpz_class(-434000000000000000L));
  CHECK(e.exponent10() > mpz_class(-435000000000000000L));
  CHECK(e.to_double() == 0.0);  // saturates
}

TEST_CASE("cmp orders mixed magnitudes") {
  ExtendedReal zero;
  ExtendedReal small = ExtendedReal::make(1, 1.0, mpz_class(-100000));
  ExtendedReal one = ExtendedReal::from_double(1.0);
  ExtendedReal big = ExtendedReal::make(1, 1.0, mpz_class(100000));
  ExtendedReal negbig = ExtendedReal::make(-1, 1.0, mpz_class(100000));
  CHECK(negbig < zero);
  CHECK(zero < small);
  CHECK(small < one);
  CHECK(one < big);
  CHECK(big.cmp(big) == 0);
  // same exponent, mantissa decides
  ExtendedReal a = ExtendedReal::make(1, 2.0, mpz_class(10));
  ExtendedReal b = ExtendedReal::make(1, 3.0, mpz_class(10));
  CHECK(a < b);
  // negative numbers flip the exponent ordering
  ExtendedReal na = ExtendedReal::make(-1, 1.0, mpz_class(5));
  ExtendedReal nb = ExtendedReal::make(-1, 1.0, mpz_class(6));
  CHECK(nb < na);
}

TEST_CASE("to_double saturates out-of-range exponents") {
  CHECK(ExtendedReal::make(1, 1.0, mpz_class(5000)).to_double() ==
        std::numeric_limits<double>::infinity());
  CHECK(ExtendedReal::make(-1, 1.0, mpz_class(5000)).to_double() ==
        -std::numeric_limits<double>::infinity());
  CHECK(ExtendedReal::make(1, 1.0, mpz_class(-5000)).to_double() == 0.0);
}

TEST_CASE("log10_approx combines mantissa and exponent") {
  ExtendedReal e = ExtendedReal::make(1, 5.0, mpz_class(100));
  CHECK(rel_err(e.log10_approx(), 100.0 + std::log10(5.0)) < 1e-14);
}

TEST_CASE("to_string format") {
  CHECK(ExtendedReal().to_string() == "0");
  std::string s = ExtendedReal::make(1, 5.8464389565021147, mpz_class(2605)).to_string();
  CHECK(s.find("5.846438956502114") == 0);
  CHECK(s.find("e2605") != std::string::npos);
  std::string neg = ExtendedReal::from_double(-1.25e-40).to_string();
  CHECK(neg.front() == '-');
  CHECK(neg.find("e-40") != std::string::npos);
}
