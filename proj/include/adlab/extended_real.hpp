#pragma once

#include <gmpxx.h>

#include <string>

namespace adlab {

// Signed magnitude with a double mantissa in [1, 10) and an arbitrary-size
// decimal exponent. Covers quantities like 10^2605 or 10^(-10^18) that
// overflow double but whose exponents still fit an integer. Roughly 15
// significant digits of mantissa; exponents are exact.
class ExtendedReal {
 public:
  ExtendedReal() : sign_(0), mantissa_(0.0), exp10_(0) {}

  static ExtendedReal from_double(double x);
  static ExtendedReal from_mpz(const mpz_class& z);
  // Normalizes an arbitrary (sign, mantissa, exponent) triple.
  static ExtendedReal make(int sign, double mantissa, mpz_class exp10);

  int sign() const { return sign_; }
  double mantissa() const { return mantissa_; }
  const mpz_class& exponent10() const { return exp10_; }
  bool is_zero() const { return sign_ == 0; }

  ExtendedReal operator-() const;
  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b);
  // Addition aligns exponents when they differ by at most 25 decimal digits;
  // beyond that the smaller operand is absorbed into the larger one.
  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);

  // Natural log; requires a positive value. Exact exponent arithmetic keeps
  // this accurate to ~1e-15 relative even for million-digit exponents.
  ExtendedReal ln() const;

  // e^x for an ExtendedReal exponent. The result's decimal exponent is exact
  // while |x| stays below ~9e15; beyond that the mantissa degrades to 1.0 and
  // only the exponent's magnitude is meaningful.
  static ExtendedReal exp_of(const ExtendedReal& x);

  // Comparison by value. Returns -1, 0, +1.
  int cmp(const ExtendedReal& other) const;
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) { return a.cmp(b) < 0; }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) { return a.cmp(b) >= 0; }

  // Saturates to +-inf / 0 when the exponent leaves double range.
  double to_double() const;
  // log10 of |value| as a double; +-inf when the exponent overflows double.
  double log10_approx() const;
  // "0", "5.8464389565021147e2605", "-1.25e-40".
  std::string to_string() const;

 private:
  int sign_;         // -1, 0, +1
  double mantissa_;  // in [1, 10) when sign_ != 0
  mpz_class exp10_;
};

}  // namespace adlab
