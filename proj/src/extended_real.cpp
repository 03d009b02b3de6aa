#include "adlab/extended_real.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace adlab {

namespace {

constexpr double kLn10 = 2.302585092994045684;

// Largest exponent gap (in decimal digits) that addition still resolves.
constexpr long kAlignLimit = 25;

}  // namespace

ExtendedReal ExtendedReal::make(int sign, double mantissa, mpz_class exp10) {
  ExtendedReal r;
  if (sign == 0 || mantissa == 0.0) return r;
  if (mantissa < 0.0) {
    sign = -sign;
    mantissa = -mantissa;
  }
  if (!std::isfinite(mantissa)) throw std::domain_error("ExtendedReal: non-finite mantissa");
  // Jump close to [1, 10) in two half-steps (keeps every intermediate finite
  // even for subnormal input), then fix up rounding stragglers.
  if (mantissa >= 10.0 || mantissa < 1.0) {
    long k = static_cast<long>(std::floor(std::log10(mantissa)));
    long k1 = k / 2;
    long k2 = k - k1;
    mantissa /= std::pow(10.0, static_cast<double>(k1));
    mantissa /= std::pow(10.0, static_cast<double>(k2));
    exp10 += k;
  }
  while (mantissa >= 10.0) {
    mantissa /= 10.0;
    exp10 += 1;
  }
  while (mantissa < 1.0) {
    mantissa *= 10.0;
    exp10 -= 1;
  }
  r.sign_ = sign;
  r.mantissa_ = mantissa;
  r.exp10_ = std::move(exp10);
  return r;
}

ExtendedReal ExtendedReal::from_double(double x) {
  if (x == 0.0) return ExtendedReal();
  if (!std::isfinite(x)) throw std::domain_error("ExtendedReal: non-finite input");
  int sign = x > 0 ? 1 : -1;
  return make(sign, std::fabs(x), 0);
}

ExtendedReal ExtendedReal::from_mpz(const mpz_class& z) {
  int sign = mpz_sgn(z.get_mpz_t());
  if (sign == 0) return ExtendedReal();
  // z = d * 2^e with d in [0.5, 1): convert the base-2 split to base 10.
  long e2 = 0;
  double d = mpz_get_d_2exp(&e2, z.get_mpz_t());
  d = std::fabs(d);
  double log10v = std::log10(d) + static_cast<double>(e2) * std::log10(2.0);
  double k = std::floor(log10v);
  double mant = std::pow(10.0, log10v - k);
  return make(sign, mant, mpz_class(static_cast<long>(k)));
}

ExtendedReal ExtendedReal::operator-() const {
  ExtendedReal r = *this;
  r.sign_ = -r.sign_;
  return r;
}

ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_zero() || b.is_zero()) return ExtendedReal();
  return ExtendedReal::make(a.sign_ * b.sign_, a.mantissa_ * b.mantissa_, a.exp10_ + b.exp10_);
}

ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_zero()) throw std::domain_error("ExtendedReal: division by zero");
  if (a.is_zero()) return ExtendedReal();
  return ExtendedReal::make(a.sign_ * b.sign_, a.mantissa_ / b.mantissa_, a.exp10_ - b.exp10_);
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  mpz_class diff = a.exp10_ - b.exp10_;
  if (!diff.fits_slong_p()) {
    return mpz_sgn(diff.get_mpz_t()) > 0 ? a : b;
  }
  long d = diff.get_si();
  if (d > kAlignLimit) return a;
  if (d < -kAlignLimit) return b;
  // Work in the larger exponent's frame.
  const ExtendedReal& hi = d >= 0 ? a : b;
  const ExtendedReal& lo = d >= 0 ? b : a;
  long gap = d >= 0 ? d : -d;
  double mhi = hi.mantissa_ * hi.sign_;
  double mlo = lo.mantissa_ * lo.sign_ * std::pow(10.0, -static_cast<double>(gap));
  double m = mhi + mlo;
  if (m == 0.0) return ExtendedReal();
  return ExtendedReal::make(m > 0 ? 1 : -1, std::fabs(m), hi.exp10_);
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-b); }

ExtendedReal ExtendedReal::ln() const {
  if (sign_ <= 0) throw std::domain_error("ExtendedReal: log of non-positive value");
  // ln(m * 10^E) = E ln 10 + ln m, with E promoted to keep the product exact.
  ExtendedReal e_term = from_mpz(exp10_) * from_double(kLn10);
  return e_term + from_double(std::log(mantissa_));
}

ExtendedReal ExtendedReal::exp_of(const ExtendedReal& x) {
  if (x.is_zero()) return from_double(1.0);
  // e^x = 10^(x / ln 10); split into integer exponent and fractional mantissa.
  ExtendedReal mu = x / from_double(kLn10);
  double mu_d = mu.to_double();
  if (std::isfinite(mu_d) && std::fabs(mu_d) < 9.0e15) {
    double fl = std::floor(mu_d);
    double frac = mu_d - fl;
    mpz_class e(fl);
    return make(1, std::pow(10.0, frac), std::move(e));
  }
  // Exponent beyond double's integer range: magnitude only, mantissa 1.
  if (!mu.exp10_.fits_slong_p()) throw std::overflow_error("ExtendedReal: exp exponent too large");
  long k = mu.exp10_.get_si();
  if (k < 0) return from_double(1.0);
  if (k > 10000000) throw std::overflow_error("ExtendedReal: exp exponent too large");
  mpz_class e;
  // trunc(mantissa * 10^17) * 10^(k-17) reconstructs the exponent's leading digits.
  double scaled = mu.mantissa_ * 1e17;
  mpz_class lead(scaled);
  if (k >= 17) {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(k - 17));
    e = lead * pow10;
  } else {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(17 - k));
    e = lead / pow10;
  }
  if (mu.sign_ < 0) e = -e - 1;
  return make(1, 1.0, std::move(e));
}

int ExtendedReal::cmp(const ExtendedReal& other) const {
  if (sign_ != other.sign_) return sign_ < other.sign_ ? -1 : 1;
  if (sign_ == 0) return 0;
  int ec = mpz_cmp(exp10_.get_mpz_t(), other.exp10_.get_mpz_t());
  int flip = sign_;  // for negatives, larger exponent means smaller value
  if (ec != 0) return ec > 0 ? flip : -flip;
  if (mantissa_ == other.mantissa_) return 0;
  return mantissa_ > other.mantissa_ ? flip : -flip;
}

double ExtendedReal::to_double() const {
  if (sign_ == 0) return 0.0;
  if (!exp10_.fits_slong_p()) {
    return mpz_sgn(exp10_.get_mpz_t()) > 0 ? sign_ * HUGE_VAL : 0.0;
  }
  long e = exp10_.get_si();
  if (e > 320) return sign_ * HUGE_VAL;
  if (e < -330) return 0.0;
  return sign_ * mantissa_ * std::pow(10.0, static_cast<double>(e));
}

double ExtendedReal::log10_approx() const {
  if (sign_ == 0) return -HUGE_VAL;
  double e = mpz_get_d(exp10_.get_mpz_t());
  return e + std::log10(mantissa_);
}

std::string ExtendedReal::to_string() const {
  if (sign_ == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", mantissa_);
  std::string s = sign_ < 0 ? "-" : "";
  s += buf;
  s += "e";
  s += exp10_.get_str();
  return s;
}

}  // namespace adlab
