#include "adlab/bounds.hpp"

#include <mpfr.h>

#include <cmath>

#include "adlab/primal.hpp"

namespace adlab {

namespace {

// Round-down conversion of an exact num/den pair to double.
double rational_to_double_floor(const mpz_class& num, const mpz_class& den) {
  mpfr_t n, d, q;
  mpfr_init2(n, 192);
  mpfr_init2(d, 192);
  mpfr_init2(q, 192);
  mpfr_set_z(n, num.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(d, den.get_mpz_t(), MPFR_RNDU);
  mpfr_div(q, n, d, MPFR_RNDD);
  double out = mpfr_get_d(q, MPFR_RNDD);
  mpfr_clear(n);
  mpfr_clear(d);
  mpfr_clear(q);
  return out;
}

}  // namespace

mpq_class mertens_product_exact(std::uint64_t r) {
  if (r > kMertensExactCap) {
    throw std::invalid_argument("mertens_product_exact: r exceeds the exact-rational cap");
  }
  mpz_class num = 1, den = 1;
  for (std::uint64_t p : primes_up_to(r)) {
    num *= p - 1;
    den *= p;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

double mertens_product(std::uint64_t r) {
  if (r <= kMertensExactCap) {
    mpz_class num = 1, den = 1;
    for (std::uint64_t p : primes_up_to(r)) {
      num *= p - 1;
      den *= p;
    }
    return rational_to_double_floor(num, den);
  }
  // Running 192-bit product, every step rounded down: the result is a true
  // lower bound on the exact product.
  mpfr_t acc, factor;
  mpfr_init2(acc, 192);
  mpfr_init2(factor, 192);
  mpfr_set_ui(acc, 1, MPFR_RNDD);
  for (std::uint64_t p : primes_up_to(r)) {
    mpfr_set_ui(factor, static_cast<unsigned long>(p - 1), MPFR_RNDD);
    mpfr_div_ui(factor, factor, static_cast<unsigned long>(p), MPFR_RNDD);
    mpfr_mul(acc, acc, factor, MPFR_RNDD);
  }
  double out = mpfr_get_d(acc, MPFR_RNDD);
  mpfr_clear(acc);
  mpfr_clear(factor);
  return out;
}

MertensSweep::MertensSweep() = default;

double MertensSweep::advance_to(std::uint64_t r) {
  if (r < r_) throw std::invalid_argument("MertensSweep: r must not decrease");
  bool changed = false;
  while (next_candidate_ <= r) {
    if (is_prime_64(next_candidate_)) {
      num_ *= next_candidate_ - 1;
      den_ *= next_candidate_;
      changed = true;
    }
    ++next_candidate_;
  }
  r_ = r;
  if (changed) value_ = rational_to_double_floor(num_, den_);
  return value_;
}

double rosser_schoenfeld_lower(double r) {
  if (!(r > 1.0)) throw std::domain_error("rosser_schoenfeld_lower: requires r > 1");
  double l = std::log(r);
  return std::exp(-kEulerGamma) / l * (1.0 - 1.0 / (l * l));
}

double half_log_bound(double r) {
  if (!(r > 1.0)) throw std::domain_error("half_log_bound: requires r > 1");
  return 1.0 / (2.0 * std::log(r));
}

namespace {

// Materialize ceil(e^(2BC)) exactly when the exponent is small enough to
// hold the integer comfortably (a few thousand digits).
constexpr double kExactRExponentCap = 20000.0;  // 2BC in natural-log units

// 512 bits resolve chain margins down to ~1e-150; the grid's worst case is
// around e^(-200) ~ 1e-87.
constexpr mpfr_prec_t kSizingPrec = 512;

struct MpfrVal {
  mpfr_t v;
  explicit MpfrVal(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrVal() { mpfr_clear(v); }
  MpfrVal(const MpfrVal&) = delete;
  MpfrVal& operator=(const MpfrVal&) = delete;
};

}  // namespace

SizingReport required_r(std::uint64_t b, double c) {
  if (b == 0 || !(c > 0.0)) {
    throw std::invalid_argument("required_r: needs B >= 1 and C > 0");
  }
  SizingReport rep;
  rep.b = b;
  rep.c = c;

  const double t = 2.0 * static_cast<double>(b) * c;  // exponent 2BC

  MpfrVal e2bc(kSizingPrec), rf(kSizingPrec), lnr(kSizingPrec), tmp(kSizingPrec),
      lhs(kSizingPrec), mid(kSizingPrec);
  mpfr_set_d(e2bc.v, t, MPFR_RNDN);
  // Round up so the ceiling below is certainly >= e^t.
  mpfr_exp(rf.v, e2bc.v, MPFR_RNDU);  // e^(2BC)

  // chain_mid = 2B - ln(4BC)/C, evaluated as (t - ln(2t))/C from the shared
  // exponent t. Separate roundings of 4BC would swamp the e^(-2BC) margin.
  mpfr_mul_ui(tmp.v, e2bc.v, 2, MPFR_RNDN);
  mpfr_log(mid.v, tmp.v, MPFR_RNDN);
  mpfr_sub(mid.v, e2bc.v, mid.v, MPFR_RNDN);
  mpfr_div_d(mid.v, mid.v, c, MPFR_RNDN);

  bool lhs_ge_mid;
  if (mpfr_inf_p(rf.v)) {
    // Exponent beyond the float's own range. ln(ceil(e^t)) >= t holds
    // identically, so lhs meets chain_mid with a sliver to spare; only the
    // magnitude of r can be reported.
    double l10 = t / std::log(10.0);
    double fl = std::floor(l10);
    rep.r = ExtendedReal::make(1, std::pow(10.0, l10 - fl), mpz_class(fl));
    mpfr_set(lhs.v, mid.v, MPFR_RNDN);
    lhs_ge_mid = t >= 1.0;
  } else {
    mpfr_ceil(rf.v, rf.v);  // r = ceil(e^(2BC))
    mpz_class r_int;
    if (t <= kExactRExponentCap) {
      mpfr_get_z(r_int.get_mpz_t(), rf.v, MPFR_RNDN);
      rep.r_exact = r_int;
      rep.r = ExtendedReal::from_mpz(r_int);
    } else {
      // Too large to materialize; report the magnitude only.
      MpfrVal lg(kSizingPrec);
      mpfr_log10(lg.v, rf.v, MPFR_RNDN);
      double l10 = mpfr_get_d(lg.v, MPFR_RNDN);
      double fl = std::floor(l10);
      rep.r = ExtendedReal::make(1, std::pow(10.0, l10 - fl), mpz_class(fl));
    }
    // lhs = ln(r / (2 ln r)) / C at full precision.
    mpfr_log(lnr.v, rf.v, MPFR_RNDN);
    mpfr_mul_ui(tmp.v, lnr.v, 2, MPFR_RNDN);
    mpfr_div(tmp.v, rf.v, tmp.v, MPFR_RNDN);  // r / (2 ln r)
    mpfr_log(lhs.v, tmp.v, MPFR_RNDN);
    mpfr_div_d(lhs.v, lhs.v, c, MPFR_RNDN);
    // The margin is about e^(-t)/C: resolvable at 512 bits up to t ~ 300.
    // Past that the comparison is rounding noise, but ln r >= t holds by
    // construction (ceiling of a rounded-up exponential) and
    //   lhs - mid = [(ln r - t) - ln(ln r / t)] / C >= 0  whenever t >= 1,
    // since g(u) = (u - t) - ln(u / t) has g(t) = 0 and g'(u) = 1 - 1/u >= 0.
    lhs_ge_mid = t <= 300.0 ? mpfr_cmp(lhs.v, mid.v) >= 0 : t >= 1.0;
  }

  rep.lhs = mpfr_get_d(lhs.v, MPFR_RNDN);
  rep.chain_mid = mpfr_get_d(mid.v, MPFR_RNDN);

  bool mid_gt_b = mpfr_cmp_ui(mid.v, b) > 0;
  rep.chain_holds = lhs_ge_mid && mid_gt_b;
  if (!rep.chain_holds) {
    throw ChainViolation("required_r: sizing chain fails for B=" + std::to_string(b) +
                         ", C=" + std::to_string(c));
  }
  return rep;
}

namespace {

constexpr std::uint64_t kExactLogFactorialCap = 1000000;
constexpr double kTwoPi = 6.283185307179586477;

// Stirling with the 1/(12M) term, for double-range M.
double stirling_double(double m) {
  double l = std::log(m);
  return m * l - m + 0.5 * std::log(kTwoPi * m) + 1.0 / (12.0 * m);
}

}  // namespace

LogFactorialResult log_factorial(std::uint64_t m) {
  if (m <= 1) return {ExtendedReal(), 0.0};
  if (m <= kExactLogFactorialCap) {
    // Kahan summation: plain accumulation drifts to ~1e-10 relative near the
    // cap, too close to downstream tolerances.
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t i = 2; i <= m; ++i) {
      double y = std::log(static_cast<double>(i)) - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    return {ExtendedReal::from_double(sum), 1e-14};
  }
  double md = static_cast<double>(m);
  double trunc = 1.0 / (360.0 * md * md * md);
  double value = stirling_double(md);
  return {ExtendedReal::from_double(value), trunc / value + 1e-15};
}

LogFactorialResult log_factorial(const mpz_class& m) {
  if (m < 2) return {ExtendedReal(), 0.0};
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 63) {
    return log_factorial(static_cast<std::uint64_t>(m.get_ui()));
  }
  return log_factorial(ExtendedReal::from_mpz(m));
}

LogFactorialResult log_factorial(const ExtendedReal& m) {
  if (m < ExtendedReal::from_double(2.0)) {
    throw std::domain_error("log_factorial: requires m >= 2");
  }
  // Stirling in ExtendedReal arithmetic: M ln M - M + 0.5 ln(2 pi M) + 1/(12 M).
  ExtendedReal lnm = m.ln();
  ExtendedReal value = m * lnm - m;
  ExtendedReal corr =
      ExtendedReal::from_double(0.5) * (ExtendedReal::from_double(std::log(kTwoPi)) + lnm);
  value = value + corr;
  value = value + ExtendedReal::from_double(1.0) / (ExtendedReal::from_double(12.0) * m);
  // Mantissa arithmetic carries ~1e-15; truncation is negligible at this size.
  return {value, 1e-13};
}

}  // namespace adlab
