#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "adlab/extended_real.hpp"

namespace adlab {

inline constexpr double kEulerGamma = 0.57721566490153286;

// Largest r for which the Mertens product is evaluated as an exact rational.
inline constexpr std::uint64_t kMertensExactCap = 10000;

// prod_{p <= r, p prime} (1 - 1/p), rounded toward zero so the returned
// double never exceeds the true value. Exact rational arithmetic up to
// kMertensExactCap, directed-rounding 192-bit floats beyond.
double mertens_product(std::uint64_t r);

// The same product as an exact rational; r must be <= kMertensExactCap.
mpq_class mertens_product_exact(std::uint64_t r);

// Incrementally extends the exact numerator/denominator pair as r grows.
// Cheaper than mertens_product when sweeping r upward one step at a time.
class MertensSweep {
 public:
  MertensSweep();
  // Moves to r (must not decrease). Returns the round-down double value.
  double advance_to(std::uint64_t r);
  std::uint64_t current_r() const { return r_; }
  const mpz_class& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  double value_lower() const { return value_; }

 private:
  std::uint64_t r_ = 1;
  mpz_class num_{1};
  mpz_class den_{1};
  double value_ = 1.0;
  std::uint64_t next_candidate_ = 2;
};

// e^(-gamma) / ln r * (1 - 1/(ln r)^2). Positive for r > e; throws
// std::domain_error for r <= 1.
double rosser_schoenfeld_lower(double r);

// 1 / (2 ln r). Throws std::domain_error for r <= 1.
double half_log_bound(double r);

struct ChainViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizingReport {
  std::uint64_t b = 0;
  double c = 1.0;
  // r = ceil(e^(2BC)), exactly when it fits the materialization budget.
  ExtendedReal r;
  std::optional<mpz_class> r_exact;
  // ln(r / (2 ln r)) / C, and the simplified middle term 2B - ln(4BC)/C.
  double lhs = 0.0;
  double chain_mid = 0.0;
  bool chain_holds = false;
};

// Smallest r of the form ceil(e^(2BC)) for which r / (2 ln r) >= e^(BC),
// with the two-step chain lhs >= chain_mid > B verified in 512-bit interval
// style arithmetic (the margins shrink like e^(-2BC)). Throws ChainViolation
// when the chain fails (for example B < 3 with C = 1).
SizingReport required_r(std::uint64_t b, double c);

struct LogFactorialResult {
  ExtendedReal value;  // ln(M!)
  double rel_error;    // bound on the relative error of `value`
};

// Exact compensated summation for M <= 10^6; Stirling with the 1/(12M)
// correction beyond (truncation error below 1/(360 M^3)).
LogFactorialResult log_factorial(std::uint64_t m);
LogFactorialResult log_factorial(const mpz_class& m);
// For magnitudes beyond integer range. Requires m >= 2.
LogFactorialResult log_factorial(const ExtendedReal& m);

}  // namespace adlab
