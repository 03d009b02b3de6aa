#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace adlab {

enum class PrimalityStatus { Prime, ProbablePrime, Composite };

struct PrimalityVerdict {
  PrimalityStatus status;
  // A proper divisor of n, when the composite verdict came from finding one.
  // Strong-test failures certify compositeness without producing a divisor.
  std::optional<mpz_class> witness;
};

// Deterministic for the full 64-bit range (staged Miller-Rabin witness sets).
bool is_prime_64(std::uint64_t n);

// Verdict for arbitrary-size n. Below 2^64 the answer is deterministic
// (Prime / Composite). Above, trial division by small primes and a fixed
// schedule of strong tests (base 2 plus `rounds` further prime bases) yield
// Composite (always correct) or ProbablePrime. Never Prime above 2^64.
PrimalityVerdict is_probable_prime(const mpz_class& n, unsigned rounds = 24);

// All primes <= n, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

struct SegmentTooLarge : std::length_error {
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 20;

// Primality flags for the inclusive window [lo, hi].
struct PrimeRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<bool> flags;  // flags[m - lo] == true iff m is prime

  bool is_prime(std::uint64_t m) const {
    if (m < lo || m > hi) throw std::out_of_range("PrimeRange: value outside window");
    return flags[m - lo];
  }
  std::vector<std::uint64_t> primes() const;
};

// Segmented sieve over [lo, hi]. Throws SegmentTooLarge when the window
// exceeds max_segment values.
PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi,
                       std::uint64_t max_segment = kDefaultSegmentSize);

}  // namespace adlab
