#include "adlab/primal.hpp"

#include <cmath>

namespace adlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Strong probable prime test; n odd, n > 2, a not divisible by n.
bool sprp64(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr u64 kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

u64 isqrt64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

}  // namespace

bool is_prime_64(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 101 * 101) return true;
  // Staged deterministic witness sets; each set decides its full range.
  if (n < 1373653) return sprp64(n, 2) && sprp64(n, 3);
  if (n < 9080191) return sprp64(n, 31) && sprp64(n, 73);
  if (n < 3215031751ULL) return sprp64(n, 2) && sprp64(n, 3) && sprp64(n, 5) && sprp64(n, 7);
  if (n < 3474749660383ULL)
    return sprp64(n, 2) && sprp64(n, 3) && sprp64(n, 5) && sprp64(n, 7) && sprp64(n, 11) &&
           sprp64(n, 13);
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!sprp64(n, a)) return false;
  }
  return true;
}

namespace {

// n odd, n > 2. Strong test with an arbitrary-precision base.
bool sprp_mpz(const mpz_class& n, unsigned long a) {
  mpz_class d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_class q = d >> s;
  mpz_class base(a);
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == d) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == d) return true;
  }
  return false;
}

bool fits_u64(const mpz_class& n) {
  return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

static_assert(sizeof(unsigned long) == 8, "64-bit limbs assumed for mpz extraction");

u64 to_u64(const mpz_class& n) { return static_cast<u64>(mpz_get_ui(n.get_mpz_t())); }

}  // namespace

PrimalityVerdict is_probable_prime(const mpz_class& n, unsigned rounds) {
  if (n < 2) return {PrimalityStatus::Composite, std::nullopt};
  if (fits_u64(n)) {
    // Deterministic range: decide outright, no witness hunting.
    bool prime = is_prime_64(to_u64(n));
    return {prime ? PrimalityStatus::Prime : PrimalityStatus::Composite, std::nullopt};
  }
  // Small-divisor pass first: cheap, and it produces an explicit witness.
  static const std::vector<u64> trial = primes_up_to(2000);
  for (u64 p : trial) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      return {PrimalityStatus::Composite, mpz_class(p)};
    }
  }
  if (!sprp_mpz(n, 2)) return {PrimalityStatus::Composite, std::nullopt};
  // Fixed schedule: the first `rounds` odd primes as extra strong bases.
  u64 base = 3;
  for (unsigned i = 0; i < rounds; ++i) {
    if (!sprp_mpz(n, base)) return {PrimalityStatus::Composite, std::nullopt};
    do {
      base += 2;
    } while (!is_prime_64(base));
  }
  return {PrimalityStatus::ProbablePrime, std::nullopt};
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<std::uint8_t> composite(n + 1, 0);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    if (i <= n / i) {
      for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
    }
  }
  return out;
}

std::vector<u64> PrimeRange::primes() const {
  std::vector<u64> out;
  for (std::size_t idx = 0; idx < flags.size(); ++idx) {
    if (flags[idx]) out.push_back(lo + idx);
  }
  return out;
}

PrimeRange sieve_range(u64 lo, u64 hi, u64 max_segment) {
  if (hi < lo) throw std::invalid_argument("sieve_range: hi < lo");
  u64 len = hi - lo;  // window holds len + 1 values
  if (len >= max_segment) {
    throw SegmentTooLarge("sieve_range: window exceeds segment budget");
  }
  PrimeRange r;
  r.lo = lo;
  r.hi = hi;
  r.flags.assign(len + 1, true);
  for (u64 m = lo; m < 2 && m <= hi; ++m) r.flags[m - lo] = false;

  // 128-bit stepping sidesteps wraparound for windows near UINT64_MAX.
  for (u64 p : primes_up_to(isqrt64(hi))) {
    u128 start = u128(p) * p;
    if (start < lo) {
      u64 rem = lo % p;
      start = rem == 0 ? u128(lo) : u128(lo) + (p - rem);
      if (start == p) start += p;  // p itself stays prime
    }
    for (u128 j = start; j <= hi; j += p) {
      r.flags[static_cast<u64>(j) - lo] = false;
    }
  }
  return r;
}

}  // namespace adlab
