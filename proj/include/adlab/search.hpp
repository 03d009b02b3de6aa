#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "adlab/bounds.hpp"
#include "adlab/primal.hpp"
#include "adlab/tuples.hpp"

namespace adlab {

enum class Certainty { Proven, Probable };

struct PrimalityPolicy {
  unsigned rounds = 24;  // extra strong-test bases above 2^64
};

struct TranslateCount {
  std::size_t count = 0;                  // primes among {h + n}
  std::vector<std::size_t> prime_indices;  // positions in the tuple, ascending
  Certainty certainty = Certainty::Proven; // Probable if any counted prime was
};

// Counts primes in the translate {h + n : h in tuple}.
TranslateCount count_primes_in_translate(const OffsetTuple& tuple, const mpz_class& n,
                                         const PrimalityPolicy& policy = {});

struct TranslateQuery {
  OffsetTuple tuple;
  std::int64_t shift_lo = 0;
  std::int64_t shift_hi = 0;
  std::size_t target = 1;  // 1 <= target <= |tuple|
  PrimalityPolicy policy;
};

enum class PresieveMode { FullConstellation, CountPruning, Disabled };

// Residue wheel over small primes: for each prime p <= P and each residue
// class c of the shift, a bitmask of tuple positions i with h_i + n ≡ 0
// (mod p) whenever n ≡ c. A set bit proves the element composite at that
// shift, except at the single shift where h_i + n equals p itself; those
// shifts are kept aside and repaired during the scan.
struct PresievePlan {
  PresieveMode mode = PresieveMode::Disabled;
  std::size_t tuple_size = 0;
  std::size_t target = 1;

  struct PrimeWheel {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> kill_mask;  // indexed by shift residue class
  };
  std::vector<PrimeWheel> wheels;

  struct ExactPrimeShift {
    mpz_class shift;     // h_i + shift == p exactly
    std::size_t element; // i
  };
  std::vector<ExactPrimeShift> exceptions;
};

// P < 2 or |tuple| > 64 produce a Disabled plan (scan tests every shift).
PresievePlan build_presieve(const OffsetTuple& tuple, std::uint64_t p_cap, std::size_t target);

struct ShiftHit {
  std::int64_t shift = 0;
  std::size_t count = 0;
  std::vector<std::size_t> prime_indices;
  Certainty certainty = Certainty::Proven;
};

struct SearchBudget {
  std::optional<std::uint64_t> max_shifts;
  std::optional<double> max_seconds;
};

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t block_size = std::uint64_t{1} << 20;
  std::uint64_t presieve_cap = 997;
  SearchBudget budget;
  // Called with (shifts scanned, hits so far) roughly every progress_interval
  // scanned shifts; 0 disables.
  std::uint64_t progress_interval = 0;
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct SearchResult {
  std::vector<ShiftHit> hits;  // ascending by shift
  bool complete = true;        // false when a budget stopped the scan early
  std::uint64_t shifts_scanned = 0;
  // Diagnostic: highest count among shifts the scan counted in full (earliest
  // such shift), even when nothing reached the target. Shifts the presieve
  // discards or the unreachable-target cutoff abandons are not candidates, so
  // this field may differ across presieve settings; `hits` never does.
  std::optional<ShiftHit> best;
};

// Scans shifts n in [shift_lo, shift_hi] for translates with at least
// `target` primes. Results are identical for any worker count and block
// size; with a max_shifts budget a partial result is always the scan's
// contiguous prefix.
SearchResult shift_search(const TranslateQuery& query, const SearchOptions& opts = {});

struct HarnessReport {
  std::size_t input_size = 0;
  OffsetTuple admissible_subset;
  ExtractionTrace trace;
  // |A'| > |A| / (2 ln |A|), stated for |A| >= 25.
  bool size_bound_applicable = false;
  double size_bound_rhs = 0.0;
  bool size_bound_ok = true;
  // Sizing context; absent when the chain has no instance (B < 3).
  std::optional<SizingReport> sizing;
  std::uint64_t b = 0;
  std::size_t target = 0;       // B + 1
  bool capacity_ok = false;     // |A'| >= B + 1
  SearchResult search;          // scan at min(B + 1, |A'|)
  bool success = false;         // some shift reached B + 1 primes
};

// End-to-end drill: extract an admissible subset from `a`, check the size
// bound, attach sizing context for `b`, then hunt shifts of the subset with
// more than `b` primes across [shift_lo, shift_hi].
HarnessReport refutation_harness(const OffsetTuple& a, std::uint64_t b, std::int64_t shift_lo,
                                 std::int64_t shift_hi, double c = 1.0,
                                 const SearchOptions& opts = {},
                                 const PrimalityPolicy& policy = {});

}  // namespace adlab
