#pragma once

#include <cstdint>
#include <optional>

#include "adlab/extended_real.hpp"
#include "adlab/sequences.hpp"

namespace adlab {

struct HeuristicSum {
  // Partial sum of 1 / ln(a_n) over the terms used.
  ExtendedReal estimate;
  // Rigorous bound on the omitted tail, present only for kinds with a growth
  // certificate (fermat, ford-factorial, golomb-tower). Absent means the
  // partial sum says nothing about the remainder.
  std::optional<ExtendedReal> tail_bound;
  // The whole sum is below any representable positive float; the total lies
  // in [0, tail_bound] and `estimate` is zero rather than a fake number.
  bool underflow = false;
  std::uint64_t terms_used = 0;
};

// Expected prime count along {a_n} under the standard density heuristic:
// sum of 1 / ln(a_n). `terms` overrides the kind-specific default count
// (fermat 40, ford-factorial 20, ford-cube 64, explicit: all terms).
HeuristicSum heuristic_expected_primes(const SequenceSpec& spec,
                                       std::optional<std::uint64_t> terms = std::nullopt);

}  // namespace adlab
