#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adlab {

// A finite set of integer offsets, kept strictly increasing. Elements may be
// negative and arbitrarily large.
class OffsetTuple {
 public:
  OffsetTuple() = default;

  // Sorts and deduplicates arbitrary input.
  static OffsetTuple from_values(std::vector<mpz_class> v);
  // Validates strictly increasing input; throws std::invalid_argument.
  static OffsetTuple from_sorted(std::vector<mpz_class> v);

  const std::vector<mpz_class>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  bool empty() const { return offsets_.empty(); }
  const mpz_class& operator[](std::size_t i) const { return offsets_[i]; }

  OffsetTuple translated(const mpz_class& c) const;

  bool operator==(const OffsetTuple& other) const { return offsets_ == other.offsets_; }

 private:
  std::vector<mpz_class> offsets_;
};

// Parses "0,2,6,8" or one integer per line; blank lines and '#' comments are
// ignored. Duplicates collapse (tuples are sets). Throws std::invalid_argument.
OffsetTuple parse_tuple_text(const std::string& text);

// Distinct residues {h mod p : h in H}, sorted, each in [0, p). p must be prime.
std::vector<std::uint64_t> residues_mod(const OffsetTuple& h, std::uint64_t p);

struct AdmissibilityReport {
  bool admissible = true;
  // Primes p <= |H| whose residue classes are all hit. Any such p forces a
  // multiple of p into every translate, so one suffices to refute.
  std::vector<std::uint64_t> obstructions;
  // Largest prime examined (0 when |H| < 2). Primes beyond |H| cannot cover
  // all classes: p classes need p distinct residues.
  std::uint64_t checked_up_to = 0;
};

AdmissibilityReport is_admissible(const OffsetTuple& h);

// Removes the thinnest residue class mod p, unless some class is already
// empty (then the tuple returns unchanged and the dropped class is nullopt).
// Ties break toward the numerically smallest residue.
std::pair<OffsetTuple, std::optional<std::uint64_t>> drop_thinnest_class(const OffsetTuple& h,
                                                                         std::uint64_t p);

struct ExtractionStep {
  std::uint64_t prime = 0;
  std::optional<std::uint64_t> dropped_class;  // nullopt: a class was already empty
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

struct ExtractionTrace {
  std::vector<ExtractionStep> steps;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  bool stopped_early = false;
};

struct ExtractionOptions {
  // Stop the prime loop once the next prime exceeds the current size; every
  // remaining step is then a no-op by pigeonhole. Output is unaffected.
  bool early_exit = false;
};

// Greedy pass over the primes p <= |A| (the ORIGINAL size), ascending: skip p
// when a class mod p is empty, otherwise drop the thinnest class. The result
// is admissible and keeps at least ceil(|A| * prod_{p <= |A|} (1 - 1/p))
// elements.
std::pair<OffsetTuple, ExtractionTrace> extract_admissible_subset(const OffsetTuple& a,
                                                                  ExtractionOptions opts = {});

}  // namespace adlab
