#include "adlab/tuples.hpp"

#include <algorithm>
#include <sstream>

#include "adlab/primal.hpp"

namespace adlab {

OffsetTuple OffsetTuple::from_values(std::vector<mpz_class> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  OffsetTuple t;
  t.offsets_ = std::move(v);
  return t;
}

OffsetTuple OffsetTuple::from_sorted(std::vector<mpz_class> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) {
      throw std::invalid_argument("OffsetTuple: offsets must be strictly increasing");
    }
  }
  OffsetTuple t;
  t.offsets_ = std::move(v);
  return t;
}

OffsetTuple OffsetTuple::translated(const mpz_class& c) const {
  OffsetTuple t;
  t.offsets_.reserve(offsets_.size());
  for (const mpz_class& h : offsets_) t.offsets_.push_back(h + c);
  return t;
}

OffsetTuple parse_tuple_text(const std::string& text) {
  std::vector<mpz_class> values;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok;
    while (std::getline(fields, tok, ',')) {
      // Whitespace separates values just like commas do. Splitting here also
      // keeps gmp's set_str from silently gluing "6 8" into 68.
      std::istringstream parts(tok);
      std::string num;
      while (parts >> num) {
        mpz_class z;
        if (z.set_str(num, 10) != 0) {
          throw std::invalid_argument("tuple: not an integer: '" + num + "'");
        }
        values.push_back(std::move(z));
      }
    }
  }
  if (values.empty()) throw std::invalid_argument("tuple: no integers found");
  return OffsetTuple::from_values(std::move(values));
}

namespace {

void require_prime(std::uint64_t p, const char* who) {
  if (!is_prime_64(p)) {
    throw std::invalid_argument(std::string(who) + ": modulus must be prime");
  }
}

std::uint64_t residue_of(const mpz_class& h, std::uint64_t p) {
  // mpz_fdiv_ui floors, so negatives land in [0, p) as well.
  return mpz_fdiv_ui(h.get_mpz_t(), static_cast<unsigned long>(p));
}

}  // namespace

std::vector<std::uint64_t> residues_mod(const OffsetTuple& h, std::uint64_t p) {
  require_prime(p, "residues_mod");
  std::vector<char> seen(p, 0);
  for (const mpz_class& x : h.offsets()) seen[residue_of(x, p)] = 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 0; c < p; ++c) {
    if (seen[c]) out.push_back(c);
  }
  return out;
}

AdmissibilityReport is_admissible(const OffsetTuple& h) {
  AdmissibilityReport rep;
  const std::size_t k = h.size();
  for (std::uint64_t p : primes_up_to(k)) {
    rep.checked_up_to = p;
    std::vector<char> seen(p, 0);
    std::uint64_t distinct = 0;
    for (const mpz_class& x : h.offsets()) {
      std::uint64_t c = residue_of(x, p);
      if (!seen[c]) {
        seen[c] = 1;
        if (++distinct == p) break;
      }
    }
    if (distinct == p) {
      rep.admissible = false;
      rep.obstructions.push_back(p);
    }
  }
  return rep;
}

std::pair<OffsetTuple, std::optional<std::uint64_t>> drop_thinnest_class(const OffsetTuple& h,
                                                                         std::uint64_t p) {
  require_prime(p, "drop_thinnest_class");
  std::vector<std::size_t> count(p, 0);
  std::vector<std::uint64_t> residue(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    residue[i] = residue_of(h[i], p);
    ++count[residue[i]];
  }
  std::uint64_t thinnest = 0;
  bool any_empty = false;
  std::size_t best = SIZE_MAX;
  for (std::uint64_t c = 0; c < p; ++c) {
    if (count[c] == 0) {
      any_empty = true;
      break;
    }
    if (count[c] < best) {
      best = count[c];
      thinnest = c;  // first hit wins: smallest residue among the thinnest
    }
  }
  if (any_empty) return {h, std::nullopt};

  std::vector<mpz_class> kept;
  kept.reserve(h.size() - best);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (residue[i] != thinnest) kept.push_back(h[i]);
  }
  return {OffsetTuple::from_sorted(std::move(kept)), thinnest};
}

std::pair<OffsetTuple, ExtractionTrace> extract_admissible_subset(const OffsetTuple& a,
                                                                  ExtractionOptions opts) {
  ExtractionTrace trace;
  trace.input_size = a.size();
  OffsetTuple cur = a;
  for (std::uint64_t p : primes_up_to(a.size())) {
    if (opts.early_exit && p > cur.size()) {
      trace.stopped_early = true;
      break;
    }
    ExtractionStep step;
    step.prime = p;
    step.size_before = cur.size();
    if (cur.size() < p) {
      // Fewer elements than classes: some class is empty, nothing to do.
      step.dropped_class = std::nullopt;
      step.size_after = cur.size();
      trace.steps.push_back(step);
      continue;
    }
    auto [next, dropped] = drop_thinnest_class(cur, p);
    step.dropped_class = dropped;
    step.size_after = next.size();
    trace.steps.push_back(step);
    cur = std::move(next);
  }
  trace.output_size = cur.size();
  return {std::move(cur), std::move(trace)};
}

}  // namespace adlab
