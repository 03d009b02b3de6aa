#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adlab/extended_real.hpp"
#include "adlab/tuples.hpp"

namespace adlab {

enum class SequenceKind { Fermat, FordCube, FordFactorialSum, GolombTower, Explicit };

// Order-of-magnitude stand-in for values whose decimal exponent itself
// overflows any integer budget: roughly 10^10^...^10^top with `height`
// stacked tens. Supports ordering and underflow queries only.
struct TowerMagnitude {
  int height = 0;
  double top = 0.0;
};

// Exact-ish magnitude when the exponent fits an integer, tower otherwise.
using LogMagnitude = std::variant<ExtendedReal, TowerMagnitude>;

// Value ordering across both representations. Descends tower levels by
// taking log10 until the tower bottoms out.
int compare(const LogMagnitude& a, const LogMagnitude& b);

struct SequenceTerm {
  std::uint64_t index = 0;
  // Present exactly when the value fits the decimal-digit budget.
  std::optional<mpz_class> value;
  LogMagnitude log_value;  // natural log of the term
  LogMagnitude digits10;   // decimal digit count
};

inline constexpr std::uint64_t kDefaultDigitCap = 1000000;

class SequenceSpec {
 public:
  static SequenceSpec fermat();            // 2^2^i + 1, i from 0
  static SequenceSpec ford_cube();         // ((2k)!)^3, k from 1
  static SequenceSpec ford_factorial();    // ((2k)!)! + k!, k from 1
  static SequenceSpec golomb_tower();      // (T_n!)^3 with T_n a 5-high power tower
  // Terms must be strictly increasing and every one >= 2.
  static SequenceSpec explicit_terms(OffsetTuple terms);

  SequenceKind kind() const { return kind_; }
  const OffsetTuple& terms() const { return terms_; }
  // "fermat", "ford-cube", "ford-factorial", "golomb-tower", "explicit".
  std::string name() const;

 private:
  SequenceKind kind_ = SequenceKind::Fermat;
  OffsetTuple terms_;  // Explicit only
};

// Accepts the names above; "explicit:@path" loads tuple text from a file,
// "explicit:3,7,61" parses inline. Throws std::invalid_argument.
SequenceSpec parse_sequence_spec(const std::string& text);
// Same grammar with file loading delegated to the caller.
SequenceSpec parse_sequence_spec(const std::string& text,
                                 const std::function<std::string(const std::string&)>& load_file);

// Fermat indexes from 0; the other kinds from 1. Explicit indexes its terms
// from 1. Throws std::out_of_range for an invalid index.
SequenceTerm term(const SequenceSpec& spec, std::uint64_t index,
                  std::uint64_t digit_cap = kDefaultDigitCap);

// First r terms, in index order.
std::vector<SequenceTerm> prefix(const SequenceSpec& spec, std::uint64_t r,
                                 std::uint64_t digit_cap = kDefaultDigitCap);

}  // namespace adlab
