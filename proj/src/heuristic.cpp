#include "adlab/heuristic.hpp"

#include <cmath>
#include <stdexcept>

namespace adlab {

namespace {

constexpr double kLn2 = 0.69314718055994531;

// Logs below the digit cap come from materialized values; above it from the
// closed forms. 2000 digits keeps materialization cheap while covering every
// term whose additive corrections are not yet negligible.
constexpr std::uint64_t kLogCap = 2000;

// Kahan accumulator for the reciprocal logs.
struct Acc {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double reciprocal_log(const SequenceSpec& spec, std::uint64_t index) {
  SequenceTerm t = term(spec, index, kLogCap);
  if (std::holds_alternative<TowerMagnitude>(t.log_value)) return 0.0;
  double l = std::get<ExtendedReal>(t.log_value).to_double();
  if (!(l > 0.0)) throw std::domain_error("heuristic: term with non-positive log");
  double r = 1.0 / l;
  return std::isnormal(r) ? r : 0.0;
}

}  // namespace

HeuristicSum heuristic_expected_primes(const SequenceSpec& spec,
                                       std::optional<std::uint64_t> terms) {
  HeuristicSum out;
  switch (spec.kind()) {
    case SequenceKind::Fermat: {
      // Terms i = 0..N; ln F_i > 2^i ln 2, so the omitted tail is below the
      // geometric remainder 2^(-N) / ln 2.
      std::uint64_t n = terms.value_or(40);
      Acc acc;
      for (std::uint64_t i = 0; i <= n; ++i) acc.add(reciprocal_log(spec, i));
      out.estimate = ExtendedReal::from_double(acc.sum);
      out.terms_used = n + 1;
      double tail = std::exp2(-static_cast<double>(n)) / kLn2;
      out.tail_bound = ExtendedReal::from_double(tail * (1.0 + 1e-12));
      return out;
    }
    case SequenceKind::FordFactorialSum: {
      // (mc)! >= (m!)^c gives ln a_{k+1} >= (2k+1)(2k+2)(ln a_k - ln 2), so
      // successive terms at least halve; tail after N is below 2 t_{N+1}.
      std::uint64_t n = std::max<std::uint64_t>(1, terms.value_or(20));
      Acc acc;
      for (std::uint64_t k = 1; k <= n; ++k) acc.add(reciprocal_log(spec, k));
      out.estimate = ExtendedReal::from_double(acc.sum);
      out.terms_used = n;
      double next = reciprocal_log(spec, n + 1);
      out.tail_bound = ExtendedReal::from_double(2.0 * next * (1.0 + 1e-12) + 1e-300);
      return out;
    }
    case SequenceKind::FordCube: {
      // 1/ln a_k ~ 1/(6k ln 2k): the series diverges, so the partial sum
      // carries no tail certificate.
      std::uint64_t n = std::max<std::uint64_t>(1, terms.value_or(64));
      Acc acc;
      for (std::uint64_t k = 1; k <= n; ++k) acc.add(reciprocal_log(spec, k));
      out.estimate = ExtendedReal::from_double(acc.sum);
      out.terms_used = n;
      out.tail_bound = std::nullopt;
      return out;
    }
    case SequenceKind::GolombTower: {
      // Every term is below 10^(-10^(10^10)); even the first underflows any
      // fixed-precision format. Terms at least halve, so the total sits in
      // [0, 2 / ln a_1], reported through the far weaker but representable
      // bound 10^(-10^18).
      out.estimate = ExtendedReal();
      out.terms_used = 0;
      out.underflow = true;
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), 10, 18);
      out.tail_bound = ExtendedReal::make(1, 1.0, -e);
      return out;
    }
    case SequenceKind::Explicit: {
      std::uint64_t available = spec.terms().size();
      std::uint64_t n = std::min<std::uint64_t>(terms.value_or(available), available);
      Acc acc;
      for (std::uint64_t k = 1; k <= n; ++k) acc.add(reciprocal_log(spec, k));
      out.estimate = ExtendedReal::from_double(acc.sum);
      out.terms_used = n;
      // Finite list: nothing omitted when every term was used.
      if (n == available) out.tail_bound = ExtendedReal();
      return out;
    }
  }
  throw std::logic_error("heuristic_expected_primes: unreachable");
}

}  // namespace adlab
