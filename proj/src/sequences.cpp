#include "adlab/sequences.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "adlab/bounds.hpp"

namespace adlab {

namespace {

constexpr double kLn2 = 0.69314718055994531;
constexpr double kLog10_2 = 0.30102999566398120;
constexpr double kLn10 = 2.302585092994045684;

// Index budgets keep intermediate GMP objects within sane memory.
constexpr std::uint64_t kMaxFermatIndex = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxFordIndex = std::uint64_t{1} << 40;
constexpr std::uint64_t kMaxTowerIndex = 1000000;

ExtendedReal log10_er(const ExtendedReal& x) {
  if (x.sign() <= 0) throw std::domain_error("log10: non-positive value");
  return ExtendedReal::from_mpz(x.exponent10()) +
         ExtendedReal::from_double(std::log10(x.mantissa()));
}

// T(h, top) vs x, both positive, top >= 1. Peels tower levels with log10.
int tower_vs_er(int h, double top, ExtendedReal x) {
  while (h > 0) {
    if (x <= ExtendedReal::from_double(1.0)) return 1;
    x = log10_er(x);
    --h;
  }
  double xd = x.to_double();
  if (top < xd) return -1;
  if (top > xd) return 1;
  return 0;
}

int tower_vs_tower(const TowerMagnitude& a, const TowerMagnitude& b) {
  if (a.height == b.height) {
    if (a.top < b.top) return -1;
    if (a.top > b.top) return 1;
    return 0;
  }
  // Peel the shorter tower down to its top, then descend the taller one.
  if (a.height > b.height) {
    return tower_vs_er(a.height - b.height, a.top, ExtendedReal::from_double(b.top));
  }
  return -tower_vs_er(b.height - a.height, b.top, ExtendedReal::from_double(a.top));
}

}  // namespace

int compare(const LogMagnitude& a, const LogMagnitude& b) {
  if (std::holds_alternative<ExtendedReal>(a) && std::holds_alternative<ExtendedReal>(b)) {
    return std::get<ExtendedReal>(a).cmp(std::get<ExtendedReal>(b));
  }
  if (std::holds_alternative<TowerMagnitude>(a) && std::holds_alternative<TowerMagnitude>(b)) {
    return tower_vs_tower(std::get<TowerMagnitude>(a), std::get<TowerMagnitude>(b));
  }
  if (std::holds_alternative<TowerMagnitude>(a)) {
    return tower_vs_er(std::get<TowerMagnitude>(a).height, std::get<TowerMagnitude>(a).top,
                       std::get<ExtendedReal>(b));
  }
  return -tower_vs_er(std::get<TowerMagnitude>(b).height, std::get<TowerMagnitude>(b).top,
                      std::get<ExtendedReal>(a));
}

SequenceSpec SequenceSpec::fermat() {
  SequenceSpec s;
  s.kind_ = SequenceKind::Fermat;
  return s;
}

SequenceSpec SequenceSpec::ford_cube() {
  SequenceSpec s;
  s.kind_ = SequenceKind::FordCube;
  return s;
}

SequenceSpec SequenceSpec::ford_factorial() {
  SequenceSpec s;
  s.kind_ = SequenceKind::FordFactorialSum;
  return s;
}

SequenceSpec SequenceSpec::golomb_tower() {
  SequenceSpec s;
  s.kind_ = SequenceKind::GolombTower;
  return s;
}

SequenceSpec SequenceSpec::explicit_terms(OffsetTuple terms) {
  for (const mpz_class& v : terms.offsets()) {
    if (v < 2) throw std::invalid_argument("explicit sequence: terms must be >= 2");
  }
  SequenceSpec s;
  s.kind_ = SequenceKind::Explicit;
  s.terms_ = std::move(terms);
  return s;
}

std::string SequenceSpec::name() const {
  switch (kind_) {
    case SequenceKind::Fermat:
      return "fermat";
    case SequenceKind::FordCube:
      return "ford-cube";
    case SequenceKind::FordFactorialSum:
      return "ford-factorial";
    case SequenceKind::GolombTower:
      return "golomb-tower";
    case SequenceKind::Explicit:
      return "explicit";
  }
  return "?";
}

SequenceSpec parse_sequence_spec(const std::string& text,
                                 const std::function<std::string(const std::string&)>& load_file) {
  if (text == "fermat") return SequenceSpec::fermat();
  if (text == "ford-cube") return SequenceSpec::ford_cube();
  if (text == "ford-factorial") return SequenceSpec::ford_factorial();
  if (text == "golomb-tower") return SequenceSpec::golomb_tower();
  if (text.rfind("explicit:", 0) == 0) {
    std::string rest = text.substr(9);
    if (!rest.empty() && rest[0] == '@') {
      return SequenceSpec::explicit_terms(parse_tuple_text(load_file(rest.substr(1))));
    }
    return SequenceSpec::explicit_terms(parse_tuple_text(rest));
  }
  throw std::invalid_argument("unknown sequence spec: '" + text + "'");
}

SequenceSpec parse_sequence_spec(const std::string& text) {
  return parse_sequence_spec(text, [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sequence file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  });
}

namespace {

// ln of a materialized positive integer, via its base-2 split.
ExtendedReal ln_of_mpz(const mpz_class& v) {
  long e2 = 0;
  double d = mpz_get_d_2exp(&e2, v.get_mpz_t());
  return ExtendedReal::from_double(std::log(d) + static_cast<double>(e2) * kLn2);
}

// Exact decimal digit count of a materialized positive integer.
std::uint64_t exact_digits10(const mpz_class& v) {
  std::size_t s = mpz_sizeinbase(v.get_mpz_t(), 10);  // exact or one too big
  if (s <= 1) return 1;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, s - 1);
  return v >= p ? s : s - 1;
}

void fill_from_value(SequenceTerm& t, mpz_class v) {
  t.log_value = ln_of_mpz(v);
  t.digits10 = ExtendedReal::from_double(static_cast<double>(exact_digits10(v)));
  t.value = std::move(v);
}

// digits10 = floor(log10 v) + 1 from the natural log, for absent values.
LogMagnitude digits_from_log(const ExtendedReal& ln_v) {
  ExtendedReal l10 = ln_v / ExtendedReal::from_double(kLn10);
  return l10 + ExtendedReal::from_double(1.0);
}

SequenceTerm fermat_term(std::uint64_t i, std::uint64_t digit_cap) {
  if (i > kMaxFermatIndex) throw std::out_of_range("fermat: index too large");
  SequenceTerm t;
  t.index = i;
  // digits10(2^2^i + 1) = floor(2^i log10 2) + 1; materialize under the cap.
  double digits_est = i < 63 ? std::ldexp(1.0, static_cast<int>(i)) * kLog10_2 + 1.0 : HUGE_VAL;
  if (digits_est <= static_cast<double>(digit_cap)) {
    mpz_class v = 1;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(1) << i);
    v += 1;
    fill_from_value(t, std::move(v));
    return t;
  }
  mpz_class e2;  // 2^i
  mpz_ui_pow_ui(e2.get_mpz_t(), 2, static_cast<unsigned long>(i));
  ExtendedReal lv = ExtendedReal::from_mpz(e2) * ExtendedReal::from_double(kLn2);
  t.log_value = lv;
  t.digits10 = digits_from_log(lv);
  return t;
}

SequenceTerm ford_cube_term(std::uint64_t k, std::uint64_t digit_cap) {
  if (k == 0 || k > kMaxFordIndex) throw std::out_of_range("ford-cube: index must be >= 1");
  SequenceTerm t;
  t.index = k;
  ExtendedReal lf = log_factorial(2 * k).value;  // ln((2k)!)
  ExtendedReal lv = ExtendedReal::from_double(3.0) * lf;
  double digits_est = lv.to_double() / kLn10 + 1.0;
  if (digits_est <= static_cast<double>(digit_cap) && 2 * k <= 1000000) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(2 * k));
    mpz_class v = f * f * f;
    fill_from_value(t, std::move(v));
    return t;
  }
  t.log_value = lv;
  t.digits10 = digits_from_log(lv);
  return t;
}

SequenceTerm ford_factorial_term(std::uint64_t k, std::uint64_t digit_cap) {
  if (k == 0 || k > kMaxFordIndex) throw std::out_of_range("ford-factorial: index must be >= 1");
  SequenceTerm t;
  t.index = k;
  // a_k = ((2k)!)! + k!; materializable only while (2k)! stays modest.
  if (k <= 10) {
    std::uint64_t m = 1;
    for (std::uint64_t j = 2; j <= 2 * k; ++j) m *= j;  // (2k)! <= 20! fits
    double digits_est = m <= 2500000 ? log_factorial(m).value.to_double() / kLn10 + 1.0 : HUGE_VAL;
    if (digits_est <= static_cast<double>(digit_cap)) {
      mpz_class big, small;
      mpz_fac_ui(big.get_mpz_t(), static_cast<unsigned long>(m));
      mpz_fac_ui(small.get_mpz_t(), static_cast<unsigned long>(k));
      mpz_class v = big + small;
      fill_from_value(t, std::move(v));
      return t;
    }
  }
  // ln(a_k) = ln(((2k)!)!) up to a 1 + k!/((2k)!)! correction, far below
  // representable relative error here.
  ExtendedReal ln_m = log_factorial(2 * k).value;
  ExtendedReal m_er = ExtendedReal::exp_of(ln_m);
  ExtendedReal lv = log_factorial(m_er).value;
  t.log_value = lv;
  t.digits10 = digits_from_log(lv);
  return t;
}

SequenceTerm golomb_tower_term(std::uint64_t n) {
  if (n == 0 || n > kMaxTowerIndex) throw std::out_of_range("golomb-tower: index must be >= 1");
  SequenceTerm t;
  t.index = n;
  // T_n = 10^10^10^10^10^n; a_n = (T_n!)^3. ln a_n ~ 3 T_n ln T_n collapses
  // to the same tower class as T_n itself: five stacked tens over n.
  t.log_value = TowerMagnitude{5, static_cast<double>(n)};
  t.digits10 = TowerMagnitude{5, static_cast<double>(n)};
  return t;
}

SequenceTerm explicit_term(const SequenceSpec& spec, std::uint64_t idx, std::uint64_t digit_cap) {
  if (idx == 0 || idx > spec.terms().size()) {
    throw std::out_of_range("explicit sequence: index out of range");
  }
  SequenceTerm t;
  t.index = idx;
  const mpz_class& v = spec.terms()[idx - 1];
  if (exact_digits10(v) <= digit_cap) {
    fill_from_value(t, v);
  } else {
    ExtendedReal lv = ln_of_mpz(v);
    t.log_value = lv;
    t.digits10 = digits_from_log(lv);
  }
  return t;
}

}  // namespace

SequenceTerm term(const SequenceSpec& spec, std::uint64_t index, std::uint64_t digit_cap) {
  switch (spec.kind()) {
    case SequenceKind::Fermat:
      return fermat_term(index, digit_cap);
    case SequenceKind::FordCube:
      return ford_cube_term(index, digit_cap);
    case SequenceKind::FordFactorialSum:
      return ford_factorial_term(index, digit_cap);
    case SequenceKind::GolombTower:
      return golomb_tower_term(index);
    case SequenceKind::Explicit:
      return explicit_term(spec, index, digit_cap);
  }
  throw std::logic_error("term: unreachable");
}

std::vector<SequenceTerm> prefix(const SequenceSpec& spec, std::uint64_t r,
                                 std::uint64_t digit_cap) {
  std::vector<SequenceTerm> out;
  out.reserve(r);
  const std::uint64_t first = spec.kind() == SequenceKind::Fermat ? 0 : 1;
  for (std::uint64_t i = 0; i < r; ++i) out.push_back(term(spec, first + i, digit_cap));
  return out;
}

}  // namespace adlab
