#include "adlab/report_json.hpp"

namespace adlab {

namespace {

json mpz_to_json(const mpz_class& z) { return z.get_str(); }

mpz_class mpz_from_json(const json& j) {
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0) {
    throw std::invalid_argument("bad integer string in JSON");
  }
  return z;
}

const char* certainty_name(Certainty c) {
  return c == Certainty::Proven ? "proven" : "probable";
}

Certainty certainty_from(const std::string& s) {
  if (s == "proven") return Certainty::Proven;
  if (s == "probable") return Certainty::Probable;
  throw std::invalid_argument("bad certainty value: " + s);
}

}  // namespace

void to_json(json& j, const ExtendedReal& x) {
  j = json{{"sign", x.sign()},
           {"mantissa", x.mantissa()},
           {"exponent10", x.exponent10().get_str()},
           {"approx", x.to_string()}};
}

void from_json(const json& j, ExtendedReal& x) {
  int sign = j.at("sign").get<int>();
  double mant = j.at("mantissa").get<double>();
  mpz_class e;
  e.set_str(j.at("exponent10").get<std::string>(), 10);
  x = sign == 0 ? ExtendedReal() : ExtendedReal::make(sign, mant, std::move(e));
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  return a.sign() == b.sign() && a.mantissa() == b.mantissa() &&
         a.exponent10() == b.exponent10();
}

void to_json(json& j, const TowerMagnitude& t) {
  j = json{{"kind", "tower"}, {"height", t.height}, {"top", t.top}};
}

void from_json(const json& j, TowerMagnitude& t) {
  t.height = j.at("height").get<int>();
  t.top = j.at("top").get<double>();
}

bool operator==(const TowerMagnitude& a, const TowerMagnitude& b) {
  return a.height == b.height && a.top == b.top;
}

void to_json(json& j, const LogMagnitude& m) {
  if (std::holds_alternative<ExtendedReal>(m)) {
    to_json(j, std::get<ExtendedReal>(m));
    j["kind"] = "real";
  } else {
    to_json(j, std::get<TowerMagnitude>(m));
  }
}

void from_json(const json& j, LogMagnitude& m) {
  if (j.at("kind").get<std::string>() == "tower") {
    TowerMagnitude t;
    from_json(j, t);
    m = t;
  } else {
    ExtendedReal x;
    from_json(j, x);
    m = x;
  }
}

void to_json(json& j, const OffsetTuple& t) {
  j = json::array();
  for (const mpz_class& v : t.offsets()) j.push_back(mpz_to_json(v));
}

void from_json(const json& j, OffsetTuple& t) {
  std::vector<mpz_class> vals;
  for (const json& e : j) vals.push_back(mpz_from_json(e));
  t = OffsetTuple::from_sorted(std::move(vals));
}

void to_json(json& j, const AdmissibilityReport& r) {
  j = json{{"admissible", r.admissible},
           {"obstructions", r.obstructions},
           {"checked_up_to", r.checked_up_to},
           {"scan_rule", "primes p <= tuple size; larger p cannot cover all classes"}};
}

void from_json(const json& j, AdmissibilityReport& r) {
  r.admissible = j.at("admissible").get<bool>();
  r.obstructions = j.at("obstructions").get<std::vector<std::uint64_t>>();
  r.checked_up_to = j.at("checked_up_to").get<std::uint64_t>();
}

bool operator==(const AdmissibilityReport& a, const AdmissibilityReport& b) {
  return a.admissible == b.admissible && a.obstructions == b.obstructions &&
         a.checked_up_to == b.checked_up_to;
}

void to_json(json& j, const ExtractionStep& s) {
  j = json{{"prime", s.prime},
           {"dropped_class", s.dropped_class ? json(*s.dropped_class) : json(nullptr)},
           {"size_before", s.size_before},
           {"size_after", s.size_after}};
}

void from_json(const json& j, ExtractionStep& s) {
  s.prime = j.at("prime").get<std::uint64_t>();
  s.dropped_class = j.at("dropped_class").is_null()
                        ? std::nullopt
                        : std::make_optional(j.at("dropped_class").get<std::uint64_t>());
  s.size_before = j.at("size_before").get<std::size_t>();
  s.size_after = j.at("size_after").get<std::size_t>();
}

bool operator==(const ExtractionStep& a, const ExtractionStep& b) {
  return a.prime == b.prime && a.dropped_class == b.dropped_class &&
         a.size_before == b.size_before && a.size_after == b.size_after;
}

void to_json(json& j, const ExtractionTrace& t) {
  j = json{{"steps", t.steps},
           {"input_size", t.input_size},
           {"output_size", t.output_size},
           {"stopped_early", t.stopped_early}};
}

void from_json(const json& j, ExtractionTrace& t) {
  t.steps = j.at("steps").get<std::vector<ExtractionStep>>();
  t.input_size = j.at("input_size").get<std::size_t>();
  t.output_size = j.at("output_size").get<std::size_t>();
  t.stopped_early = j.at("stopped_early").get<bool>();
}

bool operator==(const ExtractionTrace& a, const ExtractionTrace& b) {
  return a.steps == b.steps && a.input_size == b.input_size && a.output_size == b.output_size &&
         a.stopped_early == b.stopped_early;
}

void to_json(json& j, const SizingReport& r) {
  j = json{{"B", r.b},
           {"C", r.c},
           {"r", r.r},
           {"r_exact", r.r_exact ? json(r.r_exact->get_str()) : json(nullptr)},
           {"lhs", r.lhs},
           {"chain_mid", r.chain_mid},
           {"chain_holds", r.chain_holds}};
}

void from_json(const json& j, SizingReport& r) {
  r.b = j.at("B").get<std::uint64_t>();
  r.c = j.at("C").get<double>();
  from_json(j.at("r"), r.r);
  r.r_exact = j.at("r_exact").is_null() ? std::nullopt
                                        : std::make_optional(mpz_from_json(j.at("r_exact")));
  r.lhs = j.at("lhs").get<double>();
  r.chain_mid = j.at("chain_mid").get<double>();
  r.chain_holds = j.at("chain_holds").get<bool>();
}

bool operator==(const SizingReport& a, const SizingReport& b) {
  return a.b == b.b && a.c == b.c && a.r == b.r && a.r_exact == b.r_exact && a.lhs == b.lhs &&
         a.chain_mid == b.chain_mid && a.chain_holds == b.chain_holds;
}

void to_json(json& j, const HeuristicSum& h) {
  j = json{{"estimate", h.estimate},
           {"tail_bound", h.tail_bound ? json(*h.tail_bound) : json(nullptr)},
           {"tail_supported", h.tail_bound.has_value()},
           {"underflow", h.underflow},
           {"terms_used", h.terms_used}};
}

void from_json(const json& j, HeuristicSum& h) {
  from_json(j.at("estimate"), h.estimate);
  if (j.at("tail_bound").is_null()) {
    h.tail_bound = std::nullopt;
  } else {
    ExtendedReal t;
    from_json(j.at("tail_bound"), t);
    h.tail_bound = t;
  }
  h.underflow = j.at("underflow").get<bool>();
  h.terms_used = j.at("terms_used").get<std::uint64_t>();
}

bool operator==(const HeuristicSum& a, const HeuristicSum& b) {
  return a.estimate == b.estimate && a.tail_bound == b.tail_bound &&
         a.underflow == b.underflow && a.terms_used == b.terms_used;
}

void to_json(json& j, const SequenceTerm& t) {
  j = json{{"index", t.index},
           {"value", t.value ? json(t.value->get_str()) : json(nullptr)},
           {"too_large", !t.value.has_value()},
           {"log_value", t.log_value},
           {"digits10", t.digits10}};
}

void from_json(const json& j, SequenceTerm& t) {
  t.index = j.at("index").get<std::uint64_t>();
  t.value = j.at("value").is_null() ? std::nullopt
                                    : std::make_optional(mpz_from_json(j.at("value")));
  from_json(j.at("log_value"), t.log_value);
  from_json(j.at("digits10"), t.digits10);
}

bool operator==(const SequenceTerm& a, const SequenceTerm& b) {
  auto eq_mag = [](const LogMagnitude& x, const LogMagnitude& y) {
    if (x.index() != y.index()) return false;
    if (std::holds_alternative<ExtendedReal>(x)) {
      return std::get<ExtendedReal>(x) == std::get<ExtendedReal>(y);
    }
    return std::get<TowerMagnitude>(x) == std::get<TowerMagnitude>(y);
  };
  return a.index == b.index && a.value == b.value && eq_mag(a.log_value, b.log_value) &&
         eq_mag(a.digits10, b.digits10);
}

void to_json(json& j, const ShiftHit& h) {
  j = json{{"shift", h.shift},
           {"count", h.count},
           {"prime_indices", h.prime_indices},
           {"certainty", certainty_name(h.certainty)}};
}

void from_json(const json& j, ShiftHit& h) {
  h.shift = j.at("shift").get<std::int64_t>();
  h.count = j.at("count").get<std::size_t>();
  h.prime_indices = j.at("prime_indices").get<std::vector<std::size_t>>();
  h.certainty = certainty_from(j.at("certainty").get<std::string>());
}

bool operator==(const ShiftHit& a, const ShiftHit& b) {
  return a.shift == b.shift && a.count == b.count && a.prime_indices == b.prime_indices &&
         a.certainty == b.certainty;
}

void to_json(json& j, const SearchResult& r) {
  j = json{{"hits", r.hits},
           {"complete", r.complete},
           {"shifts_scanned", r.shifts_scanned},
           {"best", r.best ? json(*r.best) : json(nullptr)}};
}

void from_json(const json& j, SearchResult& r) {
  r.hits = j.at("hits").get<std::vector<ShiftHit>>();
  r.complete = j.at("complete").get<bool>();
  r.shifts_scanned = j.at("shifts_scanned").get<std::uint64_t>();
  if (j.at("best").is_null()) {
    r.best = std::nullopt;
  } else {
    ShiftHit h;
    from_json(j.at("best"), h);
    r.best = h;
  }
}

bool operator==(const SearchResult& a, const SearchResult& b) {
  return a.hits == b.hits && a.complete == b.complete && a.shifts_scanned == b.shifts_scanned &&
         a.best == b.best;
}

void to_json(json& j, const HarnessReport& r) {
  j = json{{"input_size", r.input_size},
           {"admissible_subset", r.admissible_subset},
           {"trace", r.trace},
           {"size_bound_applicable", r.size_bound_applicable},
           {"size_bound_rhs", r.size_bound_rhs},
           {"size_bound_ok", r.size_bound_ok},
           {"sizing", r.sizing ? json(*r.sizing) : json(nullptr)},
           {"B", r.b},
           {"target", r.target},
           {"capacity_ok", r.capacity_ok},
           {"search", r.search},
           {"success", r.success}};
}

void from_json(const json& j, HarnessReport& r) {
  r.input_size = j.at("input_size").get<std::size_t>();
  from_json(j.at("admissible_subset"), r.admissible_subset);
  from_json(j.at("trace"), r.trace);
  r.size_bound_applicable = j.at("size_bound_applicable").get<bool>();
  r.size_bound_rhs = j.at("size_bound_rhs").get<double>();
  r.size_bound_ok = j.at("size_bound_ok").get<bool>();
  if (j.at("sizing").is_null()) {
    r.sizing = std::nullopt;
  } else {
    SizingReport s;
    from_json(j.at("sizing"), s);
    r.sizing = s;
  }
  r.b = j.at("B").get<std::uint64_t>();
  r.target = j.at("target").get<std::size_t>();
  r.capacity_ok = j.at("capacity_ok").get<bool>();
  from_json(j.at("search"), r.search);
  r.success = j.at("success").get<bool>();
}

bool operator==(const HarnessReport& a, const HarnessReport& b) {
  return a.input_size == b.input_size && a.admissible_subset == b.admissible_subset &&
         a.trace == b.trace && a.size_bound_applicable == b.size_bound_applicable &&
         a.size_bound_rhs == b.size_bound_rhs && a.size_bound_ok == b.size_bound_ok &&
         a.sizing == b.sizing && a.b == b.b && a.target == b.target &&
         a.capacity_ok == b.capacity_ok && a.search == b.search && a.success == b.success;
}

json make_envelope(const std::string& subcommand, json config, json result, bool partial) {
  return json{{"schema", kReportSchema},
              {"subcommand", subcommand},
              {"config", std::move(config)},
              {"result", std::move(result)},
              {"partial", partial}};
}

}  // namespace adlab
