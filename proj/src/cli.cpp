#include "adlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "adlab/bounds.hpp"
#include "adlab/heuristic.hpp"
#include "adlab/primal.hpp"
#include "adlab/report_json.hpp"
#include "adlab/search.hpp"
#include "adlab/sequences.hpp"
#include "adlab/tuples.hpp"

namespace adlab::cli {

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::string format = "json";
  unsigned threads = 0;  // 0 = unset, resolve via env then default 1
  unsigned rounds = 24;
  std::uint64_t presieve_cap = 997;
  std::uint64_t digit_cap = kDefaultDigitCap;
  std::uint64_t block_size = 1u << 20;
  std::uint64_t progress_interval = 0;
  std::uint64_t max_shifts = 0;  // 0 = unlimited
  double max_seconds = 0.0;      // 0 = unlimited
};

unsigned resolve_threads(const GlobalOpts& g) {
  if (g.threads > 0) return g.threads;
  if (const char* env = std::getenv("ADMISSIBLE_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    throw std::invalid_argument("ADMISSIBLE_LAB_THREADS must be an integer in [1,1024]");
  }
  return 1;
}

// Config echo for the report envelope. Deliberately omits the worker count:
// results are worker-independent and reports must be byte-identical across
// thread settings.
json base_config(const GlobalOpts& g) {
  json c;
  c["format"] = g.format;
  c["rounds"] = g.rounds;
  c["presieve_cap"] = g.presieve_cap;
  c["digit_cap"] = g.digit_cap;
  c["block_size"] = g.block_size;
  c["progress_interval"] = g.progress_interval;
  c["max_shifts"] = g.max_shifts ? json(g.max_shifts) : json(nullptr);
  c["max_seconds"] = g.max_seconds > 0 ? json(g.max_seconds) : json(nullptr);
  return c;
}

std::int64_t parse_i64(const std::string& s, const char* what) {
  mpz_class v;
  try {
    v = mpz_class(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string("invalid integer for ") + what + ": " + s);
  }
  if (!v.fits_slong_p())
    throw std::out_of_range(std::string(what) + " does not fit a signed 64-bit shift");
  return static_cast<std::int64_t>(v.get_si());
}

std::string describe_magnitude(const LogMagnitude& m) {
  if (const auto* er = std::get_if<ExtendedReal>(&m)) return er->to_string();
  const auto& t = std::get<TowerMagnitude>(m);
  return "tower(height=" + std::to_string(t.height) + ", top=" + std::to_string(t.top) + ")";
}

OffsetTuple load_tuple(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open tuple file: " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tuple_text(buf.str());
  }
  return parse_tuple_text(arg);
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SearchOptions make_search_options(const GlobalOpts& g, std::ostream& err) {
  SearchOptions opts;
  opts.workers = resolve_threads(g);
  opts.block_size = g.block_size;
  opts.presieve_cap = g.presieve_cap;
  if (g.max_shifts) opts.budget.max_shifts = g.max_shifts;
  if (g.max_seconds > 0) opts.budget.max_seconds = g.max_seconds;
  if (g.progress_interval > 0) {
    opts.progress_interval = g.progress_interval;
    opts.progress = [&err](std::uint64_t scanned, std::uint64_t hits) {
      err << "progress: scanned=" << scanned << " hits=" << hits << "\n";
    };
  }
  return opts;
}

std::string join_indices(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(xs[i]);
  }
  return s;
}

void emit_hits_csv(const std::vector<ShiftHit>& hits, std::ostream& out) {
  out << "shift,count,certainty,prime_indices\n";
  for (const auto& h : hits) {
    out << h.shift << ',' << h.count << ','
        << (h.certainty == Certainty::Proven ? "proven" : "probable") << ','
        << join_indices(h.prime_indices) << "\n";
  }
}

// Generic csv fallback: one row per flattened leaf of the result object.
void emit_flat_csv(const json& result, std::ostream& out) {
  out << "key,value\n";
  const json flat = result.flatten();
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    out << it.key() << ',';
    if (it.value().is_string())
      out << it.value().get<std::string>();
    else
      out << it.value().dump();
    out << "\n";
  }
}

struct Report {
  std::string subcommand;
  json config;
  json result;
  bool partial = false;
  // csv/text renderers; json is the default envelope
  std::function<void(std::ostream&)> csv;
  std::function<void(std::ostream&)> text;
};

void emit(const Report& r, const GlobalOpts& g, std::ostream& out) {
  if (g.format == "csv" && r.csv) {
    r.csv(out);
  } else if (g.format == "csv") {
    emit_flat_csv(r.result, out);
  } else if (g.format == "text" && r.text) {
    r.text(out);
  } else if (g.format == "text") {
    out << r.result.dump(2) << "\n";
  } else {
    out << make_envelope(r.subcommand, r.config, r.result, r.partial).dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"laboratory for admissible tuples, prime constellations, and size bounds"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (default: ADMISSIBLE_LAB_THREADS or 1)");
  app.add_option("--rounds", g.rounds, "extra probable-prime test rounds")->capture_default_str();
  app.add_option("--presieve-cap", g.presieve_cap, "largest presieve prime (0 disables)")
      ->capture_default_str();
  app.add_option("--digit-cap", g.digit_cap, "largest term, in decimal digits, to materialize")
      ->capture_default_str();
  app.add_option("--block-size", g.block_size, "shifts per work block")->capture_default_str();
  app.add_option("--progress-interval", g.progress_interval,
                 "emit progress on stderr every N scanned shifts (0 = off)");
  app.add_option("--max-shifts", g.max_shifts, "stop after scanning N shifts (0 = unlimited)");
  app.add_option("--max-seconds", g.max_seconds, "stop after this many seconds (0 = unlimited)");

  auto* cmd_adm = app.add_subcommand("admissible", "test a tuple for admissibility");
  std::string adm_tuple;
  cmd_adm->add_option("tuple", adm_tuple, "offsets, comma separated or @file")->required();
  cmd_adm->fallthrough();

  auto* cmd_ext = app.add_subcommand("extract", "greedy admissible subset of a set");
  std::string ext_tuple;
  bool ext_early = false;
  cmd_ext->add_option("tuple", ext_tuple, "values, comma separated or @file")->required();
  cmd_ext->add_flag("--early-exit", ext_early, "stop once remaining size drops below the prime");
  cmd_ext->fallthrough();

  auto* cmd_bounds = app.add_subcommand("bounds", "density products and their lower bounds");
  std::uint64_t bounds_r = 0;
  cmd_bounds->add_option("--r", bounds_r, "evaluate at r (>= 2)")->required();
  cmd_bounds->fallthrough();

  auto* cmd_sizing = app.add_subcommand("sizing", "input size needed for a target subset size");
  std::uint64_t sizing_b = 0;
  double sizing_c = 1.0;
  cmd_sizing->add_option("--B", sizing_b, "target threshold")->required();
  cmd_sizing->add_option("--C", sizing_c, "chain constant")->capture_default_str();
  cmd_sizing->fallthrough();

  auto* cmd_heur = app.add_subcommand("heuristic", "expected prime count along a sequence");
  std::string heur_spec;
  std::int64_t heur_terms = -1;
  cmd_heur->add_option("--seq", heur_spec, "sequence spec")->required();
  cmd_heur->add_option("--terms", heur_terms, "number of terms to sum (default per sequence)");
  cmd_heur->fallthrough();

  auto* cmd_seq = app.add_subcommand("seq", "inspect sequence terms");
  std::string seq_spec;
  std::uint64_t seq_prefix = 8;
  cmd_seq->add_option("--spec", seq_spec, "sequence spec")->required();
  cmd_seq->add_option("--prefix", seq_prefix, "number of leading terms")->capture_default_str();
  cmd_seq->fallthrough();

  auto* cmd_search = app.add_subcommand("search", "scan shifts for prime-rich translates");
  std::string search_tuple;
  std::string search_from, search_to;
  std::uint64_t search_target = 0;
  cmd_search->add_option("--tuple", search_tuple, "offsets, comma separated or @file")->required();
  cmd_search->add_option("--from", search_from, "first shift")->required();
  cmd_search->add_option("--to", search_to, "last shift")->required();
  cmd_search->add_option("--target", search_target, "required prime count per shift")->required();
  cmd_search->fallthrough();

  auto* cmd_har = app.add_subcommand("harness", "extract a subset and hunt for a dense translate");
  std::string har_spec;
  std::uint64_t har_r = 0, har_b = 0;
  std::string har_from = "0", har_to = "0";
  double har_c = 1.0;
  cmd_har->add_option("--seq", har_spec, "sequence spec for the input set")->required();
  cmd_har->add_option("--r", har_r, "number of leading terms to take")->required();
  cmd_har->add_option("--B", har_b, "prime count the search must beat")->required();
  cmd_har->add_option("--from", har_from, "first shift")->capture_default_str();
  cmd_har->add_option("--to", har_to, "last shift")->capture_default_str();
  cmd_har->add_option("--C", har_c, "chain constant for the sizing step")->capture_default_str();
  cmd_har->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("admissible-lab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Report rep;
    rep.config = base_config(g);

    if (*cmd_adm) {
      rep.subcommand = "admissible";
      OffsetTuple t = load_tuple(adm_tuple);
      rep.config["tuple"] = json(t);
      AdmissibilityReport r = is_admissible(t);
      rep.result = json(r);
      rep.text = [r](std::ostream& o) {
        if (r.admissible) {
          o << "admissible (primes checked up to " << r.checked_up_to << ")\n";
        } else {
          o << "not admissible; covering primes:";
          for (const auto& ob : r.obstructions) o << ' ' << ob;
          o << "\n";
        }
      };
    } else if (*cmd_ext) {
      rep.subcommand = "extract";
      OffsetTuple t = load_tuple(ext_tuple);
      rep.config["tuple"] = json(t);
      rep.config["early_exit"] = ext_early;
      ExtractionOptions eopts;
      eopts.early_exit = ext_early;
      auto extracted = extract_admissible_subset(t, eopts);
      const OffsetTuple& sub = extracted.first;
      const ExtractionTrace& trace = extracted.second;
      rep.result["subset"] = json(sub);
      rep.result["trace"] = json(trace);
      const std::size_t r = trace.input_size;
      json bound;
      bound["applicable"] = r >= 25;
      if (r >= 25) {
        const double rhs = half_log_bound(static_cast<double>(r)) * static_cast<double>(r);
        bound["rhs"] = rhs;
        bound["ok"] = static_cast<double>(sub.size()) > rhs;
      } else {
        bound["rhs"] = nullptr;
        bound["ok"] = nullptr;
      }
      rep.result["size_bound"] = bound;
      rep.text = [sub, input = trace.input_size](std::ostream& o) {
        o << "kept " << sub.size() << " of " << input << ":";
        for (const auto& v : sub.offsets()) o << ' ' << v.get_str();
        o << "\n";
      };
    } else if (*cmd_bounds) {
      rep.subcommand = "bounds";
      if (bounds_r < 2) throw std::invalid_argument("--r must be at least 2");
      rep.config["r"] = bounds_r;
      const double mert = mertens_product(bounds_r);
      const double ross = rosser_schoenfeld_lower(static_cast<double>(bounds_r));
      const double half = half_log_bound(static_cast<double>(bounds_r));
      rep.result["r"] = bounds_r;
      rep.result["mertens"] = mert;
      if (bounds_r <= kMertensExactCap) {
        const mpq_class exact = mertens_product_exact(bounds_r);
        rep.result["mertens_exact"] = exact.get_num().get_str() + "/" + exact.get_den().get_str();
      } else {
        rep.result["mertens_exact"] = nullptr;
      }
      rep.result["rosser_schoenfeld_lower"] = ross;
      rep.result["half_log_bound"] = half;
      rep.result["sandwich_ok"] = (mert > ross) && (ross >= half);
      rep.text = [r = bounds_r, mert, ross, half](std::ostream& o) {
        o << "r=" << r << " mertens=" << mert << " lower=" << ross << " half_log=" << half
          << "\n";
      };
    } else if (*cmd_sizing) {
      rep.subcommand = "sizing";
      rep.config["B"] = sizing_b;
      rep.config["C"] = sizing_c;
      SizingReport r = required_r(sizing_b, sizing_c);
      rep.result = json(r);
      rep.text = [ra = r.r.to_string(), lhs = r.lhs, mid = r.chain_mid](std::ostream& o) {
        o << "r=" << ra << " lhs=" << lhs << " mid=" << mid << "\n";
      };
    } else if (*cmd_heur) {
      rep.subcommand = "heuristic";
      SequenceSpec spec = parse_sequence_spec(heur_spec, load_text_file);
      rep.config["seq"] = spec.name();
      if (spec.kind() == SequenceKind::Explicit) rep.config["seq_terms"] = json(spec.terms());
      std::optional<std::uint64_t> terms;
      if (heur_terms >= 0) terms = static_cast<std::uint64_t>(heur_terms);
      rep.config["terms"] = terms ? json(*terms) : json(nullptr);
      HeuristicSum h = heuristic_expected_primes(spec, terms);
      rep.result = json(h);
      rep.text = [h](std::ostream& o) {
        o << "expected primes ~ " << h.estimate.to_string();
        if (h.tail_bound) o << " (+ tail <= " << h.tail_bound->to_string() << ")";
        if (h.underflow) o << " [underflow]";
        o << "\n";
      };
    } else if (*cmd_seq) {
      rep.subcommand = "seq";
      SequenceSpec spec = parse_sequence_spec(seq_spec, load_text_file);
      rep.config["spec"] = spec.name();
      if (spec.kind() == SequenceKind::Explicit) rep.config["seq_terms"] = json(spec.terms());
      rep.config["prefix"] = seq_prefix;
      std::vector<SequenceTerm> terms = prefix(spec, seq_prefix, g.digit_cap);
      rep.result["kind"] = spec.name();
      rep.result["terms"] = json(terms);
      rep.text = [terms](std::ostream& o) {
        for (const auto& t : terms) {
          o << t.index << ": ";
          if (t.value)
            o << t.value->get_str();
          else
            o << "(too large, ~" << describe_magnitude(t.digits10) << " digits)";
          o << "\n";
        }
      };
    } else if (*cmd_search) {
      rep.subcommand = "search";
      TranslateQuery q;
      q.tuple = load_tuple(search_tuple);
      q.shift_lo = parse_i64(search_from, "--from");
      q.shift_hi = parse_i64(search_to, "--to");
      q.target = search_target;
      q.policy.rounds = g.rounds;
      rep.config["tuple"] = json(q.tuple);
      rep.config["from"] = q.shift_lo;
      rep.config["to"] = q.shift_hi;
      rep.config["target"] = q.target;
      SearchOptions opts = make_search_options(g, err);
      SearchResult r = shift_search(q, opts);
      rep.result = json(r);
      rep.partial = !r.complete;
      rep.csv = [hits = r.hits](std::ostream& o) { emit_hits_csv(hits, o); };
      rep.text = [r](std::ostream& o) {
        o << (r.complete ? "scan complete" : "scan partial") << ", shifts=" << r.shifts_scanned
          << ", hits=" << r.hits.size() << "\n";
        if (r.best)
          o << "best: shift " << r.best->shift << " with " << r.best->count << " primes\n";
      };
    } else if (*cmd_har) {
      rep.subcommand = "harness";
      SequenceSpec spec = parse_sequence_spec(har_spec, load_text_file);
      rep.config["seq"] = spec.name();
      if (spec.kind() == SequenceKind::Explicit) rep.config["seq_terms"] = json(spec.terms());
      rep.config["r"] = har_r;
      rep.config["B"] = har_b;
      const std::int64_t har_lo = parse_i64(har_from, "--from");
      const std::int64_t har_hi = parse_i64(har_to, "--to");
      rep.config["from"] = har_lo;
      rep.config["to"] = har_hi;
      rep.config["C"] = har_c;
      std::vector<SequenceTerm> terms = prefix(spec, har_r, g.digit_cap);
      std::vector<mpz_class> values;
      values.reserve(terms.size());
      for (const auto& t : terms) {
        if (!t.value)
          throw std::invalid_argument("sequence term at index " + std::to_string(t.index) +
                                      " is too large to materialize; raise --digit-cap");
        values.push_back(*t.value);
      }
      OffsetTuple a = OffsetTuple::from_values(values);
      SearchOptions opts = make_search_options(g, err);
      PrimalityPolicy policy;
      policy.rounds = g.rounds;
      HarnessReport r = refutation_harness(a, har_b, har_lo, har_hi, har_c, opts, policy);
      rep.result = json(r);
      rep.partial = !r.search.complete;
      rep.csv = [hits = r.search.hits](std::ostream& o) { emit_hits_csv(hits, o); };
      rep.text = [r](std::ostream& o) {
        o << "subset size " << r.admissible_subset.size() << ", capacity "
          << (r.capacity_ok ? "ok" : "insufficient") << ", search "
          << (r.search.complete ? "complete" : "partial") << ", "
          << (r.success ? "target met" : "target not met") << "\n";
        if (r.search.best)
          o << "best: shift " << r.search.best->shift << " with " << r.search.best->count
            << " primes\n";
      };
    }

    emit(rep, g, out);
    return rep.partial ? 3 : 0;
  } catch (const ChainViolation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace adlab::cli
