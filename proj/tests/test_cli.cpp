#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "adlab/cli.hpp"
#include "adlab/report_json.hpp"

using namespace adlab;
using nlohmann::json;

namespace {

struct RunOutcome {
  int code;
  std::string out;
  std::string err;
};

RunOutcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("json envelope carries schema, config echo, and result") {
  RunOutcome r = run_cli({"admissible", "0,2,6,8"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  json j = json::parse(r.out);
  CHECK(j.at("schema") == "admissible-lab/v1");
  CHECK(j.at("subcommand") == "admissible");
  CHECK(j.at("partial") == false);
  CHECK(j.at("config").at("tuple") == json::array({"0", "2", "6", "8"}));
  CHECK(j.at("config").at("rounds") == 24);
  CHECK_FALSE(j.at("config").contains("threads"));
  CHECK_FALSE(j.at("config").contains("workers"));
  AdmissibilityReport rep = j.at("result").get<AdmissibilityReport>();
  CHECK(rep.admissible);
  CHECK(rep.checked_up_to == 3);
}

TEST_CASE("report round trip: parse and re-serialize byte-identically") {
  for (auto args : {std::vector<std::string>{"extract", "0,1,2,3,4,5,6,7,8,9"},
                    std::vector<std::string>{"search", "--tuple", "0,2,6,8", "--from", "-50",
                                             "--to", "250", "--target", "4"},
                    std::vector<std::string>{"sizing", "--B", "4", "--C", "1"},
                    std::vector<std::string>{"heuristic", "--seq", "fermat"},
                    std::vector<std::string>{"seq", "--spec", "ford-factorial", "--prefix", "4"},
                    std::vector<std::string>{"harness", "--seq", "fermat", "--r", "7", "--B", "4",
                                             "--from", "0", "--to", "0"}}) {
    RunOutcome r = run_cli(args);
    CAPTURE(args[0]);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    std::string redump = j.dump(2) + "\n";
    CHECK(redump == r.out);
  }
}

TEST_CASE("typed round trip through the json layer") {
  RunOutcome r = run_cli({"harness", "--seq", "fermat", "--r", "7", "--B", "4", "--from", "0",
                          "--to", "0"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  HarnessReport rep = j.at("result").get<HarnessReport>();
  CHECK(rep.success);
  CHECK(rep.admissible_subset.size() == 7);
  REQUIRE(rep.sizing.has_value());
  CHECK(*rep.sizing->r_exact == 2981);
  json again(rep);
  CHECK(again == j.at("result"));
  HarnessReport rep2 = again.get<HarnessReport>();
  CHECK(rep2 == rep);
}

TEST_CASE("search csv rows match the json hits") {
  std::vector<std::string> base{"search", "--tuple", "0,2,6,8", "--from", "0",
                                "--to",   "200",     "--target", "4"};
  RunOutcome jr = run_cli(base);
  std::vector<std::string> casv = base;
  casv.push_back("--format");
  casv.push_back("csv");
  RunOutcome cr = run_cli(casv);
  REQUIRE(jr.code == 0);
  REQUIRE(cr.code == 0);

  json j = json::parse(jr.out);
  auto hits = j.at("result").at("hits");
  std::vector<std::string> lines = split_lines(cr.out);
  REQUIRE(lines.size() == hits.size() + 1);
  CHECK(lines[0] == "shift,count,certainty,prime_indices");
  CHECK(lines[1] == "5,4,proven,0;1;2;3");
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const json& h = hits[i];
    std::string want = std::to_string(h.at("shift").get<std::int64_t>()) + "," +
                       std::to_string(h.at("count").get<std::size_t>()) + "," +
                       std::string(h.at("certainty").get<std::string>()) + ",";
    CHECK(lines[i + 1].rfind(want, 0) == 0);
  }
}

TEST_CASE("csv fallback flattens scalar results") {
  RunOutcome r = run_cli({"bounds", "--r", "25", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::vector<std::string> lines = split_lines(r.out);
  CHECK(lines[0] == "key,value");
  bool saw_exact = false;
  for (const auto& l : lines) saw_exact |= l.rfind("/mertens_exact,", 0) == 0;
  CHECK(saw_exact);
}

TEST_CASE("worker count never changes the bytes") {
  std::vector<std::string> base{"search", "--tuple", "0,4,6,10,12,16", "--from", "-100",
                                "--to",   "2000",    "--target",       "4"};
  std::vector<std::string> t1 = base;
  t1.insert(t1.end(), {"--threads", "1"});
  std::vector<std::string> t3 = base;
  t3.insert(t3.end(), {"--threads", "3", "--block-size", "64"});
  RunOutcome r1 = run_cli(t1);
  RunOutcome r3 = run_cli(t3);
  REQUIRE(r1.code == 0);
  REQUIRE(r3.code == 0);
  // block size is part of the echo, so compare results, not whole envelopes
  json j1 = json::parse(r1.out);
  json j3 = json::parse(r3.out);
  CHECK(j1.at("result").dump() == j3.at("result").dump());
}

TEST_CASE("thread env var applies when --threads is absent") {
  setenv("ADMISSIBLE_LAB_THREADS", "3", 1);
  RunOutcome env3 = run_cli({"search", "--tuple", "0,2", "--from", "0", "--to", "500",
                             "--target", "2"});
  unsetenv("ADMISSIBLE_LAB_THREADS");
  RunOutcome plain = run_cli({"search", "--tuple", "0,2", "--from", "0", "--to", "500",
                              "--target", "2"});
  REQUIRE(env3.code == 0);
  REQUIRE(plain.code == 0);
  CHECK(env3.out == plain.out);  // byte-identical despite different worker counts

  setenv("ADMISSIBLE_LAB_THREADS", "zero", 1);
  RunOutcome bad = run_cli({"admissible", "0,2"});
  unsetenv("ADMISSIBLE_LAB_THREADS");
  // the env var only matters where workers are used; admissible ignores it
  CHECK(bad.code == 0);
  RunOutcome bad2 = run_cli({"search", "--tuple", "0,2", "--from", "0", "--to", "10",
                             "--target", "2"});
  CHECK(bad2.code == 0);  // env was unset again
}

TEST_CASE("invalid thread env var fails fast where workers matter") {
  setenv("ADMISSIBLE_LAB_THREADS", "0", 1);
  RunOutcome r = run_cli({"search", "--tuple", "0,2", "--from", "0", "--to", "10",
                          "--target", "2"});
  unsetenv("ADMISSIBLE_LAB_THREADS");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("ADMISSIBLE_LAB_THREADS") != std::string::npos);
}

TEST_CASE("validation failures exit 2 with a one-line diagnostic") {
  for (auto args : {std::vector<std::string>{"admissible", "0,2,x"},
                    std::vector<std::string>{"bounds", "--r", "1"},
                    std::vector<std::string>{"sizing", "--B", "3", "--C", "0.5"},
                    std::vector<std::string>{"heuristic", "--seq", "fibonacci"},
                    std::vector<std::string>{"search", "--tuple", "0,2", "--from", "5", "--to",
                                             "4", "--target", "2"},
                    std::vector<std::string>{"search", "--tuple", "0,2", "--from", "0", "--to",
                                             "10", "--target", "3"},
                    std::vector<std::string>{"nonsense"}}) {
    RunOutcome r = run_cli(args);
    CAPTURE(args[0]);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
    CHECK(split_lines(r.err).size() == 1);
  }
}

TEST_CASE("budget exhaustion exits 3 and marks the report partial") {
  RunOutcome r = run_cli({"search", "--tuple", "0,2", "--from", "0", "--to", "1000", "--target",
                          "2", "--max-shifts", "10"});
  CHECK(r.code == 3);
  json j = json::parse(r.out);
  CHECK(j.at("partial") == true);
  CHECK(j.at("result").at("complete") == false);
  CHECK(j.at("result").at("shifts_scanned") == 10);
}

TEST_CASE("tuple files load through @path") {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "adlab_cli_tuple.txt";
  {
    std::ofstream f(p);
    f << "# the champion quadruplet\n0, 2\n6\n8\n";
  }
  RunOutcome r = run_cli({"admissible", "@" + p.string()});
  fs::remove(p);
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("result").at("admissible") == true);
  RunOutcome missing = run_cli({"admissible", "@/nonexistent/tuple.txt"});
  CHECK(missing.code == 2);
}

TEST_CASE("explicit sequence specs flow through heuristic and seq") {
  RunOutcome r = run_cli({"heuristic", "--seq", "explicit:3,7,61", "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("config").at("seq") == "explicit");
  CHECK(j.at("config").at("seq_terms") == json::array({"3", "7", "61"}));
  HeuristicSum h = j.at("result").get<HeuristicSum>();
  CHECK(h.terms_used == 3);
  REQUIRE(h.tail_bound.has_value());
  CHECK(h.tail_bound->is_zero());
}

TEST_CASE("help exits zero and prints usage") {
  RunOutcome r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("admissible") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("text format is a terse human summary") {
  RunOutcome r = run_cli({"extract", "0,1,2,3,4,5,6,7,8,9", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "kept 4 of 10: 1 3 7 9\n");
  RunOutcome h = run_cli({"harness", "--seq", "explicit:3,5,7", "--r", "3", "--B", "1", "--from",
                          "0", "--to", "10", "--format", "text"});
  REQUIRE(h.code == 0);
  CHECK(h.out.find("target met") != std::string::npos);
}

TEST_CASE("progress lines go to stderr, never stdout") {
  RunOutcome r = run_cli({"search", "--tuple", "0,2", "--from", "0", "--to", "3000", "--target",
                          "2", "--progress-interval", "1000"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("progress: scanned=") == std::string::npos);
  CHECK(r.err.find("progress: scanned=") != std::string::npos);
  json j = json::parse(r.out);  // stdout still parses as one json document
  CHECK(j.at("result").at("complete") == true);
}

TEST_CASE("extended real values survive the json layer exactly") {
  for (double x : {2.245077221087017, -1.25e-40, 0.0, 9.999999999999998e100}) {
    ExtendedReal e = ExtendedReal::from_double(x);
    json j(e);
    ExtendedReal back = j.get<ExtendedReal>();
    CHECK(back == e);
  }
  ExtendedReal huge = ExtendedReal::make(1, 5.8464389565021147, mpz_class("-1000000000000000000"));
  json j(huge);
  ExtendedReal back = j.get<ExtendedReal>();
  CHECK(back == huge);
  // tower magnitudes keep their variant tag
  LogMagnitude m = TowerMagnitude{5, 3};
  json jt(m);
  CHECK(jt.at("kind") == "tower");
  LogMagnitude back_m = jt.get<LogMagnitude>();
  CHECK(compare(m, back_m) == 0);
}
