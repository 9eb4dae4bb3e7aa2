#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "volterra/config.hpp"
#include "volterra/verify.hpp"

using namespace volterra;
using nlohmann::json;

namespace {

RunConfig quick_config() {
  RunConfig c;
  c.grid.levels = 12;
  c.grid.angles = 64;
  c.search.degree = 6;
  c.search.random_polys = 4;
  c.search.grid = c.grid;
  return c;
}

CaseSpec make_case(OpKind op, const char* g, const char* nu, const char* mu, Question q) {
  CaseSpec c;
  c.op = op;
  c.g = g;
  c.nu = nu;
  c.mu = mu;
  c.question = q;
  return c;
}

}  // namespace

TEST_CASE("config overlay and validation") {
  const RunConfig c = config_from_json(json::parse(R"({"grid": {"levels": 9}, "jobs": 3, "format": "csv"})"));
  CHECK(c.grid.levels == 9);
  CHECK(c.search.grid.levels == 9);
  CHECK(c.grid.angles == GridSpec{}.angles);
  CHECK(c.jobs == 3);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"grdi": {}})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"grid": {"level": 9}})")), std::invalid_argument);
  RunConfig bad;
  bad.grid.levels = 5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = RunConfig{};
  bad.format = "xml";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  // Round trip through JSON.
  CHECK(to_json(config_from_json(to_json(c))) == to_json(c));
}

TEST_CASE("VOLTERRA_SEED overrides the fallback") {
  ::setenv("VOLTERRA_SEED", "1234", 1);
  CHECK(seed_from_env(42) == 1234);
  ::setenv("VOLTERRA_SEED", "12x", 1);
  CHECK_THROWS_AS(seed_from_env(42), std::invalid_argument);
  ::unsetenv("VOLTERRA_SEED");
  CHECK(seed_from_env(42) == 42);
}

TEST_CASE("case parsing") {
  const CaseSpec c = case_from_json(json::parse(
      R"({"op": "sg", "g": "identity", "nu": "std:1", "mu": "std:2", "domain": "bloch", "codomain": "hinf",
          "question": "compact", "expect": "Compact"})"));
  CHECK(c.op == OpKind::Sg);
  CHECK(c.domain == SpaceKind::Bloch);
  CHECK(c.question == Question::Compact);
  CHECK(c.expect.value() == "Compact");
  CHECK(case_from_json(to_json(c)).label() == c.label());
  CHECK_THROWS(case_from_json(json::parse(R"({"op": "tg", "g": "nope"})")));
  CHECK_THROWS(case_from_json(json::parse(R"({"op": "tg", "colour": "red"})")));
}

TEST_CASE("bounded but not compact") {
  const RunConfig cfg = quick_config();
  const CaseReport b = run_case(make_case(OpKind::Tg, "neglog1mz", "std:1", "std:1", Question::Bounded), cfg, false);
  CHECK(b.verdict == "Bounded");
  CHECK(b.governing == "Thm 1");
  CHECK_FALSE(b.disagreement);
  const CaseReport c = run_case(make_case(OpKind::Tg, "neglog1mz", "std:1", "std:1", Question::Compact), cfg, false);
  CHECK(c.verdict == "NotCompact");
  CHECK(c.ok());
}

TEST_CASE("unbounded with constant weights") {
  const CaseReport r =
      run_case(make_case(OpKind::Tg, "neglog1mz", "one", "one", Question::Bounded), quick_config(), false);
  CHECK(r.verdict == "Unbounded");
  CHECK(r.governing == "Cor 1");
}

TEST_CASE("T_g between Bloch spaces has no criterion") {
  CaseSpec s = make_case(OpKind::Tg, "identity", "std:1", "std:1", Question::Bounded);
  s.domain = s.codomain = SpaceKind::Bloch;
  const CaseReport r = run_case(s, quick_config(), false);
  CHECK(r.rows.empty());
  CHECK(r.verdict == "Inconclusive");
}

TEST_CASE("expectation mismatch raises a flag") {
  CaseSpec s = make_case(OpKind::Sg, "zero", "std:1", "std:1", Question::Compact);
  s.expect = "NotCompact";
  const CaseReport r = run_case(s, quick_config());
  CHECK(r.verdict == "Compact");
  CHECK_FALSE(r.ok());
}

TEST_CASE("matrix output formats") {
  const std::vector<CaseSpec> cases{make_case(OpKind::Tg, "identity", "std:1", "std:1", Question::Bounded),
                                    make_case(OpKind::Tg, "identity", "std:1", "std:1", Question::Compact)};
  const EquivalenceMatrix m = equivalence_matrix(cases, quick_config());
  CHECK(m.disagreement_count() == 0);
  CHECK(m.flags.empty());
  const std::string csv = emit_matrix(m, "csv");
  CHECK(csv.rfind("case,id,quantity,role,kind,mode,value,verdict,implies,witness_r,witness_theta\n", 0) == 0);
  const json j = json::parse(emit_matrix(m, "json"));
  CHECK(j.at("schema") == kReportSchema);
  CHECK(j.at("cases").size() == 2);
  CHECK(emit_matrix(m, "markdown").find("| case |") != std::string::npos);
  CHECK_THROWS_AS(emit_matrix(m, "yaml"), std::invalid_argument);
}

TEST_CASE("golden report for S_g with g = 0") {
  std::ifstream in(VOLTERRA_FIXTURE_DIR "/golden_sg_zero.json");
  REQUIRE(in);
  std::stringstream want;
  want << in.rdbuf();
  const json spec = json::parse(R"({"op": "sg", "g": "zero", "nu": "std:1", "mu": "std:1", "question": "compact"})");
  const CaseReport r = run_case(case_from_json(spec), RunConfig{});
  CHECK(emit_report(r, "json") == want.str());
}
