#include <doctest.h>

#include <cstdlib>
#include <unistd.h>

#include "cli_runner.hpp"
#include "primus/error.hpp"
#include "primus/fuzz.hpp"
#include "primus/io.hpp"

using namespace primus;

namespace {

const std::string cli = PRIMUS_CLI;

Json request(int rank, std::vector<std::string> set, Json variety) {
  return {{"rank", rank}, {"set", set}, {"variety", variety}};
}

testcli::Result check_cli(const Json& req, const std::string& extra = "") {
  const auto path = testcli::write_temp("primus_io_" + std::to_string(getpid()) + ".json", req.dump());
  return testcli::run(cli + " check " + path + " " + extra + " 2>/dev/null");
}

}  // namespace

TEST_CASE("variety specs round-trip") {
  for (const Json& j : {Json{{"type", "Free"}}, Json{{"type", "Abelian"}, {"n", 6}},
                        Json{{"type", "Nilpotent"}, {"c", 2}, {"n", 0}},
                        Json{{"type", "AmAn"}, {"m", 2}, {"n", 3}}, Json{{"type", "Solvable"}, {"t", 2}}})
    CHECK(VarietySpec::from_json(j).to_json() == j);
  CHECK(VarietySpec::from_json({{"type", "Abelian"}}).n == 0);
  CHECK_THROWS_AS(VarietySpec::from_json({{"type", "Torsion"}}), DomainError);
  CHECK_THROWS_AS(VarietySpec::from_json({{"type", "Abelian"}, {"n", -1}}), DomainError);
  CHECK_THROWS_AS(VarietySpec::from_json({{"type", "Nilpotent"}, {"c", 0}}), DomainError);
  CHECK_THROWS_AS(VarietySpec::from_json(Json::array()), DomainError);
}

TEST_CASE("configuration files") {
  const auto b = parse_config("# budgets\ndegree_bound = 3\n\nnode_budget=500  # small\nseed = 42\n");
  CHECK(b.degree_bound == 3);
  CHECK(b.node_budget == 500);
  CHECK(b.seed == 42);
  Budgets base;
  base.seed = 9;
  CHECK(parse_config("degree_bound = 1", base).seed == 9);
  CHECK_THROWS_AS(parse_config("depth = 3"), ParseError);
  CHECK_THROWS_AS(parse_config("seed"), ParseError);
  CHECK_THROWS_AS(parse_config("seed = -1"), ParseError);
  CHECK_THROWS_AS(parse_config("seed = 12x"), ParseError);
}

TEST_CASE("seed from the environment") {
  unsetenv("PRIMUS_SEED");
  CHECK(default_seed(5) == 5);
  setenv("PRIMUS_SEED", "77", 1);
  CHECK(default_seed(5) == 77);
  setenv("PRIMUS_SEED", "abc", 1);
  CHECK_THROWS_AS(default_seed(5), DomainError);
  unsetenv("PRIMUS_SEED");
}

TEST_CASE("request validation") {
  const Json free{{"type", "Free"}};
  CHECK_NOTHROW(CheckRequest::from_json(request(2, {"a1 a2"}, free)));
  CHECK_THROWS(CheckRequest::from_json(request(1, {"a1"}, free)));
  CHECK_THROWS(CheckRequest::from_json(request(2, {}, free)));
  CHECK_THROWS(CheckRequest::from_json(request(2, {"a1", "a2", "a1 a2"}, free)));
  CHECK_THROWS(CheckRequest::from_json(request(2, {"a1", "a1"}, free)));
  CHECK_THROWS(CheckRequest::from_json(request(2, {"a3"}, free)));
  CHECK_THROWS(CheckRequest::from_json(request(2, {"a1 ^"}, free)));
  auto with_l = request(3, {"a1 a3"}, free);
  with_l["l"] = 2;
  CHECK_THROWS(CheckRequest::from_json(with_l));
  with_l["l"] = 3;
  CHECK_THROWS(CheckRequest::from_json(with_l));
  auto budgets = request(2, {"a1"}, free);
  budgets["budgets"] = {{"seed", 11}};
  Budgets base;
  base.node_budget = 33;
  const auto req = CheckRequest::from_json(budgets, base);
  CHECK(req.budgets.seed == 11);
  CHECK(req.budgets.node_budget == 33);
}

TEST_CASE("verdict examples") {
  auto verdict = [](const Json& j) {
    const auto v = run_check(CheckRequest::from_json(j));
    CHECK(validate_verdict(v).empty());
    return v;
  };
  CHECK(verdict(request(2, {"a1 a2"}, {{"type", "Abelian"}, {"n", 0}}))["status"] == "Primitive");
  CHECK(verdict(request(2, {"a1^2"}, {{"type", "Free"}}))["status"] == "NotPrimitive");
  CHECK(verdict(request(2, {"a1 a2 a1^-1"}, {{"type", "Free"}}))["witness"]["completion"] ==
        Json::array({"a1"}));
  CHECK(verdict(request(2, {"a1 [a1,a2]"}, {{"type", "Nilpotent"}, {"c", 2}}))["status"] == "Primitive");
  CHECK(verdict(request(2, {"a1^2"}, {{"type", "AmAn"}, {"m", 2}, {"n", 2}}))["status"] == "NotPrimitive");
  CHECK(verdict(request(2, {"a1 a2", "a2"}, {{"type", "Solvable"}, {"t", 2}}))["method"] ==
        "metabelian-determinant");
  CHECK_THROWS_AS(run_check(CheckRequest::from_json(request(2, {"a1"}, {{"type", "AmAn"}, {"m", 0}, {"n", 2}}))),
                  UnsupportedConfiguration);
  CHECK_THROWS_AS(run_check(CheckRequest::from_json(request(2, {"a1"}, {{"type", "Solvable"}, {"t", 3}}))),
                  UnsupportedConfiguration);

  auto restricted = request(3, {"a1 a2"}, {{"type", "Free"}});
  restricted["l"] = 2;
  const auto v = verdict(restricted);
  CHECK(v["status"] == "Primitive");
  CHECK(v["restricted"]["status"] == "Primitive");
  CHECK(v["restricted"]["rank"] == 2);
}

TEST_CASE("verdict validation catches malformed objects") {
  auto v = run_check(CheckRequest::from_json(request(2, {"a1"}, {{"type", "Free"}})));
  REQUIRE(validate_verdict(v).empty());
  auto no_witness = v;
  no_witness["witness"] = Json::object();
  CHECK_FALSE(validate_verdict(no_witness).empty());
  auto bad_status = v;
  bad_status["status"] = "Maybe";
  CHECK_FALSE(validate_verdict(bad_status).empty());
  auto unknown = v;
  unknown["status"] = "Unknown";
  CHECK_FALSE(validate_verdict(unknown).empty());
  auto bad_set = v;
  bad_set["set"] = Json::array({"a9"});
  CHECK_FALSE(validate_verdict(bad_set).empty());
  CHECK_FALSE(validate_verdict(Json::array()).empty());
}

TEST_CASE("verdicts are deterministic") {
  const auto j = request(3, {"a1 a2 a3 a1", "a2 a3"}, {{"type", "Free"}});
  CHECK(run_check(CheckRequest::from_json(j)).dump() == run_check(CheckRequest::from_json(j)).dump());
}

TEST_CASE("fuzz reports are independent of thread count") {
  FuzzConfig c;
  c.variety = VarietySpec::from_json({{"type", "Abelian"}, {"n", 6}});
  c.rank = 4;
  c.l = 2;
  c.k = 2;
  c.trials = 40;
  c.seed = 3;
  c.threads = 1;
  const auto one = run_fuzz(c);
  c.threads = 4;
  const auto four = run_fuzz(c);
  CHECK(one.to_json(c).dump() == four.to_json(c).dump());
  CHECK(one.passes == 40);
  CHECK(one.failures.empty());
  CHECK(fuzz_instance(3, 2, 1, 8, 5) == fuzz_instance(3, 2, 1, 8, 5));
  for (const auto& w : fuzz_instance(4, 2, 2, 8, 6)) CHECK(w.supported_in(2));
}

TEST_CASE("fuzz guards unsupported regimes") {
  FuzzConfig c;
  c.variety = VarietySpec::from_json({{"type", "AmAn"}, {"m", 0}, {"n", 2}});
  c.rank = 2;
  c.l = 1;
  c.k = 1;
  c.trials = 2;
  CHECK_THROWS_AS(run_fuzz(c), UnsupportedConfiguration);
}

TEST_CASE("command line exit codes") {
  CHECK(check_cli(request(2, {"a1 a2"}, {{"type", "Abelian"}, {"n", 0}})).code == 0);
  CHECK(check_cli(request(2, {"a1^2"}, {{"type", "Free"}})).code == 1);
  CHECK(check_cli(request(2, {"a1^2 a2^3"}, {{"type", "Free"}})).code == 1);
  CHECK(check_cli(request(2, {"a1^2 a2^3"}, {{"type", "Free"}}), "--node-budget 1").code == 2);
  CHECK(check_cli(request(2, {"a1"}, {{"type", "AmAn"}, {"m", 0}, {"n", 2}})).code == 3);
  CHECK(check_cli(request(2, {"a5"}, {{"type", "Free"}})).code == 4);
  CHECK(testcli::run("echo 'not json' | " + cli + " check - 2>/dev/null").code == 4);
  CHECK(testcli::run(cli + " frobnicate 2>/dev/null >/dev/null").code == 4);
  CHECK(testcli::run(cli + " derive --rank 2 'a1 a2' 'a1^-1'").out == "1, a1\n-a1^-1, 0\n");
  CHECK(testcli::run(cli + " derive --rank 2 --m 2 'a1^-2'").out.find("t1^-1 + t1^-2") != std::string::npos);
}

TEST_CASE("command line output and seeds") {
  const auto req = request(2, {"a1 a2^2"}, {{"type", "Free"}});
  const auto a = check_cli(req);
  const auto b = check_cli(req);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Json parsed = Json::parse(a.out);
  CHECK(validate_verdict(parsed).empty());
  CHECK(parsed["budget"]["seed"] == 1);
  const auto path = testcli::write_temp("primus_io_seed.json", req.dump());
  const auto seeded = Json::parse(testcli::run("PRIMUS_SEED=99 " + cli + " check " + path).out);
  CHECK(seeded["budget"]["seed"] == 99);
  const auto flagged = Json::parse(testcli::run("PRIMUS_SEED=99 " + cli + " check " + path + " --seed 5").out);
  CHECK(flagged["budget"]["seed"] == 5);

  const auto dot = (std::filesystem::temp_directory_path() / "primus_io.dot").string();
  std::filesystem::remove(dot);
  CHECK(check_cli(req, "--emit-dot " + dot).code == 0);
  CHECK(testcli::read_file(dot).find("digraph") != std::string::npos);
}
