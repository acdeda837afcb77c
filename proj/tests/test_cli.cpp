#include <doctest.h>

#include <fstream>
#include <sstream>

#include "limem/cli.hpp"
#include "limem/document.hpp"

using namespace limem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli_main(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(LIMEM_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("solve-p and verify") {
  const Run solved = run({"solve-p", fixture("prime1.json"), "--k", "2"});
  REQUIRE(solved.code == 0);
  CHECK(parse_json(solved.out)["verdict"] == "WIN");
  // The verdict document is accepted as a strategy on standard input.
  const Run checked = run({"verify", fixture("prime1.json"), "-", "--k", "2"}, solved.out);
  CHECK(checked.code == 0);
  CHECK(parse_json(checked.out)["verdict"] == "WINNING");

  const Run lost = run({"solve-p", fixture("prime1.json")});
  CHECK(lost.code == 0);
  CHECK(parse_json(lost.out)["verdict"] == "NO-WIN");
}

TEST_CASE("verify reports a losing witness") {
  // Always playing f: F reveals the prime at once and counts down to X.
  const std::string strategy = R"({"format_version": 1, "kind": "p-strategy", "memory": 1, "initial_memory": 1,
    "table": [
      {"observation": ["S", "s"], "memory": 1, "action": "f", "next_memory": 1},
      {"observation": ["S", "rev1"], "memory": 1, "action": "f", "next_memory": 1},
      {"observation": ["F", "s"], "memory": 1, "action": "f", "next_memory": 1},
      {"observation": ["F", "rev1"], "memory": 1, "action": "f", "next_memory": 1}]})";
  const Run r = run({"verify", fixture("prime1.json"), "-"}, strategy);
  REQUIRE(r.code == 0);
  const Json doc = parse_json(r.out);
  CHECK(doc["verdict"] == "LOSING");
  CHECK(doc["witness"].contains("cycle"));
  CHECK(doc["witness"].contains("f_script"));
}

TEST_CASE("solve-f") {
  const Run r = run({"solve-f", fixture("qbf_safe_xor.json")});
  REQUIRE(r.code == 0);
  const Json doc = parse_json(r.out);
  CHECK(doc["problem"] == "WIN_F");
  CHECK(doc["verdict"] == "F-WINS");
  CHECK_FALSE(doc["certificate"].empty());
}

TEST_CASE("generators") {
  CHECK(run({"gen-cnf", fixture("x1.cnf")}).out == slurp(fixture("cnf_reach_x1.json")));
  CHECK(run({"gen-cnf", "--kind", "safe", fixture("xor.cnf")}).out == slurp(fixture("cnf_safe_xor.json")));
  CHECK(run({"gen-qbf", fixture("xor.qdimacs")}).out == slurp(fixture("qbf_safe_xor.json")));
  CHECK(run({"gen-prime", "--n", "1"}).out == slurp(fixture("prime1.json")));
  const Run dimacs_stdin = run({"gen-cnf"}, "p cnf 1 1\n1 0\n");
  CHECK(dimacs_stdin.out == slurp(fixture("cnf_reach_x1.json")));
}

TEST_CASE("transforms") {
  const Run u = run({"unroll", fixture("prime1.json"), "--k", "2"});
  REQUIRE(u.code == 0);
  const GameInstance unrolled = parse_instance(u.out);
  CHECK(unrolled.memory_bound == 1);
  CHECK(unrolled.arena.num_public() == 4);

  const Run c = run({"counter-game", fixture("parity_ffirst.json"), "--k", "2"});
  REQUIRE(c.code == 0);
  CHECK(parse_instance(c.out).metadata.at("counter_game_memory") == "2");
  CHECK(run({"counter-game", fixture("prime1.json")}).code == 2);
}

TEST_CASE("cross-check") {
  const Run r = run({"cross-check", "--random", "25", "--seed", "9"});
  CHECK(r.code == 0);
  const Json doc = parse_json(r.out);
  CHECK(doc["instances"] == 25);
  CHECK(doc["agreements"] == 25);
  CHECK(run({"cross-check", "--random", "25", "--seed", "9"}).out == r.out);
  CHECK(run({"cross-check", fixture("nondetermined.json")}).code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const Run missing = run({"solve-p", fixture("does-not-exist.json")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(run({"solve-p", "-"}, "{").code == 2);
  CHECK(run({"gen-cnf"}, "p cnf 1 1\n2 0\n").code == 2);
  CHECK(run({"solve-p", fixture("prime1.json"), "--k", "0"}).code == 2);
  const Run budget = run({"solve-f", fixture("prime1.json"), "--budget", "3"});
  CHECK(budget.code == 3);
  CHECK(budget.out.empty());
  CHECK(run({"solve-p", fixture("prime1.json"), "--k", "2", "--budget", "1"}).code == 3);
}
