#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  RunResult res;
  std::string cmd = std::string(PERMDYN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) res.output += buf;
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("census pins: S4 tight at 1/4, D4 slack at 1/2") {
  RunResult s4 = run_cli("census S4");
  CHECK(s4.exit_code == 0);
  CHECK(contains(s4.output, "proportion 1/4"));
  CHECK(contains(s4.output, "tightest bound 1/4"));
  CHECK(contains(s4.output, "bound holds"));

  RunResult d4 = run_cli("census D4");
  CHECK(d4.exit_code == 0);
  CHECK(contains(d4.output, "proportion 1/4"));
  CHECK(contains(d4.output, "tightest bound 1/2"));
}

TEST_CASE("census diagnostics and resource exits") {
  RunResult unknown = run_cli("census NotAGroup");
  CHECK(unknown.exit_code == 2);
  CHECK(contains(unknown.output, "catalog"));

  std::ofstream("cli_bad_spec.json") << "{\"name\": 3}";
  RunResult bad = run_cli("census cli_bad_spec.json");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.output, "error"));

  // M23 is order-only; an exact census is out of reach by construction.
  RunResult m23 = run_cli("census M23");
  CHECK(m23.exit_code == 3);
}

TEST_CASE("census accepts a generator document path") {
  // C4 as an explicit document
  std::ofstream("cli_c4_spec.json")
      << R"({"name":"C4-doc","degree":4,"generators":[[1,2,3,0]]})";
  RunResult r = run_cli("census cli_c4_spec.json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "C4-doc"));
  CHECK(contains(r.output, "proportion 1/2"));
}

TEST_CASE("wreath census equals the product formula") {
  RunResult r = run_cli("wreath C2 C2 C2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "degree 8"));
  CHECK(contains(r.output, "16/128"));
  CHECK(contains(r.output, "1/8"));
  CHECK(contains(r.output, "census matches formula"));

  RunResult big = run_cli("wreath S8 S8");
  CHECK(big.exit_code == 3);
}

TEST_CASE("wreath subkernel mode censuses cosets") {
  RunResult r = run_cli("wreath C3 --subkernel 2 --trials 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "full kernel"));
  CHECK(contains(r.output, "all coset censuses within the claimed bound"));

  RunResult two = run_cli("wreath C3 C3 --subkernel 2");
  CHECK(two.exit_code == 2);
}

TEST_CASE("cmax table hits the power-of-two equalities") {
  RunResult r = run_cli("cmax 1..32");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "c=32768  = 2^(n-1)"));
  CHECK(contains(r.output, "all c(n) within 2^(n-1)"));

  RunResult bad = run_cli("cmax 0..3");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("scan, report files, and compare round trip") {
  RunResult scan = run_cli("scan -f \"1 0 1\" -a 0 --primes 2000 --depth 3 --out cli_scan.json");
  CHECK(scan.exit_code == 0);
  CHECK(contains(scan.output, "depth 3:"));

  auto doc = nlohmann::json::parse(slurp("cli_scan.json"));
  CHECK(doc["prime_bound"] == 2000);
  CHECK(doc["survival"].size() == 3);
  CHECK(doc.contains("content_hash"));

  RunResult ok = run_cli("compare cli_scan.json --candidates \"1/2,1/4,1/8\"");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "no deviation beyond 4 sigma"));

  RunResult flagged = run_cli("compare cli_scan.json --candidates \"1,1/4,1/8\"");
  CHECK(flagged.exit_code == 1);
  CHECK(contains(flagged.output, "FLAGGED"));

  RunResult mismatch = run_cli("compare cli_scan.json --candidates \"1/2\"");
  CHECK(mismatch.exit_code == 2);
}

TEST_CASE("scan csv format and worker determinism") {
  RunResult csv = run_cli(
      "scan -f \"-2 0 1\" -a 0 --primes 500 --depth 2 --format csv --out cli_scan.csv");
  CHECK(csv.exit_code == 0);
  std::string body = slurp("cli_scan.csv");
  CHECK(body.rfind("p,depth,reason\n", 0) == 0);
  CHECK(contains(body, "7,0,reducible@1"));

  RunResult w1 = run_cli("scan -f \"1 0 1\" -a 0 --primes 1000 --depth 2 --out cli_w1.json");
  RunResult w4 =
      run_cli("scan -f \"1 0 1\" -a 0 --primes 1000 --depth 2 --workers 4 --out cli_w4.json");
  CHECK(w1.exit_code == 0);
  CHECK(w4.exit_code == 0);
  auto d1 = nlohmann::json::parse(slurp("cli_w1.json"));
  auto d4 = nlohmann::json::parse(slurp("cli_w4.json"));
  d1.erase("generated_at");
  d4.erase("generated_at");
  CHECK(d1 == d4);  // content hash included: identical modulo timestamp
}

TEST_CASE("scan validates before computing") {
  CHECK(run_cli("scan -f \"1 0 1\" -a 0 --primes 50 --depth 2").exit_code == 2);
  CHECK(run_cli("scan -f \"3\" -a 0 --primes 500 --depth 2").exit_code == 2);  // degree < 2
  CHECK(run_cli("scan -f \"1 0 1\" -a 0 --primes 100000000 --depth 12").exit_code == 3);
  // failed runs must not leave an output file behind
  CHECK(run_cli("scan -f \"3\" -a 0 --primes 500 --depth 2 --out cli_never.json").exit_code == 2);
  CHECK_FALSE(std::ifstream("cli_never.json").good());
}

TEST_CASE("catalog lists the bundled groups") {
  RunResult r = run_cli("catalog");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "M23"));
  CHECK(contains(r.output, "PGL(2,8)"));
  CHECK(contains(r.output, "degree 23"));

  RunResult none = run_cli("");
  CHECK(none.exit_code == 2);
}

TEST_SUITE_END();
