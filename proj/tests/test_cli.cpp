#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "helpers.hpp"
#include "rcsp/program.hpp"

namespace {

struct CliResult {
  int status = -1;
  std::string out;  // stdout and stderr interleaved
};

CliResult cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

std::string prog(const std::string& name) {
  return std::string(PROGRAMS_DIR) + "/" + name;
}

bool has(const CliResult& r, const std::string& needle) {
  return r.out.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("run exit codes mirror the outcome") {
  auto ok = cli("run " + prog("fig1.rcsp"));
  CHECK(ok.status == 0);
  CHECK(has(ok, "outcome: terminated"));
  CHECK(has(ok, "comm\tc\t3\t2"));
  CHECK(has(ok, "rewind\tc\t0"));

  auto stuck = cli("run " + prog("stuck.rcsp"));
  CHECK(stuck.status == 3);
  CHECK(has(stuck, "outcome: stuck"));

  auto loop = cli("run --timeout 300 " + prog("loop.rcsp"));
  CHECK(loop.status == 2);
  CHECK(has(loop, "outcome: timeout"));

  auto mism = cli("run --timeout 1000 " + prog("mismatch.rcsp"));
  CHECK(mism.status == 2);
  CHECK(has(mism, "policy quiescent with steps still enabled"));
}

TEST_CASE("verbose runs include the bookkeeping steps") {
  auto quiet = cli("run " + prog("fig1_noback.rcsp"));
  CHECK(quiet.status == 0);
  CHECK_FALSE(has(quiet, "silent"));

  auto loud = cli("run --verbose " + prog("fig1_noback.rcsp"));
  CHECK(loud.status == 0);
  CHECK(has(loud, "silent l1 p1"));
  CHECK(has(loud, "silent l3 p1"));
}

TEST_CASE("parse echoes the program back") {
  auto res = cli("parse " + prog("chain3.rcsp"));
  CHECK(res.status == 0);

  std::ifstream in(prog("chain3.rcsp"));
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = rcsp::parse_program(buf.str());
  REQUIRE(parsed.ok());
  CHECK(res.out == rcsp::to_text(*parsed) + "\n");
}

TEST_CASE("input problems get distinct exit codes") {
  CHECK(cli("parse /nonexistent/nope.rcsp").status == 66);

  std::string bad = "/tmp/rcsp_cli_bad.rcsp";
  std::ofstream(bad) << "(system (proc p1";
  auto res = cli("parse " + bad);
  CHECK(res.status == 65);
  std::remove(bad.c_str());

  CHECK(cli("").status == 64);
  CHECK(cli("frobnicate").status == 64);
  CHECK(cli("run").status == 64);
  CHECK(cli("explore --depth 1000 " + prog("fig1.rcsp")).status == 64);
  CHECK(cli("check-protocol --fault bogus").status == 64);
}

TEST_CASE("protocol checking passes clean and fails under an injected fault") {
  auto clean = cli("check-protocol");
  CHECK(clean.status == 0);
  CHECK(has(clean, "states: 65"));
  CHECK(has(clean, "edges: 210"));
  CHECK(has(clean, "result: pass"));

  auto faulty = cli("check-protocol --fault t5");
  CHECK(faulty.status == 1);
  CHECK(has(faulty, "result: fail"));
  CHECK(has(faulty, "violation: "));
  CHECK(has(faulty, "  init: "));
  CHECK(has(faulty, "t5 back -> "));
}

TEST_CASE("exploration prints the reachability summary") {
  auto res = cli("explore --depth 40 --k 1 " + prog("fig1.rcsp"));
  CHECK(res.status == 0);
  CHECK(has(res, "states: 1653"));
  CHECK(has(res, "edges: 3788"));
  CHECK(has(res, "pending-retract states: 139"));
  CHECK(has(res, "deadlocks: 6"));
  CHECK(has(res, "livelocks: 8"));
  CHECK(has(res, "result: pass"));

  auto refinement = cli("check-refinement --depth 40 --k 1 " + prog("fig1.rcsp"));
  CHECK(refinement.status == 0);
  CHECK(has(refinement, "per-step l2 => h2: "));
  CHECK(has(refinement, "per-step l6 => h6: "));
  CHECK(has(refinement, "result: pass"));
}

TEST_CASE("reports serialize to json") {
  std::string path = "/tmp/rcsp_cli_report.json";
  auto res = cli("check-protocol --report " + path);
  CHECK(res.status == 0);

  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["states"] == 65);
  CHECK(j["edges"] == 210);
  CHECK(j["violations"].empty());
  std::remove(path.c_str());

  std::string sys_path = "/tmp/rcsp_cli_system.json";
  auto sys = cli("explore --depth 40 --k 1 --report " + sys_path + " " + prog("fig1.rcsp"));
  CHECK(sys.status == 0);
  std::ifstream sin(sys_path);
  REQUIRE(sin.good());
  nlohmann::json js = nlohmann::json::parse(sin);
  CHECK(js["states"] == 1653);
  CHECK(js["pending_retract_states"] == 139);
  CHECK(js["classifications"].contains("l2 => h2"));
  std::remove(sys_path.c_str());
}
