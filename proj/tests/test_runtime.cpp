#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "rcsp/config.hpp"
#include "rcsp/explore.hpp"
#include "rcsp/program.hpp"
#include "rcsp/refine.hpp"
#include "rcsp/runtime.hpp"

using namespace rcsp;
using namespace std::chrono_literals;

namespace {

std::vector<std::string> observable(const rt::RunResult& run) {
  std::vector<std::string> out;
  for (const auto& rec : run.trace)
    if (rec.event.kind != Event::Kind::Silent) out.push_back(to_text(rec.event));
  return out;
}

rt::RunResult must_run(const Program& prog, std::uint64_t seed,
                       std::chrono::milliseconds budget = 10000ms) {
  auto run = rt::run_program(prog, seed, budget);
  REQUIRE(run.ok());
  return std::move(*run);
}

}  // namespace

TEST_CASE("the backtracking program terminates with the same observable trace on every seed") {
  auto prog = testutil::load_program("fig1.rcsp");
  const std::vector<std::string> golden = {"comm c@3 2", "comm c@5 2",  "rewind c@0",
                                           "comm c@3 2", "comm c@5 2", "comm c@6 0"};
  for (std::uint64_t seed : {1, 2, 3, 17, 42}) {
    CAPTURE(seed);
    auto run = must_run(prog, seed);
    CHECK(run.outcome == rt::Outcome::Terminated);
    CHECK(observable(run) == golden);
    CHECK(is_terminated(run.final_config));
    CHECK(explore::check_invariants(run.final_config).empty());
    CHECK(run.notes.empty());
  }
}

TEST_CASE("every concurrent schedule replays through the sequential stepper") {
  for (const char* name : {"fig1.rcsp", "fig1_noback.rcsp", "chain3.rcsp"}) {
    CAPTURE(name);
    auto prog = testutil::load_program(name);
    for (std::uint64_t seed : {5, 6}) {
      CAPTURE(seed);
      auto run = must_run(prog, seed);
      REQUIRE(run.outcome == rt::Outcome::Terminated);
      std::vector<Instance> schedule;
      for (const auto& rec : run.trace) schedule.push_back(rec.inst);
      auto replay = refine::check_trace(initial_ll(prog), schedule);
      CHECK(replay.ok);
      CHECK(replay.violations.empty());
      CHECK(replay.lines.size() == schedule.size());
    }
  }
}

TEST_CASE("the straight-line variant never rewinds") {
  auto prog = testutil::load_program("fig1_noback.rcsp");
  auto run = must_run(prog, 9);
  CHECK(run.outcome == rt::Outcome::Terminated);
  CHECK(observable(run) == std::vector<std::string>{"comm c@3 2", "comm c@5 2"});
  CHECK(run.final_config.find_proc("p1")->time == 5);
  CHECK(run.final_config.find_proc("p2")->time == 5);
  for (const auto& rec : run.trace) CHECK(rec.event.kind != Event::Kind::Rewind);
}

TEST_CASE("values relay across two channels") {
  auto prog = testutil::load_program("chain3.rcsp");
  auto run = must_run(prog, 11);
  CHECK(run.outcome == rt::Outcome::Terminated);
  CHECK(observable(run) == std::vector<std::string>{"comm c1@3 3", "comm c2@4 13"});
  CHECK(expr_equal(run.final_config.find_proc("p3")->expr, mk::integer(13)));
}

TEST_CASE("a receiver whose peer finishes first parks as stuck") {
  auto prog = testutil::load_program("stuck.rcsp");
  auto run = must_run(prog, 1);
  CHECK(run.outcome == rt::Outcome::Stuck);
  CHECK_FALSE(is_terminated(run.final_config));
}

TEST_CASE("a sender the policy refuses to retract shows up as a timeout with a note") {
  auto prog = testutil::load_program("mismatch.rcsp");
  auto run = must_run(prog, 1, 2000ms);
  CHECK(run.outcome == rt::Outcome::Timeout);
  std::string all;
  for (const auto& n : run.notes) all += n + "\n";
  CHECK(all.find("policy quiescent with steps still enabled") != std::string::npos);
  CHECK(all.find("l8") != std::string::npos);
}

TEST_CASE("a diverging process hits the deadline") {
  auto prog = testutil::load_program("loop.rcsp");
  auto run = must_run(prog, 1, 300ms);
  CHECK(run.outcome == rt::Outcome::Timeout);
}

TEST_CASE("self-connected channels are rejected before any thread starts") {
  auto prog = parse_program("(system (chan c p1 p1) (proc p1 (send c 1)))");
  REQUIRE(prog.ok());
  auto run = rt::run_program(*prog, 1, 1000ms);
  REQUIRE_FALSE(run.ok());
  CHECK(run.code() == Errc::SpawnFailure);
}

TEST_CASE("trace records render one tab-separated line per observable step") {
  rt::TraceRecord comm{3, Instance{Rule::L2, "p2", "c", 6, {}},
                       Event::comm("c", 6, mk::integer(10))};
  CHECK(rt::to_text(comm) == "3\tcomm\tc\t6\t10\tp2");

  rt::TraceRecord rew{7, Instance{Rule::L6, "p1", "c", 2, {}}, Event::rewind("c", 2)};
  CHECK(rt::to_text(rew) == "7\trewind\tc\t2\t-\tp1");

  rt::TraceRecord enter{5, Instance{Rule::H3, "p1", "", 4, {}}, Event::silent()};
  CHECK(rt::to_text(enter) == "5\tenter\t-\t4\t-\tp1");

  rt::TraceRecord exit{6, Instance{Rule::H4, "p1", "", {}, {}}, Event::silent()};
  CHECK(rt::to_text(exit) == "6\texit\t-\t-\t-\tp1");

  rt::TraceRecord back{8, Instance{Rule::H5, "p2", "", {}, {}}, Event::silent()};
  CHECK(rt::to_text(back) == "8\tback\t-\t-\t-\tp2");

  rt::TraceRecord res{9, Instance{Rule::H8, "p2", "", {}, {}}, Event::silent()};
  CHECK(rt::to_text(res) == "9\tresume\t-\t-\t-\tp2");

  rt::TraceRecord quiet{1, Instance{Rule::H1, "p1", "", {}, {}}, Event::silent()};
  CHECK(rt::to_text(quiet) == "");
  CHECK(rt::to_text(quiet, true) == "silent h1 p1");

  rt::TraceRecord wire{2, Instance{Rule::L1, "p1", "c", 6, {}}, Event::silent()};
  CHECK(rt::to_text(wire, true) == "silent l1 p1");
}
