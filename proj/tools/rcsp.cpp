#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcsp/explore.hpp"
#include "rcsp/program.hpp"
#include "rcsp/refine.hpp"
#include "rcsp/runtime.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitStuck = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitNoInput = 66;

int load_program(const std::string& path, rcsp::Program& out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kExitNoInput;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = rcsp::parse_program(buf.str());
  if (!parsed) {
    std::cerr << path << ": " << parsed.error().to_text() << "\n";
    return kExitParse;
  }
  out = std::move(*parsed);
  return 0;
}

void write_report(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversible message-passing interpreter and checkers"};
  app.require_subcommand(1);

  std::string file;
  std::string report_path;
  unsigned long long seed = 0;
  unsigned timeout_ms = 10000;
  bool verbose = false;
  unsigned depth = 40;
  unsigned k = 1;
  unsigned long long time_bound = 4;
  unsigned values = 1;
  std::string fault;

  auto* parse_cmd = app.add_subcommand("parse", "parse a program and echo it back");
  parse_cmd->add_option("file", file)->required();

  auto* run_cmd = app.add_subcommand("run", "run a program on the threaded runtime");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--seed", seed, "scheduling jitter seed");
  run_cmd->add_option("--timeout", timeout_ms, "wall clock budget in milliseconds");
  run_cmd->add_flag("--verbose", verbose, "include bookkeeping steps in the trace");

  auto* explore_cmd = app.add_subcommand("explore", "enumerate reachable states");
  explore_cmd->add_option("file", file)->required();
  explore_cmd->add_option("--depth", depth, "exploration depth");
  explore_cmd->add_option("--k", k, "clock choices per rule");
  explore_cmd->add_option("--report", report_path, "write a JSON report");

  auto* proto_cmd = app.add_subcommand("check-protocol", "verify the channel protocol");
  proto_cmd->add_option("--time-bound", time_bound, "largest clock value to enumerate");
  proto_cmd->add_option("--values", values, "payload domain size");
  proto_cmd->add_option("--fault", fault, "drop one shadow-bit write: t2, t5 or t7");
  proto_cmd->add_option("--report", report_path, "write a JSON report");

  auto* refine_cmd =
      app.add_subcommand("check-refinement", "replay every reachable step on the image");
  refine_cmd->add_option("file", file)->required();
  refine_cmd->add_option("--depth", depth, "exploration depth");
  refine_cmd->add_option("--k", k, "clock choices per rule");
  refine_cmd->add_option("--report", report_path, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (parse_cmd->parsed()) {
    rcsp::Program prog;
    if (int rc = load_program(file, prog)) return rc;
    std::cout << rcsp::to_text(prog) << "\n";
    return 0;
  }

  if (run_cmd->parsed()) {
    rcsp::Program prog;
    if (int rc = load_program(file, prog)) return rc;
    auto res = rcsp::rt::run_program(prog, seed, std::chrono::milliseconds(timeout_ms));
    if (!res) {
      std::cerr << res.error().to_text() << "\n";
      return kExitUsage;
    }
    for (const auto& rec : res->trace) {
      std::string line = rcsp::rt::to_text(rec, verbose);
      if (!line.empty()) std::cout << line << "\n";
    }
    for (const auto& note : res->notes) std::cerr << note << "\n";
    std::cout << "outcome: " << rcsp::rt::outcome_name(res->outcome) << "\n";
    switch (res->outcome) {
      case rcsp::rt::Outcome::Terminated: return 0;
      case rcsp::rt::Outcome::Timeout: return kExitTimeout;
      case rcsp::rt::Outcome::Stuck: return kExitStuck;
    }
    return 0;
  }

  if (explore_cmd->parsed() || refine_cmd->parsed()) {
    rcsp::Program prog;
    if (int rc = load_program(file, prog)) return rc;
    auto rep = rcsp::explore::explore_system(prog, depth, k);
    if (!rep) {
      std::cerr << rep.error().to_text() << "\n";
      return kExitUsage;
    }
    std::cout << "states: " << rep->states << "\nedges: " << rep->edges << "\n";
    for (const auto& [line, count] : rep->classifications)
      std::cout << "per-step " << line << ": " << count << "\n";
    std::cout << "pending-retract states: " << rep->pending_retract_states << "\n";
    std::cout << "deadlocks: " << rep->deadlocks.size()
              << "\nlivelocks: " << rep->livelocks.size() << "\n";
    for (const auto& d : rep->deadlocks) std::cout << "deadlock:\n  " << d << "\n";
    for (const auto& l : rep->livelocks) std::cout << "livelock: " << l << "\n";
    for (const auto& v : rep->violations) std::cout << "violation: " << v << "\n";
    nlohmann::json j{{"states", rep->states},
                     {"edges", rep->edges},
                     {"pending_retract_states", rep->pending_retract_states},
                     {"classifications", rep->classifications},
                     {"violations", rep->violations},
                     {"deadlocks", rep->deadlocks},
                     {"livelocks", rep->livelocks}};
    write_report(report_path, j);
    std::cout << (rep->ok() ? "result: pass" : "result: fail") << "\n";
    return rep->ok() ? 0 : kExitViolation;
  }

  if (proto_cmd->parsed()) {
    rcsp::Fault f = rcsp::Fault::None;
    if (fault == "t2")
      f = rcsp::Fault::T2SkipSync;
    else if (fault == "t5")
      f = rcsp::Fault::T5SkipSync;
    else if (fault == "t7")
      f = rcsp::Fault::T7SkipSync;
    else if (!fault.empty()) {
      std::cerr << "unknown fault " << fault << "\n";
      return kExitUsage;
    }
    auto rep = rcsp::explore::explore_protocol(time_bound, values, f);
    if (!rep) {
      std::cerr << rep.error().to_text() << "\n";
      return kExitUsage;
    }
    std::cout << "states: " << rep->states << "\nedges: " << rep->edges << "\n";
    for (const auto& v : rep->violations) std::cout << "violation: " << v << "\n";
    for (const auto& line : rep->counterexample) std::cout << "  " << line << "\n";
    nlohmann::json j{{"states", rep->states},
                     {"edges", rep->edges},
                     {"violations", rep->violations},
                     {"counterexample", rep->counterexample}};
    write_report(report_path, j);
    std::cout << (rep->ok() ? "result: pass" : "result: fail") << "\n";
    return rep->ok() ? 0 : kExitViolation;
  }

  return kExitUsage;
}
