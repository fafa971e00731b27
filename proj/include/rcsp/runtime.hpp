#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "rcsp/config.hpp"
#include "rcsp/program.hpp"
#include "rcsp/step.hpp"

namespace rcsp {
namespace rt {

// One rule application as it happened, in global order. The sequence numbers
// come from a shared counter claimed between validating a step and
// publishing it, so replaying the instances in sequence order through the
// single-threaded stepper reconstructs the run.
struct TraceRecord {
  std::uint64_t seq = 0;
  Instance inst;
  Event event;  // silent for bookkeeping steps
};

// Tab-separated "seq kind chan time value proc" with "-" for absent fields.
// Observable kinds: comm, rewind, enter, exit, back, resume. Bookkeeping
// steps render only when verbose is set, as "silent <rule> <proc>".
std::string to_text(const TraceRecord& rec, bool verbose = false);

enum class Outcome { Terminated, Stuck, Timeout };

const char* outcome_name(Outcome o);

struct RunResult {
  Outcome outcome = Outcome::Timeout;
  std::vector<TraceRecord> trace;  // sorted by seq
  ConfigLL final_config;
  std::vector<std::string> notes;
};

// Runs a program with one thread per process. Each channel lives in a single
// atomic control word (both clocks, both bits, both direction flags, the
// shadow bit, and a write version); a step is validated against a snapshot
// of the word and published with a compare-and-swap, so a stale guard simply
// retries. Threads follow the same deterministic policy as the sequential
// stepper; the seed only perturbs thread scheduling, never the choices.
//
// Terminated: every process reduced to a value with no checkpoints left.
// Stuck: all threads idle and no rule applies to the quiesced snapshot.
// Timeout: the deadline passed, or the policy quiesced while steps remain
// enabled that it refuses to take.
Result<RunResult> run_program(const Program& program, std::uint64_t seed,
                              std::chrono::milliseconds timeout);

}  // namespace rt
}  // namespace rcsp
