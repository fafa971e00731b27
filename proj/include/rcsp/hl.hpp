#pragma once

#include <vector>

#include "rcsp/config.hpp"
#include "rcsp/step.hpp"

namespace rcsp {
namespace hl {

struct Step {
  ConfigHL config;
  Event event;
};

// Atomic semantics. Communication and rewinding touch both endpoints in one
// step; the channel state is a single shared clock.

// Expression reduction inside one process.
Result<Step> h1_local(const ConfigHL& c, const std::string& proc);

// Synchronous communication: sender at a send, receiver at a matching
// receive, both clocks and the channel clock jump to t_new, which must lie
// strictly past both process clocks. Emits the communication event.
Result<Step> h2_comm(const ConfigHL& c, const std::string& chan, Time t_new);

// Region entry at t_new > the process clock; checkpoints current channel
// clocks.
Result<Step> h3_enter(const ConfigHL& c, const std::string& proc, Time t_new);

// Region exit; drops the matching checkpoint.
Result<Step> h4_exit(const ConfigHL& c, const std::string& proc);

// Spontaneous backtrack: the whole expression becomes a backtrack carrying
// the newest checkpoint's resume argument.
Result<Step> h5_spont(const ConfigHL& c, const std::string& proc);

// Rewind one channel to t_new below its clock. Both endpoints must already
// be backtracking; nothing else changes. Emits the rewind event.
Result<Step> h6_rewind(const ConfigHL& c, const std::string& chan, Time t_new);

// While backtracking, drop a checkpoint ahead of some channel clock.
Result<Step> h7_pop(const ConfigHL& c, const std::string& proc);

// Resume from a checkpoint whose saved clocks all match; control re-applies
// the region to the backtrack's argument.
Result<Step> h8_resume(const ConfigHL& c, const std::string& proc);

Result<Step> apply(const ConfigHL& c, const Instance& inst);

// Channel clocks visible to one process, keyed by channel name.
std::map<std::string, Time> clocks_for(const ConfigHL& c, const std::string& proc);

struct Run {
  ConfigHL config;
  std::vector<Event> events;      // observable only
  std::vector<Instance> steps;    // every rule application in order
  bool terminated = false;
};

// Deterministic scheduler used by tests and the reference traces: round
// robin over processes in name order; unwinding (pop, resume, rewind) takes
// priority, a peer holding a checkpoint is forced to cooperate when its
// partner needs a channel rewound, forward steps pick the smallest fresh
// clock value.
Run run_deterministic(const ConfigHL& start, size_t max_steps = 10000);

}  // namespace hl
}  // namespace rcsp
