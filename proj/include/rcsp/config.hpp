#pragma once

#include <map>
#include <string>
#include <vector>

#include "rcsp/channel.hpp"
#include "rcsp/eval.hpp"
#include "rcsp/program.hpp"
#include "rcsp/result.hpp"
#include "rcsp/syntax.hpp"

namespace rcsp {

// One checkpoint on a process stack: the continuation around the region
// application (its hole sits where the region argument was, so resuming
// re-applies the whole region), the argument to hand back on resume, the
// process time at entry, and the times of this process's channels at entry.
struct Frame {
  EvalContext cont;
  ExprPtr resume_value;
  Time time = 0;
  std::map<std::string, Time> saved;
};

bool frame_equal(const Frame& a, const Frame& b);

struct ProcState {
  std::string id;
  Time time = 0;
  std::vector<Frame> stack;
  ExprPtr expr;
};

bool proc_equal(const ProcState& a, const ProcState& b);

// Atomic-semantics channel: a single shared clock between its two endpoints.
struct ChanHL {
  std::string sender;
  std::string receiver;
  Time time = 0;
};

struct ConfigHL {
  std::map<std::string, ChanHL> channels;
  std::vector<ProcState> procs;  // sorted by id

  ProcState* find_proc(const std::string& id);
  const ProcState* find_proc(const std::string& id) const;
};

struct ConfigLL {
  std::map<std::string, ChannelLL> channels;
  std::vector<ProcState> procs;  // sorted by id

  ProcState* find_proc(const std::string& id);
  const ProcState* find_proc(const std::string& id) const;
};

bool config_equal(const ConfigHL& a, const ConfigHL& b);
bool config_equal(const ConfigLL& a, const ConfigLL& b);

// Every process body runs inside an implicit outermost checkpoint, so a
// process can always cooperate with a peer's rewind even before it enters
// any region of its own: the initial expression applies a region wrapping
// the body to unit.
ExprPtr wrap_body(const ExprPtr& body);

ConfigHL initial_hl(const Program& p);
ConfigLL initial_ll(const Program& p);

// Channel names owned by a process (the ones it is an endpoint of), sorted.
std::vector<std::string> channels_of(const ConfigHL& c, const std::string& proc);
std::vector<std::string> channels_of(const ConfigLL& c, const std::string& proc);

// Canonical rendering, one channel or process per line. Used for golden
// tests and as the visited-set key during exploration.
std::string to_text(const Frame& f);
std::string to_text(const ConfigHL& c);
std::string to_text(const ConfigLL& c);

// A configuration is terminated when every process has reduced to a value
// and holds no checkpoints.
bool is_terminated(const ConfigHL& c);
bool is_terminated(const ConfigLL& c);

}  // namespace rcsp
