#pragma once

#include <map>
#include <string>
#include <vector>

#include "rcsp/channel.hpp"
#include "rcsp/config.hpp"
#include "rcsp/program.hpp"

namespace rcsp {
namespace explore {

// Exhaustive enumeration of one channel's protocol automaton up to a clock
// bound, with states folded together when their clocks are order-isomorphic
// (relabeling {0, s.t, r.t} order-preservingly with 0 fixed). Every edge is
// checked for:
//   - the token invariant: whoever holds the token, the shadow bit equals
//     whether the last request was acknowledged (s.t <= r.t),
//   - token movement matching the transition (request passes it over,
//     acknowledgment and refusal pass it back, flagging keeps it put),
//   - the receiver clock never moving backward except on a rewind
//     acknowledgment.
// `fault` omits one acknowledgment's shadow-bit write, which must surface
// as a violation with a concrete path.
struct ProtocolReport {
  size_t states = 0;
  size_t edges = 0;
  std::vector<std::string> violations;
  std::vector<std::string> counterexample;  // transition-labeled path to the first violation
  bool ok() const { return violations.empty(); }
};

Result<ProtocolReport> explore_protocol(Time time_bound, unsigned value_domain_size = 1,
                                        Fault fault = Fault::None);

// State well-formedness. Atomic side: in a forward process (not at a
// backtrack) every channel clock covers the newest checkpoint's saved clock,
// and the process clock covers every adjacent channel clock; checkpoint
// times strictly increase toward the top everywhere. Distributed side: the
// same checks on the image, plus two protocol obligations on the raw state:
// a sender-side retract flag only exists while that sender holds the
// matching in-flight send, and a receiver able to take a value always has
// the sender parked on the in-flight send.
std::vector<std::string> check_invariants(const ConfigHL& c);
std::vector<std::string> check_invariants(const ConfigLL& c);

// Bounded exploration of a whole system under the distributed semantics.
// Every reachable edge is replayed against the atomic image, every state is
// checked for the invariants above, and states with a pending retract
// request whose sender holds the token must offer exactly one of
// {complete, retract}, predicted by the sender's local inference.
struct SystemReport {
  size_t states = 0;
  size_t edges = 0;
  size_t pending_retract_states = 0;  // non-vacuity for the completion dichotomy
  std::map<std::string, size_t> classifications;  // "l2 => h2" -> edge count
  std::vector<std::string> violations;
  std::vector<std::string> deadlocks;  // stuck non-terminal states
  std::vector<std::string> livelocks;  // closed cycles that cannot terminate
  bool ok() const { return violations.empty(); }
};

Result<SystemReport> explore_system(const ConfigLL& start, unsigned depth, unsigned k);
Result<SystemReport> explore_system(const Program& program, unsigned depth, unsigned k);

}  // namespace explore
}  // namespace rcsp
