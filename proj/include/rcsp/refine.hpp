#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcsp/config.hpp"
#include "rcsp/program.hpp"
#include "rcsp/step.hpp"

namespace rcsp {
namespace refine {

// Abstraction from the distributed semantics to the atomic one. Protocol
// fields vanish; the receiver's clock becomes the channel clock. A process
// holding an in-flight send maps to the plain send while the request is
// unanswered (bits differ, or the requested time is still ahead of the
// receiver) and to the completed send otherwise, in which case its clock is
// pulled up to the receiver's, matching where the atomic step would have
// left it.
Result<ConfigHL> map_config(const ConfigLL& c);

struct Classification {
  Rule ll_rule;
  std::optional<Rule> hl_rule;  // empty means stutter
};

std::string to_text(const Classification& cl);  // "l2 => h2", "l1 => stutter"

// Checks one distributed step against its image: stutter steps must leave
// the image untouched and silent, the rest must replay as the matching
// atomic rule with the identical event. Mismatches come back as errors.
Result<Classification> classify_step(const ConfigLL& pre, const Instance& inst,
                                     const ConfigLL& post, const Event& event);

struct TraceReport {
  bool ok = true;
  std::vector<std::string> lines;        // one "<rule> => <image>" per step
  std::vector<std::string> violations;   // empty when ok
  std::vector<Instance> counterexample;  // minimized schedule, empty when ok
};

// Replays a schedule through the distributed stepper, classifying every
// step. On failure the schedule is shrunk by greedily dropping stutter
// steps that are not needed to reproduce the violation.
TraceReport check_trace(const ConfigLL& start, const std::vector<Instance>& schedule);
TraceReport check_trace(const Program& program, const std::vector<Instance>& schedule);

}  // namespace refine
}  // namespace rcsp
