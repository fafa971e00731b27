#pragma once

#include <optional>
#include <string>

#include "rcsp/channel.hpp"
#include "rcsp/syntax.hpp"

namespace rcsp {

// Rule identifiers across both semantics. The atomic rules H1..H8 also name
// the local steps the distributed semantics adopts unchanged (expression
// reduction, region enter/exit, spontaneous backtrack, checkpoint pop,
// resume); L1..L10 are the distributed channel-interaction rules.
enum class Rule {
  H1,
  H2,
  H3,
  H4,
  H5,
  H6,
  H7,
  H8,
  L1,
  L2,
  L3,
  L4,
  L5,
  L6,
  L7,
  L8,
  L9,
  L10,
};

const char* rule_name(Rule r);

// Observable labels. Comm is a completed forward communication, Rewind the
// completed reversal of one. Everything else is silent.
struct Event {
  enum class Kind { Silent, Comm, Rewind } kind = Kind::Silent;
  std::string chan;
  Time time = 0;
  ExprPtr value;  // Comm only

  static Event silent() { return Event{}; }
  static Event comm(std::string chan, Time t, ExprPtr v) {
    return Event{Kind::Comm, std::move(chan), t, std::move(v)};
  }
  static Event rewind(std::string chan, Time t) {
    return Event{Kind::Rewind, std::move(chan), t, nullptr};
  }
};

bool event_equal(const Event& a, const Event& b);
std::string to_text(const Event& e);

// One concrete rule application: which rule, at which process, over which
// channel, with the chosen time or policy flag when the rule has one. The
// explorer enumerates instances, appliers execute them, the refinement
// checker replays them.
struct Instance {
  Rule rule;
  std::string proc;
  std::string chan;
  std::optional<Time> time;
  std::optional<bool> flag;
};

std::string to_text(const Instance& i);
bool instance_equal(const Instance& a, const Instance& b);

}  // namespace rcsp
