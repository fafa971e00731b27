#pragma once

#include <optional>
#include <vector>

#include "rcsp/config.hpp"
#include "rcsp/step.hpp"

namespace rcsp {
namespace ll {

struct Step {
  ConfigLL config;
  Event event;
};

// Distributed semantics. Every rule touches one process and at most the
// halves of its own channels; partner halves are only read. Committed
// channel time is the receiver half's clock.

// The receiver half's clock for each channel the process touches.
std::map<std::string, Time> clocks_for(const ConfigLL& c, const std::string& proc);

// Forward handshake: request, acknowledge (the observable communication),
// complete.
Result<Step> l1_send_init(const ConfigLL& c, const std::string& proc,
                          const std::string& chan, Time t_new);
Result<Step> l2_recv_ack(const ConfigLL& c, const std::string& proc,
                         const std::string& chan, Time t_new);
Result<Step> l3_send_complete(const ConfigLL& c, const std::string& proc,
                              const std::string& chan);

// Backward phase: a backtracking receiver refuses a pending offer, a
// backtracking sender rewinds the channel, the receiver acknowledges the
// rewind (the observable retraction), or signals that it wants one.
Result<Step> l4_fwd_refuse(const ConfigLL& c, const std::string& proc,
                           const std::string& chan);
Result<Step> l5_back_init(const ConfigLL& c, const std::string& proc,
                          const std::string& chan, Time t_new);
Result<Step> l6_back_ack(const ConfigLL& c, const std::string& proc,
                         const std::string& chan);
Result<Step> l7_rcv_signal(const ConfigLL& c, const std::string& proc,
                           const std::string& chan);

// Retraction of a committed forward request: ask, allow, return to the
// plain send. Completing or abandoning a request also clears the sender's
// request flag, keeping the flag's meaning "a withdrawal is pending".
Result<Step> l8_retract_request(const ConfigLL& c, const std::string& proc,
                                const std::string& chan);
Result<Step> l9_retract_allow(const ConfigLL& c, const std::string& proc,
                              const std::string& chan, bool also_back);
Result<Step> l10_retract_complete(const ConfigLL& c, const std::string& proc,
                                  const std::string& chan);

// Process-local rules adopted from the atomic semantics; channel clocks are
// read as the receiver half's time. Spontaneous backtrack additionally
// requires the redex not be an in-flight send, and resuming requires the
// checkpoint's channels quiescent: send halves with the token and the saved
// clock equal to the committed one, receive halves not flagged backward.
Result<Step> h1_local(const ConfigLL& c, const std::string& proc);
Result<Step> h3_enter(const ConfigLL& c, const std::string& proc, Time t_new);
Result<Step> h4_exit(const ConfigLL& c, const std::string& proc);
Result<Step> h5_spont(const ConfigLL& c, const std::string& proc);
Result<Step> h7_pop(const ConfigLL& c, const std::string& proc);
Result<Step> h8_resume(const ConfigLL& c, const std::string& proc);

Result<Step> apply(const ConfigLL& c, const Instance& inst);

// Every rule instance applicable in c, in deterministic order. Timestamp
// choices range over the k smallest fresh values; rewind targets range over
// the sender's checkpointed clocks plus zero.
std::vector<Instance> enabled(const ConfigLL& c, unsigned k);

// One process's local picture: its state plus snapshots of the channels it
// touches. The threaded runtime builds the same view from shared cells, so
// scheduling decisions are identical in both execution modes.
struct ChanView {
  std::string name;
  bool is_sender;
  ChannelLL ch;
};

// Deterministic scheduling decision for one process: unwinding first (pop,
// resume, then channel engagement in name order), cooperation when a
// partner signals backward, forward steps at the smallest fresh clock.
// Spontaneous backtrack fires only on a visible partner signal.
std::optional<Instance> policy_action(const ProcState& p,
                                      const std::vector<ChanView>& chans);

// policy_action over a full configuration.
std::optional<Instance> policy_action(const ConfigLL& c, const std::string& proc);

struct Run {
  ConfigLL config;
  std::vector<Event> events;
  std::vector<Instance> steps;
  bool terminated = false;
};

// Round-robin driver over policy_action, processes in name order.
Run run_deterministic(const ConfigLL& start, size_t max_steps = 10000);

}  // namespace ll
}  // namespace rcsp
