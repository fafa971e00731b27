#pragma once

#include <string>

#include "rcsp/result.hpp"
#include "rcsp/syntax.hpp"

namespace rcsp {

using Time = unsigned long long;

// Direction tag on a channel half. F: forward communication, B: backward
// (rewind) communication, I: the sender asked to retract a pending forward
// request.
enum class Dir { F, B, I };

char dir_char(Dir d);

// One channel is a pair of single-writer cells plus a shadow bit. The sender
// half is written only by the sending process, the receiver half only by the
// receiving process. The sender holds the transaction token exactly when the
// two alternation bits agree.
struct SenderHalf {
  std::string owner;
  Time t = 0;
  bool b = false;
  Dir d = Dir::F;
  ExprPtr v;  // pending payload, null when none
};

struct ReceiverHalf {
  std::string owner;
  Time t = 0;
  bool b = false;
  Dir d = Dir::F;
};

// The shadow bit mirrors whether the last completed transaction left the
// channel synchronised (receiver acknowledged) or not (receiver refused or a
// retraction was accepted). It exists so the invariant
//   sender holds token  =>  (s.t <= r.t) == sync
// can be stated and checked; the sender reads only its own half plus the
// receiver half, never the bit.
struct ChannelLL {
  SenderHalf s;
  ReceiverHalf r;
  bool sync = true;

  bool sender_holds_token() const { return s.b == r.b; }
};

bool channel_equal(const ChannelLL& a, const ChannelLL& b);

// One line: s=(owner,t,b,d,v) r=(owner,t,b,d) sync=<0|1>
std::string dump(const ChannelLL& c);

// Seeded faults for the protocol checker: each one omits a single sync-bit
// write so the corresponding invariant violation becomes reachable.
enum class Fault { None, T2SkipSync, T5SkipSync, T7SkipSync };

// Protocol transitions. Every guard failure reports NotEnabled; transitions
// never mutate their argument.
//
// Sender-token transitions (s.b == r.b):
//   fwd_request   publish a forward communication at t_new > r.t
//   back_request  ask to rewind the channel to t_new < r.t
// Receiver-token transitions (s.b != r.b):
//   fwd_ack       accept the pending forward offer at t_new >= s.t
//   fwd_refuse    refuse it and signal the sender to back up
//   back_ack      accept a rewind; resume_forward says whether the receiver
//                 will run forward again or keeps backtracking
//   retract_allow accept the sender's retraction; also_back optionally turns
//                 the receiver around
// Token-neutral writes:
//   retract_request sender flags a pending forward offer as withdrawn
//   rcv_signal_back receiver flips its direction to request backtracking
Result<ChannelLL> t1_fwd_request(const ChannelLL& c, Time t_new, ExprPtr v);
Result<ChannelLL> t2_fwd_ack(const ChannelLL& c, Time t_new, Fault fault = Fault::None);
Result<ChannelLL> t3_fwd_refuse(const ChannelLL& c);
Result<ChannelLL> t4_back_request(const ChannelLL& c, Time t_new);
Result<ChannelLL> t5_back_ack(const ChannelLL& c, bool resume_forward,
                              Fault fault = Fault::None);
Result<ChannelLL> t6_retract_request(const ChannelLL& c);
Result<ChannelLL> t7_retract_allow(const ChannelLL& c, bool also_back,
                                   Fault fault = Fault::None);
Result<ChannelLL> t8_rcv_signal_back(const ChannelLL& c);

// What the sender can deduce about the shadow bit from its own observations.
// Only defined while the sender holds the token: a pending offer was either
// acknowledged (r.t caught up to s.t) or rejected/retracted (it did not).
Result<bool> sender_infers_sync(const ChannelLL& c);

}  // namespace rcsp
