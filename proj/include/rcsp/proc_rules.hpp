#pragma once

#include <map>
#include <string>

#include "rcsp/config.hpp"
#include "rcsp/result.hpp"

namespace rcsp {

// Process-local rule cores shared by the atomic semantics, the distributed
// semantics, and the threaded runtime. Each takes the process state by value
// and returns the successor; channel effects stay with the caller.
//
// `times` arguments map each channel the process is an endpoint of to that
// channel's current global time (atomic semantics: the channel clock;
// distributed semantics: the receiver half's time, which is the
// authoritative committed value).

// Beta reduction or primitive application at the redex.
Result<ProcState> local_step(const ProcState& p);

// Enter a region: push a checkpoint whose continuation re-applies the region
// function, substitute the argument into its body, advance the process clock
// to t_new (strictly past the current one), and record `times` as the saved
// channel clocks.
Result<ProcState> enter_stable(const ProcState& p, Time t_new,
                               const std::map<std::string, Time>& times);

// Leave a region whose body finished: drop the matching checkpoint; clock
// unchanged. An active region marker with no checkpoint underneath is a
// broken state and reports EmptyStack.
Result<ProcState> exit_stable(const ProcState& p);

// Abandon the current attempt wholesale: the whole expression becomes a
// backtrack carrying the most recent checkpoint's resume argument. The
// checkpoint stays; only a completed rewind consumes it.
Result<ProcState> spont_backtrack(const ProcState& p);

// While unwinding, drop a checkpoint that lies in the future of some channel
// (its saved clock is above that channel's current time).
Result<ProcState> pop_frame(const ProcState& p, const std::map<std::string, Time>& times);

// A process can resume when it sits at a backtrack, has a checkpoint, and
// every channel clock matches the checkpoint exactly.
bool can_resume(const ProcState& p, const std::map<std::string, Time>& times);

// Consume the top checkpoint: plug the backtrack's argument into the saved
// continuation and restore the saved process clock.
Result<ProcState> resume(const ProcState& p, const std::map<std::string, Time>& times);

// Where a deliberate backtrack rewinds a channel to: the clock saved in the
// checkpoint directly below the current region's (the region being abandoned
// re-runs; everything older is kept), or 0 with fewer than two checkpoints.
Time rewind_target(const ProcState& p, const std::string& chan);

// The saved clock of the checkpoint this process intends to resume. A
// deliberate backtrack (the backtrack expression sits inside a surrounding
// context) abandons the current region, so the intended checkpoint is the
// one below the top; a process whose whole expression was replaced by a
// backtrack is merely cooperating and intends its newest checkpoint.
Time intended_target(const ProcState& p, const std::string& chan);

// When a receiver acknowledges a rewind of `chan` down to s_t, will it run
// forward again? Yes when the rewind reaches at least as far back as the
// checkpoint it intends to resume; otherwise it keeps backtracking.
bool receiver_resume_bit(const ProcState& p, const std::string& chan, Time s_t);

}  // namespace rcsp
