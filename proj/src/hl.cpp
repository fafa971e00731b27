#include "rcsp/hl.hpp"

#include <algorithm>

#include "rcsp/proc_rules.hpp"

namespace rcsp {
namespace hl {

std::map<std::string, Time> clocks_for(const ConfigHL& c, const std::string& proc) {
  std::map<std::string, Time> out;
  for (const auto& [name, ch] : c.channels)
    if (ch.sender == proc || ch.receiver == proc) out[name] = ch.time;
  return out;
}

static Result<ConfigHL> with_proc(const ConfigHL& c, const std::string& proc,
                                  Result<ProcState> stepped) {
  if (!stepped) return stepped.error();
  ConfigHL n = c;
  *n.find_proc(proc) = std::move(*stepped);
  return n;
}

Result<Step> h1_local(const ConfigHL& c, const std::string& proc) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto n = with_proc(c, proc, local_step(*p));
  if (!n) return n.error();
  return Step{std::move(*n), Event::silent()};
}

Result<Step> h2_comm(const ConfigHL& c, const std::string& chan, Time t_new) {
  auto it = c.channels.find(chan);
  if (it == c.channels.end()) return Error{Errc::UnknownChannel, chan};
  const ChanHL& ch = it->second;
  const ProcState* sp = c.find_proc(ch.sender);
  const ProcState* rp = c.find_proc(ch.receiver);
  if (!sp || !rp) return Error{Errc::UnknownProcess, chan};

  auto sd = decompose_redex(sp->expr);
  if (!sd) return sd.error();
  auto* send = std::get_if<RedexSend>(&sd->redex);
  if (!send || send->chan != chan)
    return Error{Errc::NotEnabled, "sender is not offering on " + chan};
  auto rd = decompose_redex(rp->expr);
  if (!rd) return rd.error();
  auto* recv = std::get_if<RedexRecv>(&rd->redex);
  if (!recv || recv->chan != chan)
    return Error{Errc::NotEnabled, "receiver is not waiting on " + chan};
  if (t_new <= std::max(sp->time, rp->time))
    return Error{Errc::BadTime, "communication time must pass both clocks"};

  ConfigHL n = c;
  n.channels[chan].time = t_new;
  ProcState* ns = n.find_proc(ch.sender);
  ProcState* nr = n.find_proc(ch.receiver);
  ns->expr = plug(sd->ctx, mk::unit());
  ns->time = t_new;
  nr->expr = plug(rd->ctx, subst(recv->body, send->value, recv->var));
  nr->time = t_new;
  return Step{std::move(n), Event::comm(chan, t_new, send->value)};
}

Result<Step> h3_enter(const ConfigHL& c, const std::string& proc, Time t_new) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto n = with_proc(c, proc, enter_stable(*p, t_new, clocks_for(c, proc)));
  if (!n) return n.error();
  return Step{std::move(*n), Event::silent()};
}

Result<Step> h4_exit(const ConfigHL& c, const std::string& proc) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto n = with_proc(c, proc, exit_stable(*p));
  if (!n) return n.error();
  return Step{std::move(*n), Event::silent()};
}

Result<Step> h5_spont(const ConfigHL& c, const std::string& proc) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto n = with_proc(c, proc, spont_backtrack(*p));
  if (!n) return n.error();
  return Step{std::move(*n), Event::silent()};
}

static bool at_backtrack(const ProcState& p) {
  auto d = decompose_redex(p.expr);
  return d.ok() && std::holds_alternative<RedexBacktrack>(d->redex);
}

Result<Step> h6_rewind(const ConfigHL& c, const std::string& chan, Time t_new) {
  auto it = c.channels.find(chan);
  if (it == c.channels.end()) return Error{Errc::UnknownChannel, chan};
  const ChanHL& ch = it->second;
  const ProcState* sp = c.find_proc(ch.sender);
  const ProcState* rp = c.find_proc(ch.receiver);
  if (!sp || !rp) return Error{Errc::UnknownProcess, chan};
  if (!at_backtrack(*sp) || !at_backtrack(*rp))
    return Error{Errc::NotEnabled, "both endpoints must be backtracking"};
  if (t_new >= ch.time) return Error{Errc::BadTime, "rewind must move the clock back"};
  ConfigHL n = c;
  n.channels[chan].time = t_new;
  return Step{std::move(n), Event::rewind(chan, t_new)};
}

Result<Step> h7_pop(const ConfigHL& c, const std::string& proc) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto n = with_proc(c, proc, pop_frame(*p, clocks_for(c, proc)));
  if (!n) return n.error();
  return Step{std::move(*n), Event::silent()};
}

Result<Step> h8_resume(const ConfigHL& c, const std::string& proc) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto n = with_proc(c, proc, resume(*p, clocks_for(c, proc)));
  if (!n) return n.error();
  return Step{std::move(*n), Event::silent()};
}

Result<Step> apply(const ConfigHL& c, const Instance& inst) {
  switch (inst.rule) {
    case Rule::H1:
      return h1_local(c, inst.proc);
    case Rule::H2:
      if (!inst.time) return Error{Errc::BadTime, "communication needs a time"};
      return h2_comm(c, inst.chan, *inst.time);
    case Rule::H3:
      if (!inst.time) return Error{Errc::BadTime, "region entry needs a time"};
      return h3_enter(c, inst.proc, *inst.time);
    case Rule::H4:
      return h4_exit(c, inst.proc);
    case Rule::H5:
      return h5_spont(c, inst.proc);
    case Rule::H6:
      if (!inst.time) return Error{Errc::BadTime, "rewind needs a time"};
      return h6_rewind(c, inst.chan, *inst.time);
    case Rule::H7:
      return h7_pop(c, inst.proc);
    case Rule::H8:
      return h8_resume(c, inst.proc);
    default:
      return Error{Errc::NotEnabled, "not an atomic rule"};
  }
}

// One policy decision for one process; returns the chosen instance or
// nothing. Forced cooperation can select an action owned by the partner.
static std::optional<Instance> policy_choice(const ConfigHL& c, const ProcState& p) {
  auto d = decompose(p.expr);
  auto* dec = std::get_if<Decomposition>(&d);
  if (!dec) return std::nullopt;
  const auto times = clocks_for(c, p.id);

  if (std::holds_alternative<RedexBacktrack>(dec->redex)) {
    if (pop_frame(p, times).ok()) return Instance{Rule::H7, p.id, "", {}, {}};
    if (can_resume(p, times)) return Instance{Rule::H8, p.id, "", {}, {}};
    if (p.stack.empty()) return std::nullopt;
    for (const auto& chan : channels_of(c, p.id)) {
      const ChanHL& ch = c.channels.at(chan);
      auto it = p.stack.back().saved.find(chan);
      Time want = it == p.stack.back().saved.end() ? 0 : it->second;
      if (want >= ch.time) continue;  // this channel is not the blocker
      const std::string other = ch.sender == p.id ? ch.receiver : ch.sender;
      const ProcState* op = c.find_proc(other);
      if (!op) continue;
      if (at_backtrack(*op)) {
        const ProcState* sender_state = c.find_proc(ch.sender);
        Time target = rewind_target(*sender_state, chan);
        if (target < ch.time) return Instance{Rule::H6, "", chan, target, {}};
      } else if (!op->stack.empty()) {
        return Instance{Rule::H5, other, "", {}, {}};
      }
    }
    return std::nullopt;
  }
  if (std::holds_alternative<RedexBeta>(dec->redex) ||
      std::holds_alternative<RedexPrim>(dec->redex))
    return Instance{Rule::H1, p.id, "", {}, {}};
  if (std::holds_alternative<RedexEnterStable>(dec->redex))
    return Instance{Rule::H3, p.id, "", p.time + 1, {}};
  if (std::holds_alternative<RedexExitStable>(dec->redex))
    return Instance{Rule::H4, p.id, "", {}, {}};
  if (auto* send = std::get_if<RedexSend>(&dec->redex)) {
    auto it = c.channels.find(send->chan);
    if (it == c.channels.end()) return std::nullopt;
    const ProcState* rp = c.find_proc(it->second.receiver);
    if (!rp) return std::nullopt;
    auto rd = decompose_redex(rp->expr);
    if (rd.ok()) {
      auto* recv = std::get_if<RedexRecv>(&rd->redex);
      if (recv && recv->chan == send->chan) {
        Time t = std::max(p.time, rp->time) + 1;
        return Instance{Rule::H2, "", send->chan, t, {}};
      }
    }
    return std::nullopt;
  }
  if (auto* recv = std::get_if<RedexRecv>(&dec->redex)) {
    auto it = c.channels.find(recv->chan);
    if (it == c.channels.end()) return std::nullopt;
    const ProcState* sp = c.find_proc(it->second.sender);
    if (!sp) return std::nullopt;
    auto sd = decompose_redex(sp->expr);
    if (sd.ok()) {
      auto* send = std::get_if<RedexSend>(&sd->redex);
      if (send && send->chan == recv->chan) {
        Time t = std::max(p.time, sp->time) + 1;
        return Instance{Rule::H2, "", recv->chan, t, {}};
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

Run run_deterministic(const ConfigHL& start, size_t max_steps) {
  Run run{start, {}, {}, false};
  size_t steps = 0;
  bool progressed = true;
  while (progressed && steps < max_steps) {
    if (is_terminated(run.config)) {
      run.terminated = true;
      break;
    }
    progressed = false;
    std::vector<std::string> ids;
    for (const auto& p : run.config.procs) ids.push_back(p.id);
    for (const auto& id : ids) {
      const ProcState* p = run.config.find_proc(id);
      auto choice = policy_choice(run.config, *p);
      if (!choice) continue;
      auto stepped = apply(run.config, *choice);
      if (!stepped) continue;
      run.config = std::move(stepped->config);
      run.steps.push_back(*choice);
      if (stepped->event.kind != Event::Kind::Silent) run.events.push_back(stepped->event);
      progressed = true;
      ++steps;
      if (steps >= max_steps) break;
    }
  }
  run.terminated = is_terminated(run.config);
  return run;
}

}  // namespace hl
}  // namespace rcsp
