#include "rcsp/ll.hpp"

#include <algorithm>
#include <set>

#include "rcsp/proc_rules.hpp"

namespace rcsp {
namespace ll {

std::map<std::string, Time> clocks_for(const ConfigLL& c, const std::string& proc) {
  std::map<std::string, Time> out;
  for (const auto& [name, ch] : c.channels)
    if (ch.s.owner == proc || ch.r.owner == proc) out[name] = ch.r.t;
  return out;
}

namespace {

struct Located {
  const ChannelLL* ch;
  const ProcState* p;
};

Result<Located> locate(const ConfigLL& c, const std::string& proc, const std::string& chan,
                       bool want_sender) {
  auto it = c.channels.find(chan);
  if (it == c.channels.end()) return Error{Errc::UnknownChannel, chan};
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  const std::string& owner = want_sender ? it->second.s.owner : it->second.r.owner;
  if (owner != proc)
    return Error{Errc::WrongEndpoint, proc + " does not own that half of " + chan};
  return Located{&it->second, p};
}

Result<Decomposition> redex_at(const ProcState& p) { return decompose_redex(p.expr); }

bool at_backtrack(const ProcState& p) {
  auto d = decompose_redex(p.expr);
  return d.ok() && std::holds_alternative<RedexBacktrack>(d->redex);
}

}  // namespace

Result<Step> l1_send_init(const ConfigLL& c, const std::string& proc,
                          const std::string& chan, Time t_new) {
  auto loc = locate(c, proc, chan, true);
  if (!loc) return loc.error();
  auto d = redex_at(*loc->p);
  if (!d) return d.error();
  auto* send = std::get_if<RedexSend>(&d->redex);
  if (!send || send->chan != chan)
    return Error{Errc::NotEnabled, "process is not offering on " + chan};
  // The requested clock must also be fresh for the sender itself, so the
  // eventual acknowledgment lies past both processes.
  if (t_new <= loc->p->time)
    return Error{Errc::NotEnabled, "request time not fresh for the sender"};
  auto ch = t1_fwd_request(*loc->ch, t_new, send->value);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  n.find_proc(proc)->expr = plug(d->ctx, mk::send_active(chan, send->value));
  return Step{std::move(n), Event::silent()};
}

Result<Step> l2_recv_ack(const ConfigLL& c, const std::string& proc,
                         const std::string& chan, Time t_new) {
  auto loc = locate(c, proc, chan, false);
  if (!loc) return loc.error();
  auto d = redex_at(*loc->p);
  if (!d) return d.error();
  auto* recv = std::get_if<RedexRecv>(&d->redex);
  if (!recv || recv->chan != chan)
    return Error{Errc::NotEnabled, "process is not waiting on " + chan};
  if (t_new <= loc->p->time)
    return Error{Errc::NotEnabled, "acknowledgment time not fresh for the receiver"};
  ExprPtr v = loc->ch->s.v;
  auto ch = t2_fwd_ack(*loc->ch, t_new);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  ProcState* np = n.find_proc(proc);
  np->expr = plug(d->ctx, subst(recv->body, v, recv->var));
  np->time = t_new;
  return Step{std::move(n), Event::comm(chan, t_new, v)};
}

Result<Step> l3_send_complete(const ConfigLL& c, const std::string& proc,
                              const std::string& chan) {
  auto loc = locate(c, proc, chan, true);
  if (!loc) return loc.error();
  auto d = redex_at(*loc->p);
  if (!d) return d.error();
  auto* sa = std::get_if<RedexSendActive>(&d->redex);
  if (!sa || sa->chan != chan)
    return Error{Errc::NotEnabled, "no in-flight send on " + chan};
  const ChannelLL& ch = *loc->ch;
  if (!ch.sender_holds_token()) return Error{Errc::NotEnabled, "sender lacks token"};
  if (ch.s.d == Dir::B) return Error{Errc::NotEnabled, "channel is in backward mode"};
  if (ch.s.t > ch.r.t)
    return Error{Errc::NotEnabled, "request was not acknowledged (retract instead)"};
  ConfigLL n = c;
  ChannelLL& nc = n.channels[chan];
  nc.s.d = Dir::F;
  nc.s.v = nullptr;
  ProcState* np = n.find_proc(proc);
  np->expr = plug(d->ctx, mk::unit());
  np->time = ch.r.t;
  return Step{std::move(n), Event::silent()};
}

Result<Step> l4_fwd_refuse(const ConfigLL& c, const std::string& proc,
                           const std::string& chan) {
  auto loc = locate(c, proc, chan, false);
  if (!loc) return loc.error();
  if (!at_backtrack(*loc->p)) return Error{Errc::NotEnabled, "receiver is not backtracking"};
  if (loc->ch->r.t == 0) return Error{Errc::NotEnabled, "nothing to back away from"};
  auto ch = t3_fwd_refuse(*loc->ch);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  return Step{std::move(n), Event::silent()};
}

Result<Step> l5_back_init(const ConfigLL& c, const std::string& proc,
                          const std::string& chan, Time t_new) {
  auto loc = locate(c, proc, chan, true);
  if (!loc) return loc.error();
  if (!at_backtrack(*loc->p)) return Error{Errc::NotEnabled, "sender is not backtracking"};
  auto ch = t4_back_request(*loc->ch, t_new);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  return Step{std::move(n), Event::silent()};
}

Result<Step> l6_back_ack(const ConfigLL& c, const std::string& proc,
                         const std::string& chan) {
  auto loc = locate(c, proc, chan, false);
  if (!loc) return loc.error();
  if (!at_backtrack(*loc->p)) return Error{Errc::NotEnabled, "receiver is not backtracking"};
  const ChannelLL& ch = *loc->ch;
  if (ch.sender_holds_token() || ch.s.d != Dir::B)
    return Error{Errc::NotEnabled, "no pending rewind request"};
  // Guaranteed by the rewind request's guard; a failure here means the
  // channel state was corrupted, so report loudly instead of masking it.
  if (ch.s.t >= ch.r.t)
    return Error{Errc::BadTime, "rewind request does not move the clock back"};
  bool resume_fwd = receiver_resume_bit(*loc->p, chan, ch.s.t);
  auto nc = t5_back_ack(ch, resume_fwd);
  if (!nc) return nc.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*nc);
  return Step{std::move(n), Event::rewind(chan, ch.s.t)};
}

Result<Step> l7_rcv_signal(const ConfigLL& c, const std::string& proc,
                           const std::string& chan) {
  auto loc = locate(c, proc, chan, false);
  if (!loc) return loc.error();
  if (!at_backtrack(*loc->p)) return Error{Errc::NotEnabled, "receiver is not backtracking"};
  auto ch = t8_rcv_signal_back(*loc->ch);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  return Step{std::move(n), Event::silent()};
}

Result<Step> l8_retract_request(const ConfigLL& c, const std::string& proc,
                                const std::string& chan) {
  auto loc = locate(c, proc, chan, true);
  if (!loc) return loc.error();
  auto d = redex_at(*loc->p);
  if (!d) return d.error();
  auto* sa = std::get_if<RedexSendActive>(&d->redex);
  if (!sa || sa->chan != chan)
    return Error{Errc::NotEnabled, "no in-flight send on " + chan};
  auto ch = t6_retract_request(*loc->ch);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  return Step{std::move(n), Event::silent()};
}

Result<Step> l9_retract_allow(const ConfigLL& c, const std::string& proc,
                              const std::string& chan, bool also_back) {
  auto loc = locate(c, proc, chan, false);
  if (!loc) return loc.error();
  auto ch = t7_retract_allow(*loc->ch, also_back);
  if (!ch) return ch.error();
  ConfigLL n = c;
  n.channels[chan] = std::move(*ch);
  return Step{std::move(n), Event::silent()};
}

Result<Step> l10_retract_complete(const ConfigLL& c, const std::string& proc,
                                  const std::string& chan) {
  auto loc = locate(c, proc, chan, true);
  if (!loc) return loc.error();
  auto d = redex_at(*loc->p);
  if (!d) return d.error();
  auto* sa = std::get_if<RedexSendActive>(&d->redex);
  if (!sa || sa->chan != chan)
    return Error{Errc::NotEnabled, "no in-flight send on " + chan};
  const ChannelLL& ch = *loc->ch;
  if (!ch.sender_holds_token()) return Error{Errc::NotEnabled, "retraction not yet allowed"};
  if (ch.s.d != Dir::I) return Error{Errc::NotEnabled, "no retraction requested"};
  if (ch.s.t <= ch.r.t)
    return Error{Errc::NotEnabled, "request was acknowledged (complete instead)"};
  ConfigLL n = c;
  ChannelLL& nc = n.channels[chan];
  nc.s.d = Dir::F;
  nc.s.v = nullptr;
  n.find_proc(proc)->expr = plug(d->ctx, mk::send(chan, sa->value));
  return Step{std::move(n), Event::silent()};
}

namespace {

template <typename F>
Result<Step> local_rule(const ConfigLL& c, const std::string& proc, F&& f) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return Error{Errc::UnknownProcess, proc};
  auto stepped = f(*p);
  if (!stepped) return stepped.error();
  ConfigLL n = c;
  *n.find_proc(proc) = std::move(*stepped);
  return Step{std::move(n), Event::silent()};
}

// Resume needs the checkpoint's channels quiescent beyond matching clocks:
// a send half must hold the token, a receive half must not be flagged
// backward. The receiver's clock is authoritative on both sides.
Result<void*> check_quiescent(const ConfigLL& c, const ProcState& p) {
  if (p.stack.empty()) return Error{Errc::NotEnabled, "no checkpoint to resume"};
  for (const auto& [name, ch] : c.channels) {
    if (ch.s.owner == p.id) {
      if (!ch.sender_holds_token())
        return Error{Errc::NotEnabled, name + ": rewind handshake still open"};
    } else if (ch.r.owner == p.id) {
      if (ch.r.d != Dir::F)
        return Error{Errc::NotEnabled, name + ": still requesting backward"};
    }
  }
  return static_cast<void*>(nullptr);
}

}  // namespace

Result<Step> h1_local(const ConfigLL& c, const std::string& proc) {
  return local_rule(c, proc, [](const ProcState& p) { return local_step(p); });
}

Result<Step> h3_enter(const ConfigLL& c, const std::string& proc, Time t_new) {
  return local_rule(c, proc, [&](const ProcState& p) {
    return enter_stable(p, t_new, clocks_for(c, proc));
  });
}

Result<Step> h4_exit(const ConfigLL& c, const std::string& proc) {
  return local_rule(c, proc, [](const ProcState& p) { return exit_stable(p); });
}

Result<Step> h5_spont(const ConfigLL& c, const std::string& proc) {
  return local_rule(c, proc, [](const ProcState& p) -> Result<ProcState> {
    auto d = decompose(p.expr);
    if (auto* dec = std::get_if<Decomposition>(&d))
      if (std::holds_alternative<RedexSendActive>(dec->redex))
        return Error{Errc::NotEnabled, "outstanding send request"};
    return spont_backtrack(p);
  });
}

Result<Step> h7_pop(const ConfigLL& c, const std::string& proc) {
  return local_rule(c, proc,
                    [&](const ProcState& p) { return pop_frame(p, clocks_for(c, proc)); });
}

Result<Step> h8_resume(const ConfigLL& c, const std::string& proc) {
  return local_rule(c, proc, [&](const ProcState& p) -> Result<ProcState> {
    auto q = check_quiescent(c, p);
    if (!q) return q.error();
    return resume(p, clocks_for(c, proc));
  });
}

Result<Step> apply(const ConfigLL& c, const Instance& inst) {
  switch (inst.rule) {
    case Rule::H1:
      return h1_local(c, inst.proc);
    case Rule::H3:
      if (!inst.time) return Error{Errc::BadTime, "region entry needs a time"};
      return h3_enter(c, inst.proc, *inst.time);
    case Rule::H4:
      return h4_exit(c, inst.proc);
    case Rule::H5:
      return h5_spont(c, inst.proc);
    case Rule::H7:
      return h7_pop(c, inst.proc);
    case Rule::H8:
      return h8_resume(c, inst.proc);
    case Rule::L1:
      if (!inst.time) return Error{Errc::BadTime, "send request needs a time"};
      return l1_send_init(c, inst.proc, inst.chan, *inst.time);
    case Rule::L2:
      if (!inst.time) return Error{Errc::BadTime, "acknowledgment needs a time"};
      return l2_recv_ack(c, inst.proc, inst.chan, *inst.time);
    case Rule::L3:
      return l3_send_complete(c, inst.proc, inst.chan);
    case Rule::L4:
      return l4_fwd_refuse(c, inst.proc, inst.chan);
    case Rule::L5:
      if (!inst.time) return Error{Errc::BadTime, "rewind request needs a time"};
      return l5_back_init(c, inst.proc, inst.chan, *inst.time);
    case Rule::L6:
      return l6_back_ack(c, inst.proc, inst.chan);
    case Rule::L7:
      return l7_rcv_signal(c, inst.proc, inst.chan);
    case Rule::L8:
      return l8_retract_request(c, inst.proc, inst.chan);
    case Rule::L9:
      return l9_retract_allow(c, inst.proc, inst.chan, inst.flag.value_or(false));
    case Rule::L10:
      return l10_retract_complete(c, inst.proc, inst.chan);
    default:
      return Error{Errc::NotEnabled, "atomic communication rule in distributed semantics"};
  }
}

std::vector<Instance> enabled(const ConfigLL& c, unsigned k) {
  std::vector<Instance> out;
  if (k == 0) k = 1;
  for (const auto& p : c.procs) {
    auto d = decompose(p.expr);
    auto* dec = std::get_if<Decomposition>(&d);
    const auto clocks = clocks_for(c, p.id);

    if (dec) {
      if (std::holds_alternative<RedexBeta>(dec->redex) ||
          std::holds_alternative<RedexPrim>(dec->redex)) {
        if (local_step(p).ok()) out.push_back({Rule::H1, p.id, "", {}, {}});
      } else if (std::holds_alternative<RedexEnterStable>(dec->redex)) {
        for (unsigned dt = 1; dt <= k; ++dt)
          out.push_back({Rule::H3, p.id, "", p.time + dt, {}});
      } else if (std::holds_alternative<RedexExitStable>(dec->redex)) {
        if (!p.stack.empty()) out.push_back({Rule::H4, p.id, "", {}, {}});
      } else if (std::holds_alternative<RedexBacktrack>(dec->redex)) {
        if (pop_frame(p, clocks).ok()) out.push_back({Rule::H7, p.id, "", {}, {}});
        if (check_quiescent(c, p).ok() && can_resume(p, clocks))
          out.push_back({Rule::H8, p.id, "", {}, {}});
      }
    }
    if (!p.stack.empty() && !(dec && std::holds_alternative<RedexSendActive>(dec->redex)))
      out.push_back({Rule::H5, p.id, "", {}, {}});

    for (const auto& [name, ch] : c.channels) {
      if (ch.s.owner == p.id) {
        if (dec) {
          if (auto* send = std::get_if<RedexSend>(&dec->redex);
              send && send->chan == name && ch.sender_holds_token() &&
              ch.r.d == Dir::F) {
            Time base = std::max(ch.r.t, p.time);
            for (unsigned dt = 1; dt <= k; ++dt)
              out.push_back({Rule::L1, p.id, name, base + dt, {}});
          }
          if (auto* sa = std::get_if<RedexSendActive>(&dec->redex);
              sa && sa->chan == name) {
            if (ch.sender_holds_token() && ch.s.d != Dir::B && ch.s.t <= ch.r.t)
              out.push_back({Rule::L3, p.id, name, {}, {}});
            if (ch.sender_holds_token() && ch.s.d == Dir::I && ch.s.t > ch.r.t)
              out.push_back({Rule::L10, p.id, name, {}, {}});
            if (!ch.sender_holds_token() && ch.s.d == Dir::F)
              out.push_back({Rule::L8, p.id, name, {}, {}});
          }
          if (std::holds_alternative<RedexBacktrack>(dec->redex) &&
              ch.sender_holds_token()) {
            std::set<Time> targets{0};
            for (const auto& f : p.stack) {
              auto it = f.saved.find(name);
              if (it != f.saved.end()) targets.insert(it->second);
            }
            for (Time t : targets)
              if (t < ch.r.t) out.push_back({Rule::L5, p.id, name, t, {}});
          }
        }
      }
      if (ch.r.owner == p.id) {
        if (dec) {
          if (auto* recv = std::get_if<RedexRecv>(&dec->redex);
              recv && recv->chan == name && !ch.sender_holds_token() &&
              (ch.s.d == Dir::F || ch.s.d == Dir::I) && ch.r.d == Dir::F) {
            Time base = std::max(ch.s.t, p.time + 1);
            for (unsigned dt = 0; dt < k; ++dt)
              out.push_back({Rule::L2, p.id, name, base + dt, {}});
          }
          if (std::holds_alternative<RedexBacktrack>(dec->redex)) {
            if (!ch.sender_holds_token() && ch.s.d == Dir::F && ch.r.t > 0)
              out.push_back({Rule::L4, p.id, name, {}, {}});
            if (!ch.sender_holds_token() && ch.s.d == Dir::B)
              out.push_back({Rule::L6, p.id, name, {}, {}});
            if (ch.sender_holds_token() && ch.r.t > 0 && ch.r.d == Dir::F)
              out.push_back({Rule::L7, p.id, name, {}, {}});
          }
        }
        if (!ch.sender_holds_token() && ch.s.d == Dir::I) {
          out.push_back({Rule::L9, p.id, name, {}, false});
          if (ch.r.d != Dir::B) out.push_back({Rule::L9, p.id, name, {}, true});
        }
      }
    }
  }
  return out;
}

std::optional<Instance> policy_action(const ProcState& p,
                                      const std::vector<ChanView>& chans) {
  auto d = decompose(p.expr);
  auto* dec = std::get_if<Decomposition>(&d);

  auto find_chan = [&](const std::string& name) -> const ChanView* {
    for (const auto& cv : chans)
      if (cv.name == name) return &cv;
    return nullptr;
  };
  auto partner_signal_elsewhere = [&](const std::string& except) {
    for (const auto& cv : chans) {
      if (cv.name == except) continue;
      if (cv.is_sender && cv.ch.r.d == Dir::B) return true;
      if (!cv.is_sender && (cv.ch.s.d == Dir::B || cv.ch.s.d == Dir::I)) return true;
    }
    return false;
  };

  if (!dec) {
    // Parked on a value: only react to partner signals.
    if (p.stack.empty()) return std::nullopt;
    for (const auto& cv : chans) {
      if (cv.is_sender && cv.ch.r.d == Dir::B) return Instance{Rule::H5, p.id, "", {}, {}};
      if (!cv.is_sender && cv.ch.s.d == Dir::B) return Instance{Rule::H5, p.id, "", {}, {}};
      if (!cv.is_sender && !cv.ch.sender_holds_token() && cv.ch.s.d == Dir::I)
        return Instance{Rule::L9, p.id, cv.name, {}, false};
    }
    return std::nullopt;
  }

  if (std::holds_alternative<RedexBeta>(dec->redex) ||
      std::holds_alternative<RedexPrim>(dec->redex)) {
    if (!local_step(p).ok()) return std::nullopt;
    return Instance{Rule::H1, p.id, "", {}, {}};
  }
  if (std::holds_alternative<RedexEnterStable>(dec->redex))
    return Instance{Rule::H3, p.id, "", p.time + 1, {}};
  if (std::holds_alternative<RedexExitStable>(dec->redex))
    return Instance{Rule::H4, p.id, "", {}, {}};

  if (auto* send = std::get_if<RedexSend>(&dec->redex)) {
    const ChanView* cv = find_chan(send->chan);
    if (!cv || !cv->is_sender) return std::nullopt;
    if (cv->ch.sender_holds_token()) {
      if (cv->ch.r.d == Dir::F)
        return Instance{Rule::L1, p.id, cv->name, std::max(cv->ch.r.t, p.time) + 1, {}};
      if (!p.stack.empty()) return Instance{Rule::H5, p.id, "", {}, {}};
    }
    return std::nullopt;
  }

  if (auto* recv = std::get_if<RedexRecv>(&dec->redex)) {
    const ChanView* cv = find_chan(recv->chan);
    if (!cv || cv->is_sender) return std::nullopt;
    if (!cv->ch.sender_holds_token()) {
      if ((cv->ch.s.d == Dir::F || cv->ch.s.d == Dir::I) && cv->ch.r.d == Dir::F)
        return Instance{Rule::L2, p.id, cv->name, std::max(cv->ch.s.t, p.time + 1), {}};
      if (cv->ch.s.d == Dir::B && !p.stack.empty())
        return Instance{Rule::H5, p.id, "", {}, {}};
    }
    return std::nullopt;
  }

  if (auto* sa = std::get_if<RedexSendActive>(&dec->redex)) {
    const ChanView* cv = find_chan(sa->chan);
    if (!cv || !cv->is_sender) return std::nullopt;
    const ChannelLL& ch = cv->ch;
    if (ch.sender_holds_token()) {
      if (ch.s.d != Dir::B && ch.s.t <= ch.r.t)
        return Instance{Rule::L3, p.id, cv->name, {}, {}};
      if (ch.s.d == Dir::I && ch.s.t > ch.r.t)
        return Instance{Rule::L10, p.id, cv->name, {}, {}};
    } else if (ch.s.d == Dir::F && partner_signal_elsewhere(cv->name)) {
      return Instance{Rule::L8, p.id, cv->name, {}, {}};
    }
    return std::nullopt;
  }

  if (std::holds_alternative<RedexBacktrack>(dec->redex)) {
    std::map<std::string, Time> clocks;
    for (const auto& cv : chans) clocks[cv.name] = cv.ch.r.t;
    if (pop_frame(p, clocks).ok()) return Instance{Rule::H7, p.id, "", {}, {}};
    bool quiescent = true;
    for (const auto& cv : chans) {
      if (cv.is_sender && !cv.ch.sender_holds_token()) quiescent = false;
      if (!cv.is_sender && cv.ch.r.d != Dir::F) quiescent = false;
    }
    if (quiescent && can_resume(p, clocks)) return Instance{Rule::H8, p.id, "", {}, {}};
    for (const auto& cv : chans) {
      const ChannelLL& ch = cv.ch;
      if (cv.is_sender) {
        if (ch.sender_holds_token()) {
          Time target = intended_target(p, cv.name);
          if (target < ch.r.t) return Instance{Rule::L5, p.id, cv.name, target, {}};
        }
      } else {
        if (!ch.sender_holds_token() && ch.s.d == Dir::B)
          return Instance{Rule::L6, p.id, cv.name, {}, {}};
        if (!ch.sender_holds_token() && ch.s.d == Dir::F && ch.r.t > 0)
          return Instance{Rule::L4, p.id, cv.name, {}, {}};
        if (!ch.sender_holds_token() && ch.s.d == Dir::I)
          return Instance{Rule::L9, p.id, cv.name, {}, true};
        if (ch.sender_holds_token() && ch.r.t > 0 && ch.r.d == Dir::F)
          return Instance{Rule::L7, p.id, cv.name, {}, {}};
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Instance> policy_action(const ConfigLL& c, const std::string& proc) {
  const ProcState* p = c.find_proc(proc);
  if (!p) return std::nullopt;
  std::vector<ChanView> chans;
  for (const auto& [name, ch] : c.channels) {
    if (ch.s.owner == proc) chans.push_back({name, true, ch});
    if (ch.r.owner == proc) chans.push_back({name, false, ch});
  }
  return policy_action(*p, chans);
}

Run run_deterministic(const ConfigLL& start, size_t max_steps) {
  Run run{start, {}, {}, false};
  size_t steps = 0;
  bool progressed = true;
  while (progressed && steps < max_steps) {
    if (is_terminated(run.config)) break;
    progressed = false;
    std::vector<std::string> ids;
    for (const auto& p : run.config.procs) ids.push_back(p.id);
    for (const auto& id : ids) {
      auto choice = policy_action(run.config, id);
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

}  // namespace ll
}  // namespace rcsp
