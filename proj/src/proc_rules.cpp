#include "rcsp/proc_rules.hpp"

namespace rcsp {

Result<ProcState> local_step(const ProcState& p) {
  auto d = decompose_redex(p.expr);
  if (!d) return d.error();
  if (auto* beta = std::get_if<RedexBeta>(&d->redex)) {
    const auto* lam = expr_as<LamE>(beta->fn);
    ProcState n = p;
    n.expr = plug(d->ctx, subst(lam->body, beta->arg, lam->param));
    return n;
  }
  if (auto* prim = std::get_if<RedexPrim>(&d->redex)) {
    auto v = apply_prim(prim->op, prim->lhs, prim->rhs);
    if (!v) return v.error();
    ProcState n = p;
    n.expr = plug(d->ctx, *v);
    return n;
  }
  return Error{Errc::NotEnabled, "no local redex"};
}

Result<ProcState> enter_stable(const ProcState& p, Time t_new,
                               const std::map<std::string, Time>& times) {
  auto d = decompose_redex(p.expr);
  if (!d) return d.error();
  auto* enter = std::get_if<RedexEnterStable>(&d->redex);
  if (!enter) return Error{Errc::NotEnabled, "redex is not a region application"};
  if (t_new <= p.time) return Error{Errc::BadTime, "region entry must advance the clock"};
  const auto* st = expr_as<StableE>(enter->stable_fn);
  const auto* lam = expr_as<LamE>(st->body);

  Frame f;
  f.cont = d->ctx;
  f.cont.frames.push_back(FApp2{enter->stable_fn});
  f.resume_value = enter->arg;
  f.time = p.time;
  f.saved = times;

  ProcState n = p;
  n.stack.push_back(std::move(f));
  n.expr = plug(d->ctx, mk::stable_active(subst(lam->body, enter->arg, lam->param)));
  n.time = t_new;
  return n;
}

Result<ProcState> exit_stable(const ProcState& p) {
  auto d = decompose_redex(p.expr);
  if (!d) return d.error();
  auto* exit = std::get_if<RedexExitStable>(&d->redex);
  if (!exit) return Error{Errc::NotEnabled, "redex is not a finished region"};
  if (p.stack.empty())
    return Error{Errc::EmptyStack, "finished region with no checkpoint"};
  ProcState n = p;
  n.stack.pop_back();
  n.expr = plug(d->ctx, exit->value);
  return n;
}

Result<ProcState> spont_backtrack(const ProcState& p) {
  if (p.stack.empty()) return Error{Errc::EmptyStack, "no checkpoint to fall back to"};
  ProcState n = p;
  n.expr = mk::backtrack(p.stack.back().resume_value);
  return n;
}

Result<ProcState> pop_frame(const ProcState& p, const std::map<std::string, Time>& times) {
  auto d = decompose_redex(p.expr);
  if (!d) return d.error();
  if (!std::holds_alternative<RedexBacktrack>(d->redex))
    return Error{Errc::NotEnabled, "process is not backtracking"};
  if (p.stack.empty()) return Error{Errc::NotEnabled, "no checkpoint to drop"};
  const Frame& top = p.stack.back();
  bool future = false;
  for (const auto& [chan, saved] : top.saved) {
    auto it = times.find(chan);
    if (it != times.end() && saved > it->second) {
      future = true;
      break;
    }
  }
  if (!future) return Error{Errc::NotEnabled, "checkpoint is not ahead of any channel"};
  ProcState n = p;
  n.stack.pop_back();
  return n;
}

bool can_resume(const ProcState& p, const std::map<std::string, Time>& times) {
  auto d = decompose_redex(p.expr);
  if (!d || !std::holds_alternative<RedexBacktrack>(d->redex)) return false;
  if (p.stack.empty()) return false;
  for (const auto& [chan, saved] : p.stack.back().saved) {
    auto it = times.find(chan);
    if (it == times.end() || it->second != saved) return false;
  }
  return true;
}

Result<ProcState> resume(const ProcState& p, const std::map<std::string, Time>& times) {
  auto d = decompose_redex(p.expr);
  if (!d) return d.error();
  auto* bt = std::get_if<RedexBacktrack>(&d->redex);
  if (!bt) return Error{Errc::NotEnabled, "process is not backtracking"};
  if (p.stack.empty()) return Error{Errc::NotEnabled, "no checkpoint to resume"};
  if (!can_resume(p, times))
    return Error{Errc::NotEnabled, "channel clocks do not match the checkpoint"};
  const Frame top = p.stack.back();
  ProcState n = p;
  n.stack.pop_back();
  n.expr = plug(top.cont, bt->value);
  n.time = top.time;
  return n;
}

Time rewind_target(const ProcState& p, const std::string& chan) {
  if (p.stack.size() < 2) return 0;
  const auto& saved = p.stack[p.stack.size() - 2].saved;
  auto it = saved.find(chan);
  return it == saved.end() ? 0 : it->second;
}

Time intended_target(const ProcState& p, const std::string& chan) {
  if (p.stack.empty()) return 0;
  auto d = decompose_redex(p.expr);
  bool deliberate = d.ok() && std::holds_alternative<RedexBacktrack>(d->redex) &&
                    !d->ctx.frames.empty();
  if (deliberate) return rewind_target(p, chan);
  auto it = p.stack.back().saved.find(chan);
  return it == p.stack.back().saved.end() ? 0 : it->second;
}

bool receiver_resume_bit(const ProcState& p, const std::string& chan, Time s_t) {
  return s_t <= intended_target(p, chan);
}

}  // namespace rcsp
