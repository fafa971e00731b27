#include "rcsp/eval.hpp"

#include <cassert>

#include "rcsp/visit.hpp"

namespace rcsp {

bool EvalContext::operator==(const EvalContext& other) const {
  if (frames.size() != other.frames.size()) return false;
  for (size_t i = 0; i < frames.size(); ++i) {
    const CtxFrame& a = frames[i];
    const CtxFrame& b = other.frames[i];
    if (a.index() != b.index()) return false;
    bool same = std::visit(
        overloaded{
            [&](const FApp1& x) { return expr_equal(x.arg, std::get<FApp1>(b).arg); },
            [&](const FApp2& x) { return expr_equal(x.fn, std::get<FApp2>(b).fn); },
            [&](const FSend& x) { return x.chan == std::get<FSend>(b).chan; },
            [&](const FStable&) { return true; },
            [&](const FStableActive&) { return true; },
            [&](const FBacktrack&) { return true; },
        },
        a);
    if (!same) return false;
  }
  return true;
}

ExprPtr plug(const EvalContext& ctx, ExprPtr e) {
  // Frames are stored outermost first, so wrap from the innermost outwards.
  for (auto it = ctx.frames.rbegin(); it != ctx.frames.rend(); ++it) {
    e = std::visit(
        overloaded{
            [&](const FApp1& f) { return mk::app(e, f.arg); },
            [&](const FApp2& f) { return mk::app(f.fn, e); },
            [&](const FSend& f) { return mk::send(f.chan, e); },
            [&](const FStable&) { return mk::stable(e); },
            [&](const FStableActive&) { return mk::stable_active(e); },
            [&](const FBacktrack&) { return mk::backtrack(e); },
        },
        *it);
  }
  return e;
}

std::string to_text(const EvalContext& ctx) { return to_text(plug(ctx, mk::hole())); }

ExprPtr redex_to_expr(const Redex& r) {
  return std::visit(
      overloaded{
          [](const RedexBeta& x) { return mk::app(x.fn, x.arg); },
          [](const RedexPrim& x) { return mk::prim_app(x.op, x.lhs, x.rhs); },
          [](const RedexSend& x) { return mk::send(x.chan, x.value); },
          [](const RedexRecv& x) { return mk::recv(x.var, x.chan, x.body); },
          [](const RedexEnterStable& x) { return mk::app(x.stable_fn, x.arg); },
          [](const RedexExitStable& x) { return mk::stable_active(x.value); },
          [](const RedexBacktrack& x) { return mk::backtrack(x.value); },
          [](const RedexSendActive& x) { return mk::send_active(x.chan, x.value); },
      },
      r);
}

DecomposeOutcome decompose(const ExprPtr& e) {
  if (is_value(e)) return AlreadyValue{};
  EvalContext ctx;
  ExprPtr cur = e;
  for (;;) {
    // Invariant: cur is not a value.
    const ExprNode& n = cur->node;
    if (const auto* a = std::get_if<AppE>(&n)) {
      if (!is_value(a->fn)) {
        ctx.frames.push_back(FApp1{a->arg});
        cur = a->fn;
        continue;
      }
      if (!is_value(a->arg)) {
        ctx.frames.push_back(FApp2{a->fn});
        cur = a->arg;
        continue;
      }
      if (expr_as<LamE>(a->fn)) return Decomposition{std::move(ctx), RedexBeta{a->fn, a->arg}};
      if (const auto* inner = expr_as<AppE>(a->fn)) {
        if (const auto* p = expr_as<PrimE>(inner->fn)) {
          return Decomposition{std::move(ctx), RedexPrim{p->op, inner->arg, a->arg}};
        }
      }
      if (const auto* st = expr_as<StableE>(a->fn)) {
        if (expr_as<LamE>(st->body)) {
          return Decomposition{std::move(ctx), RedexEnterStable{a->fn, a->arg}};
        }
      }
      return Error{Errc::Stuck, "application of non-function value " + to_text(a->fn)};
    }
    if (const auto* s = std::get_if<SendE>(&n)) {
      if (!is_value(s->value)) {
        ctx.frames.push_back(FSend{s->chan});
        cur = s->value;
        continue;
      }
      return Decomposition{std::move(ctx), RedexSend{s->chan, s->value}};
    }
    if (const auto* r = std::get_if<RecvE>(&n)) {
      return Decomposition{std::move(ctx), RedexRecv{r->var, r->chan, r->body}};
    }
    if (const auto* st = std::get_if<StableE>(&n)) {
      if (!is_value(st->body)) {
        ctx.frames.push_back(FStable{});
        cur = st->body;
        continue;
      }
      // A stable value that is not an abstraction cannot step.
      return Error{Errc::Stuck, "stable applied to non-function value " + to_text(st->body)};
    }
    if (const auto* sa = std::get_if<StableActiveE>(&n)) {
      if (!is_value(sa->body)) {
        ctx.frames.push_back(FStableActive{});
        cur = sa->body;
        continue;
      }
      return Decomposition{std::move(ctx), RedexExitStable{sa->body}};
    }
    if (const auto* b = std::get_if<BacktrackE>(&n)) {
      if (!is_value(b->body)) {
        ctx.frames.push_back(FBacktrack{});
        cur = b->body;
        continue;
      }
      return Decomposition{std::move(ctx), RedexBacktrack{b->body}};
    }
    if (const auto* sd = std::get_if<SendActiveE>(&n)) {
      assert(is_value(sd->value));
      return Decomposition{std::move(ctx), RedexSendActive{sd->chan, sd->value}};
    }
    return Error{Errc::Stuck, "no decomposition for " + to_text(cur)};
  }
}

Result<Decomposition> decompose_redex(const ExprPtr& e) {
  DecomposeOutcome out = decompose(e);
  if (auto* d = std::get_if<Decomposition>(&out)) return std::move(*d);
  if (std::holds_alternative<AlreadyValue>(out)) {
    return Error{Errc::NotEnabled, "expression is a value: " + to_text(e)};
  }
  return std::get<Error>(out);
}

ExprPtr subst(const ExprPtr& e, const ExprPtr& value, const std::string& name) {
  if (!e) return e;
  return std::visit(
      overloaded{
          [&](const VarE& v) { return v.name == name ? value : e; },
          [&](const LamE& l) -> ExprPtr {
            if (l.param == name) return e;  // shadowed
            if (free_vars(value).count(l.param) && free_vars(l.body).count(name)) {
              std::string renamed = fresh_name(l.param);
              ExprPtr body = subst(l.body, mk::var(renamed), l.param);
              return mk::lam(renamed, subst(body, value, name));
            }
            return mk::lam(l.param, subst(l.body, value, name));
          },
          [&](const AppE& a) -> ExprPtr {
            return mk::app(subst(a.fn, value, name), subst(a.arg, value, name));
          },
          [&](const SendE& s) -> ExprPtr {
            return mk::send(s.chan, subst(s.value, value, name));
          },
          [&](const RecvE& r) -> ExprPtr {
            if (r.var == name) return e;
            if (free_vars(value).count(r.var) && free_vars(r.body).count(name)) {
              std::string renamed = fresh_name(r.var);
              ExprPtr body = subst(r.body, mk::var(renamed), r.var);
              return mk::recv(renamed, r.chan, subst(body, value, name));
            }
            return mk::recv(r.var, r.chan, subst(r.body, value, name));
          },
          [&](const StableE& s) -> ExprPtr { return mk::stable(subst(s.body, value, name)); },
          [&](const BacktrackE& b) -> ExprPtr {
            return mk::backtrack(subst(b.body, value, name));
          },
          [&](const StableActiveE& s) -> ExprPtr {
            return mk::stable_active(subst(s.body, value, name));
          },
          [&](const SendActiveE& s) -> ExprPtr {
            return mk::send_active(s.chan, subst(s.value, value, name));
          },
          [&](const auto&) { return e; },
      },
      e->node);
}

ExprPtr encoded_true() {
  static const ExprPtr t = mk::lam("a", mk::lam("b", mk::var("a")));
  return t;
}

ExprPtr encoded_false() {
  static const ExprPtr f = mk::lam("a", mk::lam("b", mk::var("b")));
  return f;
}

Result<ExprPtr> apply_prim(PrimOp op, const ExprPtr& lhs, const ExprPtr& rhs) {
  const auto* a = expr_as<IntE>(lhs);
  const auto* b = expr_as<IntE>(rhs);
  if (!a || !b) {
    return Error{Errc::Stuck, std::string("primitive ") + prim_symbol(op) +
                                  " applied to non-integer operand"};
  }
  switch (op) {
    case PrimOp::Add: return mk::integer(a->value + b->value);
    case PrimOp::Sub: return mk::integer(a->value - b->value);
    case PrimOp::Geq: return a->value >= b->value ? encoded_true() : encoded_false();
  }
  return Error{Errc::Stuck, "unknown primitive"};
}

}  // namespace rcsp
