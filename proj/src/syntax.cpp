#include "rcsp/syntax.hpp"

#include <atomic>
#include <sstream>

#include "rcsp/visit.hpp"

namespace rcsp {

const char* prim_symbol(PrimOp op) {
  switch (op) {
    case PrimOp::Add: return "+";
    case PrimOp::Sub: return "-";
    case PrimOp::Geq: return ">=";
  }
  return "?";
}

namespace mk {

static ExprPtr make(ExprNode n) { return std::make_shared<const Expr>(std::move(n)); }

ExprPtr unit() {
  static const ExprPtr u = make(UnitE{});
  return u;
}
ExprPtr integer(long long v) { return make(IntE{v}); }
ExprPtr prim(PrimOp op) { return make(PrimE{op}); }
ExprPtr var(std::string name) { return make(VarE{std::move(name)}); }
ExprPtr lam(std::string param, ExprPtr body) {
  return make(LamE{std::move(param), std::move(body)});
}
ExprPtr app(ExprPtr fn, ExprPtr arg) { return make(AppE{std::move(fn), std::move(arg)}); }
ExprPtr send(std::string chan, ExprPtr value) {
  return make(SendE{std::move(chan), std::move(value)});
}
ExprPtr recv(std::string var, std::string chan, ExprPtr body) {
  return make(RecvE{std::move(var), std::move(chan), std::move(body)});
}
ExprPtr stable(ExprPtr body) { return make(StableE{std::move(body)}); }
ExprPtr backtrack(ExprPtr body) { return make(BacktrackE{std::move(body)}); }
ExprPtr stable_active(ExprPtr body) { return make(StableActiveE{std::move(body)}); }
ExprPtr send_active(std::string chan, ExprPtr value) {
  return make(SendActiveE{std::move(chan), std::move(value)});
}
ExprPtr hole() {
  static const ExprPtr h = make(HoleE{});
  return h;
}
ExprPtr prim_app(PrimOp op, ExprPtr a, ExprPtr b) {
  return app(app(prim(op), std::move(a)), std::move(b));
}
ExprPtr seq(ExprPtr a, ExprPtr b) {
  return app(lam(fresh_name("_seq"), std::move(b)), std::move(a));
}

}  // namespace mk

bool is_value(const ExprPtr& e) {
  if (!e) return false;
  return std::visit(
      overloaded{
          [](const UnitE&) { return true; },
          [](const IntE&) { return true; },
          [](const PrimE&) { return true; },
          [](const VarE&) { return true; },
          [](const LamE&) { return true; },
          [](const StableE& s) { return expr_as<LamE>(s.body) != nullptr; },
          [](const AppE& a) {
            // Partial application of a binary primitive is a value.
            return expr_as<PrimE>(a.fn) != nullptr && is_value(a.arg);
          },
          [](const auto&) { return false; },
      },
      e->node);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [](const UnitE&, const UnitE&) { return true; },
          [](const IntE& x, const IntE& y) { return x.value == y.value; },
          [](const PrimE& x, const PrimE& y) { return x.op == y.op; },
          [](const VarE& x, const VarE& y) { return x.name == y.name; },
          [](const LamE& x, const LamE& y) {
            return x.param == y.param && expr_equal(x.body, y.body);
          },
          [](const AppE& x, const AppE& y) {
            return expr_equal(x.fn, y.fn) && expr_equal(x.arg, y.arg);
          },
          [](const SendE& x, const SendE& y) {
            return x.chan == y.chan && expr_equal(x.value, y.value);
          },
          [](const RecvE& x, const RecvE& y) {
            return x.var == y.var && x.chan == y.chan && expr_equal(x.body, y.body);
          },
          [](const StableE& x, const StableE& y) { return expr_equal(x.body, y.body); },
          [](const BacktrackE& x, const BacktrackE& y) { return expr_equal(x.body, y.body); },
          [](const StableActiveE& x, const StableActiveE& y) {
            return expr_equal(x.body, y.body);
          },
          [](const SendActiveE& x, const SendActiveE& y) {
            return x.chan == y.chan && expr_equal(x.value, y.value);
          },
          [](const HoleE&, const HoleE&) { return true; },
          [](const auto&, const auto&) { return false; },
      },
      a->node, b->node);
}

static void collect_free(const ExprPtr& e, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  if (!e) return;
  std::visit(
      overloaded{
          [&](const VarE& v) {
            if (!bound.count(v.name)) out.insert(v.name);
          },
          [&](const LamE& l) {
            bool fresh = bound.insert(l.param).second;
            collect_free(l.body, bound, out);
            if (fresh) bound.erase(l.param);
          },
          [&](const AppE& a) {
            collect_free(a.fn, bound, out);
            collect_free(a.arg, bound, out);
          },
          [&](const SendE& s) { collect_free(s.value, bound, out); },
          [&](const RecvE& r) {
            bool fresh = bound.insert(r.var).second;
            collect_free(r.body, bound, out);
            if (fresh) bound.erase(r.var);
          },
          [&](const StableE& s) { collect_free(s.body, bound, out); },
          [&](const BacktrackE& b) { collect_free(b.body, bound, out); },
          [&](const StableActiveE& s) { collect_free(s.body, bound, out); },
          [&](const SendActiveE& s) { collect_free(s.value, bound, out); },
          [&](const auto&) {},
      },
      e->node);
}

std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> bound, out;
  collect_free(e, bound, out);
  return out;
}

static void render(const ExprPtr& e, std::ostream& os) {
  std::visit(
      overloaded{
          [&](const UnitE&) { os << "unit"; },
          [&](const IntE& i) { os << i.value; },
          [&](const PrimE& p) { os << prim_symbol(p.op); },
          [&](const VarE& v) { os << v.name; },
          [&](const LamE& l) {
            os << "(lam " << l.param << " ";
            render(l.body, os);
            os << ")";
          },
          [&](const AppE& a) {
            // (app (app <prim> x) y) renders as (<prim> x y).
            if (const auto* inner = expr_as<AppE>(a.fn)) {
              if (const auto* p = expr_as<PrimE>(inner->fn)) {
                os << "(" << prim_symbol(p->op) << " ";
                render(inner->arg, os);
                os << " ";
                render(a.arg, os);
                os << ")";
                return;
              }
            }
            os << "(app ";
            render(a.fn, os);
            os << " ";
            render(a.arg, os);
            os << ")";
          },
          [&](const SendE& s) {
            os << "(send " << s.chan << " ";
            render(s.value, os);
            os << ")";
          },
          [&](const RecvE& r) {
            os << "(recv " << r.var << " " << r.chan << " ";
            render(r.body, os);
            os << ")";
          },
          [&](const StableE& s) {
            os << "(stable ";
            render(s.body, os);
            os << ")";
          },
          [&](const BacktrackE& b) {
            os << "(backtrack ";
            render(b.body, os);
            os << ")";
          },
          [&](const StableActiveE& s) {
            os << "(stable-active ";
            render(s.body, os);
            os << ")";
          },
          [&](const SendActiveE& s) {
            os << "(send-active " << s.chan << " ";
            render(s.value, os);
            os << ")";
          },
          [&](const HoleE&) { os << "<>"; },
      },
      e->node);
}

std::string to_text(const ExprPtr& e) {
  if (!e) return "<null>";
  std::ostringstream os;
  render(e, os);
  return os.str();
}

std::string fresh_name(const std::string& base) {
  static std::atomic<unsigned long long> counter{0};
  // '$' cannot appear in a source identifier, so generated names never clash.
  return base + "$" + std::to_string(counter.fetch_add(1) + 1);
}

}  // namespace rcsp
