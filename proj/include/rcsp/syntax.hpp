#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

namespace rcsp {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class PrimOp { Add, Sub, Geq };

const char* prim_symbol(PrimOp op);

// Expression nodes. StableActiveE marks a stable region whose body is being
// evaluated, SendActiveE marks a send whose handshake is in flight. Both are
// run-time forms: the parser rejects them in source programs. HoleE exists
// only so evaluation contexts can be rendered as expressions.
struct UnitE {};
struct IntE {
  long long value = 0;
};
struct PrimE {
  PrimOp op;
};
struct VarE {
  std::string name;
};
struct LamE {
  std::string param;
  ExprPtr body;
};
struct AppE {
  ExprPtr fn;
  ExprPtr arg;
};
struct SendE {
  std::string chan;
  ExprPtr value;
};
struct RecvE {
  std::string var;
  std::string chan;
  ExprPtr body;
};
struct StableE {
  ExprPtr body;
};
struct BacktrackE {
  ExprPtr body;
};
struct StableActiveE {
  ExprPtr body;
};
struct SendActiveE {
  std::string chan;
  ExprPtr value;
};
struct HoleE {};

using ExprNode = std::variant<UnitE, IntE, PrimE, VarE, LamE, AppE, SendE, RecvE,
                              StableE, BacktrackE, StableActiveE, SendActiveE, HoleE>;

struct Expr {
  ExprNode node;
  explicit Expr(ExprNode n) : node(std::move(n)) {}
};

// Node constructors.
namespace mk {
ExprPtr unit();
ExprPtr integer(long long v);
ExprPtr prim(PrimOp op);
ExprPtr var(std::string name);
ExprPtr lam(std::string param, ExprPtr body);
ExprPtr app(ExprPtr fn, ExprPtr arg);
ExprPtr send(std::string chan, ExprPtr value);
ExprPtr recv(std::string var, std::string chan, ExprPtr body);
ExprPtr stable(ExprPtr body);
ExprPtr backtrack(ExprPtr body);
ExprPtr stable_active(ExprPtr body);
ExprPtr send_active(std::string chan, ExprPtr value);
ExprPtr hole();
// (op a b) via the usual application chain.
ExprPtr prim_app(PrimOp op, ExprPtr a, ExprPtr b);
// Evaluate a, discard it, then evaluate b.
ExprPtr seq(ExprPtr a, ExprPtr b);
}  // namespace mk

template <typename T>
const T* expr_as(const ExprPtr& e) {
  return e ? std::get_if<T>(&e->node) : nullptr;
}

// Values: constants, abstractions, stable-wrapped abstractions, and a binary
// primitive applied to its first argument. Bare variables count as values but
// never surface when evaluating closed programs.
bool is_value(const ExprPtr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

std::set<std::string> free_vars(const ExprPtr& e);

// Canonical s-expression rendering. Fully applied primitives print in the
// sugared form (+ a b); everything else prints as its source form.
std::string to_text(const ExprPtr& e);

// Globally fresh identifier, used when substitution must rename a binder.
std::string fresh_name(const std::string& base);

}  // namespace rcsp
