#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rcsp/result.hpp"
#include "rcsp/syntax.hpp"

namespace rcsp {

// Evaluation context frames, outermost first. A context is one path from the
// root of an expression down to the hole.
struct FApp1 {
  ExprPtr arg;  // [] e
};
struct FApp2 {
  ExprPtr fn;  // v []
};
struct FSend {
  std::string chan;  // send c []
};
struct FStable {};        // stable []
struct FStableActive {};  // active region around []
struct FBacktrack {};     // backtrack []

using CtxFrame = std::variant<FApp1, FApp2, FSend, FStable, FStableActive, FBacktrack>;

struct EvalContext {
  std::vector<CtxFrame> frames;
  bool operator==(const EvalContext& other) const;
};

ExprPtr plug(const EvalContext& ctx, ExprPtr e);
std::string to_text(const EvalContext& ctx);

// Redex shapes.
struct RedexBeta {
  ExprPtr fn;  // LamE
  ExprPtr arg;
};
struct RedexPrim {
  PrimOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct RedexSend {
  std::string chan;
  ExprPtr value;
};
struct RedexRecv {
  std::string var;
  std::string chan;
  ExprPtr body;
};
struct RedexEnterStable {
  ExprPtr stable_fn;  // StableE wrapping LamE
  ExprPtr arg;
};
struct RedexExitStable {
  ExprPtr value;
};
struct RedexBacktrack {
  ExprPtr value;
};
struct RedexSendActive {
  std::string chan;
  ExprPtr value;
};

using Redex = std::variant<RedexBeta, RedexPrim, RedexSend, RedexRecv, RedexEnterStable,
                           RedexExitStable, RedexBacktrack, RedexSendActive>;

ExprPtr redex_to_expr(const Redex& r);

struct Decomposition {
  EvalContext ctx;
  Redex redex;
};
struct AlreadyValue {};

// Unique decomposition of a closed expression into context and redex.
// Returns AlreadyValue for values and Stuck when the expression contains a
// runtime type error in redex position (for example applying an integer).
using DecomposeOutcome = std::variant<Decomposition, AlreadyValue, Error>;
DecomposeOutcome decompose(const ExprPtr& e);

// Convenience wrapper for callers that require a redex.
Result<Decomposition> decompose_redex(const ExprPtr& e);

// Capture-avoiding substitution of `value` for free occurrences of `name`.
ExprPtr subst(const ExprPtr& e, const ExprPtr& value, const std::string& name);

// Binary primitive evaluation. Geq yields an encoded boolean selector
// (lam a (lam b a)) or (lam a (lam b b)) so programs can branch by applying
// the result to two thunks.
Result<ExprPtr> apply_prim(PrimOp op, const ExprPtr& lhs, const ExprPtr& rhs);
ExprPtr encoded_true();
ExprPtr encoded_false();

}  // namespace rcsp
