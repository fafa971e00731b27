#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rcsp/result.hpp"
#include "rcsp/syntax.hpp"

namespace rcsp {

struct ChannelDecl {
  std::string name;
  std::string sender;
  std::string receiver;
};

struct Program {
  std::vector<ChannelDecl> channels;
  std::vector<std::pair<std::string, ExprPtr>> processes;
};

// Text format: (system (chan <name> <sender> <receiver>)* (proc <name> <expr>)+)
// Expressions: (lam x e), (app e e), (send c e), (recv x c e), (stable e),
// (backtrack e), integers, unit, (+ e e), (- e e), (>= e e).
Result<Program> parse_program(const std::string& text);

// Parses a single expression in the user syntax (no internal forms).
Result<ExprPtr> parse_expr_text(const std::string& text);

std::string to_text(const Program& p);

}  // namespace rcsp
