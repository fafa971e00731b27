#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rcsp/result.hpp"

namespace rcsp {

// Minimal s-expression reader with source positions, ';' line comments.
struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExprPtr> items;
  int line = 0;
  int col = 0;
};

Result<std::vector<SExprPtr>> read_sexprs(const std::string& text);

std::string to_text(const SExpr& s);

}  // namespace rcsp
