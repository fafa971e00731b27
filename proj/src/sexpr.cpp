#include "rcsp/sexpr.hpp"

#include <sstream>

namespace rcsp {

namespace {

struct Reader {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Reader(const std::string& t) : text(t) {}

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_blanks() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return c != '(' && c != ')' && c != ';' && c != ' ' && c != '\t' && c != '\r' && c != '\n';
  }

  std::string where() const { return std::to_string(line) + ":" + std::to_string(col); }

  Result<SExprPtr> read_one() {
    skip_blanks();
    if (eof()) return Error{Errc::ParseError, where() + ": unexpected end of input"};
    auto node = std::make_shared<SExpr>();
    node->line = line;
    node->col = col;
    if (peek() == ')') {
      return Error{Errc::ParseError, where() + ": unmatched ')'"};
    }
    if (peek() == '(') {
      advance();
      for (;;) {
        skip_blanks();
        if (eof()) {
          return Error{Errc::ParseError, std::to_string(node->line) + ":" +
                                             std::to_string(node->col) + ": unclosed '('"};
        }
        if (peek() == ')') {
          advance();
          return SExprPtr(node);
        }
        auto item = read_one();
        if (!item.ok()) return item.error();
        node->items.push_back(*item);
      }
    }
    node->is_atom = true;
    while (!eof() && atom_char(peek())) {
      node->atom.push_back(peek());
      advance();
    }
    return SExprPtr(node);
  }
};

}  // namespace

Result<std::vector<SExprPtr>> read_sexprs(const std::string& text) {
  Reader rd(text);
  std::vector<SExprPtr> out;
  for (;;) {
    rd.skip_blanks();
    if (rd.eof()) return out;
    auto one = rd.read_one();
    if (!one.ok()) return one.error();
    out.push_back(*one);
  }
}

std::string to_text(const SExpr& s) {
  if (s.is_atom) return s.atom;
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.items.size(); ++i) {
    if (i) os << " ";
    os << to_text(*s.items[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace rcsp
