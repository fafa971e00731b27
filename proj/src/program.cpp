#include "rcsp/program.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "rcsp/sexpr.hpp"

namespace rcsp {

namespace {

std::string at(const SExpr& s) {
  return std::to_string(s.line) + ":" + std::to_string(s.col) + ": ";
}

bool is_integer_token(const std::string& a) {
  size_t i = (a.size() > 1 && (a[0] == '-' || a[0] == '+')) ? 1 : 0;
  if (i >= a.size()) return false;
  for (; i < a.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(a[i]))) return false;
  }
  return true;
}

const std::set<std::string> kReserved = {
    "lam",  "app",    "send",          "recv",        "stable", "backtrack",
    "unit", "system", "chan",          "proc",        "+",      "-",
    ">=",   "<>",     "stable-active", "send-active",
};

bool internal_form_token(const std::string& a) {
  return a == "stable-active" || a == "send-active" || a == "<>";
}

Result<std::string> parse_name(const SExpr& s, const char* what) {
  if (!s.is_atom) {
    return Error{Errc::ParseError, at(s) + "expected " + what + ", got a list"};
  }
  if (internal_form_token(s.atom)) {
    return Error{Errc::ParseError, at(s) + "internal form '" + s.atom + "' not allowed in source"};
  }
  if (kReserved.count(s.atom) || is_integer_token(s.atom)) {
    return Error{Errc::ParseError, at(s) + "'" + s.atom + "' cannot be used as a " + what};
  }
  return s.atom;
}

Result<ExprPtr> parse_expr(const SExpr& s) {
  if (s.is_atom) {
    const std::string& a = s.atom;
    if (a == "unit") return mk::unit();
    if (is_integer_token(a)) return mk::integer(std::stoll(a));
    if (a == "+") return mk::prim(PrimOp::Add);
    if (a == "-") return mk::prim(PrimOp::Sub);
    if (a == ">=") return mk::prim(PrimOp::Geq);
    if (internal_form_token(a)) {
      return Error{Errc::ParseError, at(s) + "internal form '" + a + "' not allowed in source"};
    }
    if (kReserved.count(a)) {
      return Error{Errc::ParseError, at(s) + "reserved word '" + a + "' is not an expression"};
    }
    return mk::var(a);
  }
  if (s.items.empty()) {
    return Error{Errc::ParseError, at(s) + "empty form"};
  }
  const SExpr& head = *s.items[0];
  if (!head.is_atom) {
    return Error{Errc::ParseError, at(head) + "form must start with a keyword"};
  }
  const std::string& kw = head.atom;
  auto want = [&](size_t n) -> Result<ExprPtr> {
    return Error{Errc::ParseError, at(s) + "(" + kw + " ...) takes " + std::to_string(n) +
                                       " argument" + (n == 1 ? "" : "s") + ", got " +
                                       std::to_string(s.items.size() - 1)};
  };
  if (kw == "lam") {
    if (s.items.size() != 3) return want(2);
    auto param = parse_name(*s.items[1], "parameter name");
    if (!param.ok()) return param.error();
    auto body = parse_expr(*s.items[2]);
    if (!body.ok()) return body.error();
    return mk::lam(*param, *body);
  }
  if (kw == "app") {
    if (s.items.size() != 3) return want(2);
    auto fn = parse_expr(*s.items[1]);
    if (!fn.ok()) return fn.error();
    auto arg = parse_expr(*s.items[2]);
    if (!arg.ok()) return arg.error();
    return mk::app(*fn, *arg);
  }
  if (kw == "send") {
    if (s.items.size() != 3) return want(2);
    auto chan = parse_name(*s.items[1], "channel name");
    if (!chan.ok()) return chan.error();
    auto value = parse_expr(*s.items[2]);
    if (!value.ok()) return value.error();
    return mk::send(*chan, *value);
  }
  if (kw == "recv") {
    if (s.items.size() != 4) return want(3);
    auto var = parse_name(*s.items[1], "binder name");
    if (!var.ok()) return var.error();
    auto chan = parse_name(*s.items[2], "channel name");
    if (!chan.ok()) return chan.error();
    auto body = parse_expr(*s.items[3]);
    if (!body.ok()) return body.error();
    return mk::recv(*var, *chan, *body);
  }
  if (kw == "stable") {
    if (s.items.size() != 2) return want(1);
    auto body = parse_expr(*s.items[1]);
    if (!body.ok()) return body.error();
    return mk::stable(*body);
  }
  if (kw == "backtrack") {
    if (s.items.size() != 2) return want(1);
    auto body = parse_expr(*s.items[1]);
    if (!body.ok()) return body.error();
    return mk::backtrack(*body);
  }
  if (kw == "+" || kw == "-" || kw == ">=") {
    if (s.items.size() != 3) return want(2);
    auto lhs = parse_expr(*s.items[1]);
    if (!lhs.ok()) return lhs.error();
    auto rhs = parse_expr(*s.items[2]);
    if (!rhs.ok()) return rhs.error();
    PrimOp op = kw == "+" ? PrimOp::Add : kw == "-" ? PrimOp::Sub : PrimOp::Geq;
    return mk::prim_app(op, *lhs, *rhs);
  }
  if (internal_form_token(kw)) {
    return Error{Errc::ParseError, at(head) + "internal form '" + kw + "' not allowed in source"};
  }
  return Error{Errc::ParseError, at(head) + "unknown form '" + kw + "'"};
}

}  // namespace

Result<ExprPtr> parse_expr_text(const std::string& text) {
  auto forms = read_sexprs(text);
  if (!forms.ok()) return forms.error();
  if (forms->size() != 1) {
    return Error{Errc::ParseError, "expected exactly one expression, got " +
                                       std::to_string(forms->size())};
  }
  return parse_expr(*(*forms)[0]);
}

Result<Program> parse_program(const std::string& text) {
  auto forms = read_sexprs(text);
  if (!forms.ok()) return forms.error();
  if (forms->size() != 1) {
    return Error{Errc::ParseError,
                 "expected exactly one (system ...) form, got " + std::to_string(forms->size())};
  }
  const SExpr& top = *(*forms)[0];
  if (top.is_atom || top.items.empty() || !top.items[0]->is_atom ||
      top.items[0]->atom != "system") {
    return Error{Errc::ParseError, at(top) + "program must be a (system ...) form"};
  }

  Program prog;
  std::set<std::string> chan_names;
  std::set<std::string> proc_names;
  std::vector<const SExpr*> chan_forms;

  for (size_t i = 1; i < top.items.size(); ++i) {
    const SExpr& item = *top.items[i];
    if (item.is_atom || item.items.empty() || !item.items[0]->is_atom) {
      return Error{Errc::ParseError, at(item) + "expected (chan ...) or (proc ...)"};
    }
    const std::string& kw = item.items[0]->atom;
    if (kw == "chan") {
      if (item.items.size() != 4) {
        return Error{Errc::ParseError,
                     at(item) + "(chan ...) takes name, sender, receiver"};
      }
      auto name = parse_name(*item.items[1], "channel name");
      if (!name.ok()) return name.error();
      auto snd = parse_name(*item.items[2], "process name");
      if (!snd.ok()) return snd.error();
      auto rcv = parse_name(*item.items[3], "process name");
      if (!rcv.ok()) return rcv.error();
      if (!chan_names.insert(*name).second) {
        return Error{Errc::ParseError, at(item) + "duplicate channel '" + *name + "'"};
      }
      prog.channels.push_back(ChannelDecl{*name, *snd, *rcv});
      chan_forms.push_back(&item);
    } else if (kw == "proc") {
      if (item.items.size() != 3) {
        return Error{Errc::ParseError, at(item) + "(proc ...) takes name and body"};
      }
      auto name = parse_name(*item.items[1], "process name");
      if (!name.ok()) return name.error();
      auto body = parse_expr(*item.items[2]);
      if (!body.ok()) return body.error();
      if (!proc_names.insert(*name).second) {
        return Error{Errc::ParseError, at(item) + "duplicate process '" + *name + "'"};
      }
      prog.processes.emplace_back(*name, *body);
    } else {
      return Error{Errc::ParseError, at(item) + "expected (chan ...) or (proc ...)"};
    }
  }

  if (prog.processes.empty()) {
    return Error{Errc::ParseError, at(top) + "program declares no processes"};
  }
  for (size_t i = 0; i < prog.channels.size(); ++i) {
    const ChannelDecl& cd = prog.channels[i];
    if (!proc_names.count(cd.sender)) {
      return Error{Errc::ParseError, at(*chan_forms[i]) + "channel '" + cd.name +
                                         "' sender '" + cd.sender +
                                         "' is not a declared process"};
    }
    if (!proc_names.count(cd.receiver)) {
      return Error{Errc::ParseError, at(*chan_forms[i]) + "channel '" + cd.name +
                                         "' receiver '" + cd.receiver +
                                         "' is not a declared process"};
    }
  }
  return prog;
}

std::string to_text(const Program& p) {
  std::ostringstream os;
  os << "(system";
  for (const auto& c : p.channels) {
    os << "\n  (chan " << c.name << " " << c.sender << " " << c.receiver << ")";
  }
  for (const auto& pr : p.processes) {
    os << "\n  (proc " << pr.first << " " << to_text(pr.second) << ")";
  }
  os << ")";
  return os.str();
}

}  // namespace rcsp
