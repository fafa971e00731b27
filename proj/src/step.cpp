#include "rcsp/step.hpp"

#include <sstream>

namespace rcsp {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::H1:
      return "h1";
    case Rule::H2:
      return "h2";
    case Rule::H3:
      return "h3";
    case Rule::H4:
      return "h4";
    case Rule::H5:
      return "h5";
    case Rule::H6:
      return "h6";
    case Rule::H7:
      return "h7";
    case Rule::H8:
      return "h8";
    case Rule::L1:
      return "l1";
    case Rule::L2:
      return "l2";
    case Rule::L3:
      return "l3";
    case Rule::L4:
      return "l4";
    case Rule::L5:
      return "l5";
    case Rule::L6:
      return "l6";
    case Rule::L7:
      return "l7";
    case Rule::L8:
      return "l8";
    case Rule::L9:
      return "l9";
    case Rule::L10:
      return "l10";
  }
  return "?";
}

bool event_equal(const Event& a, const Event& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Event::Kind::Silent) return true;
  if (a.chan != b.chan || a.time != b.time) return false;
  if (a.kind == Event::Kind::Comm) return expr_equal(a.value, b.value);
  return true;
}

std::string to_text(const Event& e) {
  std::ostringstream out;
  switch (e.kind) {
    case Event::Kind::Silent:
      out << "silent";
      break;
    case Event::Kind::Comm:
      out << "comm " << e.chan << "@" << e.time << " " << to_text(e.value);
      break;
    case Event::Kind::Rewind:
      out << "rewind " << e.chan << "@" << e.time;
      break;
  }
  return out.str();
}

std::string to_text(const Instance& i) {
  std::ostringstream out;
  out << rule_name(i.rule);
  if (!i.proc.empty()) out << " " << i.proc;
  if (!i.chan.empty()) out << " " << i.chan;
  if (i.time) out << " t=" << *i.time;
  if (i.flag) out << " flag=" << (*i.flag ? 1 : 0);
  return out.str();
}

bool instance_equal(const Instance& a, const Instance& b) {
  return a.rule == b.rule && a.proc == b.proc && a.chan == b.chan && a.time == b.time &&
         a.flag == b.flag;
}

}  // namespace rcsp
