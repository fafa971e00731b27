#include "rcsp/config.hpp"

#include <algorithm>
#include <sstream>

namespace rcsp {

bool frame_equal(const Frame& a, const Frame& b) {
  return a.cont == b.cont && expr_equal(a.resume_value, b.resume_value) &&
         a.time == b.time && a.saved == b.saved;
}

bool proc_equal(const ProcState& a, const ProcState& b) {
  if (a.id != b.id || a.time != b.time || !expr_equal(a.expr, b.expr)) return false;
  if (a.stack.size() != b.stack.size()) return false;
  for (size_t i = 0; i < a.stack.size(); ++i)
    if (!frame_equal(a.stack[i], b.stack[i])) return false;
  return true;
}

template <typename Cfg>
static ProcState* find_proc_impl(Cfg& c, const std::string& id) {
  for (auto& p : c.procs)
    if (p.id == id) return &p;
  return nullptr;
}

ProcState* ConfigHL::find_proc(const std::string& id) { return find_proc_impl(*this, id); }
const ProcState* ConfigHL::find_proc(const std::string& id) const {
  return find_proc_impl(const_cast<ConfigHL&>(*this), id);
}
ProcState* ConfigLL::find_proc(const std::string& id) { return find_proc_impl(*this, id); }
const ProcState* ConfigLL::find_proc(const std::string& id) const {
  return find_proc_impl(const_cast<ConfigLL&>(*this), id);
}

bool config_equal(const ConfigHL& a, const ConfigHL& b) {
  if (a.procs.size() != b.procs.size() || a.channels.size() != b.channels.size())
    return false;
  for (auto it = a.channels.begin(), jt = b.channels.begin(); it != a.channels.end();
       ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (it->second.sender != jt->second.sender ||
        it->second.receiver != jt->second.receiver ||
        it->second.time != jt->second.time)
      return false;
  }
  for (size_t i = 0; i < a.procs.size(); ++i)
    if (!proc_equal(a.procs[i], b.procs[i])) return false;
  return true;
}

bool config_equal(const ConfigLL& a, const ConfigLL& b) {
  if (a.procs.size() != b.procs.size() || a.channels.size() != b.channels.size())
    return false;
  for (auto it = a.channels.begin(), jt = b.channels.begin(); it != a.channels.end();
       ++it, ++jt) {
    if (it->first != jt->first || !channel_equal(it->second, jt->second)) return false;
  }
  for (size_t i = 0; i < a.procs.size(); ++i)
    if (!proc_equal(a.procs[i], b.procs[i])) return false;
  return true;
}

ExprPtr wrap_body(const ExprPtr& body) {
  return mk::app(mk::stable(mk::lam("_boot", body)), mk::unit());
}

static std::vector<ProcState> initial_procs(const Program& p) {
  std::vector<ProcState> procs;
  for (const auto& [name, body] : p.processes)
    procs.push_back(ProcState{name, 0, {}, wrap_body(body)});
  std::sort(procs.begin(), procs.end(),
            [](const ProcState& a, const ProcState& b) { return a.id < b.id; });
  return procs;
}

ConfigHL initial_hl(const Program& p) {
  ConfigHL c;
  for (const auto& d : p.channels) c.channels[d.name] = ChanHL{d.sender, d.receiver, 0};
  c.procs = initial_procs(p);
  return c;
}

ConfigLL initial_ll(const Program& p) {
  ConfigLL c;
  for (const auto& d : p.channels) {
    ChannelLL ch;
    ch.s.owner = d.sender;
    ch.r.owner = d.receiver;
    c.channels[d.name] = ch;
  }
  c.procs = initial_procs(p);
  return c;
}

template <typename Cfg>
static std::vector<std::string> channels_of_impl(const Cfg& c, const std::string& proc) {
  std::vector<std::string> out;
  for (const auto& [name, ch] : c.channels) {
    if constexpr (std::is_same_v<Cfg, ConfigHL>) {
      if (ch.sender == proc || ch.receiver == proc) out.push_back(name);
    } else {
      if (ch.s.owner == proc || ch.r.owner == proc) out.push_back(name);
    }
  }
  return out;  // map iteration is already sorted
}

std::vector<std::string> channels_of(const ConfigHL& c, const std::string& proc) {
  return channels_of_impl(c, proc);
}
std::vector<std::string> channels_of(const ConfigLL& c, const std::string& proc) {
  return channels_of_impl(c, proc);
}

std::string to_text(const Frame& f) {
  std::ostringstream out;
  out << "(K=" << to_text(f.cont) << ", v=" << to_text(f.resume_value) << ", t=" << f.time
      << ", {";
  bool first = true;
  for (const auto& [chan, t] : f.saved) {
    if (!first) out << ",";
    first = false;
    out << chan << "=" << t;
  }
  out << "})";
  return out.str();
}

static void proc_text(std::ostringstream& out, const ProcState& p) {
  out << "proc " << p.id << "@" << p.time << " stack=[";
  for (size_t i = 0; i < p.stack.size(); ++i) {
    if (i) out << ";";
    out << to_text(p.stack[i]);
  }
  out << "] expr=" << to_text(p.expr) << "\n";
}

std::string to_text(const ConfigHL& c) {
  std::ostringstream out;
  for (const auto& [name, ch] : c.channels)
    out << "chan " << name << " sender=" << ch.sender << " t=" << ch.time
        << " receiver=" << ch.receiver << "\n";
  for (const auto& p : c.procs) proc_text(out, p);
  return out.str();
}

std::string to_text(const ConfigLL& c) {
  std::ostringstream out;
  for (const auto& [name, ch] : c.channels) out << "chan " << name << " " << dump(ch) << "\n";
  for (const auto& p : c.procs) proc_text(out, p);
  return out.str();
}

template <typename Cfg>
static bool is_terminated_impl(const Cfg& c) {
  for (const auto& p : c.procs)
    if (!p.stack.empty() || !is_value(p.expr)) return false;
  return true;
}

bool is_terminated(const ConfigHL& c) { return is_terminated_impl(c); }
bool is_terminated(const ConfigLL& c) { return is_terminated_impl(c); }

}  // namespace rcsp
