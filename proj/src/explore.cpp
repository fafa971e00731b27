#include "rcsp/explore.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "rcsp/eval.hpp"
#include "rcsp/ll.hpp"
#include "rcsp/refine.hpp"

namespace rcsp {
namespace explore {

namespace {

ChannelLL canonical(const ChannelLL& ch) {
  std::set<Time> ts{0, ch.s.t, ch.r.t};
  std::map<Time, Time> rank;
  Time next = 0;
  for (Time t : ts) rank[t] = next++;
  ChannelLL n = ch;
  n.s.t = rank[ch.s.t];
  n.r.t = rank[ch.r.t];
  return n;
}

struct ProtoEdge {
  std::string label;
  ChannelLL post;
};

// Whether the sender holds the token before and after each transition.
struct TokenShape {
  bool pre;
  bool post;
};

std::vector<std::pair<std::string, Result<ChannelLL>>> proto_moves(const ChannelLL& ch,
                                                                   Time bound,
                                                                   unsigned vals,
                                                                   Fault fault) {
  std::vector<std::pair<std::string, Result<ChannelLL>>> out;
  for (Time t = 1; t <= bound; ++t)
    for (unsigned v = 0; v < vals; ++v)
      out.emplace_back("t1 t=" + std::to_string(t) + " v=" + std::to_string(v),
                       t1_fwd_request(ch, t, mk::integer(static_cast<long long>(v))));
  for (Time t = 0; t <= bound; ++t)
    out.emplace_back("t2 t=" + std::to_string(t), t2_fwd_ack(ch, t, fault));
  out.emplace_back("t3", t3_fwd_refuse(ch));
  for (Time t = 0; t <= bound; ++t)
    out.emplace_back("t4 t=" + std::to_string(t), t4_back_request(ch, t));
  out.emplace_back("t5 back", t5_back_ack(ch, false, fault));
  out.emplace_back("t5 fwd", t5_back_ack(ch, true, fault));
  out.emplace_back("t6", t6_retract_request(ch));
  out.emplace_back("t7 keep", t7_retract_allow(ch, false, fault));
  out.emplace_back("t7 back", t7_retract_allow(ch, true, fault));
  out.emplace_back("t8", t8_rcv_signal_back(ch));
  return out;
}

TokenShape token_shape(const std::string& label) {
  switch (label[1]) {
    case '1': return {true, false};
    case '2': return {false, true};
    case '3': return {false, true};
    case '4': return {true, false};
    case '5': return {false, true};
    case '6': return {false, false};
    case '7': return {false, true};
    default: return {true, true};  // t8
  }
}

std::string proto_check(const ChannelLL& pre, const std::string& label,
                        const ChannelLL& post) {
  TokenShape shape = token_shape(label);
  if (pre.sender_holds_token() != shape.pre)
    return "token on the wrong side before " + label;
  if (post.sender_holds_token() != shape.post)
    return "token did not move as " + label + " requires";
  if (post.sender_holds_token() && ((post.s.t <= post.r.t) != post.sync))
    return "shadow bit disagrees with acknowledgment order after " + label;
  bool rewind_ack = label.rfind("t5", 0) == 0;
  if (!rewind_ack && post.r.t < pre.r.t)
    return "receiver clock moved backward on " + label;
  return "";
}

}  // namespace

Result<ProtocolReport> explore_protocol(Time time_bound, unsigned value_domain_size,
                                        Fault fault) {
  if (time_bound == 0 || time_bound > 32)
    return Error{Errc::BoundsTooLarge, "clock bound must lie in 1..32"};
  if (value_domain_size == 0) value_domain_size = 1;
  if (value_domain_size > 16)
    return Error{Errc::BoundsTooLarge, "value domain capped at 16"};
  constexpr size_t kMaxStates = 200000;

  ChannelLL init;
  init.s.owner = "s";
  init.r.owner = "r";

  ProtocolReport rep;
  std::map<std::string, size_t> ids;
  std::vector<ChannelLL> states;
  std::vector<std::pair<size_t, std::string>> parent;  // (predecessor id, label)
  std::deque<size_t> queue;

  auto intern = [&](const ChannelLL& ch, size_t from,
                    const std::string& label) -> Result<size_t> {
    ChannelLL canon = canonical(ch);
    std::string key = dump(canon);
    auto [it, fresh] = ids.emplace(key, states.size());
    if (fresh) {
      if (states.size() >= kMaxStates)
        return Error{Errc::BoundsTooLarge, "protocol state cap exceeded"};
      states.push_back(canon);
      parent.emplace_back(from, label);
      queue.push_back(it->second);
    }
    return it->second;
  };

  auto seed = intern(init, 0, "");
  if (!seed) return seed.error();

  auto fail = [&](size_t pre_id, const std::string& label, const ChannelLL& post,
                  const std::string& why) {
    rep.violations.push_back(why);
    std::vector<std::string> path;
    path.push_back(label + " -> " + dump(post));
    for (size_t at = pre_id; parent[at].second != ""; at = parent[at].first)
      path.push_back(parent[at].second + " -> " + dump(states[at]));
    path.push_back("init: " + dump(init));
    std::reverse(path.begin(), path.end());
    rep.counterexample = std::move(path);
  };

  while (!queue.empty()) {
    size_t id = queue.front();
    queue.pop_front();
    ChannelLL pre = states[id];
    for (auto& [label, next] : proto_moves(pre, time_bound, value_domain_size, fault)) {
      if (!next) continue;
      ++rep.edges;
      std::string why = proto_check(pre, label, *next);
      if (!why.empty()) {
        fail(id, label, *next, why);
        rep.states = states.size();
        return rep;
      }
      auto interned = intern(*next, id, label);
      if (!interned) return interned.error();
    }
  }
  rep.states = states.size();
  return rep;
}

namespace {

bool backtracking(const ProcState& p) {
  auto d = decompose_redex(p.expr);
  return d.ok() && std::holds_alternative<RedexBacktrack>(d->redex);
}

std::optional<std::string> in_flight_chan(const ProcState& p) {
  auto d = decompose_redex(p.expr);
  if (!d) return std::nullopt;
  if (auto* sa = std::get_if<RedexSendActive>(&d->redex)) return sa->chan;
  return std::nullopt;
}

}  // namespace

std::vector<std::string> check_invariants(const ConfigHL& c) {
  std::vector<std::string> out;
  for (const auto& p : c.procs) {
    for (size_t i = 0; i + 1 < p.stack.size(); ++i)
      if (p.stack[i].time >= p.stack[i + 1].time)
        out.push_back(p.id + ": checkpoint clocks not strictly increasing");
    if (backtracking(p)) continue;
    if (!p.stack.empty()) {
      for (const auto& [chan, saved] : p.stack.back().saved) {
        auto it = c.channels.find(chan);
        if (it == c.channels.end()) {
          out.push_back(p.id + ": checkpoint mentions unknown channel " + chan);
          continue;
        }
        if (it->second.time < saved)
          out.push_back(p.id + "/" + chan + ": channel clock behind the newest checkpoint");
      }
    }
    for (const auto& [name, ch] : c.channels)
      if ((ch.sender == p.id || ch.receiver == p.id) && p.time < ch.time)
        out.push_back(p.id + "/" + name + ": process clock behind the channel clock");
  }
  return out;
}

std::vector<std::string> check_invariants(const ConfigLL& c) {
  std::vector<std::string> out;
  auto img = refine::map_config(c);
  if (!img) {
    out.push_back("no image: " + img.error().to_text());
  } else {
    auto sub = check_invariants(*img);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  for (const auto& [name, ch] : c.channels) {
    const ProcState* sp = c.find_proc(ch.s.owner);
    std::optional<std::string> sa = sp ? in_flight_chan(*sp) : std::optional<std::string>{};
    bool offering = sa && *sa == name;
    if (ch.s.d == Dir::I && !offering)
      out.push_back(name + ": retract flag without a matching in-flight send");
    const ProcState* rp = c.find_proc(ch.r.owner);
    if (rp && !ch.sender_holds_token() && (ch.s.d == Dir::F || ch.s.d == Dir::I) &&
        ch.r.d == Dir::F) {
      auto d = decompose_redex(rp->expr);
      const RedexRecv* rv = d.ok() ? std::get_if<RedexRecv>(&d->redex) : nullptr;
      if (rv && rv->chan == name && !offering)
        out.push_back(name + ": receiver could take a value the sender is not offering");
    }
  }
  return out;
}

namespace {

// Iterative Tarjan; returns the strongly connected components of the graph.
std::vector<std::vector<size_t>> scc_of(const std::vector<std::vector<size_t>>& adj) {
  size_t n = adj.size();
  std::vector<size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<size_t> stack;
  std::vector<std::vector<size_t>> comps;
  size_t counter = 0;

  struct WorkItem {
    size_t v;
    size_t child;
  };
  for (size_t root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<WorkItem> work{{root, 0}};
    while (!work.empty()) {
      auto& [v, child] = work.back();
      if (child == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (child < adj[v].size()) {
        size_t w = adj[v][child++];
        if (index[w] == SIZE_MAX) {
          work.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        comps.emplace_back();
        size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comps.back().push_back(w);
        } while (w != v);
      }
      size_t vv = v;
      work.pop_back();
      if (!work.empty()) low[work.back().v] = std::min(low[work.back().v], low[vv]);
    }
  }
  return comps;
}

}  // namespace

Result<SystemReport> explore_system(const ConfigLL& start, unsigned depth, unsigned k) {
  if (depth > 999) return Error{Errc::BoundsTooLarge, "depth capped at 999"};
  if (k == 0) k = 1;
  if (k > 8) return Error{Errc::BoundsTooLarge, "clock slack capped at 8"};
  constexpr size_t kMaxStates = 300000;
  constexpr size_t kMaxViolations = 100;

  SystemReport rep;
  std::map<std::string, size_t> ids;
  std::vector<ConfigLL> states;
  std::vector<unsigned> dist;
  std::vector<bool> expanded;
  std::vector<std::vector<size_t>> adj;
  std::deque<size_t> queue;

  auto intern = [&](ConfigLL cfg, unsigned d) -> Result<size_t> {
    std::string key = to_text(cfg);
    auto [it, fresh] = ids.emplace(std::move(key), states.size());
    if (fresh) {
      if (states.size() >= kMaxStates)
        return Error{Errc::BoundsTooLarge, "system state cap exceeded"};
      states.push_back(std::move(cfg));
      dist.push_back(d);
      expanded.push_back(false);
      adj.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };

  auto seed = intern(start, 0);
  if (!seed) return seed.error();

  while (!queue.empty() && rep.violations.size() < kMaxViolations) {
    size_t id = queue.front();
    queue.pop_front();
    const ConfigLL snapshot = states[id];

    for (const auto& v : check_invariants(snapshot))
      rep.violations.push_back("state " + std::to_string(id) + ": " + v + "\n  " +
                               to_text(snapshot));

    for (const auto& [name, ch] : snapshot.channels) {
      if (ch.s.d != Dir::I || !ch.sender_holds_token()) continue;
      ++rep.pending_retract_states;
      bool can_complete = ll::l3_send_complete(snapshot, ch.s.owner, name).ok();
      bool can_retract = ll::l10_retract_complete(snapshot, ch.s.owner, name).ok();
      if (can_complete == can_retract)
        rep.violations.push_back("state " + std::to_string(id) + ": " + name +
                                 (can_complete ? ": both completion and retraction apply"
                                               : ": neither completion nor retraction applies") +
                                 "\n  " + to_text(snapshot));
      auto inferred = sender_infers_sync(ch);
      if (!inferred) {
        rep.violations.push_back("state " + std::to_string(id) + ": " + name +
                                 ": sender cannot infer the shadow bit while holding the token");
      } else {
        if (*inferred != can_complete)
          rep.violations.push_back("state " + std::to_string(id) + ": " + name +
                                   ": sender inference does not pick the enabled rule\n  " +
                                   to_text(snapshot));
        if (*inferred != ch.sync)
          rep.violations.push_back("state " + std::to_string(id) + ": " + name +
                                   ": sender inference disagrees with the shadow bit\n  " +
                                   to_text(snapshot));
      }
    }

    if (dist[id] >= depth) continue;
    expanded[id] = true;
    for (const auto& inst : ll::enabled(snapshot, k)) {
      auto stepped = ll::apply(snapshot, inst);
      if (!stepped) {
        rep.violations.push_back("state " + std::to_string(id) + ": enumerated step " +
                                 to_text(inst) +
                                 " does not apply: " + stepped.error().to_text());
        continue;
      }
      auto cl = refine::classify_step(snapshot, inst, stepped->config, stepped->event);
      if (!cl)
        rep.violations.push_back("state " + std::to_string(id) + ": " +
                                 cl.error().detail);
      else
        ++rep.classifications[refine::to_text(*cl)];
      if (config_equal(stepped->config, snapshot)) continue;
      auto target = intern(std::move(stepped->config), dist[id] + 1);
      if (!target) return target.error();
      ++rep.edges;
      adj[id].push_back(*target);
    }
  }
  rep.states = states.size();

  for (size_t id = 0; id < states.size(); ++id)
    if (expanded[id] && adj[id].empty() && !is_terminated(states[id]))
      rep.deadlocks.push_back(to_text(states[id]));

  auto comps = scc_of(adj);
  for (const auto& comp : comps) {
    bool cyclic = comp.size() > 1;
    bool closed = true;
    bool terminal = false;
    std::set<size_t> members(comp.begin(), comp.end());
    for (size_t v : comp) {
      if (!expanded[v]) closed = false;
      if (is_terminated(states[v])) terminal = true;
      for (size_t w : adj[v]) {
        if (!members.count(w)) closed = false;
        if (w == v) cyclic = true;
      }
    }
    if (cyclic && closed && !terminal)
      rep.livelocks.push_back("cycle of " + std::to_string(comp.size()) +
                              " states through\n  " + to_text(states[comp.front()]));
  }
  return rep;
}

Result<SystemReport> explore_system(const Program& program, unsigned depth, unsigned k) {
  return explore_system(initial_ll(program), depth, k);
}

}  // namespace explore
}  // namespace rcsp
