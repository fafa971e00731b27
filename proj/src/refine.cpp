#include "rcsp/refine.hpp"

#include "rcsp/eval.hpp"
#include "rcsp/hl.hpp"
#include "rcsp/ll.hpp"

namespace rcsp {
namespace refine {

Result<ConfigHL> map_config(const ConfigLL& c) {
  ConfigHL out;
  for (const auto& [name, ch] : c.channels)
    out.channels[name] = ChanHL{ch.s.owner, ch.r.owner, ch.r.t};
  for (const auto& p : c.procs) {
    ProcState q = p;
    auto d = decompose(p.expr);
    if (auto* dec = std::get_if<Decomposition>(&d)) {
      if (auto* sa = std::get_if<RedexSendActive>(&dec->redex)) {
        auto it = c.channels.find(sa->chan);
        if (it == c.channels.end())
          return Error{Errc::UnmappableState,
                       p.id + " has an in-flight send on unknown channel " + sa->chan};
        const ChannelLL& ch = it->second;
        if (ch.s.owner != p.id)
          return Error{Errc::UnmappableState,
                       p.id + " has an in-flight send on " + sa->chan +
                           " but does not own the sending half"};
        if (!ch.sender_holds_token() || ch.s.t > ch.r.t) {
          q.expr = plug(dec->ctx, mk::send(sa->chan, sa->value));
        } else {
          q.expr = plug(dec->ctx, mk::unit());
          q.time = ch.r.t;
        }
      }
    }
    out.procs.push_back(std::move(q));
  }
  return out;
}

std::string to_text(const Classification& cl) {
  std::string out = rule_name(cl.ll_rule);
  out += " => ";
  out += cl.hl_rule ? rule_name(*cl.hl_rule) : "stutter";
  return out;
}

namespace {

std::optional<Rule> image_rule(Rule r) {
  switch (r) {
    case Rule::L2: return Rule::H2;
    case Rule::L6: return Rule::H6;
    case Rule::H1: return Rule::H1;
    case Rule::H3: return Rule::H3;
    case Rule::H4: return Rule::H4;
    case Rule::H5: return Rule::H5;
    case Rule::H7: return Rule::H7;
    case Rule::H8: return Rule::H8;
    default: return std::nullopt;
  }
}

}  // namespace

Result<Classification> classify_step(const ConfigLL& pre, const Instance& inst,
                                     const ConfigLL& post, const Event& event) {
  auto fpre = map_config(pre);
  if (!fpre) return fpre.error();
  auto fpost = map_config(post);
  if (!fpost) return fpost.error();

  Classification cl{inst.rule, image_rule(inst.rule)};
  if (!cl.hl_rule) {
    if (event.kind != Event::Kind::Silent)
      return Error{Errc::Mismatch,
                   to_text(inst) + " should be silent but emitted " + to_text(event)};
    if (!config_equal(*fpre, *fpost))
      return Error{Errc::Mismatch, to_text(inst) + " moved the image:\n  before: " +
                                       to_text(*fpre) + "\n  after:  " + to_text(*fpost)};
    return cl;
  }

  Instance himage = inst;
  himage.rule = *cl.hl_rule;
  himage.flag.reset();
  if (*cl.hl_rule == Rule::H2 || *cl.hl_rule == Rule::H6) himage.time = event.time;
  auto stepped = hl::apply(*fpre, himage);
  if (!stepped)
    return Error{Errc::Mismatch, to_text(inst) + ": image step " + to_text(himage) +
                                     " does not apply: " + stepped.error().to_text()};
  if (!event_equal(stepped->event, event))
    return Error{Errc::Mismatch, to_text(inst) + ": image emitted " +
                                     to_text(stepped->event) + " but the step emitted " +
                                     to_text(event)};
  if (!config_equal(stepped->config, *fpost))
    return Error{Errc::Mismatch,
                 to_text(inst) + ": image step " + to_text(himage) +
                     " lands elsewhere:\n  image:  " + to_text(stepped->config) +
                     "\n  actual: " + to_text(*fpost)};
  return cl;
}

namespace {

// True when the schedule still applies end to end and still trips a
// classification failure somewhere.
bool reproduces(const ConfigLL& start, const std::vector<Instance>& sched) {
  ConfigLL c = start;
  bool violated = false;
  for (const auto& inst : sched) {
    auto stepped = ll::apply(c, inst);
    if (!stepped) return false;
    if (!classify_step(c, inst, stepped->config, stepped->event)) violated = true;
    c = std::move(stepped->config);
  }
  return violated;
}

std::vector<Instance> shrink(const ConfigLL& start, std::vector<Instance> sched) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < sched.size(); ++i) {
      std::vector<Instance> trial = sched;
      trial.erase(trial.begin() + static_cast<long>(i));
      if (reproduces(start, trial)) {
        sched = std::move(trial);
        changed = true;
        break;
      }
    }
  }
  return sched;
}

}  // namespace

TraceReport check_trace(const ConfigLL& start, const std::vector<Instance>& schedule) {
  TraceReport report;
  ConfigLL c = start;
  std::vector<Instance> seen;
  for (const auto& inst : schedule) {
    seen.push_back(inst);
    auto stepped = ll::apply(c, inst);
    if (!stepped) {
      report.ok = false;
      report.violations.push_back("step " + std::to_string(seen.size() - 1) + " (" +
                                  to_text(inst) +
                                  ") does not apply: " + stepped.error().to_text());
      report.counterexample = seen;
      return report;
    }
    auto cl = classify_step(c, inst, stepped->config, stepped->event);
    if (!cl) {
      report.ok = false;
      report.violations.push_back("step " + std::to_string(seen.size() - 1) + ": " +
                                  cl.error().detail);
      report.counterexample = shrink(start, seen);
      return report;
    }
    report.lines.push_back(to_text(*cl));
    c = std::move(stepped->config);
  }
  return report;
}

TraceReport check_trace(const Program& program, const std::vector<Instance>& schedule) {
  return check_trace(initial_ll(program), schedule);
}

}  // namespace refine
}  // namespace rcsp
