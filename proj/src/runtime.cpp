#include "rcsp/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

#include "rcsp/eval.hpp"
#include "rcsp/ll.hpp"

namespace rcsp {
namespace rt {

namespace {

// Control word layout, low to high:
//   ver(25) sync(1) r.d(2) r.b(1) r.t(16) s.d(2) s.b(1) s.t(16)
// The version field defeats ABA on the compare-and-swap; sixteen clock bits
// comfortably cover bounded runs.
constexpr std::uint64_t kVerMask = (1ull << 25) - 1;
constexpr std::uint64_t kTimeMask = (1ull << 16) - 1;

std::uint64_t pack(const ChannelLL& ch, std::uint64_t ver) {
  std::uint64_t w = ver & kVerMask;
  w |= std::uint64_t(ch.sync ? 1 : 0) << 25;
  w |= std::uint64_t(static_cast<unsigned>(ch.r.d)) << 26;
  w |= std::uint64_t(ch.r.b ? 1 : 0) << 28;
  w |= (ch.r.t & kTimeMask) << 29;
  w |= std::uint64_t(static_cast<unsigned>(ch.s.d)) << 45;
  w |= std::uint64_t(ch.s.b ? 1 : 0) << 47;
  w |= (ch.s.t & kTimeMask) << 48;
  return w;
}

void unpack(std::uint64_t w, ChannelLL& ch) {
  ch.sync = ((w >> 25) & 1) != 0;
  ch.r.d = static_cast<Dir>((w >> 26) & 3);
  ch.r.b = ((w >> 28) & 1) != 0;
  ch.r.t = (w >> 29) & kTimeMask;
  ch.s.d = static_cast<Dir>((w >> 45) & 3);
  ch.s.b = ((w >> 47) & 1) != 0;
  ch.s.t = (w >> 48) & kTimeMask;
}

struct ChanCell {
  std::string name;
  std::string sender;
  std::string receiver;
  std::atomic<std::uint64_t> word{0};
  ExprPtr value;  // written by the sender before its CAS, read after an acquire
};

struct Unit {
  std::string id;
  ProcState proc;
  std::mutex mu;
  std::atomic<bool> idle{false};
  std::mt19937_64 rng;
  std::vector<ChanCell*> cells;  // adjacent channels in name order
  std::thread th;
};

struct Slot {
  ChanCell* cell;
  std::uint64_t word;
};

bool partner_signal(const ConfigLL& c, const std::string& proc) {
  for (const auto& [name, ch] : c.channels) {
    (void)name;
    if (ch.s.owner == proc && ch.r.d == Dir::B) return true;
    if (ch.r.owner == proc && (ch.s.d == Dir::B || ch.s.d == Dir::I)) return true;
  }
  return false;
}

class Engine {
 public:
  Engine(const ConfigLL& init, std::uint64_t seed) {
    for (const auto& [name, ch] : init.channels) {
      auto cell = std::make_unique<ChanCell>();
      cell->name = name;
      cell->sender = ch.s.owner;
      cell->receiver = ch.r.owner;
      cell->word.store(pack(ch, 0), std::memory_order_relaxed);
      cell->value = ch.s.v;
      cells_.push_back(std::move(cell));
    }
    for (const auto& p : init.procs) {
      auto u = std::make_unique<Unit>();
      u->id = p.id;
      u->proc = p;
      u->rng.seed(seed * 0x9e3779b97f4a7c15ull + units_.size() + 1);
      for (auto& cell : cells_)
        if (cell->sender == p.id || cell->receiver == p.id) u->cells.push_back(cell.get());
      units_.push_back(std::move(u));
    }
  }

  Result<RunResult> run(std::chrono::milliseconds timeout) {
    try {
      for (auto& u : units_) u->th = std::thread([this, unit = u.get()] { unit_main(*unit); });
    } catch (const std::system_error& e) {
      stop_.store(true);
      cv_.notify_all();
      for (auto& u : units_)
        if (u->th.joinable()) u->th.join();
      return Error{Errc::SpawnFailure, e.what()};
    }

    auto deadline = std::chrono::steady_clock::now() + timeout;
    Outcome outcome = Outcome::Timeout;
    while (std::chrono::steady_clock::now() < deadline && !fatal_.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
      if (!all_idle()) continue;
      std::uint64_t before = progress_.load(std::memory_order_acquire);
      std::vector<std::unique_lock<std::mutex>> locks;
      locks.reserve(units_.size());
      for (auto& u : units_) locks.emplace_back(u->mu);
      if (!all_idle() || progress_.load(std::memory_order_acquire) != before) continue;
      ConfigLL snap = snapshot();
      // An idle flag can be a stale decision: a peer may have published a
      // step after this worker last looked. Only the policy recomputed on
      // the locked snapshot decides whether the system is really quiesced.
      bool policy_live = false;
      for (const auto& u : units_)
        if (ll::policy_action(snap, u->id)) {
          policy_live = true;
          break;
        }
      if (policy_live) {
        locks.clear();
        cv_.notify_all();
        continue;
      }
      // Spontaneous backtracks without a partner's signal are steps the
      // policy never takes, so they do not keep a quiesced system alive.
      std::vector<Instance> remaining;
      for (auto& inst : ll::enabled(snap, 1))
        if (inst.rule != Rule::H5 || partner_signal(snap, inst.proc))
          remaining.push_back(inst);
      if (remaining.empty()) {
        outcome = is_terminated(snap) ? Outcome::Terminated : Outcome::Stuck;
      } else {
        outcome = Outcome::Timeout;
        notes_.push_back("policy quiescent with steps still enabled, e.g. " +
                         rcsp::to_text(remaining.front()));
      }
      break;
    }

    stop_.store(true);
    cv_.notify_all();
    for (auto& u : units_)
      if (u->th.joinable()) u->th.join();

    RunResult res;
    res.outcome = outcome;
    res.final_config = snapshot();
    res.notes = notes_;
    std::sort(trace_.begin(), trace_.end(),
              [](const TraceRecord& a, const TraceRecord& b) { return a.seq < b.seq; });
    res.trace = std::move(trace_);
    return res;
  }

 private:
  bool all_idle() const {
    for (const auto& u : units_)
      if (!u->idle.load(std::memory_order_acquire)) return false;
    return true;
  }

  // Safe only while every unit is parked (their mutexes held or threads
  // joined): process states are thread-owned.
  ConfigLL snapshot() const {
    ConfigLL c;
    for (const auto& cell : cells_) {
      ChannelLL ch;
      ch.s.owner = cell->sender;
      ch.r.owner = cell->receiver;
      unpack(cell->word.load(std::memory_order_acquire), ch);
      ch.s.v = cell->value;
      c.channels.emplace(cell->name, std::move(ch));
    }
    for (const auto& u : units_) c.procs.push_back(u->proc);
    return c;
  }

  void build_views(Unit& u, std::vector<ll::ChanView>& views, std::vector<Slot>& slots) {
    views.clear();
    slots.clear();
    for (ChanCell* cell : u.cells) {
      ChannelLL ch;
      ch.s.owner = cell->sender;
      ch.r.owner = cell->receiver;
      std::uint64_t w = cell->word.load(std::memory_order_acquire);
      unpack(w, ch);
      bool is_sender = cell->sender == u.id;
      // The payload slot is safe to read for the sender (it is the only
      // writer) and for the receiver while the sender lacks the token.
      if (is_sender || !ch.sender_holds_token()) ch.s.v = cell->value;
      views.push_back({cell->name, is_sender, std::move(ch)});
      slots.push_back({cell, w});
    }
  }

  bool fire(Unit& u, const Instance& inst, const std::vector<ll::ChanView>& views,
            const std::vector<Slot>& slots) {
    ConfigLL mini;
    mini.procs.push_back(u.proc);
    for (const auto& v : views) mini.channels.emplace(v.name, v.ch);
    auto stepped = ll::apply(mini, inst);
    if (!stepped) return false;

    std::uint64_t myseq = seq_.fetch_add(1, std::memory_order_relaxed);
    if (!inst.chan.empty()) {
      size_t idx = 0;
      while (idx < views.size() && views[idx].name != inst.chan) ++idx;
      if (idx == views.size()) return false;
      const ChannelLL& before = views[idx].ch;
      const ChannelLL& after = stepped->config.channels.at(inst.chan);
      if (after.s.t > kTimeMask || after.r.t > kTimeMask) {
        fail("channel clock exceeds the packed range");
        return false;
      }
      ChanCell* cell = slots[idx].cell;
      if (cell->sender == u.id && after.s.v != before.s.v) cell->value = after.s.v;
      std::uint64_t expect = slots[idx].word;
      std::uint64_t desired = pack(after, (expect & kVerMask) + 1);
      if (!cell->word.compare_exchange_strong(expect, desired, std::memory_order_acq_rel,
                                              std::memory_order_acquire))
        return false;
    }
    u.proc = std::move(stepped->config.procs.front());

    std::lock_guard<std::mutex> tg(trace_mu_);
    trace_.push_back({myseq, inst, stepped->event});
    if (trace_.size() > kTraceCap) fail("trace cap exceeded");
    return true;
  }

  void fail(const std::string& why) {
    {
      std::lock_guard<std::mutex> g(notes_mu_);
      notes_.push_back(why);
    }
    fatal_.store(true);
    stop_.store(true);
    cv_.notify_all();
  }

  void jitter(Unit& u) {
    switch (u.rng() & 7) {
      case 0:
        std::this_thread::yield();
        break;
      case 1:
        std::this_thread::sleep_for(std::chrono::microseconds(u.rng() % 40));
        break;
      default:
        break;
    }
  }

  void unit_main(Unit& u) {
    std::vector<ll::ChanView> views;
    std::vector<Slot> slots;
    while (!stop_.load(std::memory_order_acquire)) {
      std::unique_lock<std::mutex> lk(u.mu);
      if (stop_.load(std::memory_order_acquire)) break;
      build_views(u, views, slots);
      auto choice = ll::policy_action(u.proc, views);
      if (!choice) {
        u.idle.store(true, std::memory_order_release);
        std::uint64_t seen = progress_.load(std::memory_order_acquire);
        cv_.wait_for(lk, std::chrono::milliseconds(1), [&] {
          return stop_.load(std::memory_order_acquire) ||
                 progress_.load(std::memory_order_acquire) != seen;
        });
        u.idle.store(false, std::memory_order_release);
        continue;
      }
      jitter(u);
      if (fire(u, *choice, views, slots)) {
        progress_.fetch_add(1, std::memory_order_acq_rel);
        cv_.notify_all();
      }
    }
    u.idle.store(true, std::memory_order_release);
  }

  static constexpr size_t kTraceCap = 200000;

  std::vector<std::unique_ptr<ChanCell>> cells_;
  std::vector<std::unique_ptr<Unit>> units_;
  std::atomic<std::uint64_t> seq_{0};
  std::atomic<std::uint64_t> progress_{0};
  std::atomic<bool> stop_{false};
  std::atomic<bool> fatal_{false};
  std::condition_variable_any cv_;
  std::mutex trace_mu_;
  std::mutex notes_mu_;
  std::vector<TraceRecord> trace_;
  std::vector<std::string> notes_;
};

}  // namespace

std::string to_text(const TraceRecord& rec, bool verbose) {
  std::string kind;
  std::string chan = "-";
  std::string time = "-";
  std::string value = "-";
  if (rec.event.kind == Event::Kind::Comm) {
    kind = "comm";
    chan = rec.event.chan;
    time = std::to_string(rec.event.time);
    value = to_text(rec.event.value);
  } else if (rec.event.kind == Event::Kind::Rewind) {
    kind = "rewind";
    chan = rec.event.chan;
    time = std::to_string(rec.event.time);
  } else {
    switch (rec.inst.rule) {
      case Rule::H3:
        kind = "enter";
        if (rec.inst.time) time = std::to_string(*rec.inst.time);
        break;
      case Rule::H4:
        kind = "exit";
        break;
      case Rule::H5:
        kind = "back";
        break;
      case Rule::H8:
        kind = "resume";
        break;
      default:
        if (!verbose) return "";
        return "silent " + std::string(rule_name(rec.inst.rule)) + " " + rec.inst.proc;
    }
  }
  return std::to_string(rec.seq) + "\t" + kind + "\t" + chan + "\t" + time + "\t" + value +
         "\t" + rec.inst.proc;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Terminated: return "terminated";
    case Outcome::Stuck: return "stuck";
    case Outcome::Timeout: return "timeout";
  }
  return "unknown";
}

Result<RunResult> run_program(const Program& program, std::uint64_t seed,
                              std::chrono::milliseconds timeout) {
  for (const auto& ch : program.channels)
    if (ch.sender == ch.receiver)
      return Error{Errc::SpawnFailure, ch.name + ": endpoints must be distinct processes"};
  Engine engine(initial_ll(program), seed);
  return engine.run(timeout);
}

}  // namespace rt
}  // namespace rcsp
