#include "rcsp/channel.hpp"

#include <sstream>

namespace rcsp {

char dir_char(Dir d) {
  switch (d) {
    case Dir::F:
      return 'F';
    case Dir::B:
      return 'B';
    case Dir::I:
      return 'I';
  }
  return '?';
}

bool channel_equal(const ChannelLL& a, const ChannelLL& b) {
  return a.s.owner == b.s.owner && a.s.t == b.s.t && a.s.b == b.s.b && a.s.d == b.s.d &&
         expr_equal(a.s.v, b.s.v) && a.r.owner == b.r.owner && a.r.t == b.r.t &&
         a.r.b == b.r.b && a.r.d == b.r.d && a.sync == b.sync;
}

std::string dump(const ChannelLL& c) {
  std::ostringstream out;
  out << "s=(" << c.s.owner << "," << c.s.t << "," << (c.s.b ? 1 : 0) << ","
      << dir_char(c.s.d) << "," << (c.s.v ? to_text(c.s.v) : "-") << ")";
  out << " r=(" << c.r.owner << "," << c.r.t << "," << (c.r.b ? 1 : 0) << ","
      << dir_char(c.r.d) << ")";
  out << " sync=" << (c.sync ? 1 : 0);
  return out.str();
}

Result<ChannelLL> t1_fwd_request(const ChannelLL& c, Time t_new, ExprPtr v) {
  if (!c.sender_holds_token()) return Error{Errc::NotEnabled, "sender lacks token"};
  if (c.r.d != Dir::F) return Error{Errc::NotEnabled, "receiver is backing up"};
  if (t_new <= c.r.t) return Error{Errc::NotEnabled, "stale forward time"};
  ChannelLL n = c;
  n.s.t = t_new;
  n.s.b = !n.s.b;
  n.s.d = Dir::F;
  n.s.v = std::move(v);
  return n;
}

Result<ChannelLL> t2_fwd_ack(const ChannelLL& c, Time t_new, Fault fault) {
  if (c.sender_holds_token()) return Error{Errc::NotEnabled, "no pending request"};
  if (c.s.d != Dir::F && c.s.d != Dir::I)
    return Error{Errc::NotEnabled, "pending request is not forward"};
  if (c.r.d != Dir::F) return Error{Errc::NotEnabled, "receiver is backing up"};
  if (t_new < c.s.t) return Error{Errc::NotEnabled, "ack below offered time"};
  ChannelLL n = c;
  n.r.t = t_new;
  n.r.b = !n.r.b;
  if (fault != Fault::T2SkipSync) n.sync = true;
  return n;
}

Result<ChannelLL> t3_fwd_refuse(const ChannelLL& c) {
  if (c.sender_holds_token()) return Error{Errc::NotEnabled, "no pending request"};
  if (c.s.d != Dir::F) return Error{Errc::NotEnabled, "pending request is not forward"};
  ChannelLL n = c;
  n.r.b = !n.r.b;
  n.r.d = Dir::B;
  n.sync = false;
  return n;
}

Result<ChannelLL> t4_back_request(const ChannelLL& c, Time t_new) {
  if (!c.sender_holds_token()) return Error{Errc::NotEnabled, "sender lacks token"};
  if (t_new >= c.r.t) return Error{Errc::NotEnabled, "rewind must go below r.t"};
  ChannelLL n = c;
  n.s.t = t_new;
  n.s.b = !n.s.b;
  n.s.d = Dir::B;
  return n;
}

Result<ChannelLL> t5_back_ack(const ChannelLL& c, bool resume_forward, Fault fault) {
  if (c.sender_holds_token()) return Error{Errc::NotEnabled, "no pending request"};
  if (c.s.d != Dir::B) return Error{Errc::NotEnabled, "pending request is not backward"};
  ChannelLL n = c;
  n.r.t = n.s.t;
  n.r.b = !n.r.b;
  n.r.d = resume_forward ? Dir::F : Dir::B;
  if (fault != Fault::T5SkipSync) n.sync = true;
  return n;
}

Result<ChannelLL> t6_retract_request(const ChannelLL& c) {
  if (c.sender_holds_token()) return Error{Errc::NotEnabled, "no pending request"};
  if (c.s.d != Dir::F) return Error{Errc::NotEnabled, "pending request is not forward"};
  ChannelLL n = c;
  n.s.d = Dir::I;
  return n;
}

Result<ChannelLL> t7_retract_allow(const ChannelLL& c, bool also_back, Fault fault) {
  if (c.sender_holds_token()) return Error{Errc::NotEnabled, "no pending request"};
  if (c.s.d != Dir::I) return Error{Errc::NotEnabled, "no retraction requested"};
  ChannelLL n = c;
  n.r.b = !n.r.b;
  if (also_back) n.r.d = Dir::B;
  if (fault != Fault::T7SkipSync) n.sync = false;
  return n;
}

Result<ChannelLL> t8_rcv_signal_back(const ChannelLL& c) {
  if (!c.sender_holds_token()) return Error{Errc::NotEnabled, "transaction in flight"};
  if (c.r.t == 0) return Error{Errc::NotEnabled, "nothing to rewind"};
  if (c.r.d != Dir::F) return Error{Errc::NotEnabled, "already backing up"};
  ChannelLL n = c;
  n.r.d = Dir::B;
  return n;
}

Result<bool> sender_infers_sync(const ChannelLL& c) {
  if (!c.sender_holds_token())
    return Error{Errc::NotEnabled, "inference defined only with the token"};
  return c.s.t <= c.r.t;
}

}  // namespace rcsp
