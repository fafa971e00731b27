#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "rcsp/channel.hpp"
#include "rcsp/syntax.hpp"

using namespace rcsp;

namespace {

ChannelLL fresh() {
  ChannelLL c;
  c.s.owner = "p1";
  c.r.owner = "p2";
  return c;
}

ChannelLL must(Result<ChannelLL> r) {
  REQUIRE(r.ok());
  return *r;
}

}  // namespace

TEST_CASE("initial state and rendering") {
  auto c = fresh();
  CHECK(c.sender_holds_token());
  CHECK(c.sync);
  CHECK(dump(c) == "s=(p1,0,0,F,-) r=(p2,0,0,F) sync=1");
  CHECK(dump(must(t1_fwd_request(c, 5, mk::integer(42)))) ==
        "s=(p1,5,1,F,42) r=(p2,0,0,F) sync=1");
}

TEST_CASE("forward handshake") {
  auto c = fresh();
  c = must(t1_fwd_request(c, 5, mk::integer(42)));
  CHECK_FALSE(c.sender_holds_token());
  CHECK(c.s.t == 5);
  CHECK(c.s.d == Dir::F);
  CHECK(expr_equal(c.s.v, mk::integer(42)));
  CHECK(c.r.t == 0);

  // While the request is pending the sender cannot conclude anything.
  CHECK(sender_infers_sync(c).code() == Errc::NotEnabled);

  auto acked = must(t2_fwd_ack(c, 5));
  CHECK(acked.sender_holds_token());
  CHECK(acked.r.t == 5);
  CHECK(acked.sync);
  auto inferred = sender_infers_sync(acked);
  REQUIRE(inferred.ok());
  CHECK(*inferred == true);

  // The receiver may acknowledge at any time at or past the offer.
  auto late = must(t2_fwd_ack(c, 9));
  CHECK(late.r.t == 9);
  CHECK(late.sync);
}

TEST_CASE("refusal turns the channel around") {
  auto c = fresh();
  c = must(t1_fwd_request(c, 3, mk::unit()));
  c = must(t3_fwd_refuse(c));
  CHECK(c.sender_holds_token());
  CHECK(c.r.d == Dir::B);
  CHECK_FALSE(c.sync);
  CHECK(c.r.t == 0);
  auto inferred = sender_infers_sync(c);
  REQUIRE(inferred.ok());
  CHECK(*inferred == false);
  // A refused channel accepts no new forward request until the rewind runs.
  CHECK(t1_fwd_request(c, 9, mk::unit()).code() == Errc::NotEnabled);
}

TEST_CASE("rewind handshake") {
  auto c = fresh();
  c = must(t1_fwd_request(c, 1, mk::integer(0)));
  c = must(t2_fwd_ack(c, 1));

  // The receiver asks for a rewind without holding the token.
  c = must(t8_rcv_signal_back(c));
  CHECK(c.sender_holds_token());
  CHECK(c.r.d == Dir::B);

  c = must(t4_back_request(c, 0));
  CHECK_FALSE(c.sender_holds_token());
  CHECK(c.s.t == 0);
  CHECK(c.s.d == Dir::B);

  SUBCASE("receiver resumes forward") {
    c = must(t5_back_ack(c, true));
    CHECK(c.sender_holds_token());
    CHECK(c.r.t == 0);
    CHECK(c.r.d == Dir::F);
    CHECK(c.sync);
    auto inferred = sender_infers_sync(c);
    REQUIRE(inferred.ok());
    CHECK(*inferred == true);
  }
  SUBCASE("receiver keeps backing up") {
    c = must(t5_back_ack(c, false));
    CHECK(c.sender_holds_token());
    CHECK(c.r.t == 0);
    CHECK(c.r.d == Dir::B);
    CHECK(c.sync);
  }
}

TEST_CASE("retraction of a pending offer") {
  auto c = fresh();
  c = must(t1_fwd_request(c, 4, mk::integer(7)));
  c = must(t6_retract_request(c));
  CHECK_FALSE(c.sender_holds_token());
  CHECK(c.s.d == Dir::I);
  // Flagging is idempotent in effect but not re-enabled.
  CHECK(t6_retract_request(c).code() == Errc::NotEnabled);
  // The flagged offer can still be taken.
  auto taken = must(t2_fwd_ack(c, 4));
  CHECK(taken.sender_holds_token());
  CHECK(taken.sync);

  SUBCASE("receiver lets the offer go") {
    c = must(t7_retract_allow(c, false));
    CHECK(c.sender_holds_token());
    CHECK(c.s.d == Dir::I);
    CHECK(c.r.d == Dir::F);
    CHECK_FALSE(c.sync);
    auto inferred = sender_infers_sync(c);
    REQUIRE(inferred.ok());
    CHECK(*inferred == false);
  }
  SUBCASE("receiver lets go and turns around") {
    c = must(t7_retract_allow(c, true));
    CHECK(c.sender_holds_token());
    CHECK(c.r.d == Dir::B);
    CHECK_FALSE(c.sync);
  }
}

TEST_CASE("guards reject out-of-turn transitions") {
  auto init = fresh();
  CHECK(t1_fwd_request(init, 0, mk::unit()).code() == Errc::NotEnabled);
  CHECK(t2_fwd_ack(init, 1).code() == Errc::NotEnabled);
  CHECK(t3_fwd_refuse(init).code() == Errc::NotEnabled);
  CHECK(t4_back_request(init, 0).code() == Errc::NotEnabled);
  CHECK(t5_back_ack(init, true).code() == Errc::NotEnabled);
  CHECK(t6_retract_request(init).code() == Errc::NotEnabled);
  CHECK(t7_retract_allow(init, false).code() == Errc::NotEnabled);
  CHECK(t8_rcv_signal_back(init).code() == Errc::NotEnabled);

  auto pending = must(t1_fwd_request(init, 5, mk::unit()));
  CHECK(t1_fwd_request(pending, 6, mk::unit()).code() == Errc::NotEnabled);
  CHECK(t2_fwd_ack(pending, 4).code() == Errc::NotEnabled);
  CHECK(t4_back_request(pending, 0).code() == Errc::NotEnabled);
  CHECK(t5_back_ack(pending, true).code() == Errc::NotEnabled);
  CHECK(t7_retract_allow(pending, false).code() == Errc::NotEnabled);
  CHECK(t8_rcv_signal_back(pending).code() == Errc::NotEnabled);

  auto rewinding = must(t4_back_request(
      must(t8_rcv_signal_back(must(t2_fwd_ack(pending, 5)))), 2));
  CHECK(rewinding.s.d == Dir::B);
  CHECK(t2_fwd_ack(rewinding, 9).code() == Errc::NotEnabled);
  CHECK(t3_fwd_refuse(rewinding).code() == Errc::NotEnabled);
  CHECK(t6_retract_request(rewinding).code() == Errc::NotEnabled);
  CHECK(t7_retract_allow(rewinding, false).code() == Errc::NotEnabled);

  // A signalled receiver blocks fresh offers and acknowledgements.
  auto signalled = must(t8_rcv_signal_back(must(t2_fwd_ack(pending, 5))));
  CHECK(t1_fwd_request(signalled, 9, mk::unit()).code() == Errc::NotEnabled);
  CHECK(t8_rcv_signal_back(signalled).code() == Errc::NotEnabled);
  auto reoffer = must(t4_back_request(signalled, 0));
  CHECK(t2_fwd_ack(reoffer, 9).code() == Errc::NotEnabled);
}

TEST_CASE("transitions never mutate their argument") {
  auto c = fresh();
  auto before = c;
  (void)t1_fwd_request(c, 5, mk::integer(1));
  CHECK(channel_equal(c, before));
  auto pending = must(t1_fwd_request(c, 5, mk::integer(1)));
  auto snapshot = pending;
  (void)t2_fwd_ack(pending, 5);
  (void)t3_fwd_refuse(pending);
  (void)t6_retract_request(pending);
  CHECK(channel_equal(pending, snapshot));
}

TEST_CASE("each seeded fault skips exactly its own shadow write") {
  // Acknowledgement fault: identical to the clean step except the bit.
  auto c = fresh();
  c = must(t1_fwd_request(c, 1, mk::unit()));
  c = must(t6_retract_request(c));
  c = must(t7_retract_allow(c, false));  // sync now honestly false
  c = must(t1_fwd_request(c, 1, mk::unit()));
  auto clean = must(t2_fwd_ack(c, 1));
  auto faulty = must(t2_fwd_ack(c, 1, Fault::T2SkipSync));
  CHECK(clean.sync);
  CHECK_FALSE(faulty.sync);
  faulty.sync = true;
  CHECK(channel_equal(clean, faulty));
  // Unrelated fault selectors leave the step untouched.
  CHECK(channel_equal(clean, must(t2_fwd_ack(c, 1, Fault::T5SkipSync))));
  CHECK(channel_equal(clean, must(t2_fwd_ack(c, 1, Fault::T7SkipSync))));

  // Rewind acknowledgement fault.
  auto d = fresh();
  d = must(t1_fwd_request(d, 1, mk::unit()));
  d = must(t2_fwd_ack(d, 1));
  d = must(t1_fwd_request(d, 2, mk::unit()));
  d = must(t3_fwd_refuse(d));
  d = must(t4_back_request(d, 0));
  auto clean5 = must(t5_back_ack(d, false));
  auto faulty5 = must(t5_back_ack(d, false, Fault::T5SkipSync));
  CHECK(clean5.sync);
  CHECK_FALSE(faulty5.sync);
  faulty5.sync = true;
  CHECK(channel_equal(clean5, faulty5));
  CHECK(channel_equal(clean5, must(t5_back_ack(d, false, Fault::T2SkipSync))));

  // Retraction permission fault.
  auto e = fresh();
  e = must(t1_fwd_request(e, 1, mk::unit()));
  e = must(t6_retract_request(e));
  auto clean7 = must(t7_retract_allow(e, false));
  auto faulty7 = must(t7_retract_allow(e, false, Fault::T7SkipSync));
  CHECK_FALSE(clean7.sync);
  CHECK(faulty7.sync);
  faulty7.sync = false;
  CHECK(channel_equal(clean7, faulty7));
  CHECK(channel_equal(clean7, must(t7_retract_allow(e, false, Fault::T2SkipSync))));
}

TEST_CASE("random walks preserve the shadow invariant") {
  testutil::Rng rng(11);
  for (int walk = 0; walk < 200; ++walk) {
    auto c = fresh();
    for (int step = 0; step < 60; ++step) {
      // Gather every enabled transition with a few time choices.
      std::vector<ChannelLL> nexts;
      for (Time t = 1; t <= 4; ++t) {
        if (auto r = t1_fwd_request(c, t, mk::integer(1)); r.ok()) nexts.push_back(*r);
        if (auto r = t2_fwd_ack(c, t); r.ok()) nexts.push_back(*r);
      }
      if (auto r = t2_fwd_ack(c, c.s.t); r.ok()) nexts.push_back(*r);
      if (auto r = t3_fwd_refuse(c); r.ok()) nexts.push_back(*r);
      for (Time t = 0; t < 3; ++t) {
        if (auto r = t4_back_request(c, t); r.ok()) nexts.push_back(*r);
      }
      if (auto r = t5_back_ack(c, rng.flip()); r.ok()) nexts.push_back(*r);
      if (auto r = t6_retract_request(c); r.ok()) nexts.push_back(*r);
      if (auto r = t7_retract_allow(c, rng.flip()); r.ok()) nexts.push_back(*r);
      if (auto r = t8_rcv_signal_back(c); r.ok()) nexts.push_back(*r);
      if (nexts.empty()) {
        // The only dead shape: a refusal at time zero leaves the sender the
        // token with nowhere to go (nothing to rewind below zero).
        CHECK(c.sender_holds_token());
        CHECK(c.r.d == Dir::B);
        CHECK(c.r.t == 0);
        break;
      }

      Time r_before = c.r.t;
      bool was_rewind_ack = false;
      auto pick = nexts[rng.below(nexts.size())];
      // Identify a rewind acknowledgement by its effect shape.
      was_rewind_ack = (c.s.d == Dir::B) && !c.sender_holds_token() &&
                       pick.sender_holds_token();
      c = pick;

      if (c.sender_holds_token()) {
        auto inferred = sender_infers_sync(c);
        REQUIRE(inferred.ok());
        CHECK(*inferred == c.sync);
      }
      if (!was_rewind_ack) CHECK(c.r.t >= r_before);
    }
  }
}
