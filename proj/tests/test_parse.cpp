#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "rcsp/program.hpp"
#include "rcsp/result.hpp"
#include "rcsp/syntax.hpp"

using namespace rcsp;

TEST_CASE("expression grammar") {
  auto e = parse_expr_text("(app (lam x (+ x 1)) 41)");
  REQUIRE(e.ok());
  CHECK(expr_equal(*e, mk::app(mk::lam("x", mk::prim_app(PrimOp::Add, mk::var("x"),
                                                         mk::integer(1))),
                               mk::integer(41))));

  e = parse_expr_text("(recv v c (send d (- v 2)))");
  REQUIRE(e.ok());
  CHECK(expr_equal(*e, mk::recv("v", "c",
                                mk::send("d", mk::prim_app(PrimOp::Sub, mk::var("v"),
                                                           mk::integer(2))))));

  e = parse_expr_text("(stable (lam u (backtrack 0)))");
  REQUIRE(e.ok());
  CHECK(expr_equal(*e, mk::stable(mk::lam("u", mk::backtrack(mk::integer(0))))));

  e = parse_expr_text("(>= -1 unit)");
  REQUIRE(e.ok());
  CHECK(expr_equal(*e, mk::prim_app(PrimOp::Geq, mk::integer(-1), mk::unit())));

  CHECK(parse_expr_text("  7 ; trailing comment\n").ok());
}

TEST_CASE("expression rejections") {
  auto bad = [](const std::string& text) {
    auto r = parse_expr_text(text);
    REQUIRE_FALSE(r.ok());
    CHECK(r.code() == Errc::ParseError);
  };
  bad("");
  bad("1 2");
  bad("(lam x)");
  bad("(lam 3 x)");
  bad("(lam lam x)");
  bad("(app f)");
  bad("(send c)");
  bad("(recv x c)");
  bad("(frobnicate 1)");
  bad("((lam x x) 1)");
  bad("(+ 1 2))");
  bad("(+ 1 (2)");
  bad("(stable-active unit)");
  bad("(send-active c 1)");
  bad("<>");
  bad("send");
}

TEST_CASE("program grammar and validation") {
  auto p = parse_program(
      "(system (chan c a b) (proc a (send c 1)) (proc b (recv x c x)))");
  REQUIRE(p.ok());
  REQUIRE(p->channels.size() == 1);
  CHECK(p->channels[0].name == "c");
  CHECK(p->channels[0].sender == "a");
  CHECK(p->channels[0].receiver == "b");
  REQUIRE(p->processes.size() == 2);
  CHECK(p->processes[0].first == "a");
  CHECK(p->processes[1].first == "b");

  auto bad = [](const std::string& text) {
    auto r = parse_program(text);
    REQUIRE_FALSE(r.ok());
    CHECK(r.code() == Errc::ParseError);
  };
  bad("(system)");
  bad("(program (proc a 1))");
  bad("(system (proc a 1)) (system (proc b 2))");
  bad("(system (chan c a b) (proc a 1))");
  bad("(system (chan c a) (proc a 1))");
  bad("(system (chan c a b) (chan c a b) (proc a 1) (proc b 2))");
  bad("(system (proc a 1) (proc a 2))");
  bad("(system (widget w))");
}

TEST_CASE("shipped programs parse and round-trip") {
  const char* names[] = {"fig1.rcsp",     "fig1_noback.rcsp", "chain3.rcsp",
                         "loop.rcsp",     "mismatch.rcsp",    "stuck.rcsp"};
  for (const char* name : names) {
    CAPTURE(name);
    Program p = testutil::load_program(name);
    auto again = parse_program(to_text(p));
    REQUIRE(again.ok());
    REQUIRE(again->channels.size() == p.channels.size());
    for (size_t i = 0; i < p.channels.size(); ++i) {
      CHECK(again->channels[i].name == p.channels[i].name);
      CHECK(again->channels[i].sender == p.channels[i].sender);
      CHECK(again->channels[i].receiver == p.channels[i].receiver);
    }
    REQUIRE(again->processes.size() == p.processes.size());
    for (size_t i = 0; i < p.processes.size(); ++i) {
      CHECK(again->processes[i].first == p.processes[i].first);
      CHECK(expr_equal(again->processes[i].second, p.processes[i].second));
    }
  }
}

TEST_CASE("random expression round-trips") {
  testutil::Rng rng(2026);
  // Build random closed-ish expressions and check text -> parse -> text is a
  // fixpoint.
  std::function<ExprPtr(unsigned)> gen = [&](unsigned depth) -> ExprPtr {
    if (depth == 0 || rng.below(4) == 0) {
      switch (rng.below(4)) {
        case 0: return mk::unit();
        case 1: return mk::integer(static_cast<long long>(rng.below(200)) - 100);
        case 2: return mk::var("v" + std::to_string(rng.below(3)));
        default: return mk::lam("x" + std::to_string(rng.below(3)), mk::var("x0"));
      }
    }
    switch (rng.below(7)) {
      case 0: return mk::app(gen(depth - 1), gen(depth - 1));
      case 1: return mk::lam("y" + std::to_string(rng.below(3)), gen(depth - 1));
      case 2: return mk::send("c" + std::to_string(rng.below(2)), gen(depth - 1));
      case 3:
        return mk::recv("r" + std::to_string(rng.below(3)),
                        "c" + std::to_string(rng.below(2)), gen(depth - 1));
      case 4: return mk::stable(gen(depth - 1));
      case 5: return mk::backtrack(gen(depth - 1));
      default:
        return mk::prim_app(static_cast<PrimOp>(rng.below(3)), gen(depth - 1),
                            gen(depth - 1));
    }
  };
  for (int i = 0; i < 200; ++i) {
    auto e = gen(4);
    auto text = to_text(e);
    CAPTURE(text);
    auto back = parse_expr_text(text);
    REQUIRE(back.ok());
    CHECK(expr_equal(*back, e));
    CHECK(to_text(*back) == text);
  }
}
