#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <vector>

#include "helpers.hpp"
#include "rcsp/eval.hpp"
#include "rcsp/syntax.hpp"

using namespace rcsp;

TEST_CASE("substitution") {
  auto x = mk::var("x");
  CHECK(expr_equal(subst(x, mk::integer(7), "x"), mk::integer(7)));
  CHECK(expr_equal(subst(x, mk::integer(7), "y"), x));

  // Shadowing stops substitution.
  auto shadow = mk::lam("x", mk::var("x"));
  CHECK(expr_equal(subst(shadow, mk::integer(7), "x"), shadow));
  auto recv_shadow = mk::recv("x", "c", mk::var("x"));
  CHECK(expr_equal(subst(recv_shadow, mk::integer(7), "x"), recv_shadow));

  // Capture avoidance: substituting y into (lam y x) must rename the binder.
  auto e = mk::lam("y", mk::prim_app(PrimOp::Add, mk::var("x"), mk::var("y")));
  auto r = subst(e, mk::var("y"), "x");
  const auto* lam = expr_as<LamE>(r);
  REQUIRE(lam != nullptr);
  CHECK(lam->param != "y");
  auto fv = free_vars(r);
  CHECK(fv.count("y") == 1);
  CHECK(fv.count("x") == 0);

  // Structure is otherwise preserved.
  auto nested = mk::send("c", mk::app(mk::var("f"), mk::var("x")));
  CHECK(expr_equal(subst(nested, mk::unit(), "x"),
                   mk::send("c", mk::app(mk::var("f"), mk::unit()))));
}

TEST_CASE("primitives") {
  auto add = apply_prim(PrimOp::Add, mk::integer(1), mk::integer(2));
  REQUIRE(add.ok());
  CHECK(expr_equal(*add, mk::integer(3)));
  auto sub = apply_prim(PrimOp::Sub, mk::integer(1), mk::integer(4));
  REQUIRE(sub.ok());
  CHECK(expr_equal(*sub, mk::integer(-3)));

  auto ge = apply_prim(PrimOp::Geq, mk::integer(3), mk::integer(3));
  REQUIRE(ge.ok());
  CHECK(expr_equal(*ge, encoded_true()));
  auto lt = apply_prim(PrimOp::Geq, mk::integer(2), mk::integer(3));
  REQUIRE(lt.ok());
  CHECK(expr_equal(*lt, encoded_false()));

  // The encoded booleans are binary selectors.
  CHECK(expr_equal(encoded_true(), mk::lam("a", mk::lam("b", mk::var("a")))));
  CHECK(expr_equal(encoded_false(), mk::lam("a", mk::lam("b", mk::var("b")))));

  CHECK_FALSE(apply_prim(PrimOp::Add, mk::unit(), mk::integer(1)).ok());
  CHECK_FALSE(apply_prim(PrimOp::Geq, mk::integer(1), mk::lam("x", mk::var("x"))).ok());
}

TEST_CASE("decomposition finds the leftmost innermost redex") {
  // (send c (+ 1 2)): the primitive is the redex, the send is context.
  auto e = mk::send("c", mk::prim_app(PrimOp::Add, mk::integer(1), mk::integer(2)));
  auto d = decompose_redex(e);
  REQUIRE(d.ok());
  const auto* prim = std::get_if<RedexPrim>(&d->redex);
  REQUIRE(prim != nullptr);
  CHECK(prim->op == PrimOp::Add);
  REQUIRE(d->ctx.frames.size() == 1);
  CHECK(std::holds_alternative<FSend>(d->ctx.frames[0]));

  // Function position evaluates before argument position.
  auto inner = mk::app(mk::lam("x", mk::var("x")), mk::integer(1));
  auto both = mk::app(inner, inner);
  d = decompose_redex(both);
  REQUIRE(d.ok());
  REQUIRE(d->ctx.frames.size() == 1);
  CHECK(std::holds_alternative<FApp1>(d->ctx.frames[0]));

  // With a value in function position the argument is next.
  auto arg_side = mk::app(mk::lam("x", mk::var("x")), inner);
  d = decompose_redex(arg_side);
  REQUIRE(d.ok());
  REQUIRE(d->ctx.frames.size() == 1);
  CHECK(std::holds_alternative<FApp2>(d->ctx.frames[0]));
}

TEST_CASE("redex shapes") {
  auto check_shape = [](const ExprPtr& e, auto tag) {
    auto d = decompose_redex(e);
    REQUIRE(d.ok());
    CHECK(d->ctx.frames.empty());
    CHECK(std::holds_alternative<decltype(tag)>(d->redex));
    CHECK(expr_equal(redex_to_expr(d->redex), e));
  };
  check_shape(mk::app(mk::lam("x", mk::var("x")), mk::unit()), RedexBeta{nullptr, nullptr});
  check_shape(mk::prim_app(PrimOp::Add, mk::integer(1), mk::integer(2)),
              RedexPrim{PrimOp::Add, nullptr, nullptr});
  check_shape(mk::send("c", mk::integer(5)), RedexSend{"", nullptr});
  check_shape(mk::recv("x", "c", mk::var("x")), RedexRecv{"", "", nullptr});
  check_shape(mk::app(mk::stable(mk::lam("x", mk::var("x"))), mk::unit()),
              RedexEnterStable{nullptr, nullptr});
  check_shape(mk::stable_active(mk::integer(3)), RedexExitStable{nullptr});
  check_shape(mk::backtrack(mk::integer(0)), RedexBacktrack{nullptr});
  check_shape(mk::send_active("c", mk::integer(5)), RedexSendActive{"", nullptr});
}

TEST_CASE("values and stuck terms do not decompose") {
  CHECK(std::holds_alternative<AlreadyValue>(decompose(mk::integer(5))));
  CHECK(std::holds_alternative<AlreadyValue>(decompose(mk::lam("x", mk::var("x")))));
  CHECK(std::holds_alternative<AlreadyValue>(
      decompose(mk::stable(mk::lam("x", mk::var("x"))))));
  CHECK(std::holds_alternative<AlreadyValue>(
      decompose(mk::app(mk::prim(PrimOp::Add), mk::integer(1)))));

  auto stuck = decompose(mk::app(mk::integer(1), mk::integer(2)));
  const auto* err = std::get_if<Error>(&stuck);
  REQUIRE(err != nullptr);
  CHECK(err->code == Errc::Stuck);
  CHECK_FALSE(decompose_redex(mk::integer(5)).ok());
  CHECK(std::holds_alternative<Error>(decompose(mk::stable(mk::integer(1)))));
}

TEST_CASE("plug inverts decompose") {
  testutil::Rng rng(7);
  std::function<ExprPtr(unsigned)> gen = [&](unsigned depth) -> ExprPtr {
    ExprPtr redex = mk::prim_app(PrimOp::Add, mk::integer(1), mk::integer(2));
    if (depth == 0) return redex;
    switch (rng.below(6)) {
      case 0: return mk::app(gen(depth - 1), mk::var("later"));
      case 1: return mk::app(mk::lam("x", mk::var("x")), gen(depth - 1));
      case 2: return mk::send("c", gen(depth - 1));
      case 3: return mk::stable(gen(depth - 1));
      case 4: return mk::stable_active(gen(depth - 1));
      default: return mk::backtrack(gen(depth - 1));
    }
  };
  for (int i = 0; i < 300; ++i) {
    auto e = gen(1 + rng.below(6));
    auto d = decompose_redex(e);
    REQUIRE(d.ok());
    CHECK(expr_equal(plug(d->ctx, redex_to_expr(d->redex)), e));
  }
}

TEST_CASE("context rendering marks the hole") {
  auto e = mk::send("c", mk::prim_app(PrimOp::Add, mk::integer(1), mk::integer(2)));
  auto d = decompose_redex(e);
  REQUIRE(d.ok());
  CHECK(to_text(d->ctx) == "(send c <>)");
}
