#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rcsp/syntax.hpp"

using namespace rcsp;

TEST_CASE("structural equality ignores sharing") {
  auto a = mk::app(mk::lam("x", mk::var("x")), mk::integer(3));
  auto b = mk::app(mk::lam("x", mk::var("x")), mk::integer(3));
  CHECK(a != b);
  CHECK(expr_equal(a, b));
  CHECK(expr_equal(a, a));
  CHECK_FALSE(expr_equal(a, mk::app(mk::lam("y", mk::var("y")), mk::integer(3))));
  CHECK_FALSE(expr_equal(mk::integer(3), mk::integer(4)));
  CHECK_FALSE(expr_equal(mk::integer(3), mk::unit()));
  CHECK_FALSE(expr_equal(mk::send("c", mk::unit()), mk::send("d", mk::unit())));
  CHECK(expr_equal(mk::hole(), mk::hole()));
}

TEST_CASE("value predicate") {
  CHECK(is_value(mk::unit()));
  CHECK(is_value(mk::integer(-7)));
  CHECK(is_value(mk::prim(PrimOp::Add)));
  CHECK(is_value(mk::var("x")));
  CHECK(is_value(mk::lam("x", mk::var("x"))));
  CHECK(is_value(mk::stable(mk::lam("x", mk::var("x")))));
  CHECK_FALSE(is_value(mk::stable(mk::integer(1))));
  CHECK_FALSE(is_value(mk::app(mk::lam("x", mk::var("x")), mk::unit())));
  CHECK_FALSE(is_value(mk::send("c", mk::unit())));
  CHECK_FALSE(is_value(mk::recv("x", "c", mk::var("x"))));
  CHECK_FALSE(is_value(mk::backtrack(mk::integer(0))));
  CHECK_FALSE(is_value(mk::stable_active(mk::unit())));
  CHECK_FALSE(is_value(mk::send_active("c", mk::unit())));

  // A binary primitive applied to one value argument is itself a value.
  CHECK(is_value(mk::app(mk::prim(PrimOp::Add), mk::integer(1))));
  CHECK_FALSE(is_value(mk::app(mk::prim(PrimOp::Add), mk::send("c", mk::unit()))));
}

TEST_CASE("rendering") {
  CHECK(to_text(mk::unit()) == "unit");
  CHECK(to_text(mk::integer(42)) == "42");
  CHECK(to_text(mk::integer(-3)) == "-3");
  CHECK(to_text(mk::var("zp")) == "zp");
  CHECK(to_text(mk::lam("x", mk::var("x"))) == "(lam x x)");
  CHECK(to_text(mk::app(mk::var("f"), mk::var("a"))) == "(app f a)");
  CHECK(to_text(mk::send("c", mk::integer(5))) == "(send c 5)");
  CHECK(to_text(mk::recv("x", "c", mk::var("x"))) == "(recv x c x)");
  CHECK(to_text(mk::stable(mk::lam("x", mk::var("x")))) == "(stable (lam x x))");
  CHECK(to_text(mk::backtrack(mk::integer(0))) == "(backtrack 0)");
  CHECK(to_text(mk::stable_active(mk::unit())) == "(stable-active unit)");
  CHECK(to_text(mk::send_active("c", mk::integer(3))) == "(send-active c 3)");
  CHECK(to_text(mk::hole()) == "<>");
  CHECK(to_text(mk::prim_app(PrimOp::Add, mk::integer(1), mk::integer(2))) == "(+ 1 2)");
  CHECK(to_text(mk::prim_app(PrimOp::Sub, mk::var("a"), mk::var("b"))) == "(- a b)");
  CHECK(to_text(mk::prim_app(PrimOp::Geq, mk::var("a"), mk::var("b"))) == "(>= a b)");
  CHECK(to_text(mk::app(mk::prim(PrimOp::Add), mk::integer(1))) == "(app + 1)");
}

TEST_CASE("free variables") {
  auto e = mk::lam("x", mk::app(mk::var("x"), mk::var("y")));
  CHECK(free_vars(e) == std::set<std::string>{"y"});
  CHECK(free_vars(mk::recv("v", "c", mk::app(mk::var("v"), mk::var("w")))) ==
        std::set<std::string>{"w"});
  CHECK(free_vars(mk::integer(1)).empty());
  CHECK(free_vars(mk::var("q")) == std::set<std::string>{"q"});
  // Shadowed binders do not leak.
  auto shadow = mk::lam("x", mk::lam("x", mk::var("x")));
  CHECK(free_vars(shadow).empty());
}

TEST_CASE("sequencing discards the first result") {
  auto a = mk::send("c", mk::integer(1));
  auto b = mk::integer(9);
  auto s = mk::seq(a, b);
  const auto* app = expr_as<AppE>(s);
  REQUIRE(app != nullptr);
  CHECK(expr_equal(app->arg, a));
  const auto* lam = expr_as<LamE>(app->fn);
  REQUIRE(lam != nullptr);
  CHECK(expr_equal(lam->body, b));
  CHECK(free_vars(b).count(lam->param) == 0);
}

TEST_CASE("fresh names never repeat") {
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) CHECK(seen.insert(fresh_name("x")).second);
  // Generated names cannot collide with source identifiers.
  for (const auto& n : seen) CHECK(n.find('$') != std::string::npos);
}
