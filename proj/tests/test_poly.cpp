#include <doctest.h>

#include "helpers.hpp"

using namespace nshape;
using namespace nshape::test;

TEST_CASE("arithmetic") {
  CHECK(arithmetic(P("x"), P("-x"), ArithKind::add).is_zero());
  CHECK(arithmetic(P("x^(1/2)"), P("x^(1/2)"), ArithKind::mul) == P("x"));
  CHECK(arithmetic(P("x*y"), P("x^-1"), ArithKind::mul) == P("y"));
  CHECK(arithmetic(P("x + y"), P("y"), ArithKind::sub) == P("x"));
  CHECK(arithmetic(P("x + y"), LaurentPoly(), ArithKind::scale, q(3, 2)) == P("3/2*x + 3/2*y"));
  CHECK(arithmetic(P("x"), P("y"), ArithKind::scale, 0).is_zero());
}

TEST_CASE("zero coefficients are dropped") {
  LaurentPoly p;
  p.add_term(ExpPoint(1, 0), 2);
  p.add_term(ExpPoint(1, 0), -2);
  CHECK(p.is_zero());
  CHECK(p.size() == 0);
  CHECK(P("x - x + 0*y").is_zero());
}

TEST_CASE("partial derivatives") {
  CHECK(partial_derivative(P("x^(1/2)"), Var::x) == P("1/2*x^(-1/2)"));
  CHECK(partial_derivative(P("x^2*y"), Var::y) == P("x^2"));
  CHECK(partial_derivative(P("3"), Var::x).is_zero());
  CHECK(partial_derivative(P("x^-2*y^3"), Var::x) == P("-2*x^-3*y^3"));
}

TEST_CASE("bracket") {
  CHECK(bracket(P("x"), P("y")) == P("1"));
  CHECK(bracket(P("x^2*y"), P("x^-1")) == P("1"));
  CHECK(bracket(P(kUnitP), P(kUnitQ)) == P("1"));
  CHECK(bracket(P("x^(1/2)"), P("y")) == P("1/2*x^(-1/2)"));
}

TEST_CASE("ramification index") {
  CHECK(ramification_index(P("x^(1/3)*y + x")) == 3);
  CHECK(ramification_index(P("x^2*y + y^3")) == 1);
  CHECK(ramification_index(P("x^(1/2) + x^(1/3)")) == 6);
  CHECK(ramification_index(LaurentPoly()) == 1);
}

TEST_CASE("jacobian pair predicate") {
  const auto a = is_jacobian_pair(P("x"), P("y"));
  CHECK(a.is_pair);
  CHECK(*a.constant == 1);
  CHECK_FALSE(is_jacobian_pair(P("x"), P("x")).is_pair);
  const auto b = is_jacobian_pair(P(kUnitP), P(kUnitQ));
  CHECK(b.is_pair);
  CHECK(*b.constant == 1);
  CHECK(*is_jacobian_pair(P("2*x"), P("3*y")).constant == 6);
}

TEST_CASE("L membership") {
  CHECK(in_L(P("x^2*y + 1")));
  CHECK_FALSE(in_L(P("x^-1")));
  CHECK(in_L1(P("x^-1")));
  CHECK_FALSE(in_L1(P("x^(1/2)")));
}

TEST_CASE("pow") {
  CHECK(P("x + y").pow(2) == P("x^2 + 2*x*y + y^2"));
  CHECK(P("x + y").pow(0) == P("1"));
  CHECK(P("2*x").pow(-1) == P("1/2*x^-1"));
}

TEST_CASE("ring and bracket identities on random inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const long l = 1 + i % 3;
    const LaurentPoly a = random_poly(rng, l), b = random_poly(rng, l), c = random_poly(rng, 1 + (i + 1) % 3);
    CHECK(bracket(a, b * c) == bracket(a, b) * c + b * bracket(a, c));
    CHECK(bracket(a, b) == -bracket(b, a));
    CHECK(bracket(a, a).is_zero());
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    const long lab = lcm_l(ramification_index(a), ramification_index(b));
    CHECK(lab % ramification_index(a * b) == 0);
  }
}
