#include <doctest.h>

#include "helpers.hpp"
#include "newton_shape/errors.hpp"
#include "newton_shape/homogeneous.hpp"
#include "newton_shape/morphisms.hpp"

using namespace nshape;
using namespace nshape::test;

namespace {
const LaurentPoly& r0() {
  static const LaurentPoly r = P("x") * P("x*y^4 - 1").pow(3);
  return r;
}
UPoly up(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(v);
}
}  // namespace

TEST_CASE("slice") {
  const UnivariateSlice s = slice(r0(), Direction(4, -1));
  CHECK(s.xshift == 1);
  CHECK(s.yshift == 0);
  CHECK(s.poly == up({-1, 0, 0, 0, 1}).pow(3));
  CHECK(s.zx == q(1, 4));
  CHECK(reassemble(s) == r0());

  const UnivariateSlice m = slice(P("x^2*y^3"), Direction(1, 0));
  CHECK(m.xshift == 2);
  CHECK(m.yshift == 3);
  CHECK(m.poly == UPoly::constant(1));

  const LaurentPoly lf = leading_form(P(kUnitP), Direction(1, -2));
  const UnivariateSlice r = slice(lf, Direction(1, -2));
  CHECK(r.xshift == 6);
  CHECK(r.yshift == 2);
  CHECK(r.zx == 2);
  CHECK(r.poly == up({1, 3}).pow(2));

  CHECK_THROWS_AS(slice(P("x + y"), Direction(1, 0)), NotHomogeneous);
  CHECK_THROWS_AS(slice(P("x*y + 1"), Direction(-1, 1)), UnsupportedDirection);
  CHECK_THROWS_AS(slice(LaurentPoly(), Direction(1, 0)), ZeroPolynomial);
}

TEST_CASE("slice in the rho = 0 regime") {
  const LaurentPoly p = P("y^2*x^(1/2) + 3*y^2*x^(-1/2)");
  const UnivariateSlice s = slice(p, Direction(0, 1));
  CHECK(s.zy == 0);
  CHECK(reassemble(s) == p);
}

TEST_CASE("squarefree data") {
  const auto a = squarefree_data(up({-1, 0, 0, 0, 1}).pow(3));
  CHECK(a.squarefree_part == up({-1, 0, 0, 0, 1}));
  CHECK(a.distinct_roots == 4);
  CHECK(a.profile() == std::vector<std::pair<int, int>>{{4, 3}});
  const auto b = squarefree_data(UPoly::linear_root(2).pow(5));
  CHECK(b.squarefree_part == UPoly::linear_root(2));
  CHECK(b.profile() == std::vector<std::pair<int, int>>{{1, 5}});
  const auto c = squarefree_data(up({1, 0, 1}));
  CHECK(c.squarefree_part == up({1, 0, 1}));
  CHECK(c.distinct_roots == 2);
  CHECK_THROWS_AS(squarefree_data(UPoly()), ZeroPolynomial);
}

TEST_CASE("power decomposition") {
  const auto a = power_decompose(P("x^6*y^2") * P("1 + 3*x^2*y").pow(2), Direction(1, -2));
  CHECK(a.dmax == 2);
  CHECK(a.lambda * a.R.pow(2) == P("x^6*y^2") * P("1 + 3*x^2*y").pow(2));
  CHECK(a.R.size() == 2);
  const auto b = power_decompose(r0(), Direction(4, -1));
  CHECK(b.dmax == 1);
  const auto c = power_decompose(r0().pow(2), Direction(4, -1));
  CHECK(c.dmax == 2);
  CHECK(c.lambda * c.R.pow(2) == r0().pow(2));
  const auto d = power_decompose(P("4*x^2*y^2"), Direction(1, 1));
  CHECK(d.dmax == 2);
  CHECK(d.lambda * d.R.pow(2) == P("4*x^2*y^2"));
  CHECK_THROWS_AS(power_decompose(P("x + y"), Direction(1, 0)), NotHomogeneous);
}

TEST_CASE("common power base") {
  const auto a = common_power_base(r0().pow(2), r0().pow(3), Direction(4, -1));
  CHECK(a.m == 2);
  CHECK(a.n == 3);
  CHECK(a.lambdaP * a.R.pow(2) == r0().pow(2));
  CHECK(a.lambdaQ * a.R.pow(3) == r0().pow(3));
  const auto b = common_power_base(P("x^2"), P("x^3"), Direction(1, 0));
  CHECK(b.m == 2);
  CHECK(b.n == 3);
  CHECK(b.lambdaP * b.R.pow(2) == P("x^2"));
  const auto c = common_power_base(P("x"), P("x^-1"), Direction(1, 0));
  CHECK(c.m * c.n < 0);
  CHECK(c.lambdaP * c.R.pow(c.m) == P("x"));
  CHECK(c.lambdaQ * c.R.pow(c.n) == P("x^-1"));
  CHECK_THROWS_AS(common_power_base(P("x"), P("y"), Direction(1, 1)), BracketNonzero);
  CHECK_THROWS_AS(common_power_base(P("x*y"), P("2*x*y"), Direction(1, -1)), BothDegreesZero);
}

TEST_CASE("solve_F") {
  const auto a = solve_F(P("x^3") * P("y - 2").pow(2), Direction(1, 0), 5);
  REQUIRE_FALSE(a.empty());
  CHECK(std::find(a.begin(), a.end(), P("-x*y + 2*x")) != a.end());
  const auto b = solve_F(P("x^2*y^5"), Direction(1, 1), 2);
  REQUIRE_FALSE(b.empty());
  CHECK(bracket(b.front(), P("x^2*y^5")) == P("x^2*y^5"));
  CHECK(std::find(b.begin(), b.end(), P("1/3*x*y")) != b.end());
  CHECK(solve_F(leading_form(P(kUnitP), Direction(1, -2)), Direction(1, -2), 20).empty());
  CHECK_THROWS_AS(solve_F(P("x^-1*y"), Direction(1, 1), 3), DegreeZero);
}

TEST_CASE("F is never a monomial for non-monomial inputs") {
  std::mt19937_64 rng(21);
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    const Direction d(1 + i % 3, -(i % 2));
    // Homogeneous input built as c x^a y^b (z - r)^k.
    const long k = 1 + i % 3;
    const Rational r = 1 + i % 4;
    const LaurentPoly z = P("y") - LaurentPoly::monomial(r, make_rational(d.sigma(), d.rho()), 0);
    const LaurentPoly p = LaurentPoly::monomial(1, 2 + i % 3, i % 2) * z.pow(k);
    if (v_degree(p, d).value() == 0) continue;
    for (const auto& f : solve_F(p, d, 6)) {
      ++found;
      CHECK(bracket(f, p) == p);
      CHECK_FALSE(f.is_monomial());
    }
  }
  CHECK(found > 0);
}

TEST_CASE("pavadass clauses") {
  const auto a = check_pavadass(P("x^3") * P("y - 2").pow(2), P("-x*y + 2*x"), Direction(1, 0));
  CHECK(a.all_pass());
  const auto b = check_pavadass(P("x^2*y^3"), P("x*y"), Direction(1, 1));
  CHECK(b.all_pass());
  // Every solution found by solve_F satisfies all clauses.
  const std::vector<std::pair<LaurentPoly, Direction>> forms = {
      {P("x^4") * P("y - 1").pow(3), Direction(1, 0)},
      {P("x^3") * (P("x^-1*y^2") - P("3")).pow(3), Direction(2, 1)},
      {P(kUnitP), Direction(1, 0)}};
  int found = 0;
  for (const auto& [l, d] : forms) {
    for (const auto& f : solve_F(leading_form(l, d), d, 8)) {
      CHECK(check_pavadass(leading_form(l, d), f, d).all_pass());
      ++found;
    }
  }
  CHECK(found >= 3);
  // l = x^3 (z^2 - 3)^3 at (2,1): the F gap is rho = 2 and every multiplicity is deg(p)/rho = 3.
  const LaurentPoly l = P("x^3") * (P("x^-1*y^2") - P("3")).pow(3);
  const auto fs = solve_F(l, Direction(2, 1), 8);
  REQUIRE(fs.size() == 1);
  const auto rep = check_pavadass(l, fs[0], Direction(2, 1));
  REQUIRE(rep.clauses.size() == 4);
  CHECK(rep.clauses[3].applicable);
  CHECK(rep.clauses[3].pass);
  CHECK(rep.clauses[2].applicable);
  CHECK_THROWS_AS(check_pavadass(P("x^2*y^2"), P("x*y + x"), Direction(1, 1)), PreconditionFailed);
}

TEST_CASE("case classification") {
  const Direction d(4, -1);
  CHECK(classify_case(r0().pow(2), r0().pow(3), d) == CaseLabel::IIb);
  const LaurentPoly deg = P("x^2*y^2") * P("x*y^4 - 1").pow(2);
  CHECK_THROWS_AS(classify_case(deg, P("x^3*y^3") * P("x*y^4 - 1").pow(3), d), DegenerateStart);
  CHECK(classify_case(P("x^3") * P("y - 1").pow(4), P("x^6") * P("y - 1").pow(8), Direction(1, 0)) == CaseLabel::III);
  CHECK_THROWS_AS(classify_case(P("x*y^2"), P("x^2*y^4"), Direction(1, 1)), MonomialInput);
}

TEST_CASE("commuting leading forms have aligned endpoints") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 150; ++i) {
    const Direction d(1 + i % 4, -(i % 3));
    const LaurentPoly base = leading_form(random_poly(rng, 1, 4), d);
    const LaurentPoly a = base.pow(1 + i % 2), b = base.pow(2 + i % 3) * Rational(3);
    REQUIRE(bracket(a, b).is_zero());
    CHECK(aligned(PlanePoint(st_point(a, d)), PlanePoint(st_point(b, d))));
    CHECK(aligned(PlanePoint(en_point(a, d)), PlanePoint(en_point(b, d))));
  }
}

TEST_CASE("non-aligned endpoint sums") {
  std::mt19937_64 rng(34);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    const Direction d(1 + i % 3, 1 - i % 3);
    const LaurentPoly p = random_poly(rng, 1, 4), qq = random_poly(rng, 1, 4);
    const LaurentPoly lb = bracket(leading_form(p, d), leading_form(qq, d));
    if (lb.is_zero()) continue;
    const LaurentPoly b = bracket(p, qq);
    REQUIRE(leading_form(b, d) == lb);
    ++seen;
    const PlanePoint sp(st_point(p, d)), sq(st_point(qq, d)), ep(en_point(p, d)), eq(en_point(qq, d));
    const PlanePoint one(1, 1);
    CHECK(!aligned(sp, sq) == (sp + sq - one == PlanePoint(st_point(b, d))));
    CHECK(!aligned(ep, eq) == (ep + eq - one == PlanePoint(en_point(b, d))));
  }
  CHECK(seen > 100);
}

TEST_CASE("F endpoints avoid the diagonal direction on tame pairs") {
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto [p, qq] = random_tame_pair(seed, 3);
    for (const Direction d : {Direction(1, 0), Direction(2, -1), Direction(1, 1), Direction(3, -1)}) {
      if (v_degree(p, d).value() <= 0 || p.is_monomial()) continue;
      const LaurentPoly l = leading_form(p, d);
      if (l.is_monomial()) continue;
      const auto fs = solve_F(l, d, 6);
      if (fs.empty()) continue;
      ++found;
      CHECK_FALSE(aligned(PlanePoint(st_point(p, d)), PlanePoint(1, 1)));
      CHECK_FALSE(aligned(PlanePoint(en_point(p, d)), PlanePoint(1, 1)));
    }
  }
  CHECK(found > 0);
}
