#include <doctest.h>

#include "helpers.hpp"
#include "newton_shape/errors.hpp"
#include "newton_shape/geometry.hpp"

using namespace nshape;
using namespace nshape::test;

TEST_CASE("directions normalize") {
  CHECK(Direction(4, -2) == Direction(2, -1));
  CHECK(Direction(-3, 0) == Direction(-1, 0));
  CHECK_THROWS_AS(Direction(0, 0), InvalidDirection);
}

TEST_CASE("v_degree") {
  CHECK(v_degree(P("x^2 + y^3 + 1"), Direction(1, 1)) == DegreeValue(Rational(3)));
  CHECK(v_degree(P(kUnitP), Direction(1, -2)) == DegreeValue(Rational(2)));
  CHECK(v_degree(LaurentPoly(), Direction(1, 0)).is_neg_infinity());
  CHECK(v_degree(P("x^(1/2)*y"), Direction(2, 1)) == DegreeValue(Rational(2)));
}

TEST_CASE("leading forms") {
  CHECK(leading_form(P("x^2*y + x"), Direction(1, 1)) == P("x^2*y"));
  CHECK(leading_form(P(kUnitP), Direction(1, -2)) == P("x^6*y^2 + 6*x^8*y^3 + 9*x^10*y^4"));
  const LaurentPoly r0 = P("x") * (P("x*y^4 - 1").pow(3));
  CHECK(leading_form(r0 + P("1"), Direction(4, -1)) == r0);
  CHECK(leading_form(LaurentPoly(), Direction(1, 0)).is_zero());
}

TEST_CASE("homogeneity") {
  CHECK(is_homogeneous(P("x^2*y"), Direction(3, 7)));
  CHECK(is_homogeneous(P("x^2*y^4 - x"), Direction(4, -1)));
  CHECK_FALSE(is_homogeneous(P("x + y"), Direction(1, 0)));
  CHECK(is_homogeneous(LaurentPoly(), Direction(1, 0)));
}

TEST_CASE("homogeneous decomposition") {
  const auto h = homogeneous_decomposition(P("x^2*y + x + y^2"), Direction(1, 1));
  REQUIRE(h.size() == 3);
  CHECK(h[0].degree == 3);
  CHECK(h[0].component == P("x^2*y"));
  CHECK(h[1].component == P("y^2"));
  CHECK(h[2].component == P("x"));
  const auto g = homogeneous_decomposition(P("x + y"), Direction(1, -1));
  REQUIRE(g.size() == 2);
  CHECK(g[0].degree == 1);
  CHECK(g[1].degree == -1);
  CHECK_THROWS_AS(homogeneous_decomposition(LaurentPoly(), Direction(1, 0)), ZeroPolynomial);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const LaurentPoly p = random_poly(rng, 2, 7);
    LaurentPoly sum;
    for (const auto& c : homogeneous_decomposition(p, Direction(2, -1))) sum += c.component;
    CHECK(sum == p);
  }
}

TEST_CASE("cross and alignment") {
  CHECK(cross(std::pair<long, long>{1, 0}, std::pair<long, long>{0, 1}) == 1);
  CHECK(cross(Direction(1, -1), Direction(4, -1)) == 3);
  CHECK(cross(std::pair<long, long>{2, 4}, std::pair<long, long>{1, 2}) == 0);
  CHECK(aligned(PlanePoint(2, 4), PlanePoint(1, 2)));
  CHECK_FALSE(aligned(PlanePoint(1, 1), PlanePoint(1, 2)));
  CHECK(aligned(PlanePoint(0, 0), PlanePoint(3, 5)));
}

TEST_CASE("counterclockwise order") {
  CHECK(ccw_less(Direction(1, 0), Direction(1, 1), Direction(1, 0)));
  CHECK(ccw_less(Direction(1, -1), Direction(4, -1), Direction(1, -1)));
  CHECK(ccw_less(Direction(4, -1), Direction(1, 0), Direction(1, -1)));
  CHECK_FALSE(ccw_less(Direction(1, 0), Direction(4, -1), Direction(1, -1)));
  CHECK(in_interval_I(Direction(4, -1)));
  CHECK(in_interval_I(Direction(1, 0)));
  CHECK_FALSE(in_interval_I(Direction(1, -1)));
  CHECK(in_open_interval(Direction(0, 1), Direction(1, 0), Direction(-1, 0)));
  CHECK_FALSE(in_open_interval(Direction(0, -1), Direction(1, 0), Direction(-1, 0)));
}

TEST_CASE("ccw order agrees with cross product on half circles") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-7, 7);
  int checked = 0;
  while (checked < 500) {
    const long a1 = c(rng), a2 = c(rng), b1 = c(rng), b2 = c(rng);
    if ((a1 == 0 && a2 == 0) || (b1 == 0 && b2 == 0)) continue;
    const Direction a(a1, a2), b(b1, b2);
    if (cross(a, b) == 0) continue;
    // Anchor just clockwise of both: a and b lie in the half circle starting at the anchor.
    const Direction anchor = cross(a, b) > 0 ? a : b;
    CHECK(ccw_less(a, b, anchor) == (cross(a, b) > 0));
    ++checked;
  }
}

TEST_CASE("dir_of") {
  CHECK(dir_of(PlanePoint(1, 3)) == Direction(3, -1));
  CHECK(dir_of(PlanePoint(2 - 1, 4 - 1)) == Direction(3, -1));
  CHECK(dir_of(PlanePoint(1, 3)) == dir_of(PlanePoint(2 - 1, 4 - 1)));
  CHECK_THROWS_AS(dir_of(PlanePoint(2, 2)), OnDiagonal);
  CHECK_THROWS_AS(dir_of(PlanePoint(0, 0)), OnDiagonal);
  CHECK(dir_of(PlanePoint(make_rational(1, 2), 0)) == Direction(0, 1));
}

TEST_CASE("endpoints") {
  const LaurentPoly r0 = P("x") * (P("x*y^4 - 1").pow(3));
  const Endpoints e = endpoints(r0, Direction(4, -1));
  CHECK(e.st == ExpPoint(1, 0));
  CHECK(e.en == ExpPoint(4, 12));
  const Endpoints f = endpoints(leading_form(P(kUnitP), Direction(1, -2)), Direction(1, -2));
  CHECK(f.st == ExpPoint(6, 2));
  CHECK(f.en == ExpPoint(10, 4));
  const Endpoints g = endpoints(P("x^3*y^5"), Direction(2, 7));
  CHECK(g.st == ExpPoint(3, 5));
  CHECK(g.en == ExpPoint(3, 5));
  CHECK_THROWS_AS(endpoints(LaurentPoly(), Direction(1, 0)), ZeroPolynomial);
}

TEST_CASE("newton polygon and directions") {
  const auto h = newton_polygon(P("x^2 + y^3 + 1")).vertices;
  CHECK(h == std::vector<ExpPoint>{ExpPoint(0, 0), ExpPoint(2, 0), ExpPoint(0, 3)});
  CHECK(newton_polygon(P("x^3*y^5")).vertices.size() == 1);
  CHECK(newton_polygon(P("x + 2*x^2 + x^3")).vertices.size() == 2);
  const auto d = directions_of(P("x^2 + y^3 + 1"));
  CHECK(d.size() == 3);
  CHECK(std::find(d.begin(), d.end(), Direction(3, 2)) != d.end());
  CHECK(std::find(d.begin(), d.end(), Direction(0, -1)) != d.end());
  CHECK(std::find(d.begin(), d.end(), Direction(-1, 0)) != d.end());
  CHECK(directions_of(P("x^3*y^5")).empty());
  CHECK_THROWS_AS(newton_polygon(LaurentPoly()), ZeroPolynomial);
}

TEST_CASE("normal-form direction set") {
  // Hull with vertices (0,0), (1,0), (4,12) and (0,4): the shape with Dir {(4,-1),(-2,1),(-1,0),(0,-1)}.
  const LaurentPoly w = P("1 + x + x^4*y^12 + y^4");
  auto d = directions_of(w);
  std::sort(d.begin(), d.end(), [](const Direction& a, const Direction& b) {
    return a.rho() != b.rho() ? a.rho() < b.rho() : a.sigma() < b.sigma();
  });
  CHECK(d == std::vector<Direction>{Direction(-2, 1), Direction(-1, 0), Direction(0, -1), Direction(4, -1)});
}

TEST_CASE("successor and predecessor") {
  const LaurentPoly p = P("x^2 + y^3 + 1");
  CHECK(succ(p, Direction(1, 0)) == Direction(3, 2));
  CHECK(pred(p, Direction(1, 0)) == Direction(0, -1));
  CHECK(succ(p, Direction(3, 2)) == Direction(-1, 0));
  const LaurentPoly h = P("x^2*y^4 - x");
  CHECK(succ(h, Direction(4, -1)) == Direction(-4, 1));
  CHECK(pred(h, Direction(4, -1)) == Direction(-4, 1));
  CHECK_THROWS_AS(succ(P("x*y"), Direction(1, 0)), MonomialInput);
}

TEST_CASE("edge direction") {
  const LaurentPoly r0 = P("x") * (P("x*y^4 - 1").pow(3));
  CHECK(edge_direction(r0, Direction(4, -1)) == Direction(4, -1));
  CHECK(edge_direction(P("x^2 + y^3 + 1"), Direction(3, 2)) == Direction(3, 2));
  CHECK(edge_direction(P("x + y"), Direction(1, 1)) == Direction(1, 1));
  CHECK_THROWS_AS(edge_direction(P("x + y"), Direction(1, 0)), NotAnEdge);
}

TEST_CASE("consecutive edges share a vertex") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const LaurentPoly p = random_poly(rng, 1 + i % 2, 7);
    const auto dirs = directions_of(p);
    if (dirs.size() < 2) continue;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const Direction a = dirs[k], b = dirs[(k + 1) % dirs.size()];
      CHECK(succ(p, a) == b);
      CHECK(pred(p, b) == a);
      CHECK(en_point(p, a) == st_point(p, b));
      // Between consecutive directions the leading form is the shared vertex.
      if (cross(a, b) > 0) {
        const Direction mid(a.rho() + b.rho(), a.sigma() + b.sigma());
        const LaurentPoly lf = leading_form(p, mid);
        CHECK(lf.is_monomial());
        CHECK(lf.terms().begin()->first == en_point(p, a));
      }
    }
  }
}

TEST_CASE("every support point lies in the hull") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const LaurentPoly p = random_poly(rng, 2, 8);
    const auto v = newton_polygon(p).vertices;
    if (v.size() < 3) continue;
    for (const auto& [e, c] : p.terms()) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        const PlanePoint a(v[k]), b(v[(k + 1) % v.size()]);
        CHECK(cross(b - a, PlanePoint(e) - a) >= 0);
      }
    }
  }
}
