#pragma once

#include <random>

#include "newton_shape/io.hpp"
#include "newton_shape/poly.hpp"

namespace nshape::test {

inline LaurentPoly P(const char* text) { return parse_poly(text); }
inline Rational q(long n, long d = 1) { return make_rational(n, d); }

inline LaurentPoly random_poly(std::mt19937_64& rng, long l, int max_terms = 5) {
  std::uniform_int_distribution<long> xe(-3 * l, 4 * l), ye(0, 3), num(-4, 4), den(1, 3);
  LaurentPoly p;
  std::uniform_int_distribution<int> nt(1, max_terms);
  for (int t = nt(rng); t > 0; --t) {
    long c = num(rng);
    if (c == 0) c = 1;
    p.add_term(ExpPoint(make_rational(xe(rng), l), ye(rng)), make_rational(c, den(rng)));
  }
  return p;
}

// Pair with bracket 1 whose leading form at (1,-2) admits no F.
inline const char* kUnitP = "x^2*y + x^6*y^2 + 6*x^8*y^3 + 9*x^10*y^4";
inline const char* kUnitQ =
    "x^-1 + 2*x^3*y + 18*x^5*y^2 + 36*x^7*y^3 + 8*x^9*y^3 + 72*x^11*y^4 + 216*x^13*y^5 + 216*x^15*y^6";

}  // namespace nshape::test
