#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newton_shape/geometry.hpp"
#include "newton_shape/upoly.hpp"

namespace nshape {

// x^{xshift} y^{yshift} p(z) with z = x^{zx} y^{zy} and p(0) != 0.
// For rho > 0: z = x^{-sigma/rho} y. For rho = 0: z = x^{1/l}, l the ramification index.
struct UnivariateSlice {
  Rational xshift;
  long yshift = 0;
  UPoly poly;
  Rational zx;
  long zy = 1;
};

// Throws ZeroPolynomial, NotHomogeneous, UnsupportedDirection (rho < 0).
UnivariateSlice slice(const LaurentPoly& p, const Direction& d);
LaurentPoly reassemble(const UnivariateSlice& s);
// Same z-definition and shifts, different univariate part.
LaurentPoly reassemble_with(const UnivariateSlice& s, const Rational& xshift, long yshift, const UPoly& poly);

struct SquarefreeData {
  UPoly squarefree_part;           // monic
  std::vector<YunFactor> factors;  // p = unit * prod factor^multiplicity
  Rational unit;
  int distinct_roots = 0;  // over the algebraic closure
  // (degree of factor, multiplicity) per Yun factor.
  std::vector<std::pair<int, int>> profile() const;
};
// Throws ZeroPolynomial.
SquarefreeData squarefree_data(const UPoly& p);

struct PowerDecomposition {
  LaurentPoly R;
  long dmax = 1;
  Rational lambda;  // P = lambda * R^dmax
};
// Throws ZeroPolynomial, NotHomogeneous.
PowerDecomposition power_decompose(const LaurentPoly& p, const Direction& d);
// (R, lambda) with P = lambda R^e and R in L^(ramification of P), if such R exists.
std::optional<std::pair<LaurentPoly, Rational>> try_root(const LaurentPoly& p, const Direction& d, long e);

struct CommonPowerBase {
  LaurentPoly R;
  long m = 0;
  long n = 0;
  Rational lambdaP;
  Rational lambdaQ;
};
// P = lambdaP R^m, Q = lambdaQ R^n with m, n coprime and n v(P) = m v(Q).
// Throws BracketNonzero, BothDegreesZero, NotHomogeneous, NotProportional, RequiresExtensionField.
CommonPowerBase common_power_base(const LaurentPoly& p, const LaurentPoly& q, const Direction& d);

// Homogeneous F with v_d(F) = rho+sigma and [F, Phom] = Phom, y-degree at most max_ydeg.
// The whole support line is solved as one exact linear system. The first element is the
// particular solution with all free unknowns zero; each further element adds one kernel
// basis vector. Empty means no solution within the bound.
// Throws ZeroPolynomial, NotHomogeneous, DegreeZero.
std::vector<LaurentPoly> solve_F(const LaurentPoly& phom, const Direction& d, long max_ydeg = 20);

struct ClauseResult {
  std::string clause;
  bool applicable = false;
  bool pass = true;
  std::string detail;
};

struct PavadassReport {
  std::vector<ClauseResult> clauses;
  bool all_pass() const;
};

// Separability, endpoint and multiplicity checks for F with [F, Phom] = Phom.
// Throws PreconditionFailed naming the violated precondition.
PavadassReport check_pavadass(const LaurentPoly& phom, const LaurentPoly& f, const Direction& d);

enum class CaseLabel { Ia, Ib, IIa, IIb, III };
const char* case_label_name(CaseLabel c);

// Number of distinct linear factors of the x-free part z^s p(z) of a homogeneous element.
int factor_count(const LaurentPoly& phom, const Direction& d);

// Throws MonomialInput, DegenerateStart.
CaseLabel classify_case(const LaurentPoly& pl, const LaurentPoly& ql, const Direction& d);

}  // namespace nshape
