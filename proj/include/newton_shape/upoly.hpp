#pragma once

#include <utility>
#include <vector>

#include "newton_shape/rational.hpp"

namespace nshape {

// Dense univariate polynomial over Q, coefficients stored low degree first with no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, int degree);
  // z - r
  static UPoly linear_root(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  UPoly derivative() const;
  UPoly monic() const;
  Rational eval(const Rational& z) const;
  UPoly pow(int e) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rational& c);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
bool divides(const UPoly& d, const UPoly& a);
// Monic gcd; gcd(0,0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

struct YunFactor {
  UPoly factor;  // monic, squarefree, pairwise coprime across the list
  int multiplicity;
};

// Yun's squarefree decomposition: p = lc(p) * prod factor^multiplicity. Constant factors are omitted.
std::vector<YunFactor> yun(const UPoly& p);

// Distinct rational roots in increasing order.
std::vector<Rational> rational_roots(const UPoly& p);
int root_multiplicity(const UPoly& p, const Rational& r);

// Largest k such that only powers z^{k i} occur (0 for constants).
int exponent_gcd(const UPoly& p);
// q with q(z^k) = p(z); requires exponent_gcd(p) divisible by k.
UPoly contract(const UPoly& p, int k);

}  // namespace nshape
