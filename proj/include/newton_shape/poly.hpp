#pragma once

#include <map>
#include <optional>
#include <vector>

#include "newton_shape/rational.hpp"

namespace nshape {

// Exponent (i/l, j) of a monomial x^{i/l} y^j.
struct ExpPoint {
  Rational x;
  long y = 0;

  ExpPoint() = default;
  ExpPoint(Rational xe, long ye) : x(std::move(xe)), y(ye) {}

  friend bool operator==(const ExpPoint& a, const ExpPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const ExpPoint& a, const ExpPoint& b) { return !(a == b); }
  friend bool operator<(const ExpPoint& a, const ExpPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  friend ExpPoint operator+(const ExpPoint& a, const ExpPoint& b) {
    return ExpPoint(Rational(a.x + b.x), a.y + b.y);
  }
};

// Sparse element of L^(l) = Q[x^{1/l}, x^{-1/l}, y]. Zero coefficients are never stored,
// so structural equality is mathematical equality.
class LaurentPoly {
 public:
  using TermMap = std::map<ExpPoint, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(TermMap terms);

  static LaurentPoly constant(const Rational& c);
  static LaurentPoly monomial(const Rational& c, const Rational& xexp, long yexp);
  static LaurentPoly x() { return monomial(1, 1, 0); }
  static LaurentPoly y() { return monomial(1, 0, 1); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  Rational coeff(const ExpPoint& e) const;
  std::vector<ExpPoint> support() const;

  // Accumulates c into the coefficient at e, dropping it if the sum is zero.
  void add_term(const ExpPoint& e, const Rational& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Nonnegative powers for any P; negative powers only for monomials.
  LaurentPoly pow(long e) const;

 private:
  TermMap terms_;
};

enum class Var { x, y };

enum class ArithKind { add, sub, mul, scale };
LaurentPoly arithmetic(const LaurentPoly& p, const LaurentPoly& q, ArithKind kind,
                       const Rational& c = 1);

LaurentPoly partial_derivative(const LaurentPoly& p, Var v);

// [P,Q] = P_x Q_y - P_y Q_x.
LaurentPoly bracket(const LaurentPoly& p, const LaurentPoly& q);

// Least l >= 1 with every x-exponent in (1/l)Z; 1 for zero.
long ramification_index(const LaurentPoly& p);

struct JacobianCheck {
  bool is_pair = false;
  std::optional<Rational> constant;
};
JacobianCheck is_jacobian_pair(const LaurentPoly& p, const LaurentPoly& q);

// True when every x-exponent is an integer (P in L^(1)).
bool in_L1(const LaurentPoly& p);
// True when every x-exponent is a nonnegative integer (P in K[x,y]).
bool in_L(const LaurentPoly& p);

}  // namespace nshape
