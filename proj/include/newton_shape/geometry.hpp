#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "newton_shape/poly.hpp"

namespace nshape {

// Coprime integer pair (rho, sigma). Construction divides out the gcd and rejects (0,0).
class Direction {
 public:
  Direction() = default;
  Direction(long rho, long sigma);

  long rho() const { return rho_; }
  long sigma() const { return sigma_; }
  Direction operator-() const { return Direction(-rho_, -sigma_); }
  // rho + sigma > 0
  bool in_V_positive() const { return rho_ + sigma_ > 0; }

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.rho_ == b.rho_ && a.sigma_ == b.sigma_;
  }
  friend bool operator!=(const Direction& a, const Direction& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Direction& d) {
    return os << "(" << d.rho_ << "," << d.sigma_ << ")";
  }

 private:
  long rho_ = 1;
  long sigma_ = 0;
};

// Rational point of the plane.
struct PlanePoint {
  Rational x;
  Rational y;

  PlanePoint() = default;
  PlanePoint(Rational a, Rational b) : x(std::move(a)), y(std::move(b)) {}
  explicit PlanePoint(const ExpPoint& e) : x(e.x), y(e.y) {}

  friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const PlanePoint& a, const PlanePoint& b) { return !(a == b); }
  friend bool operator<(const PlanePoint& a, const PlanePoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
  friend PlanePoint operator+(const PlanePoint& a, const PlanePoint& b) {
    return PlanePoint(Rational(a.x + b.x), Rational(a.y + b.y));
  }
  friend PlanePoint operator-(const PlanePoint& a, const PlanePoint& b) {
    return PlanePoint(Rational(a.x - b.x), Rational(a.y - b.y));
  }
  friend PlanePoint operator*(const Rational& c, const PlanePoint& a) {
    return PlanePoint(Rational(c * a.x), Rational(c * a.y));
  }
  friend std::ostream& operator<<(std::ostream& os, const PlanePoint& p) {
    return os << "(" << p.x.get_str() << "," << p.y.get_str() << ")";
  }
};

// v_{rho,sigma}; NEG_INFINITY only for the zero polynomial.
class DegreeValue {
 public:
  static DegreeValue neg_infinity() { return DegreeValue(); }
  DegreeValue(Rational v) : finite_(true), value_(std::move(v)) {}

  bool is_neg_infinity() const { return !finite_; }
  // Throws std::logic_error on NEG_INFINITY.
  const Rational& value() const;

  friend bool operator==(const DegreeValue& a, const DegreeValue& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend bool operator<(const DegreeValue& a, const DegreeValue& b) {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const DegreeValue& a, const DegreeValue& b) { return !(b < a); }
  friend std::ostream& operator<<(std::ostream& os, const DegreeValue& d) {
    return d.finite_ ? os << d.value_.get_str() : os << "-inf";
  }

 private:
  DegreeValue() = default;
  bool finite_ = false;
  Rational value_;
};

Rational v_point(const PlanePoint& p, const Direction& d);
Rational v_point(const ExpPoint& p, const Direction& d);

DegreeValue v_degree(const LaurentPoly& p, const Direction& d);
LaurentPoly leading_form(const LaurentPoly& p, const Direction& d);
bool is_homogeneous(const LaurentPoly& p, const Direction& d);

struct HomogeneousComponent {
  Rational degree;
  LaurentPoly component;
};
// Descending degrees; throws ZeroPolynomial.
std::vector<HomogeneousComponent> homogeneous_decomposition(const LaurentPoly& p, const Direction& d);

long cross(std::pair<long, long> a, std::pair<long, long> b);
Rational cross(const PlanePoint& a, const PlanePoint& b);
long cross(const Direction& a, const Direction& b);
bool aligned(const PlanePoint& a, const PlanePoint& b);

// Angular offset comparison counterclockwise from anchor, exact.
bool ccw_less(const Direction& a, const Direction& b, const Direction& anchor);
// d strictly after lo and at most hi, going counterclockwise from lo: d in ]lo, hi].
bool in_half_open_interval(const Direction& d, const Direction& lo, const Direction& hi);
// d in ]lo, hi[.
bool in_open_interval(const Direction& d, const Direction& lo, const Direction& hi);
// I = ](1,-1),(1,0)].
bool in_interval_I(const Direction& d);

// The unique direction in V_{>0} annihilating p. Throws OnDiagonal.
Direction dir_of(const PlanePoint& p);

struct Endpoints {
  ExpPoint st;
  ExpPoint en;
};
// Throws ZeroPolynomial.
Endpoints endpoints(const LaurentPoly& p, const Direction& d);
inline ExpPoint st_point(const LaurentPoly& p, const Direction& d) { return endpoints(p, d).st; }
inline ExpPoint en_point(const LaurentPoly& p, const Direction& d) { return endpoints(p, d).en; }

struct NewtonPolygon {
  std::vector<ExpPoint> vertices;  // counterclockwise, strictly convex
};
NewtonPolygon newton_polygon(const LaurentPoly& p);
// Convex hull of arbitrary rational points, same conventions.
std::vector<PlanePoint> convex_hull(std::vector<PlanePoint> pts);

// Outward edge normals of the Newton polygon, counterclockwise from (1,0).
std::vector<Direction> directions_of(const LaurentPoly& p);

enum class Neighbor { succ, pred };
Direction succ_pred(const LaurentPoly& p, const Direction& d, Neighbor which);
inline Direction succ(const LaurentPoly& p, const Direction& d) { return succ_pred(p, d, Neighbor::succ); }
inline Direction pred(const LaurentPoly& p, const Direction& d) { return succ_pred(p, d, Neighbor::pred); }

// dir_of(en - st), checked against d. Throws NotAnEdge, AssertionFailure.
Direction edge_direction(const LaurentPoly& p, const Direction& d);

}  // namespace nshape
