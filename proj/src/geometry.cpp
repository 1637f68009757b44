#include "newton_shape/geometry.hpp"

#include <algorithm>
#include <map>

#include "newton_shape/errors.hpp"

namespace nshape {

Direction::Direction(long rho, long sigma) {
  if (rho == 0 && sigma == 0) throw InvalidDirection("(0,0) is not a direction");
  long g = gcd_l(rho, sigma);
  rho_ = rho / g;
  sigma_ = sigma / g;
}

const Rational& DegreeValue::value() const {
  if (!finite_) throw std::logic_error("value() of NEG_INFINITY");
  return value_;
}

Rational v_point(const PlanePoint& p, const Direction& d) { return d.rho() * p.x + d.sigma() * p.y; }

Rational v_point(const ExpPoint& p, const Direction& d) {
  return Rational(d.rho() * p.x + Rational(d.sigma() * p.y));
}

DegreeValue v_degree(const LaurentPoly& p, const Direction& d) {
  if (p.is_zero()) return DegreeValue::neg_infinity();
  bool first = true;
  Rational best;
  for (const auto& kv : p.terms()) {
    Rational v = v_point(kv.first, d);
    if (first || v > best) best = v;
    first = false;
  }
  return DegreeValue(best);
}

LaurentPoly leading_form(const LaurentPoly& p, const Direction& d) {
  if (p.is_zero()) return {};
  Rational top = v_degree(p, d).value();
  LaurentPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) {
    if (v_point(e, d) == top) t.emplace(e, c);
  }
  return LaurentPoly(std::move(t));
}

bool is_homogeneous(const LaurentPoly& p, const Direction& d) {
  if (p.is_zero()) return true;
  Rational v0 = v_point(p.terms().begin()->first, d);
  for (const auto& kv : p.terms()) {
    if (v_point(kv.first, d) != v0) return false;
  }
  return true;
}

std::vector<HomogeneousComponent> homogeneous_decomposition(const LaurentPoly& p, const Direction& d) {
  if (p.is_zero()) throw ZeroPolynomial("homogeneous_decomposition of 0");
  std::map<Rational, LaurentPoly::TermMap> parts;
  for (const auto& [e, c] : p.terms()) parts[v_point(e, d)].emplace(e, c);
  std::vector<HomogeneousComponent> out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    out.push_back({it->first, LaurentPoly(std::move(it->second))});
  }
  return out;
}

long cross(std::pair<long, long> a, std::pair<long, long> b) { return a.first * b.second - a.second * b.first; }

Rational cross(const PlanePoint& a, const PlanePoint& b) { return a.x * b.y - a.y * b.x; }

long cross(const Direction& a, const Direction& b) { return a.rho() * b.sigma() - a.sigma() * b.rho(); }

bool aligned(const PlanePoint& a, const PlanePoint& b) { return cross(a, b) == 0; }

namespace {

// 0 if the angular offset of v from anchor lies in [0, pi), 1 if in [pi, 2 pi).
int half_of(const Direction& v, const Direction& anchor) {
  long c = cross(anchor, v);
  if (c > 0) return 0;
  if (c < 0) return 1;
  long dot = anchor.rho() * v.rho() + anchor.sigma() * v.sigma();
  return dot > 0 ? 0 : 1;
}

Direction direction_from_rationals(const Rational& a, const Rational& b) {
  Integer l = lcm(Integer(a.get_den()), Integer(b.get_den()));
  return Direction(to_long(Integer(a * l)), to_long(Integer(b * l)));
}

}  // namespace

bool ccw_less(const Direction& a, const Direction& b, const Direction& anchor) {
  if (a == b) return false;
  int ha = half_of(a, anchor), hb = half_of(b, anchor);
  if (ha != hb) return ha < hb;
  if (a == anchor) return true;
  if (b == anchor) return false;
  return cross(a, b) > 0;
}

bool in_half_open_interval(const Direction& d, const Direction& lo, const Direction& hi) {
  if (d == lo) return false;
  return !ccw_less(hi, d, lo);
}

bool in_open_interval(const Direction& d, const Direction& lo, const Direction& hi) {
  if (d == lo || d == hi) return false;
  return ccw_less(d, hi, lo);
}

bool in_interval_I(const Direction& d) { return in_half_open_interval(d, Direction(1, -1), Direction(1, 0)); }

Direction dir_of(const PlanePoint& p) {
  Integer l = lcm(Integer(p.x.get_den()), Integer(p.y.get_den()));
  Integer r = Integer(p.x * l);
  Integer s = Integer(p.y * l);
  if (r == s) throw OnDiagonal("dir_of a point on Q(1,1)");
  Integer g = gcd(r, s);
  if (r - s > 0) return Direction(to_long(Integer(-s / g)), to_long(Integer(r / g)));
  return Direction(to_long(Integer(s / g)), to_long(Integer(-r / g)));
}

Endpoints endpoints(const LaurentPoly& p, const Direction& d) {
  if (p.is_zero()) throw ZeroPolynomial("endpoints of 0");
  LaurentPoly l = leading_form(p, d);
  // Along the edge, cross(d, q) = -sigma*q.x + rho*q.y grows from st to en.
  auto key = [&](const ExpPoint& e) { return Rational(-d.sigma() * e.x + Rational(d.rho() * e.y)); };
  const ExpPoint* lo = nullptr;
  const ExpPoint* hi = nullptr;
  Rational klo, khi;
  for (const auto& kv : l.terms()) {
    Rational k = key(kv.first);
    if (!lo || k < klo) lo = &kv.first, klo = k;
    if (!hi || k > khi) hi = &kv.first, khi = k;
  }
  return {*lo, *hi};
}

std::vector<PlanePoint> convex_hull(std::vector<PlanePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  std::vector<PlanePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

NewtonPolygon newton_polygon(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("newton_polygon of 0");
  std::vector<PlanePoint> pts;
  for (const auto& kv : p.terms()) pts.emplace_back(kv.first);
  NewtonPolygon poly;
  for (const auto& v : convex_hull(std::move(pts))) poly.vertices.emplace_back(v.x, to_long(v.y));
  return poly;
}

std::vector<Direction> directions_of(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("directions_of 0");
  const auto verts = newton_polygon(p).vertices;
  std::vector<Direction> dirs;
  if (verts.size() < 2) return dirs;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const ExpPoint& a = verts[i];
    const ExpPoint& b = verts[(i + 1) % verts.size()];
    Rational ex = b.x - a.x;
    Rational ey = b.y - a.y;
    dirs.push_back(direction_from_rationals(ey, Rational(-ex)));
  }
  const Direction anchor(1, 0);
  std::sort(dirs.begin(), dirs.end(), [&](const Direction& u, const Direction& v) { return ccw_less(u, v, anchor); });
  return dirs;
}

Direction succ_pred(const LaurentPoly& p, const Direction& d, Neighbor which) {
  if (p.is_zero() || p.is_monomial()) throw MonomialInput("Succ/Pred need a non-monomial polynomial");
  const auto dirs = directions_of(p);
  const Direction* best = nullptr;
  for (const auto& e : dirs) {
    if (e == d) continue;
    if (!best) {
      best = &e;
      continue;
    }
    bool earlier = ccw_less(e, *best, d);
    if ((which == Neighbor::succ && earlier) || (which == Neighbor::pred && !earlier)) best = &e;
  }
  return *best;
}

Direction edge_direction(const LaurentPoly& p, const Direction& d) {
  if (p.is_zero()) throw NotAnEdge("zero polynomial has no edges");
  const auto dirs = directions_of(p);
  if (!d.in_V_positive() || std::find(dirs.begin(), dirs.end(), d) == dirs.end()) {
    throw NotAnEdge("direction is not in Dir(P) with rho+sigma > 0");
  }
  auto [st, en] = endpoints(p, d);
  Direction e = dir_of(PlanePoint(en) - PlanePoint(st));
  if (e != d) throw AssertionFailure("dir(en - st) differs from the edge direction");
  return e;
}

}  // namespace nshape
