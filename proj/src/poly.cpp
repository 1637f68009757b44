#include "newton_shape/poly.hpp"

#include "newton_shape/errors.hpp"

namespace nshape {

LaurentPoly::LaurentPoly(TermMap terms) {
  for (auto& [e, c] : terms) {
    if (e.y < 0) throw std::invalid_argument("negative y-exponent");
    if (c != 0) terms_.emplace(e, c);
  }
}

LaurentPoly LaurentPoly::constant(const Rational& c) { return monomial(c, 0, 0); }

LaurentPoly LaurentPoly::monomial(const Rational& c, const Rational& xexp, long yexp) {
  if (yexp < 0) throw std::invalid_argument("negative y-exponent");
  LaurentPoly p;
  if (c != 0) p.terms_.emplace(ExpPoint(xexp, yexp), c);
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpPoint(0, 0));
}

Rational LaurentPoly::coeff(const ExpPoint& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<ExpPoint> LaurentPoly::support() const {
  std::vector<ExpPoint> s;
  s.reserve(terms_.size());
  for (const auto& kv : terms_) s.push_back(kv.first);
  return s;
}

void LaurentPoly::add_term(const ExpPoint& e, const Rational& c) {
  if (c == 0) return;
  if (e.y < 0) throw std::invalid_argument("negative y-exponent");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, Rational(ca * cb));
  }
  return r;
}

LaurentPoly LaurentPoly::pow(long e) const {
  if (e < 0) {
    if (!is_monomial()) throw std::invalid_argument("negative power of a non-monomial");
    const auto& [pt, c] = *terms_.begin();
    if (pt.y != 0) throw std::invalid_argument("negative power of a monomial involving y");
    Rational ce = 1;
    for (long i = 0; i < -e; ++i) ce /= c;
    return monomial(ce, Rational(pt.x * e), 0);
  }
  LaurentPoly result = constant(1);
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LaurentPoly arithmetic(const LaurentPoly& p, const LaurentPoly& q, ArithKind kind, const Rational& c) {
  switch (kind) {
    case ArithKind::add: return p + q;
    case ArithKind::sub: return p - q;
    case ArithKind::mul: return p * q;
    case ArithKind::scale: return p * c;
  }
  return {};
}

LaurentPoly partial_derivative(const LaurentPoly& p, Var v) {
  LaurentPoly r;
  for (const auto& [e, c] : p.terms()) {
    if (v == Var::x) {
      if (e.x != 0) r.add_term(ExpPoint(Rational(e.x - 1), e.y), Rational(c * e.x));
    } else {
      if (e.y != 0) r.add_term(ExpPoint(e.x, e.y - 1), Rational(c * e.y));
    }
  }
  return r;
}

LaurentPoly bracket(const LaurentPoly& p, const LaurentPoly& q) {
  return partial_derivative(p, Var::x) * partial_derivative(q, Var::y) -
         partial_derivative(p, Var::y) * partial_derivative(q, Var::x);
}

long ramification_index(const LaurentPoly& p) {
  Integer l = 1;
  for (const auto& kv : p.terms()) l = lcm(l, Integer(kv.first.x.get_den()));
  return to_long(l);
}

JacobianCheck is_jacobian_pair(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly b = bracket(p, q);
  JacobianCheck r;
  if (!b.is_zero() && b.is_constant()) {
    r.is_pair = true;
    r.constant = b.terms().begin()->second;
  }
  return r;
}

bool in_L1(const LaurentPoly& p) {
  for (const auto& kv : p.terms()) {
    if (!is_integer(kv.first.x)) return false;
  }
  return true;
}

bool in_L(const LaurentPoly& p) {
  for (const auto& kv : p.terms()) {
    if (!is_integer(kv.first.x) || kv.first.x < 0) return false;
  }
  return true;
}

}  // namespace nshape
