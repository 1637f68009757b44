#include "newton_shape/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace nshape {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear_root(const Rational& r) { return UPoly({Rational(-r), Rational(1)}); }

Rational UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

UPoly UPoly::derivative() const {
  std::vector<Rational> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / leading());
}

Rational UPoly::eval(const Rational& z) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UPoly UPoly::pow(int e) const {
  UPoly r = constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * Rational(-1); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const Rational& c) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= c;
  return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(dq) + 1, Rational(0));
  for (int k = dq; k >= 0; --k) {
    Rational t = r[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = t;
    if (t == 0) continue;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k + i)] -= t * b.coeff(i);
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

bool divides(const UPoly& d, const UPoly& a) { return divmod(a, d).second.is_zero(); }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<YunFactor> yun(const UPoly& p) {
  std::vector<YunFactor> out;
  if (p.degree() <= 0) return out;
  UPoly f = p.monic();
  UPoly fp = f.derivative();
  UPoly a = gcd(f, fp);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(fp, a).first;
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, i});
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      small.push_back(k);
      if (k * k != n) large.push_back(Integer(n / k));
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  // Work on the squarefree part with integer coefficients.
  UPoly s = p;
  auto yf = yun(p);
  s = UPoly::constant(1);
  for (const auto& f : yf) s = s * f.factor;
  Integer den = 1;
  for (const auto& c : s.coeffs()) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> ic;
  for (const auto& c : s.coeffs()) ic.push_back(Integer(c * den));
  std::size_t low = 0;
  while (ic[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (low + 1 < ic.size()) {
    auto num = divisors(ic[low]);
    auto dens = divisors(ic.back());
    for (const auto& q : dens) {
      for (const auto& a : num) {
        for (int sign : {1, -1}) {
          Rational r = make_rational(Integer(a * sign), q);
          if (s.eval(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int root_multiplicity(const UPoly& p, const Rational& r) {
  if (p.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
  int m = 0;
  UPoly q = p;
  UPoly lin = UPoly::linear_root(r);
  while (q.degree() > 0) {
    auto [quo, rem] = divmod(q, lin);
    if (!rem.is_zero()) break;
    q = quo;
    ++m;
  }
  return m;
}

int exponent_gcd(const UPoly& p) {
  long g = 0;
  for (int i = 1; i <= p.degree(); ++i) {
    if (p.coeff(i) != 0) g = gcd_l(g, i);
  }
  return static_cast<int>(g);
}

UPoly contract(const UPoly& p, int k) {
  if (k <= 0) throw std::invalid_argument("contract needs k >= 1");
  std::vector<Rational> v;
  for (int i = 0; i <= p.degree(); ++i) {
    if (i % k == 0) {
      v.push_back(p.coeff(i));
    } else if (p.coeff(i) != 0) {
      throw std::invalid_argument("polynomial is not in Q[z^k]");
    }
  }
  return UPoly(std::move(v));
}

}  // namespace nshape
