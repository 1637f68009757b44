#include "newton_shape/homogeneous.hpp"

#include <algorithm>
#include <map>

#include "newton_shape/errors.hpp"
#include "newton_shape/linalg.hpp"

namespace nshape {

namespace {

Direction positive_rep(const Direction& d) { return d.rho() < 0 ? -d : d; }

void require_homogeneous(const LaurentPoly& p, const Direction& d, const char* what) {
  if (p.is_zero()) throw ZeroPolynomial(std::string(what) + ": zero polynomial");
  if (!is_homogeneous(p, d)) throw NotHomogeneous(std::string(what) + ": input is not homogeneous");
}

// (g, c, e) with c a + e b = g = gcd(a, b) >= 0.
void ext_gcd(long a, long b, long& g, long& c, long& e) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    long tmp = old_r - q * r;
    old_r = r, r = tmp;
    tmp = old_s - q * s;
    old_s = s, s = tmp;
    tmp = old_t - q * t;
    old_t = t, t = tmp;
  }
  if (old_r < 0) old_r = -old_r, old_s = -old_s, old_t = -old_t;
  g = old_r, c = old_s, e = old_t;
}

// h with h^e = p for monic p, via the Yun factors; nullopt if some multiplicity is not divisible.
std::optional<UPoly> monic_root(const UPoly& p, long e) {
  if (e <= 0) return std::nullopt;
  UPoly h = UPoly::constant(1);
  for (const auto& f : yun(p)) {
    if (f.multiplicity % e != 0) return std::nullopt;
    h = h * f.factor.pow(static_cast<int>(f.multiplicity / e));
  }
  return h;
}

}  // namespace

UnivariateSlice slice(const LaurentPoly& p, const Direction& d) {
  require_homogeneous(p, d, "slice");
  if (d.rho() < 0) throw UnsupportedDirection("slice needs rho >= 0");
  UnivariateSlice s;
  std::map<long, Rational> coeffs;
  if (d.rho() > 0) {
    s.zx = Rational(-d.sigma(), d.rho());
    s.zx.canonicalize();
    s.zy = 1;
    const ExpPoint* st = nullptr;
    for (const auto& kv : p.terms()) {
      if (!st || kv.first.y < st->y) st = &kv.first;
    }
    s.xshift = st->x;
    s.yshift = st->y;
    for (const auto& [e, c] : p.terms()) coeffs[e.y - s.yshift] = c;
  } else {
    long l = ramification_index(p);
    s.zx = make_rational(1, l);
    s.zx.canonicalize();
    s.zy = 0;
    s.xshift = p.terms().begin()->first.x;
    s.yshift = p.terms().begin()->first.y;
    for (const auto& [e, c] : p.terms()) coeffs[to_long(Rational((e.x - s.xshift) * l))] = c;
  }
  std::vector<Rational> v(static_cast<std::size_t>(coeffs.rbegin()->first) + 1, Rational(0));
  for (const auto& [k, c] : coeffs) v[static_cast<std::size_t>(k)] = c;
  s.poly = UPoly(std::move(v));
  return s;
}

LaurentPoly reassemble_with(const UnivariateSlice& s, const Rational& xshift, long yshift, const UPoly& poly) {
  LaurentPoly r;
  for (int k = 0; k <= poly.degree(); ++k) {
    if (poly.coeff(k) == 0) continue;
    r.add_term(ExpPoint(Rational(xshift + k * s.zx), yshift + k * s.zy), poly.coeff(k));
  }
  return r;
}

LaurentPoly reassemble(const UnivariateSlice& s) { return reassemble_with(s, s.xshift, s.yshift, s.poly); }

std::vector<std::pair<int, int>> SquarefreeData::profile() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& f : factors) out.emplace_back(f.factor.degree(), f.multiplicity);
  return out;
}

SquarefreeData squarefree_data(const UPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree_data of 0");
  SquarefreeData s;
  s.unit = p.leading();
  s.factors = yun(p);
  s.squarefree_part = UPoly::constant(1);
  for (const auto& f : s.factors) s.squarefree_part = s.squarefree_part * f.factor;
  s.distinct_roots = s.squarefree_part.degree();
  return s;
}

std::optional<std::pair<LaurentPoly, Rational>> try_root(const LaurentPoly& p, const Direction& d, long e) {
  require_homogeneous(p, d, "try_root");
  if (e <= 0) return std::nullopt;
  UnivariateSlice s = slice(p, positive_rep(d));
  const long lp = ramification_index(p);
  const Integer r = Integer(s.xshift * lp);
  if (r % e != 0 || s.yshift % e != 0) return std::nullopt;
  Rational lambda = s.poly.leading();
  auto h = monic_root(s.poly.monic(), e);
  if (!h) return std::nullopt;
  LaurentPoly R = reassemble_with(s, Rational(s.xshift / e), s.yshift / e, *h);
  if (lp % ramification_index(R) != 0) return std::nullopt;
  if (R.pow(e) * lambda != p) return std::nullopt;
  return std::make_pair(R, lambda);
}

PowerDecomposition power_decompose(const LaurentPoly& p, const Direction& d) {
  require_homogeneous(p, d, "power_decompose");
  UnivariateSlice s = slice(p, positive_rep(d));
  const long lp = ramification_index(p);
  long g = gcd_l(to_long(Integer(s.xshift * lp)), s.yshift);
  for (const auto& f : yun(s.poly)) g = gcd_l(g, f.multiplicity);
  if (g == 0) return {LaurentPoly::constant(1), 1, s.poly.leading()};
  for (long e = g; e >= 1; --e) {
    if (g % e != 0) continue;
    if (auto root = try_root(p, d, e)) return {root->first, e, root->second};
  }
  throw AssertionFailure("power_decompose: no root found, not even e = 1");
}

CommonPowerBase common_power_base(const LaurentPoly& p, const LaurentPoly& q, const Direction& d) {
  require_homogeneous(p, d, "common_power_base");
  require_homogeneous(q, d, "common_power_base");
  if (!bracket(p, q).is_zero()) throw BracketNonzero("[P,Q] != 0");
  const Rational tau = v_degree(p, d).value();
  const Rational mu = v_degree(q, d).value();
  if (tau == 0 && mu == 0) throw BothDegreesZero("v(P) = v(Q) = 0");

  CommonPowerBase out;
  if (tau * mu < 0) {
    auto is_x_monomial = [](const LaurentPoly& f) { return f.is_monomial() && f.terms().begin()->first.y == 0; };
    if (!is_x_monomial(p) || !is_x_monomial(q)) throw NotProportional("v(P) v(Q) < 0 needs x-monomials");
    const auto& [ep, cp] = *p.terms().begin();
    const auto& [eq, cq] = *q.terms().begin();
    Rational ratio = ep.x / eq.x;
    out.m = to_long(Integer(abs(ratio.get_num())));
    out.n = -to_long(Integer(ratio.get_den()));
    Rational rexp = ep.x / out.m;
    out.R = LaurentPoly::monomial(1, rexp, 0);
    out.lambdaP = cp;
    out.lambdaQ = cq;
    if (out.R.pow(out.n) * cq != q) throw NotProportional("x-exponents are not proportional");
    return out;
  }

  if (tau == 0) {
    out.m = 0, out.n = 1;
  } else if (mu == 0) {
    out.m = 1, out.n = 0;
  } else {
    Rational ratio = tau / mu;
    out.m = to_long(Integer(ratio.get_num()));
    out.n = to_long(Integer(ratio.get_den()));
  }
  const Direction dp = positive_rep(d);
  UnivariateSlice sp = slice(p, dp);
  UnivariateSlice sq = slice(q, dp);
  out.lambdaP = sp.poly.leading();
  out.lambdaQ = sq.poly.leading();
  const UPoly pp = sp.poly.monic();
  const UPoly qq = sq.poly.monic();
  std::optional<UPoly> h = out.m > 0 ? monic_root(pp, out.m) : monic_root(qq, out.n);
  if (!h) throw NotProportional("no common monic root of the univariate parts");
  if (h->pow(static_cast<int>(out.m)) != pp || h->pow(static_cast<int>(out.n)) != qq) {
    throw NotProportional("univariate parts are not powers of one polynomial");
  }
  long g, c, e;
  ext_gcd(out.m, out.n, g, c, e);
  Rational alpha = c * sp.xshift + e * sq.xshift;
  long beta = c * sp.yshift + e * sq.yshift;
  if (beta < 0) throw NotProportional("negative y-exponent in the base");
  out.R = reassemble_with(sp, alpha, beta, *h);
  if (out.R.pow(out.m) * out.lambdaP != p || out.R.pow(out.n) * out.lambdaQ != q) {
    throw NotProportional("reconstruction of P or Q from the base failed");
  }
  return out;
}

std::vector<LaurentPoly> solve_F(const LaurentPoly& phom, const Direction& d, long max_ydeg) {
  require_homogeneous(phom, d, "solve_F");
  if (v_degree(phom, d).value() == 0) throw DegreeZero("v(Phom) = 0");
  const long rho = d.rho(), sigma = d.sigma();

  std::vector<ExpPoint> unknowns;
  if (rho != 0) {
    for (long j = 0; j <= max_ydeg; ++j) unknowns.emplace_back(Rational(rho + sigma - sigma * j, rho), j);
    for (auto& u : unknowns) u.x.canonicalize();
  } else if (max_ydeg >= 1) {
    // Line y = 1. Comparing extreme terms of [x^a y, Phom] bounds a.
    const long l = ramification_index(phom);
    const long s = phom.terms().begin()->first.y;
    const Rational xmin = phom.terms().begin()->first.x;
    const Rational xmax = phom.terms().rbegin()->first.x;
    Rational lo, hi;
    if (s > 0) {
      lo = std::min(Rational(1), Rational(xmin / s));
      hi = std::max(Rational(1), Rational(xmax / s));
    } else {
      lo = xmin - xmax - 1;
      hi = xmax - xmin + 1;
    }
    for (Integer k = floor_of(Rational(lo * l)); k <= ceil_of(Rational(hi * l)); ++k) {
      unknowns.emplace_back(make_rational(k, Integer(l)), 1);
    }
  }
  if (unknowns.empty()) return {};

  std::vector<LaurentPoly> images;
  std::map<ExpPoint, std::size_t> rows;
  for (const auto& u : unknowns) {
    images.push_back(bracket(LaurentPoly::monomial(1, u.x, u.y), phom));
    for (const auto& kv : images.back().terms()) rows.emplace(kv.first, 0);
  }
  for (const auto& kv : phom.terms()) rows.emplace(kv.first, 0);
  std::size_t idx = 0;
  for (auto& kv : rows) kv.second = idx++;

  RMatrix a(rows.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
  std::vector<Rational> b(rows.size(), Rational(0));
  for (std::size_t k = 0; k < images.size(); ++k) {
    for (const auto& [e, c] : images[k].terms()) a[rows.at(e)][k] = c;
  }
  for (const auto& [e, c] : phom.terms()) b[rows.at(e)] = c;

  LinearSolution sol = solve_linear(std::move(a), std::move(b), unknowns.size());
  if (!sol.consistent) return {};
  auto build = [&](const std::vector<Rational>& coeffs) {
    LaurentPoly f;
    for (std::size_t k = 0; k < unknowns.size(); ++k) f.add_term(unknowns[k], coeffs[k]);
    return f;
  };
  std::vector<LaurentPoly> out{build(sol.particular)};
  for (const auto& kv : sol.kernel) {
    std::vector<Rational> v = sol.particular;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += kv[k];
    out.push_back(build(v));
  }
  return out;
}

bool PavadassReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

PavadassReport check_pavadass(const LaurentPoly& phom, const LaurentPoly& f, const Direction& d) {
  if (d.rho() <= 0) throw PreconditionFailed("rho > 0");
  if (phom.is_zero() || !is_homogeneous(phom, d)) throw PreconditionFailed("Phom nonzero and homogeneous");
  if (f.is_zero() || !is_homogeneous(f, d)) throw PreconditionFailed("F nonzero and homogeneous");
  if (v_degree(phom, d).value() <= 0) throw PreconditionFailed("v(Phom) > 0");
  if (bracket(f, phom) != phom) throw PreconditionFailed("[F, Phom] = Phom");

  const UnivariateSlice sp = slice(phom, d);
  const UnivariateSlice sf = slice(f, d);
  const UPoly& p = sp.poly;
  const UPoly& fz = sf.poly;
  PavadassReport rep;

  {
    ClauseResult c{"1: f separable, every factor of p divides f", true, true, ""};
    bool separable = gcd(fz, fz.derivative()).degree() <= 0;
    bool divides_f = divides(squarefree_data(p).squarefree_part, fz);
    c.pass = separable && divides_f;
    if (!separable) c.detail = "f has a repeated factor";
    if (!divides_f) c.detail += (c.detail.empty() ? "" : "; ") + std::string("squarefree(p) does not divide f");
    rep.clauses.push_back(c);
  }
  const Endpoints ef = endpoints(f, d);
  {
    ClauseResult c{"2: v01(st F) < v01(en F)", p.degree() > 0, true, ""};
    if (c.applicable) c.pass = ef.st.y < ef.en.y;
    rep.clauses.push_back(c);
  }
  {
    long k = gcd_l(exponent_gcd(p), exponent_gcd(fz));
    ClauseResult c{"3: contracted statement in Q[z^k]", k > 1, true, "k = " + std::to_string(k)};
    if (c.applicable) {
      UPoly pb = contract(p, static_cast<int>(k));
      UPoly fb = contract(fz, static_cast<int>(k));
      c.pass = gcd(fb, fb.derivative()).degree() <= 0 && divides(squarefree_data(pb).squarefree_part, fb);
    }
    rep.clauses.push_back(c);
  }
  {
    ClauseResult c{"4: multiplicities equal deg(p)/rho", in_L(phom) && in_L(f) && ef.en.y - ef.st.y == d.rho(),
                   true, ""};
    if (c.applicable && p.degree() > 0) {
      bool ok = p.degree() % d.rho() == 0;
      const int target = p.degree() / static_cast<int>(d.rho());
      for (const auto& yf : yun(p)) ok = ok && yf.multiplicity == target;
      c.pass = ok;
      c.detail = "deg(p)/rho = " + std::to_string(target);
    }
    rep.clauses.push_back(c);
  }
  return rep;
}

const char* case_label_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::Ia: return "Ia";
    case CaseLabel::Ib: return "Ib";
    case CaseLabel::IIa: return "IIa";
    case CaseLabel::IIb: return "IIb";
    case CaseLabel::III: return "III";
  }
  return "?";
}

int factor_count(const LaurentPoly& phom, const Direction& d) {
  const UnivariateSlice s = slice(phom, positive_rep(d));
  return squarefree_data(s.poly).distinct_roots + (s.yshift > 0 ? 1 : 0);
}

CaseLabel classify_case(const LaurentPoly& pl, const LaurentPoly& ql, const Direction& d) {
  if (pl.is_zero() || pl.is_monomial()) throw MonomialInput("classify_case needs a non-monomial leading form");
  const ExpPoint stp = st_point(pl, d);
  const Rational v11 = stp.x - stp.y;
  if (v11 == 0) throw DegenerateStart("v_{1,-1}(st(Pl)) = 0");
  if (!bracket(pl, ql).is_zero()) {
    return aligned(PlanePoint(stp), PlanePoint(st_point(ql, d))) ? CaseLabel::Ia : CaseLabel::Ib;
  }
  const UnivariateSlice s = slice(pl, positive_rep(d));
  const int distinct = squarefree_data(s.poly).distinct_roots;
  if (s.yshift == 0 && distinct == 1) return CaseLabel::III;
  return v11 < 0 ? CaseLabel::IIa : CaseLabel::IIb;
}

}  // namespace nshape
