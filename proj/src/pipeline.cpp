#include "newton_shape/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "newton_shape/errors.hpp"
#include "newton_shape/io.hpp"

namespace nshape {

namespace {

LaurentPoly mono(const Rational& c, const Rational& xe, long ye) { return LaurentPoly::monomial(c, xe, ye); }

// y (x^4 y - lambda0)^3
LaurentPoly r0_poly(const Rational& lambda0) {
  return LaurentPoly::y() * (mono(1, 4, 1) - LaurentPoly::constant(lambda0)).pow(3);
}
// x (x^2 y - lambda1)
LaurentPoly r1_poly(const Rational& lambda1) {
  return LaurentPoly::x() * (mono(1, 2, 1) - LaurentPoly::constant(lambda1));
}
// x^8 y^3 (x^4 y + lambda)
LaurentPoly r_poly(const Rational& lambda) { return mono(1, 8, 3) * (mono(1, 4, 1) + LaurentPoly::constant(lambda)); }
// y^3 (y + lambda x)
LaurentPoly r3_poly(const Rational& lambda) { return mono(1, 0, 3) * (LaurentPoly::y() + mono(lambda, 1, 0)); }

std::vector<Direction> sorted_dirs(std::vector<Direction> v) {
  std::sort(v.begin(), v.end(), [](const Direction& a, const Direction& b) {
    return a.rho() != b.rho() ? a.rho() < b.rho() : a.sigma() < b.sigma();
  });
  return v;
}

std::vector<Direction> dir_set(const LaurentPoly& p) { return sorted_dirs(directions_of(p)); }

std::string dirs_text(const std::vector<Direction>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + render_direction(v[i]);
  return s + "}";
}

std::vector<ExpPoint> hull_set(const LaurentPoly& p) {
  auto v = newton_polygon(p).vertices;
  std::sort(v.begin(), v.end());
  return v;
}

std::string clip(const std::string& s) { return s.size() <= 160 ? s : s.substr(0, 157) + "..."; }

std::string got_expected(const LaurentPoly& got, const LaurentPoly& want) {
  return "got " + clip(render_poly(got)) + ", expected " + clip(render_poly(want));
}

bool chain_rule_holds(const Morphism& phi, const LaurentPoly& p, const LaurentPoly& q, const LaurentPoly& pi,
                      const LaurentPoly& qi) {
  return bracket(pi, qi) == phi.apply(bracket(p, q)) * phi.jacobian();
}

ExpPoint scaled(long k, long x, long y) { return ExpPoint(Rational(k * x), k * y); }

struct StageStop {};

class Runner {
 public:
  Runner(StageReport& r, bool audit) : r_(r), audit_(audit) {}

  bool check(const std::string& name, CheckKind kind, bool ok, const std::string& detail = "") {
    r_.checks.push_back({name, kind, ok, detail});
    if (!ok) {
      if (r_.pass) {
        r_.diagnostic = std::string(check_kind_name(kind)) + " check '" + name + "' failed";
        if (!detail.empty()) r_.diagnostic += ": " + detail;
      }
      r_.pass = false;
      if (!audit_ || kind != CheckKind::bracket) throw StageStop{};
    }
    return ok;
  }

  // A failed bracket check under audit whose data the stage needs.
  void require(bool ok, const std::string& why) {
    if (ok) return;
    r_.blocked = true;
    r_.pass = false;
    if (r_.diagnostic.empty()) r_.diagnostic = "blocked: " + why;
    throw StageStop{};
  }

 private:
  StageReport& r_;
  bool audit_;
};

// Applies phi to both polynomials and checks the chain rule on this input.
void apply_checked(PipelineState& s, Runner& run, const Morphism& phi, const std::string& name) {
  LaurentPoly p = phi.apply(s.P), q = phi.apply(s.Q);
  run.check(name + "_chain_rule", CheckKind::unconditional, chain_rule_holds(phi, s.P, s.Q, p, q),
            "[phi P, phi Q] = phi([P,Q]) [phi x, phi y]");
  s.P = std::move(p);
  s.Q = std::move(q);
}

void check_flip_transport(Runner& run, const LaurentPoly& before, const LaurentPoly& after, const Flip& f,
                          const std::string& who) {
  std::vector<ExpPoint> mapped;
  for (const auto& v : newton_polygon(before).vertices) {
    PlanePoint w = support_map(PlanePoint(v), f);
    mapped.emplace_back(w.x, to_long(w.y));
  }
  std::sort(mapped.begin(), mapped.end());
  run.check("hull_transform_" + who, CheckKind::unconditional, hull_set(after) == mapped,
            "vertices of H(psi(P)) are the images of the vertices of H(P)");
  std::vector<Direction> pushed;
  for (const auto& d : directions_of(before)) pushed.push_back(pushforward_direction(d, f));
  run.check("dir_pushforward_" + who, CheckKind::unconditional, dir_set(after) == sorted_dirs(pushed),
            "Dir(psi(P)) = " + dirs_text(dir_set(after)) + ", pushed " + dirs_text(sorted_dirs(pushed)));
  bool eq = true;
  for (const auto& d : directions_of(before)) {
    eq = eq && leading_form(after, pushforward_direction(d, f)) == apply_flip(leading_form(before, d), f);
  }
  run.check("lf_equivariance_" + who, CheckKind::unconditional, eq, "l_{psi(d)}(psi P) = psi(l_d P) on Dir(P)");
}

// The larger of two directions, counterclockwise from anchor.
Direction ccw_max(const Direction& a, const Direction& b, const Direction& anchor) {
  return ccw_less(a, b, anchor) ? b : a;
}
Direction ccw_min(const Direction& a, const Direction& b, const Direction& anchor) {
  return ccw_less(a, b, anchor) ? a : b;
}

// z-root of a leading form c x^xs (z - mu)^k, if it has that shape.
std::optional<Rational> single_root(const LaurentPoly& lf, const Direction& d, const Rational& xshift, long k) {
  if (lf.is_zero() || !is_homogeneous(lf, d)) return std::nullopt;
  UnivariateSlice sl = slice(lf, d);
  if (sl.yshift != 0 || sl.xshift != xshift || sl.poly.degree() != k) return std::nullopt;
  auto roots = rational_roots(sl.poly);
  if (roots.size() != 1 || root_multiplicity(sl.poly, roots[0]) != k) return std::nullopt;
  return roots[0];
}

void stage_normal_form(PipelineState& s, Runner& run) {
  const auto original = sorted_dirs({Direction(4, -1), Direction(-2, 1), Direction(-1, 0), Direction(0, -1)});
  const auto expected = sorted_dirs({Direction(-1, 4), Direction(1, -2), Direction(0, -1), Direction(-1, 0)});
  const long m = s.m, n = s.n;
  run.check("mn_coprime", CheckKind::guard, m >= 1 && n >= 1 && m != n && gcd_l(m, n) == 1,
            "m = " + std::to_string(m) + ", n = " + std::to_string(n));
  run.check("non_monomial", CheckKind::guard, s.P.size() > 1 && s.Q.size() > 1);
  if (dir_set(s.P) == original && dir_set(s.Q) == original) {
    run.check("in_L", CheckKind::guard, in_L(s.P) && in_L(s.Q), "psi1 needs polynomial input");
    const Flip f{FlipKind::psi1};
    const LaurentPoly p = s.P;
    apply_checked(s, run, Morphism{{f}}, "psi1");
    bool eq = true;
    for (const auto& d : directions_of(p)) {
      eq = eq && leading_form(s.P, pushforward_direction(d, f)) == apply_flip(leading_form(p, d), f);
    }
    run.check("psi1_lf_equivariance", CheckKind::unconditional, eq);
  }
  run.check("dir_P0", CheckKind::guard, dir_set(s.P) == expected, "Dir(P0) = " + dirs_text(dir_set(s.P)));
  run.check("dir_Q0", CheckKind::guard, dir_set(s.Q) == expected, "Dir(Q0) = " + dirs_text(dir_set(s.Q)));

  const Direction d0(-1, 4), d1(1, -2);
  const LaurentPoly lp0 = leading_form(s.P, d0), lq0 = leading_form(s.Q, d0);
  const Rational lam_p = lp0.coeff(scaled(m, 12, 4)), lam_q = lq0.coeff(scaled(n, 12, 4));
  bool r0_ok = lam_p != 0 && lam_q != 0;
  if (r0_ok) {
    s.lambda0 = -lp0.coeff(ExpPoint(Rational(12 * m - 4), 4 * m - 1)) / (3 * m * lam_p);
    r0_ok = s.lambda0 != 0 && lp0 == lam_p * r0_poly(s.lambda0).pow(m) && lq0 == lam_q * r0_poly(s.lambda0).pow(n);
  }
  run.check("lf_(-1,4)_R0_power", CheckKind::guard, r0_ok,
            "l_{-1,4}(P0) = lambda_P R0^m, l_{-1,4}(Q0) = lambda_Q R0^n, R0 = y(x^4y - lambda0)^3");
  const LaurentPoly lp1 = leading_form(s.P, d1), lq1 = leading_form(s.Q, d1);
  bool r1_ok = lp1.coeff(scaled(m, 12, 4)) == lam_p && lq1.coeff(scaled(n, 12, 4)) == lam_q;
  if (r1_ok) {
    s.lambda1 = -lp1.coeff(ExpPoint(Rational(12 * m - 2), 4 * m - 1)) / (4 * m * lam_p);
    r1_ok = s.lambda1 != 0 && lp1 == lam_p * r1_poly(s.lambda1).pow(4 * m) &&
            lq1 == lam_q * r1_poly(s.lambda1).pow(4 * n);
  }
  run.check("lf_(1,-2)_R1_power", CheckKind::guard, r1_ok,
            "l_{1,-2}(P0) = lambda_P R1^{4m}, l_{1,-2}(Q0) = lambda_Q R1^{4n}, R1 = x(x^2y - lambda1)");
  const Direction d11(1, 1), d01(0, 1);
  run.check("degree_ratios", CheckKind::guard,
            n * v_degree(s.P, d11).value() == m * v_degree(s.Q, d11).value() &&
                n * v_degree(s.P, d01).value() == m * v_degree(s.Q, d01).value(),
            "v11 and v01 ratios equal m/n");

  const Flip f1{FlipKind::psi1}, f2{FlipKind::psi2};
  const Direction probe(2, -1);
  const Direction pushed = pushforward_direction(pushforward_direction(probe, f1), f2);
  const LaurentPoly image = apply_flip(apply_flip(s.P, f1), f2);
  run.check("flip_pushforward", CheckKind::unconditional,
            pushed == Direction(1, 0) && v_degree(image, pushed) == v_degree(s.P, probe),
            "psi2bar(psi1bar(2,-1)) = " + render_direction(pushed));
}

void stage_phi1(PipelineState& s, Runner& run) {
  const Direction d0(-1, 4), d2(-1, 2), d11(1, 1), d13(1, -3);
  const PipelineState before = s;
  const Morphism phi{{ElementaryAuto{s.lambda1, Rational(-2)}}};
  apply_checked(s, run, phi, "phi1");
  run.check("lf_(-1,4)_preserved", CheckKind::unconditional,
            leading_form(s.P, d0) == leading_form(before.P, d0) && leading_form(s.Q, d0) == leading_form(before.Q, d0));
  run.check("v11_preserved", CheckKind::unconditional,
            v_degree(s.P, d11) == v_degree(before.P, d11) && v_degree(s.Q, d11) == v_degree(before.Q, d11));
  run.check("lf_(-1,2)_equivariance", CheckKind::unconditional,
            leading_form(s.P, d2) == phi.apply(leading_form(before.P, d2)) &&
                leading_form(s.Q, d2) == phi.apply(leading_form(before.Q, d2)));
  const LaurentPoly lp = leading_form(before.P, d2), lq = leading_form(before.Q, d2);
  run.check("lf_(-1,2)_P0_monomial", CheckKind::derived,
            lp.is_monomial() && lp.terms().begin()->first == ExpPoint(0, s.m) && lq.is_monomial() &&
                lq.terms().begin()->first == ExpPoint(0, s.n),
            "l_{-1,2}(P0) = mu y^m");
  const auto jp = is_jacobian_pair(s.P, s.Q);
  run.check("bracket_constant", CheckKind::bracket, jp.is_pair, "[P1,Q1] = " + clip(render_poly(bracket(s.P, s.Q))));
  const auto want = sorted_dirs({Direction(-1, 4), Direction(-1, 2), Direction(0, -1), Direction(1, -3)});
  run.check("dir_P1", CheckKind::bracket, dir_set(s.P) == want && dir_set(s.Q) == want,
            "Dir(P1) = " + dirs_text(dir_set(s.P)));
  run.check("v(1,-3)_zero", CheckKind::bracket,
            v_degree(s.P, d13) == DegreeValue(Rational(0)) && v_degree(s.Q, d13) == DegreeValue(Rational(0)));
}

void stage_phi2(PipelineState& s, Runner& run) {
  const Direction d0(-1, 4), d11(1, 1), d13(1, -3);
  const PipelineState before = s;
  const Rational lam = s.lambda0;
  const Rational lam_p = leading_form(s.P, d0).coeff(scaled(s.m, 12, 4));
  const Rational lam_q = leading_form(s.Q, d0).coeff(scaled(s.n, 12, 4));
  const Morphism phia{{ElementaryAuto{lam, Rational(-4)}}};
  apply_checked(s, run, phia, "phi_a");
  run.check("lf_(-1,4)_equivariance", CheckKind::unconditional,
            leading_form(s.P, d0) == phia.apply(leading_form(before.P, d0)) &&
                leading_form(s.Q, d0) == phia.apply(leading_form(before.Q, d0)));
  run.check("lf_(-1,4)_shape", CheckKind::derived,
            leading_form(s.P, d0) == lam_p * r_poly(lam).pow(s.m) && leading_form(s.Q, d0) == lam_q * r_poly(lam).pow(s.n),
            "l_{-1,4} = lambda_P (x^8 y^3 (x^4 y + lambda))^m");
  run.check("en_(-1,4)", CheckKind::derived,
            en_point(s.P, d0) == scaled(s.m, 8, 3) && en_point(s.Q, d0) == scaled(s.n, 8, 3),
            "en_{-1,4}(P)/m = (8,3)");
  run.check("v11_preserved", CheckKind::unconditional,
            v_degree(s.P, d11) == v_degree(before.P, d11) && v_degree(s.Q, d11) == v_degree(before.Q, d11));
  run.check("v(1,-3)_preserved", CheckKind::unconditional,
            v_degree(s.P, d13) == v_degree(before.P, d13) && v_degree(s.Q, d13) == v_degree(before.Q, d13));
  run.check("bracket_constant", CheckKind::bracket, is_jacobian_pair(s.P, s.Q).is_pair,
            "[P,Q] = " + clip(render_poly(bracket(s.P, s.Q))));

  auto successor = [&] { return ccw_min(succ(s.P, d0), succ(s.Q, d0), d0); };
  Direction ds = successor();
  if (aligned(PlanePoint(en_point(s.P, ds)), PlanePoint(en_point(s.Q, ds)))) {
    const ExpPoint e = en_point(s.P, ds);
    const Rational a1 = e.x / s.m, b1 = make_rational(e.y, s.m);
    const bool ineq = is_integer(a1) && is_integer(b1) && b1 >= 0 &&
                      v_point(PlanePoint(a1, b1), d0) < v_point(PlanePoint(Rational(8), Rational(3)), d0) &&
                      8 * b1 - 3 * a1 > 0;
    run.check("aligned_successor_inequalities", CheckKind::bracket, ineq,
              "(a',b') = " + render_point(PlanePoint(a1, b1)) + " at " + render_direction(ds));
    run.check("aligned_successor_direction", CheckKind::bracket, ds == Direction(-1, 3),
              "successor " + render_direction(ds));
    const Direction pos(1, -3);
    auto mu_p = single_root(leading_form(s.P, pos), pos, Rational(-s.m), 3 * s.m);
    auto mu_q = single_root(leading_form(s.Q, pos), pos, Rational(-s.n), 3 * s.n);
    const bool cube = mu_p && mu_q && *mu_p == *mu_q && *mu_p != 0;
    run.check("lf_(-1,3)_cube", CheckKind::bracket, cube, "l_{-1,3}(P) = mu_P x^{-m}(x^3 y - mu)^{3m}");
    run.require(cube, "no common root mu for phi_b");
    const Morphism phib{{ElementaryAuto{*mu_p, Rational(-3)}}};
    const LaurentPoly lp = leading_form(s.P, d0), lq = leading_form(s.Q, d0);
    apply_checked(s, run, phib, "phi_b");
    run.check("lf_(-1,4)_preserved_phi_b", CheckKind::unconditional,
              leading_form(s.P, d0) == lp && leading_form(s.Q, d0) == lq);
    ds = successor();
    run.check("non_aligned_after_phi_b", CheckKind::bracket,
              !aligned(PlanePoint(en_point(s.P, ds)), PlanePoint(en_point(s.Q, ds))));
  }
  run.check("successor_shared", CheckKind::bracket, succ(s.P, d0) == succ(s.Q, d0),
            "Succ_P = " + render_direction(succ(s.P, d0)) + ", Succ_Q = " + render_direction(succ(s.Q, d0)));
  const ExpPoint ep = en_point(s.P, ds), eq = en_point(s.Q, ds);
  const ExpPoint a(-1, 0), b(2, 1);
  const bool ends = (ep == a && eq == b) || (ep == b && eq == a);
  run.check("endpoints", CheckKind::bracket, ends,
            "{en(P), en(Q)} = {" + render_point(ep) + "," + render_point(eq) + "} at " + render_direction(ds));
  run.require(ends, "endpoints do not determine j");
  if (eq == a) {
    LaurentPoly t = s.P;
    s.P = s.Q;
    s.Q = -t;
    std::swap(s.m, s.n);
  }
  const long rho = ds.rho(), sigma = ds.sigma();
  const bool jform = (-rho - 1) % 3 == 0 && (-rho - 1) / 3 >= 1 && sigma == 8 * ((-rho - 1) / 3) + 3;
  run.check("j_form", CheckKind::bracket, jform, "(rho,sigma) = " + render_direction(ds) + " = (-3j-1, 8j+3)");
  run.require(jform, "no j");
  s.j = (-rho - 1) / 3;
  run.check("mn_from_j", CheckKind::bracket, s.m == 3 * s.j + 1 && s.n == 2 * s.j + 1,
            "j = " + std::to_string(s.j));
  run.check("st_successor", CheckKind::bracket,
            st_point(s.P, ds) == scaled(s.m, 8, 3) && st_point(s.Q, ds) == scaled(s.n, 8, 3));
  auto hull_of = [](std::vector<ExpPoint> pts) {
    LaurentPoly t;
    for (const auto& e : pts) t.add_term(e, 1);
    return hull_set(t);
  };
  run.check("hull_P2", CheckKind::bracket,
            hull_set(s.P) == hull_of({a, scaled(s.m, 8, 3), scaled(s.m, 12, 4), ExpPoint(0, 0)}) &&
                hull_set(s.Q) == hull_of({b, scaled(s.n, 8, 3), scaled(s.n, 12, 4), ExpPoint(0, 0)}),
            "H(P2) = CH{(-1,0), m(8,3), m(12,4), (0,0)}");
  run.check("v(1,-3)_zero", CheckKind::bracket,
            v_degree(s.P, d13) == DegreeValue(Rational(0)) && v_degree(s.Q, d13) == DegreeValue(Rational(0)));
  s.lambda = lam;
}

void stage_psi3(PipelineState& s, Runner& run) {
  run.check("j_known", CheckKind::derived, s.j >= 1 && s.lambda != 0, "stage 2 data");
  const Direction d0(-1, 4), d11(1, 1);
  const Direction d2(3 * s.j + 1, -s.j);
  const PipelineState before = s;
  const Flip f{FlipKind::psi3};
  apply_checked(s, run, Morphism{{f}}, "psi3");
  check_flip_transport(run, before.P, s.P, f, "P");
  check_flip_transport(run, before.Q, s.Q, f, "Q");
  const Rational lam_p = leading_form(before.P, d0).coeff(scaled(s.m, 12, 4));
  const Rational lam_q = leading_form(before.Q, d0).coeff(scaled(s.n, 12, 4));
  run.check("lf_(-1,4)_P2", CheckKind::derived,
            leading_form(before.P, d0) == lam_p * r_poly(s.lambda).pow(s.m) &&
                leading_form(before.Q, d0) == lam_q * r_poly(s.lambda).pow(s.n),
            "l_{-1,4}(P2) = lambda_p R^m, R = x^8 y^3 (x^4 y + lambda)");
  const LaurentPoly r3 = apply_flip(r_poly(s.lambda), f);
  run.check("R3_shape", CheckKind::unconditional, r3 == r3_poly(s.lambda), got_expected(r3, r3_poly(s.lambda)));
  run.check("lf_(1,1)_R3_power", CheckKind::derived,
            leading_form(s.P, d11) == lam_p * r3.pow(s.m) && leading_form(s.Q, d11) == lam_q * r3.pow(s.n),
            "l_{1,1}(P3) = lambda_p R3^m");
  run.check("st_en", CheckKind::derived,
            en_point(s.P, d2) == scaled(s.m, 1, 3) && st_point(s.P, d2) == ExpPoint(1, 0) &&
                en_point(s.Q, d2) == scaled(s.n, 1, 3) && st_point(s.Q, d2) == ExpPoint(1, 1),
            "at " + render_direction(d2));
  const auto has = [](const LaurentPoly& p, const Direction& d) {
    auto v = directions_of(p);
    return std::find(v.begin(), v.end(), d) != v.end();
  };
  run.check("pred_(1,1)", CheckKind::derived,
            has(s.P, d11) && has(s.Q, d11) && pred(s.P, d11) == d2 && pred(s.Q, d11) == d2,
            "Pred(1,1) = " + render_direction(pred(s.P, d11)));
  run.check("in_L", CheckKind::derived, in_L(s.P) && in_L(s.Q));
  const LaurentPoly br = bracket(s.P, s.Q);
  run.check("bracket_zeta_x", CheckKind::bracket,
            br.is_monomial() && br.terms().begin()->first == ExpPoint(1, 0), "[P3,Q3] = " + clip(render_poly(br)));
}

void stage_normalize(PipelineState& s, Runner& run) {
  const Direction d(1, -1);
  const LaurentPoly lp = leading_form(s.P, d), lq = leading_form(s.Q, d);
  const bool p_ok = lp.is_monomial() && lp.terms().begin()->first == ExpPoint(1, 0);
  const Rational mu_q = lq.coeff(ExpPoint(1, 1)), xi = lq.coeff(ExpPoint(0, 0));
  const bool q_ok = mu_q != 0 && lq == mono(mu_q, 1, 1) + LaurentPoly::constant(xi);
  run.check("lf_(1,-1)", CheckKind::derived, p_ok && q_ok,
            "l_{1,-1}(P3) = " + clip(render_poly(lp)) + ", l_{1,-1}(Q3) = " + clip(render_poly(lq)));
  const Rational mu_p = lp.terms().begin()->second;
  s.P = s.P * Rational(1 / mu_p);
  s.Q = (s.Q - LaurentPoly::constant(xi)) * Rational(-1 / mu_q);
  run.check("normalized", CheckKind::unconditional,
            leading_form(s.P, d) == LaurentPoly::x() && leading_form(s.Q, d) == mono(-1, 1, 1),
            "l_{1,-1}(P4) = x, l_{1,-1}(Q4) = -xy");
  const LaurentPoly br = bracket(s.P, s.Q);
  run.check("bracket_minus_x", CheckKind::bracket, br == mono(-1, 1, 0), "[P4,Q4] = " + clip(render_poly(br)));
}

void stage_shift(PipelineState& s, Runner& run) {
  run.check("in_L", CheckKind::derived, in_L(s.P) && in_L(s.Q) && s.j >= 1 && s.lambda != 0);
  const Direction d11(1, 1);
  const PipelineState before = s;
  const Flip f{FlipKind::psi1};
  apply_checked(s, run, Morphism{{f}}, "psi1");
  run.check("lf_(1,1)_equivariance", CheckKind::unconditional,
            leading_form(s.P, d11) == apply_flip(leading_form(before.P, d11), f) &&
                leading_form(s.Q, d11) == apply_flip(leading_form(before.Q, d11), f));
  const Rational mu0 = 1 / s.lambda;
  s.mu = {mu0, 0, 0, 0};
  const LaurentPoly lin = LaurentPoly::y() - mono(mu0, 1, 0);
  const Rational cp = leading_form(s.P, d11).coeff(scaled(s.m, 3, 1));
  const Rational cq = leading_form(s.Q, d11).coeff(scaled(s.n, 3, 1));
  run.check("lf_(1,1)_shape", CheckKind::derived,
            cp != 0 && cq != 0 && leading_form(s.P, d11) == cp * mono(1, 3 * s.m, 0) * lin.pow(s.m) &&
                leading_form(s.Q, d11) == cq * mono(1, 3 * s.n, 0) * lin.pow(s.n),
            "l_{1,1}(psi1 P4) = c x^{3m} (y - mu0 x)^m");
  apply_checked(s, run, Morphism{{ElementaryAuto{mu0, Rational(1)}}}, "phi0");
  run.check("lf_(1,1)_phi0", CheckKind::derived,
            leading_form(s.P, d11) == mono(cp, 3 * s.m, s.m) && leading_form(s.Q, d11) == mono(cq, 3 * s.n, s.n));
  LaurentPoly target = -(LaurentPoly::y() + mono(mu0, 1, 0));
  LaurentPoly br = bracket(s.P, s.Q);
  run.check("bracket_after_phi0", CheckKind::bracket, br == target, got_expected(br, target));

  const Direction d3(-s.j, 3 * s.j + 1), anchor(s.j, -3 * s.j - 1), bound(1, -3);
  s.shift_count = 0;
  while (true) {
    const Direction pbar = ccw_max(pred(s.P, d3), pred(s.Q, d3), anchor);
    if (!ccw_less(bound, pbar, anchor)) break;
    const bool terminates = s.shift_count < 3;
    run.check("shift_terminates", CheckKind::bracket, terminates, "Pred still above (1,-3) after 3 shifts");
    run.require(terminates, "shift loop");
    const long k = pbar.sigma() + 3;
    const bool form = pbar.rho() == 1 && k >= 1 && k <= 3;
    run.check("pred_form", CheckKind::bracket, form, "Pred = " + render_direction(pbar) + ", expected (1,k-3)");
    run.require(form, "Pred shape");
    const LaurentPoly xy = LaurentPoly::x() + LaurentPoly::y();
    run.check("bracket_bound", CheckKind::bracket, v_degree(bracket(s.P, s.Q), pbar) <= v_degree(xy, pbar),
              "v([P,Q]) <= v(x+y) at " + render_direction(pbar));
    auto mu_p = single_root(leading_form(s.P, pbar), pbar, Rational(k * s.m), s.m);
    auto mu_q = single_root(leading_form(s.Q, pbar), pbar, Rational(k * s.n), s.n);
    const bool power = mu_p && mu_q && *mu_p == *mu_q;
    run.check("power_shape", CheckKind::bracket, power,
              "l(P) = lambda_p (x^3 (y - mu x^{k-3}))^m at " + render_direction(pbar));
    run.require(power, "no common root");
    s.mu[4 - k] = *mu_p;
    apply_checked(s, run, Morphism{{ElementaryAuto{*mu_p, Rational(k - 3)}}}, "shift" + std::to_string(4 - k));
    ++s.shift_count;
  }
  run.check("st_en_(rho3,sigma3)", CheckKind::bracket,
            en_point(s.P, d3) == ExpPoint(0, 1) && en_point(s.Q, d3) == ExpPoint(1, 1) &&
                st_point(s.P, d3) == scaled(s.m, 3, 1) && st_point(s.Q, d3) == scaled(s.n, 3, 1),
            "at " + render_direction(d3));
  run.check("en_(1,-3)", CheckKind::bracket,
            en_point(s.P, bound) == scaled(s.m, 3, 1) && en_point(s.Q, bound) == scaled(s.n, 3, 1));
  target = -(LaurentPoly::y() + mono(mu0, 1, 0) + LaurentPoly::constant(s.mu[1]) + mono(s.mu[2], -1, 0) +
             mono(s.mu[3], -2, 0));
  br = bracket(s.P, s.Q);
  run.check("bracket_P5", CheckKind::bracket, br == target, got_expected(br, target));
  const Direction dm(-1, 2);
  run.check("lf_(-1,2)", CheckKind::bracket,
            leading_form(s.P, dm) == LaurentPoly::y() + mono(s.mu[3], -2, 0) &&
                leading_form(s.Q, dm) == mono(1, 1, 1) + mono(s.mu[3], -1, 0));
}

void stage_psi3_final(PipelineState& s, Runner& run) {
  run.check("j_known", CheckKind::derived, s.j >= 1, "stage 2 data");
  const PipelineState before = s;
  const Flip f{FlipKind::psi3};
  apply_checked(s, run, Morphism{{f}}, "psi3");
  check_flip_transport(run, before.P, s.P, f, "P");
  check_flip_transport(run, before.Q, s.Q, f, "Q");
  run.check("in_L", CheckKind::derived, in_L(s.P) && in_L(s.Q));
  const Direction d(1, -1), dj(s.j, 1);
  const Rational mu3 = s.mu[3];
  run.check("lf_(1,-1)", CheckKind::derived,
            leading_form(s.P, d) == mono(1, 3, 1) + mono(mu3, 2, 0) &&
                leading_form(s.Q, d) == mono(1, 2, 1) + mono(mu3, 1, 0),
            "l_{1,-1}(P6) = x^3 y + mu3 x^2");
  run.check("st_en_(j,1)", CheckKind::derived,
            st_point(s.P, dj) == ExpPoint(3, 1) && st_point(s.Q, dj) == ExpPoint(2, 1) &&
                en_point(s.P, dj) == ExpPoint(0, s.m) && en_point(s.Q, dj) == ExpPoint(0, s.n),
            "at " + render_direction(dj));
  auto positive = [](const LaurentPoly& p) {
    std::vector<Direction> out;
    for (const auto& e : directions_of(p)) {
      if (e.in_V_positive()) out.push_back(e);
    }
    return out;
  };
  run.check("dir_V_positive", CheckKind::derived,
            positive(s.P) == std::vector<Direction>{dj} && positive(s.Q) == std::vector<Direction>{dj},
            "Dir(P6) in V>0 = " + dirs_text(positive(s.P)));
  const LaurentPoly target = mono(1, 4, 1) + LaurentPoly::constant(s.mu[0]) + mono(s.mu[1], 1, 0) +
                             mono(s.mu[2], 2, 0) + mono(s.mu[3], 3, 0);
  const LaurentPoly br = bracket(s.P, s.Q);
  run.check("bracket_final", CheckKind::bracket, br == target && s.mu[0] != 0, got_expected(br, target));
}

using StageFn = void (*)(PipelineState&, Runner&);
constexpr StageFn kStages[kStageCount] = {stage_normal_form, stage_phi1,       stage_phi2,      stage_psi3,
                                          stage_normalize,   stage_shift, stage_psi3_final};

}  // namespace

const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::guard:
      return "guard";
    case CheckKind::unconditional:
      return "unconditional";
    case CheckKind::derived:
      return "derived";
    case CheckKind::bracket:
      return "bracket";
  }
  return "?";
}

const char* stage_name(int index) {
  static const char* names[kStageCount] = {"normal_form", "phi1", "phi2", "psi3", "normalize", "shift", "psi3_final"};
  return index >= 0 && index < kStageCount ? names[index] : "?";
}

PipelineState make_pipeline_state(const LaurentPoly& p, const LaurentPoly& q, long m, long n) {
  PipelineState s;
  s.P = p;
  s.Q = q;
  s.m = m;
  s.n = n;
  return s;
}

const StageReport& run_stage(PipelineState& state, bool audit) {
  if (state.next_stage < 0 || state.next_stage >= kStageCount) throw std::out_of_range("no such stage");
  StageReport report;
  report.index = state.next_stage;
  report.stage = stage_name(state.next_stage);
  PipelineState work = state;
  work.log.clear();
  Runner run(report, audit);
  bool completed = false;
  try {
    kStages[state.next_stage](work, run);
    completed = true;
  } catch (const StageStop&) {
  } catch (const Error& e) {
    report.pass = false;
    report.blocked = true;
    if (report.diagnostic.empty()) report.diagnostic = std::string("blocked: ") + e.what();
  }
  if (completed) {
    work.log = std::move(state.log);
    work.next_stage = state.next_stage + 1;
    state = std::move(work);
  }
  state.log.push_back(std::move(report));
  return state.log.back();
}

bool run_pipeline(PipelineState& state, const PipelineOptions& opts) {
  bool all = true;
  while (state.next_stage <= opts.last_stage && state.next_stage < kStageCount) {
    const int before = state.next_stage;
    const StageReport& r = run_stage(state, opts.audit);
    all = all && r.pass;
    if (state.next_stage == before) return false;
    if (!r.pass && !opts.audit) return false;
  }
  return all;
}

PipelineState b16_reduce(const LaurentPoly& p, const LaurentPoly& q, long m, long n) {
  PipelineState s = make_pipeline_state(p, q, m, n);
  if (!run_pipeline(s)) {
    const StageReport& r = s.log.back();
    std::string name = "blocked";
    for (const auto& c : r.checks) {
      if (!c.pass) {
        name = c.name;
        break;
      }
    }
    throw AssumptionViolated(std::to_string(r.index) + ":" + r.stage, name, r.diagnostic);
  }
  return s;
}

PipelineState pipeline_witness(int entry_stage, long m, long n) {
  const Rational lam_p = 1, lam_q = 1;
  PipelineState s;
  s.m = m;
  s.n = n;
  if (entry_stage == 0) {
    const Rational l0 = 1, l1 = 2;
    auto build = [&](long k, const Rational& lam) {
      return lam * (r0_poly(l0).pow(k) + r1_poly(l1).pow(4 * k) - mono(1, 12 * k, 4 * k)) + LaurentPoly::constant(1);
    };
    s.P = build(m, lam_p);
    s.Q = build(n, lam_q);
    return s;
  }
  if (m != 3 * ((m - 1) / 3) + 1 || n != 2 * ((m - 1) / 3) + 1 || m < 4) {
    throw std::invalid_argument("stage witnesses need m = 3j+1, n = 2j+1");
  }
  s.j = (m - 1) / 3;
  s.lambda = 2;
  if (entry_stage == 3) {
    s.P = lam_p * r_poly(s.lambda).pow(m) + mono(1, -1, 0) + LaurentPoly::constant(1);
    s.Q = lam_q * r_poly(s.lambda).pow(n) + mono(1, 2, 1) + LaurentPoly::constant(1);
    s.next_stage = 3;
    return s;
  }
  if (entry_stage == 6) {
    const Rational mu3 = 2;
    s.mu = {1 / s.lambda, 0, 0, mu3};
    s.P = mono(1, 3 * m, m) + LaurentPoly::y() + mono(mu3, -2, 0);
    s.Q = mono(1, 3 * n, n) + mono(1, 1, 1) + mono(mu3, -1, 0);
    s.next_stage = 6;
    return s;
  }
  throw std::invalid_argument("witnesses exist for entry stages 0, 3 and 6");
}

CaseIIIShift case_iii_shift(const LaurentPoly& p, const LaurentPoly& q, const RegularCorner& c) {
  const Direction d = c.d;
  if (d.rho() <= 0) throw UnsupportedDirection("case III shift needs rho > 0");
  const long l = lcm_l(ramification_index(p), ramification_index(q));
  if (l % d.rho() != 0) {
    throw RhoDoesNotDivideL("rho = " + std::to_string(d.rho()) + " does not divide l = " + std::to_string(l));
  }
  const LaurentPoly lp = leading_form(p, d), lq = leading_form(q, d);
  if (classify_case(lp, lq, d) != CaseLabel::III) throw NotCaseIII("corner is not of case III");
  const UnivariateSlice sl = slice(lp, d);
  const auto roots = rational_roots(sl.poly);
  if (roots.empty()) throw IrrationalRoot("the root of l_d(P) is not rational");
  CaseIIIShift out;
  out.lambda = roots.front();
  out.phi = ElementaryAuto{out.lambda, make_rational(d.sigma(), d.rho())};
  out.P = apply_elementary(p, out.phi);
  out.Q = apply_elementary(q, out.phi);
  if (en_point(out.P, d) != en_point(p, d)) throw AssertionFailure("en_d(phi P) differs from en_d(P)");
  std::vector<Direction> ds = directions_of(p);
  for (const auto& e : directions_of(out.P)) ds.push_back(e);
  for (const auto& e : ds) {
    if (in_open_interval(e, d, -d) &&
        (leading_form(out.P, e) != leading_form(p, e) || leading_form(out.Q, e) != leading_form(q, e))) {
      throw AssertionFailure("leading form changed at " + render_direction(e));
    }
  }
  out.next_direction = out.P.size() > 1 ? pred(out.P, d) : d;
  return out;
}

DiagonalCut cut_above_diagonal(const LaurentPoly& p, const LaurentPoly& q, const RegularCorner& c) {
  const Direction d = c.d;
  if (d.rho() <= 0) throw UnsupportedDirection("cut above the diagonal needs rho > 0");
  const LaurentPoly lp = leading_form(p, d), lq = leading_form(q, d);
  const CaseLabel label = classify_case(lp, lq, d);
  if (label != CaseLabel::IIa && label != CaseLabel::IIb) {
    throw PreconditionFailed(std::string("corner is of case ") + case_label_name(label) + ", not II");
  }
  DiagonalCut out;
  const ExpPoint en = en_point(p, d);
  if (!is_integer(c.A.y) || c.A.y <= 0 || en.y % to_long(c.A.y) != 0) {
    throw AssertionFailure("en_d(P) is not an integer multiple of A");
  }
  out.m = en.y / to_long(c.A.y);
  if (PlanePoint(en) != Rational(out.m) * c.A) throw AssertionFailure("en_d(P) is not m A");
  const long l = lcm_l(ramification_index(p), ramification_index(q));
  const Rational a = c.A.x * l, b = c.A.y;

  const UnivariateSlice sl = slice(lp, d);
  const auto factors = yun(sl.poly);
  const YunFactor* top = nullptr;
  for (const auto& f : factors) {
    if (!top || f.multiplicity > top->multiplicity) top = &f;
  }
  if (!top) throw PreconditionFailed("l_d(P) has no linear factor in z");
  const auto roots = rational_roots(top->factor);
  if (roots.empty()) throw IrrationalRoot("no rational root of maximal multiplicity");
  out.lambda = roots.back();
  out.m_lambda = top->multiplicity;
  const Rational bound =
      Rational(out.m) / l * (a * d.rho() + b * l * d.sigma()) / Rational(d.rho() + d.sigma());
  if (Rational(out.m_lambda) < bound) {
    throw MultiplicityTooLow("m_lambda = " + std::to_string(out.m_lambda) + " < " + to_string(bound));
  }
  out.phi = ElementaryAuto{out.lambda, make_rational(d.sigma(), d.rho())};
  out.P = apply_elementary(p, out.phi);
  out.Q = apply_elementary(q, out.phi);
  if (en_point(out.P, d) != en) throw AssertionFailure("en_d(phi P) differs from en_d(P)");
  out.st = st_point(out.P, d);
  if (out.st.y != out.m_lambda) throw AssertionFailure("st_d(phi P) is not on the line y = m_lambda");
  if (out.m_lambda % out.m != 0) {
    throw AssertionFailure("m = " + std::to_string(out.m) + " does not divide m_lambda = " +
                           std::to_string(out.m_lambda));
  }
  out.A1 = PlanePoint(out.st.x / out.m, make_rational(out.st.y, out.m));
  return out;
}

NoFCertificate certify_no_F(const LaurentPoly& p, const Direction& d, long max_ydeg) {
  if (p.is_zero()) throw ZeroPolynomial("certify_no_F on zero");
  if (v_degree(p, d).value() == 0) throw DegreeZero("v_d(P) = 0");
  NoFCertificate cert;
  cert.d = d;
  cert.max_ydeg = max_ydeg;
  cert.leading = leading_form(p, d);
  cert.solutions = solve_F(cert.leading, d, max_ydeg);
  for (const auto& f : cert.solutions) cert.verified = cert.verified && bracket(f, cert.leading) == cert.leading;
  if (cert.solutions.empty()) {
    cert.statement = "no F with y-degree <= " + std::to_string(max_ydeg);
  } else {
    cert.statement = "F = " + render_poly(cert.solutions.front());
  }
  return cert;
}

}  // namespace nshape
