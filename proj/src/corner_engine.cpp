#include "newton_shape/corner_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "newton_shape/errors.hpp"

namespace nshape {

namespace {

int omega(long n) {
  int c = 0;
  for (long p = 2; p * p <= n; ++p) {
    while (n % p == 0) n /= p, ++c;
  }
  return c + (n > 1 ? 1 : 0);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long k = 1; k <= n; ++k) {
    if (n % k == 0) out.push_back(k);
  }
  return out;
}

std::optional<Direction> try_dir_of(const PlanePoint& p) {
  try {
    return dir_of(p);
  } catch (const OnDiagonal&) {
    return std::nullopt;
  }
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NEWTON_SHAPE_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// A corner in a descending chain. q = 0 means unknown.
struct ChainNode {
  Rational x;
  long y;
  long q;
};

// Divisibility constraints between consecutive corners, nodes ordered by increasing direction.
// The d_j are existential: each step needs some divisor of D_j meeting the constraints.
bool chain_ok(const std::vector<ChainNode>& nodes, long bottom_q) {
  Integer l = 1;
  for (const auto& n : nodes) l = lcm(l, Integer(n.x.get_den()));
  const std::size_t r = nodes.size() - 1;
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      if (nodes[j].q && nodes[i].q && nodes[j].q % nodes[i].q == 0) return false;
    }
    if (bottom_q && nodes[i].q && bottom_q % nodes[i].q == 0) return false;
  }
  for (std::size_t i = 1; i <= r; ++i) {
    long ai = to_long(Rational(nodes[i].x * l)), bi = nodes[i].y;
    long aj = to_long(Rational(nodes[i - 1].x * l)), bj = nodes[i - 1].y;
    long big_d = gcd_l(gcd_l(ai, bi), gcd_l(aj, bj));
    const long need = static_cast<long>(bottom_q ? i : i - 1);
    bool ok = false;
    for (long d : divisors(big_d)) {
      if (omega(d) < need) continue;
      if (nodes[i].q && d % nodes[i].q == 0) continue;
      bool all = true;
      for (std::size_t j = 1; j < i && all; ++j) all = !nodes[j].q || d % nodes[j].q == 0;
      if (!all) continue;
      if (bottom_q && d % bottom_q != 0) continue;
      ok = true;
      break;
    }
    if (!ok) return false;
  }
  return true;
}

// Can a chain of regular corners end (at its smallest direction) below A = (a/l, b)?
// `above` holds the already fixed corners, the largest direction first.
bool descend(const PlanePoint& A, long l, const std::vector<ChainNode>& above, const Direction& pdir) {
  const long a = to_long(Rational(A.x * l));
  const long b = to_long(A.y);
  std::vector<ChainNode> nodes{{A.x, b, 0}};
  for (auto it = above.rbegin(); it != above.rend(); ++it) nodes.push_back(*it);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (omega(gcd_l(nodes[i].y, nodes[i - 1].y)) < static_cast<long>(i) - 1) return false;
  }
  if (Rational(l) - make_rational(a, b) > 1 && chain_ok(nodes, 0)) return true;
  const long dd = gcd_l(a, b);
  if (dd <= 1) return false;
  const long abar = a / dd, bbar = b / dd;
  const Rational bound = Rational(l * (b * l - a)) + make_rational(1, bbar);
  for (long mu = 1; mu <= bound; ++mu) {
    if (mu % dd == 0) continue;
    const long q = to_long(Integer(make_rational(mu, dd).get_den()));
    auto ds = try_dir_of(PlanePoint(Rational(mu * abar - l), Rational(mu * bbar * l - l)));
    if (!ds || !in_interval_I(*ds)) continue;
    const long r1 = ds->rho(), s1 = ds->sigma();
    if (r1 / gcd_l(r1, l) > b || cross(*ds, pdir) <= 0) continue;
    const long l2 = lcm_l(l, r1);
    const Rational val = r1 * A.x + Rational(s1 * b);
    std::vector<ChainNode> next = above;
    next.push_back({A.x, b, q});
    for (long b2 = 1; b2 < b; ++b2) {
      Rational x2 = (val - s1 * b2) / r1;
      if (!is_integer(Rational(x2 * l2)) || !(Rational(b2) > x2)) continue;
      if (descend(PlanePoint(x2, b2), l2, next, *ds)) return true;
    }
  }
  return false;
}

bool in_profile(long u, long v, FilterProfile profile) {
  if (profile == FilterProfile::table1) return v > u && u > 2 && gcd_l(u, v) > 1;
  return u > 3 && u < v && v <= u * (u - 1) && gcd_l(u, v) > 2;
}

std::string rational_pair(const PlanePoint& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

CandidateOption evaluate_option(const CandidateCorner& row, const LatticePoint& a0p, long gamma, FilterProfile profile) {
  CandidateOption opt;
  opt.A0prime = a0p;
  opt.gamma = gamma;
  const long rho = row.d.rho(), sigma = row.d.sigma();
  opt.A1 = PlanePoint(Rational(a0p.x) + Rational(gamma - a0p.y) * make_rational(-sigma, rho), Rational(gamma));
  opt.lprime = rho;
  const Rational a = opt.A1.x * opt.lprime;
  opt.lprime_minus_ab = Rational(opt.lprime) - a / gamma;

  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    opt.verdicts.push_back({name, pass, detail});
    return pass;
  };
  if (!add("above_diagonal", opt.A1.y > opt.A1.x, "b > a/l'")) return opt;
  if (!add("condition8", check_condition8(opt.A1, opt.lprime), "l'-a/b = " + to_string(opt.lprime_minus_ab))) {
    return opt;
  }
  if (profile == FilterProfile::full) {
    if (opt.lprime_minus_ab <= 1) {
      TypeIIResult t = filter_typeII_mu(opt.A1, opt.lprime);
      std::string detail = "mu in {";
      bool first = true;
      for (const auto& at : t.attempts) {
        detail += (first ? "" : ",") + std::to_string(at.mu) + ":" + at.outcome;
        first = false;
      }
      detail += "}";
      if (!add("typeII_mu", t.pass, detail)) return opt;
    }
    const bool ok = descend(opt.A1, opt.lprime, {{Rational(row.A0.x), row.A0.y, row.q0}}, row.d);
    if (!add("chain_descent", ok, ok ? "consistent corner chain below A1" : "no consistent corner chain")) return opt;
  }
  opt.survives = true;
  return opt;
}

std::vector<CandidateCorner> rows_for(long u, long v, FilterProfile profile) {
  std::vector<CandidateCorner> rows;
  const long g = gcd_l(u, v), u0 = u / g, v0 = v / g;
  for (long t = 1; t < g; ++t) {
    CandidateCorner row;
    row.A0 = {u, v};
    row.f = {t * u0, t * v0};
    if (row.f.x < 2) continue;
    row.mu = make_rational(t, g);
    row.q0 = to_long(Integer(row.mu.get_den()));
    row.dgcd = gcd_l(row.f.x - 1, row.f.y - 1);
    row.d = Direction((row.f.y - 1) / row.dgcd, (1 - row.f.x) / row.dgcd);
    const long rho = row.d.rho(), sigma = row.d.sigma();
    const long val = rho * u + sigma * v;
    for (long r = 1; r < u; ++r) {
      const long num = val - rho * r;
      if (num % sigma != 0) continue;
      const long s = num / sigma;
      if (s >= 0 && s < r) row.A0prime_options.push_back({r, s});
    }

    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
      row.verdicts.push_back({name, pass, detail});
      return pass;
    };
    bool alive = true;
    if (profile == FilterProfile::full) {
      alive = add("q0_not_2", row.q0 != 2, "q0 = " + std::to_string(row.q0)) && alive;
      alive = add("rho_le_u", rho <= u, "rho = " + std::to_string(rho)) && alive;
    }
    alive = add("A0prime_exists", !row.A0prime_options.empty(), "") && alive;
    if (profile == FilterProfile::full) {
      alive = add("impossibles", filter_impossibles(row), "v_d(A0) = " + std::to_string(val)) && alive;
    }
    if (alive) {
      for (const auto& a0p : row.A0prime_options) {
        std::vector<long> gammas;
        if (row.dgcd == 1) {
          if ((v - a0p.y) % rho == 0) gammas.push_back((v - a0p.y) / rho);
        } else {
          for (long gm = 1; gm <= (v - a0p.y) / rho; ++gm) gammas.push_back(gm);
        }
        if (gammas.empty()) {
          CandidateOption dead;
          dead.A0prime = a0p;
          dead.verdicts.push_back({"gamma_integral", false, "(v-s')/rho is not an integer"});
          row.options.push_back(dead);
          continue;
        }
        if (profile == FilterProfile::full && sigma == -1 && a0p == LatticePoint{1, 0} && v == (u - 1) * rho &&
            (gcd_l(u - 1, rho) == 1 || is_prime(rho))) {
          std::erase_if(gammas, [&](long gm) { return gm * (rho - 2) <= rho; });
        }
        for (long gm : gammas) {
          if (std::find(row.gamma_options.begin(), row.gamma_options.end(), gm) == row.gamma_options.end()) {
            row.gamma_options.push_back(gm);
          }
          row.options.push_back(evaluate_option(row, a0p, gm, profile));
        }
      }
    }
    row.survives = alive && std::any_of(row.options.begin(), row.options.end(),
                                        [](const CandidateOption& o) { return o.survives; });
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LatticePoint> base_pairs(long sum_min, long sum_max, FilterProfile profile) {
  std::vector<LatticePoint> out;
  for (long u = 1; u < sum_max; ++u) {
    for (long v = 1; u + v <= sum_max; ++v) {
      if (u + v >= sum_min && in_profile(u, v, profile)) out.push_back({u, v});
    }
  }
  return out;
}

}  // namespace

const char* profile_name(FilterProfile p) { return p == FilterProfile::table1 ? "table1" : "full"; }

bool check_condition8(const PlanePoint& A1, long lprime) {
  const Rational a = A1.x * lprime;
  if (!is_integer(a) || !is_integer(A1.y) || A1.y < 1) throw std::invalid_argument("A1 must be (a/l', b) with b >= 1");
  if (Rational(lprime) - a / A1.y > 1) return true;
  return gcd(Integer(a), Integer(A1.y)) > 1;
}

bool filter_impossibles(const CandidateCorner& c) {
  if (c.d != Direction(2, -1)) return true;
  const long v = 2 * c.A0.x - c.A0.y;
  return !(v <= 3 || c.A0 == LatticePoint{8, 12});
}

TypeIIResult filter_typeII_mu(const PlanePoint& A1, long lprime) {
  const long l = lprime;
  const long a = to_long(Rational(A1.x * l));
  const long b = to_long(A1.y);
  TypeIIResult res;
  res.dbar = gcd_l(a, b);
  if (res.dbar <= 1) throw NotTypeIICandidate("gcd(a,b) = 1 at " + rational_pair(A1));
  const long abar = a / res.dbar, bbar = b / res.dbar;
  res.mu_bound = floor_of(Rational(l * (b * l - a)) + make_rational(1, bbar));
  for (long mu = 1; mu <= res.mu_bound; ++mu) {
    if (mu % res.dbar == 0) continue;
    MuAttempt at;
    at.mu = mu;
    at.d1 = try_dir_of(PlanePoint(Rational(mu * abar - l), Rational(mu * bbar * l - l)));
    if (!at.d1 || !in_interval_I(*at.d1)) {
      at.outcome = "direction outside I";
      res.attempts.push_back(at);
      continue;
    }
    const long r1 = at.d1->rho(), s1 = at.d1->sigma();
    at.reduced_rho = r1 / gcd_l(r1, l);
    if (at.reduced_rho > b) {
      at.outcome = "rho1/gcd(rho1,l') = " + std::to_string(at.reduced_rho) + " > b";
      res.attempts.push_back(at);
      continue;
    }
    at.admissible = true;
    const long l2 = lcm_l(l, r1);
    const Rational val = r1 * A1.x + Rational(s1 * b);
    bool any = false;
    for (long b2 = 1; b2 < b; ++b2) {
      Rational x2 = (val - s1 * b2) / r1;
      if (!is_integer(Rational(x2 * l2)) || !(Rational(b2) > x2)) continue;
      PlanePoint c(x2, Rational(b2));
      at.forced_corners.push_back(c);
      bool ok = Rational(l2) - x2 * l2 / b2 > 1;
      if (!ok && gcd_l(to_long(Rational(x2 * l2)), b2) > 1) ok = filter_typeII_mu(c, l2).pass;
      any = any || ok;
    }
    std::string corners;
    for (const auto& c : at.forced_corners) corners += rational_pair(c);
    at.outcome = any ? "passes via " + corners : (corners.empty() ? "no forced corner" : "forced " + corners + " fails");
    res.pass = res.pass || any;
    res.attempts.push_back(at);
  }
  return res;
}

std::vector<CandidateCorner> enumerate_candidates(long sum_min, long sum_max, FilterProfile profile, int threads) {
  if (sum_min > sum_max) throw std::invalid_argument("sum_min > sum_max");
  const auto pairs = base_pairs(sum_min, sum_max, profile);
  std::vector<std::vector<CandidateCorner>> per(pairs.size());
  parallel_for(pairs.size(), thread_count(threads),
               [&](std::size_t i) { per[i] = rows_for(pairs[i].x, pairs[i].y, profile); });
  std::vector<CandidateCorner> rows;
  for (auto& r : per) {
    for (auto& c : r) rows.push_back(std::move(c));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CandidateCorner& a, const CandidateCorner& b) {
    if (a.A0 == b.A0) return a.f.x < b.f.x;
    return a.A0 < b.A0;
  });
  return rows;
}

std::vector<LatticePoint> xlist(long sum_bound, int threads) {
  const auto pairs = base_pairs(1, sum_bound, FilterProfile::full);
  std::vector<char> keep(pairs.size(), 0);
  parallel_for(pairs.size(), thread_count(threads), [&](std::size_t i) {
    for (const auto& row : rows_for(pairs[i].x, pairs[i].y, FilterProfile::full)) {
      if (row.survives) {
        keep[i] = 1;
        break;
      }
    }
  });
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (keep[i]) out.push_back(pairs[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<LatticePoint>& reference_x_list() {
  static const std::vector<LatticePoint> x = {
      {4, 12},  {5, 20},  {6, 15},  {6, 30},  {7, 21},  {7, 35},  {7, 42},  {8, 24},
      {8, 28},  {9, 21},  {9, 24},  {9, 36},  {10, 25}, {10, 30}, {10, 40}, {11, 33},
      {12, 28}, {12, 30}, {12, 33}, {12, 36}, {14, 35}, {15, 35}, {18, 30}};
  return x;
}

ChainReport chain_filter(const LatticePoint& A0, long q0, long sum_bound) {
  ChainReport rep;
  const long u = A0.x, v = A0.y;
  for (long p0 = 1; p0 < q0; ++p0) {
    if (gcd_l(p0, q0) != 1 || (p0 * u) % q0 != 0 || (p0 * v) % q0 != 0) continue;
    const long f1 = p0 * u / q0, f2 = p0 * v / q0;
    if (f1 < 2) continue;
    const long dg = gcd_l(f1 - 1, f2 - 1);
    Direction d0((f2 - 1) / dg, (1 - f1) / dg);
    if (std::find(rep.edge_directions.begin(), rep.edge_directions.end(), d0) == rep.edge_directions.end()) {
      rep.edge_directions.push_back(d0);
    }
  }
  const Direction vertical(1, 0);
  for (const auto& d0 : rep.edge_directions) {
    const Rational v0 = v_point(PlanePoint(Rational(u), Rational(v)), d0);
    for (long a1 = u; a1 <= sum_bound; ++a1) {
      for (long b1 = a1 + 1; a1 + b1 <= sum_bound; ++b1) {
        if (a1 % q0 != 0 || b1 % q0 != 0 || (a1 == u && b1 == v)) continue;
        const PlanePoint A1{Rational(a1), Rational(b1)};
        if (v_point(A1, d0) > v0) continue;
        auto d1 = try_dir_of(PlanePoint(Rational(a1 - u), Rational(b1 - v)));
        if (!d1 || !in_half_open_interval(*d1, d0, vertical)) continue;
        ChainCandidate c{{a1, b1}, d0, *d1, true, ""};
        const long big_d = gcd_l(gcd_l(a1, b1), gcd_l(u, v));
        bool div_ok = false;
        for (long d : divisors(big_d)) div_ok = div_ok || (d % q0 == 0 && omega(d) >= 1);
        if (!div_ok) {
          c.pass = false;
          c.reason = "no d1 | D1 with q0 | d1 and Omega(d1) >= 1";
        } else if (*d1 == vertical && u == q0) {
          c.pass = false;
          c.reason = "vertical edge with A0 = (q0, b)";
        } else {
          c.reason = "consistent";
        }
        rep.candidates.push_back(c);
      }
    }
  }
  rep.last_corner = std::none_of(rep.candidates.begin(), rep.candidates.end(),
                                 [](const ChainCandidate& c) { return c.pass; });
  std::ostringstream os;
  os << rep.candidates.size() << " extension candidate(s)";
  for (const auto& c : rep.candidates) os << "; (" << c.A1.x << "," << c.A1.y << ") " << (c.pass ? "kept" : "rejected: " + c.reason);
  os << (rep.last_corner ? "; last corner" : "; further corners possible");
  rep.summary = os.str();
  return rep;
}

std::vector<Direction> a_set(const LaurentPoly& p) {
  std::vector<Direction> out;
  for (const auto& d : directions_of(p)) {
    if (!in_interval_I(d)) continue;
    const ExpPoint st = st_point(p, d);
    if (-st.y < -1 && st.x - st.y < 0) out.push_back(d);
  }
  const Direction lo(1, -1);
  std::sort(out.begin(), out.end(), [&](const Direction& a, const Direction& b) { return ccw_less(a, b, lo); });
  return out;
}

CaseLabel classify_corner(const LaurentPoly& p, const LaurentPoly& q, const RegularCorner& c) {
  return classify_case(leading_form(p, c.d), leading_form(q, c.d), c.d);
}

PairCorners regular_corners_of_pair(const LaurentPoly& p, const LaurentPoly& q, long m, long n) {
  (void)n;
  PairCorners out;
  if (p.is_zero() || m <= 0) return out;
  const long l = lcm_l(ramification_index(p), ramification_index(q));
  std::vector<Direction> dirs;
  for (const auto& d : directions_of(p)) {
    if (in_interval_I(d)) dirs.push_back(d);
  }
  const Direction lo(1, -1);
  std::sort(dirs.begin(), dirs.end(), [&](const Direction& a, const Direction& b) { return ccw_less(a, b, lo); });
  for (const auto& d : dirs) {
    const ExpPoint en = en_point(p, d);
    PlanePoint A(Rational(en.x / m), make_rational(en.y, m));
    if (!is_integer(A.y) || A.y < 1 || !is_integer(Rational(A.x * l)) || !(A.y > A.x)) continue;
    RegularCorner c{A, d, std::nullopt};
    try {
      c.case_label = classify_corner(p, q, c);
    } catch (const Error&) {
    }
    out.corners.push_back(c);
  }
  out.A_of_P = a_set(p);
  const RegularCorner* start = nullptr;
  int outside = 0;
  for (const auto& c : out.corners) {
    if (std::find(out.A_of_P.begin(), out.A_of_P.end(), c.d) == out.A_of_P.end()) {
      start = &c;
      ++outside;
    }
  }
  if (outside == 1) {
    const ExpPoint st = st_point(p, start->d);
    PlanePoint a0p(Rational(st.x / m), make_rational(st.y, m));
    out.starting = StartingTriple{start->A, a0p, start->d};
  }
  return out;
}

MnPairCheck check_mn_pair(const LaurentPoly& p, const LaurentPoly& q, long m, long n) {
  MnPairCheck r;
  auto fail = [&](const std::string& s) { r.failures.push_back(s); };
  if (m <= 1 || n <= 1 || gcd_l(m, n) != 1) fail("m, n > 1 coprime");
  if (p.is_zero() || q.is_zero()) {
    fail("P, Q nonzero");
    return r;
  }
  if (!is_jacobian_pair(p, q).is_pair) fail("[P,Q] in K^x");
  const Rational ratio(m, n);
  const Direction d11(1, 1), d10(1, 0);
  const Rational q11 = v_degree(q, d11).value(), q10 = v_degree(q, d10).value();
  if (q11 == 0 || v_degree(p, d11).value() / q11 != ratio) fail("v11(P)/v11(Q) = m/n");
  if (q10 == 0 || v_degree(p, d10).value() / q10 != ratio) fail("v10(P)/v10(Q) = m/n");
  const ExpPoint en10 = en_point(p, d10);
  if (!(en10.x - en10.y < 0)) fail("v_{1,-1}(en_{1,0}(P)) < 0");
  r.is_mn_pair = r.failures.empty();
  const ExpPoint st10 = st_point(p, d10);
  const bool std_extra = in_L1(p) && in_L1(q) && st10.x - st10.y < 0;
  if (!std_extra) fail("standard: P, Q in L^(1) and v_{1,-1}(st_{1,0}(P)) < 0");
  r.is_standard = r.is_mn_pair && std_extra;
  return r;
}

}  // namespace nshape
