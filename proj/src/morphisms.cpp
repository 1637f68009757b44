#include "newton_shape/morphisms.hpp"

#include <random>

#include "newton_shape/errors.hpp"

namespace nshape {

const char* flip_name(FlipKind k) {
  switch (k) {
    case FlipKind::psi1: return "psi1";
    case FlipKind::psi2: return "psi2";
    case FlipKind::psi3: return "psi3";
  }
  return "?";
}

LaurentPoly apply_elementary(const LaurentPoly& p, const ElementaryAuto& a) {
  LaurentPoly r;
  for (const auto& [e, c] : p.terms()) {
    // c x^i (y + lambda x^k)^j expanded by the binomial theorem.
    Rational binom = 1;
    Rational lam_pow = 1;
    for (long t = 0; t <= e.y; ++t) {
      // term C(j,t) lambda^t x^{i + t k} y^{j - t}
      r.add_term(ExpPoint(Rational(e.x + t * a.exponent), e.y - t), Rational(c * binom * lam_pow));
      binom = binom * (e.y - t) / (t + 1);
      lam_pow *= a.lambda;
    }
  }
  return r;
}

LaurentPoly apply_flip(const LaurentPoly& p, const Flip& f) {
  LaurentPoly r;
  for (const auto& [e, c] : p.terms()) {
    switch (f.kind) {
      case FlipKind::psi1: {
        if (!is_integer(e.x) || e.x < 0) throw NotInL("psi1 is defined on K[x,y] only");
        long i = to_long(e.x);
        r.add_term(ExpPoint(Rational(e.y), i), e.y % 2 == 0 ? c : Rational(-c));
        break;
      }
      case FlipKind::psi2: {
        if (!is_integer(e.x)) throw NotInL1("psi2 needs integer x-exponents");
        long i = to_long(e.x);
        Rational sign = (i % 2 == 0) ? 1 : -1;
        r.add_term(ExpPoint(Rational(2 * e.y - e.x), e.y), Rational(c * sign));
        break;
      }
      case FlipKind::psi3:
        r.add_term(ExpPoint(Rational(3 * e.y - e.x), e.y), c);
        break;
    }
  }
  return r;
}

Direction pushforward_direction(const Direction& d, const Flip& f) {
  switch (f.kind) {
    case FlipKind::psi1: return Direction(d.sigma(), d.rho());
    case FlipKind::psi2: return Direction(-d.rho(), 2 * d.rho() + d.sigma());
    case FlipKind::psi3: return Direction(-d.rho(), 3 * d.rho() + d.sigma());
  }
  return d;
}

PlanePoint support_map(const PlanePoint& p, const Flip& f) {
  switch (f.kind) {
    case FlipKind::psi1: return PlanePoint(p.y, p.x);
    case FlipKind::psi2: return PlanePoint(Rational(2 * p.y - p.x), p.y);
    case FlipKind::psi3: return PlanePoint(Rational(3 * p.y - p.x), p.y);
  }
  return p;
}

LaurentPoly Morphism::apply(const LaurentPoly& p) const {
  LaurentPoly r = p;
  for (const auto& s : steps) {
    if (const auto* a = std::get_if<ElementaryAuto>(&s)) {
      r = apply_elementary(r, *a);
    } else {
      r = apply_flip(r, std::get<Flip>(s));
    }
  }
  return r;
}

LaurentPoly Morphism::jacobian() const { return bracket(apply(LaurentPoly::x()), apply(LaurentPoly::y())); }

std::pair<LaurentPoly, LaurentPoly> random_tame_pair(std::uint64_t seed, int steps, std::size_t size_budget) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> move(0, 2);
  std::uniform_int_distribution<int> power(0, 2);
  std::uniform_int_distribution<int> lam(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  LaurentPoly p = LaurentPoly::x();
  LaurentPoly q = LaurentPoly::y();
  for (int s = 0; s < steps; ++s) {
    const int kind = move(rng);
    const long k = power(rng);
    const Rational lambda = (sign(rng) ? 1 : -1) * lam(rng);
    if (kind == 0) {
      q += p.pow(k) * lambda;
    } else if (kind == 1) {
      p += q.pow(k) * lambda;
    } else {
      LaurentPoly t = p;
      p = q;
      q = -t;
    }
    if (p.size() + q.size() > size_budget) {
      throw BudgetExceeded("random_tame_pair exceeded " + std::to_string(size_budget) + " terms");
    }
  }
  return {p, q};
}

}  // namespace nshape
