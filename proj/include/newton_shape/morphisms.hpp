#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "newton_shape/geometry.hpp"

namespace nshape {

// y -> y + lambda x^exponent, x fixed.
struct ElementaryAuto {
  Rational lambda;
  Rational exponent;
};

enum class FlipKind { psi1, psi2, psi3 };
const char* flip_name(FlipKind k);

// psi1: (x,y) -> (y,-x) on L only; psi2: (x,y) -> (-x^{-1}, x^2 y); psi3: (x,y) -> (x^{-1}, x^3 y).
struct Flip {
  FlipKind kind;
};

LaurentPoly apply_elementary(const LaurentPoly& p, const ElementaryAuto& a);
// Throws NotInL (psi1 on non-polynomial input), NotInL1 (psi2 on fractional x-exponents).
LaurentPoly apply_flip(const LaurentPoly& p, const Flip& f);

Direction pushforward_direction(const Direction& d, const Flip& f);
// Induced map on exponents: psi1 (i,j) -> (j,i), psi2 (i,j) -> (2j-i, j), psi3 (i,j) -> (3j-i, j).
PlanePoint support_map(const PlanePoint& p, const Flip& f);

using MorphismStep = std::variant<ElementaryAuto, Flip>;

// Composition applied left to right: apply(P) = step_k(...step_1(P)).
struct Morphism {
  std::vector<MorphismStep> steps;

  LaurentPoly apply(const LaurentPoly& p) const;
  // [phi(x), phi(y)]
  LaurentPoly jacobian() const;
};

// Image of (x,y) under random unit-Jacobian moves (Q += lambda P^k, P += lambda Q^k, (P,Q) -> (Q,-P)).
// Throws BudgetExceeded when the combined term count passes size_budget.
std::pair<LaurentPoly, LaurentPoly> random_tame_pair(std::uint64_t seed, int steps, std::size_t size_budget = 200);

}  // namespace nshape
