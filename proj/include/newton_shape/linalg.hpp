#pragma once

#include <vector>

#include "newton_shape/rational.hpp"

namespace nshape {

using RMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> particular;          // free variables set to 0
  std::vector<std::vector<Rational>> kernel;  // one basis vector per free variable
};

// Exact Gauss-Jordan elimination of A c = b over Q. A is rows x cols.
LinearSolution solve_linear(RMatrix a, std::vector<Rational> b, std::size_t cols);

}  // namespace nshape
