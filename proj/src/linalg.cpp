#include "newton_shape/linalg.hpp"

#include <stdexcept>

namespace nshape {

LinearSolution solve_linear(RMatrix a, std::vector<Rational> b, std::size_t cols) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("solve_linear: size mismatch");
  for (auto& row : a) row.resize(cols, Rational(0));

  std::vector<long> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (a[r][k] != 0) a[i][k] -= f * a[r][k];
      }
      b[i] -= f * b[r];
    }
    pivot_col_of_row.push_back(static_cast<long>(c));
    is_pivot[c] = true;
    ++r;
  }

  LinearSolution sol;
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return sol;
  }
  sol.consistent = true;
  sol.particular.assign(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) sol.particular[static_cast<std::size_t>(pivot_col_of_row[i])] = b[i];
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) v[static_cast<std::size_t>(pivot_col_of_row[i])] = -a[i][f];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace nshape
