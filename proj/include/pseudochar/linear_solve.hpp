#pragma once

// Exact Gaussian elimination: over Q with fraction arithmetic, and over any
// field in the ring tower (used for intertwiner spaces).

#include <optional>
#include <vector>

#include "rings.hpp"

namespace pseudochar {

using RationalMatrix = std::vector<std::vector<BigRational>>;
using RationalVector = std::vector<BigRational>;

struct RationalSolution {
  RationalVector particular;
  std::vector<RationalVector> null_space;
  std::vector<std::size_t> pivot_columns;
};

// Solves A x = b. Pivots are taken in column order, free variables are set
// to zero in the particular solution, so earlier columns are preferred.
// Returns nullopt when the system is inconsistent.
inline std::optional<RationalSolution> solve_rational(RationalMatrix a, RationalVector b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw Error("solve_rational: rhs length mismatch");
  const std::size_t cols = rows ? a[0].size() : 0;
  for (const auto& r : a)
    if (r.size() != cols) throw Error("solve_rational: ragged matrix");

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const BigRational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const BigRational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;

  RationalSolution sol;
  sol.pivot_columns = pivots;
  sol.particular.assign(cols, BigRational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = b[i];

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, BigRational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    sol.null_space.push_back(std::move(v));
  }
  return sol;
}

// Basis of {x : A x = 0} over a field. Rows of A are vectors of Elems.
inline std::vector<std::vector<Elem>> field_nullspace(const Ring& field, std::vector<std::vector<Elem>> a,
                                                      std::size_t cols) {
  if (!field.is_field()) throw Error("field_nullspace requires a field");
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && field.is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Elem inv = *field.inverse(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = field.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(a[i][c])) continue;
      const Elem f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = field.sub(a[i][j], field.mul(f, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> v(cols, field.zero());
    v[f] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(a[i][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace pseudochar
