#pragma once

// Small exact linear algebra over ℚ or a number field.

#include <optional>
#include <vector>

#include "modform/exactnum.hpp"
#include "modform/qseries.hpp"

namespace modform {

template <class F>
using Matrix = std::vector<std::vector<F>>;

/// In-place reduced row echelon form; returns the pivot columns.
template <class F>
std::vector<size_t> rref(Matrix<F>& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && CoeffTraits<F>::is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const F inv = CoeffTraits<F>::one_like(m[r][c]) / m[r][c];
    for (auto& x : m[r]) x = x * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || CoeffTraits<F>::is_zero(m[i][c])) continue;
      const F factor = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of {v : m v = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
  std::vector<std::vector<F>> basis;
  if (m.empty()) return basis;
  const size_t cols = m[0].size();
  const F zero = CoeffTraits<F>::zero_like(m[0][0]);
  const F one = CoeffTraits<F>::one_like(m[0][0]);
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(cols, zero);
    v[free] = one;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Unique solution of a x = b, or nullopt when inconsistent or underdetermined.
template <class F>
std::optional<std::vector<F>> solve_unique(const Matrix<F>& a, const std::vector<F>& b) {
  if (a.empty()) return std::nullopt;
  const size_t cols = a[0].size();
  Matrix<F> aug = a;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  if (pivots.size() != cols) return std::nullopt;
  std::vector<F> x;
  for (size_t i = 0; i < cols; ++i) x.push_back(aug[i][cols]);
  return x;
}

/// Characteristic polynomial det(xI - m), constant term first.
std::vector<Rational> charpoly(const Matrix<Rational>& m);
Rational determinant(Matrix<Rational> m);

/// Rational roots of a polynomial of degree <= 2 (constant term first).
std::vector<Rational> rational_roots(const std::vector<Rational>& poly);

}  // namespace modform
