#include "modform/linalg.hpp"

#include <algorithm>

namespace modform {

// Faddeev–LeVerrier: M_0 = 0, c_n = 1,
// M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
std::vector<Rational> charpoly(const Matrix<Rational>& m) {
  const size_t n = m.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix<Rational> mk(n, std::vector<Rational>(n, Rational(0)));
  for (size_t k = 1; k <= n; ++k) {
    Matrix<Rational> next(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        Rational acc = 0;
        for (size_t l = 0; l < n; ++l) acc += m[i][l] * mk[l][j];
        next[i][j] = acc;
      }
      next[i][i] += c[n - k + 1];
    }
    mk = std::move(next);
    Rational tr = 0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t l = 0; l < n; ++l) tr += m[i][l] * mk[l][i];
    }
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

Rational determinant(Matrix<Rational> m) {
  const size_t n = m.size();
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<Rational> rational_roots(const std::vector<Rational>& poly) {
  const size_t deg = poly.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {Rational(-poly[0] / poly[1])};
  if (deg > 2) throw Error(Errc::unsupported, "rational_roots supports degree <= 2");
  const Rational& a = poly[2];
  const Rational& b = poly[1];
  const Rational& c = poly[0];
  const Rational disc = b * b - 4 * a * c;
  if (!is_perfect_square(disc)) return {};
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), disc.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), disc.get_den_mpz_t());
  const Rational s(num, den);
  std::vector<Rational> roots{Rational((-b - s) / (2 * a)), Rational((-b + s) / (2 * a))};
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace modform
