#pragma once

// Normalized Hecke eigenforms of S_k, split by T_2 and stored once per
// Galois orbit over their coefficient field.

#include <vector>

#include "modform/linalg.hpp"
#include "modform/modforms.hpp"

namespace modform {

struct EigenformPackage {
  long weight = 0;
  FieldPtr field;
  /// Coefficients in the power basis (1, a(2)) of the field.
  NfSeries series = NfSeries::zero(NfElement(NumberField::rationals(), Rational(0)), 0);
  /// Images of the field generator a(2) under each embedding.
  std::vector<Real> embeddings;
  /// Largest prime p for which T_p f = a(p) f was verified.
  long hecke_verified_up_to = 0;

  int degree() const { return field->degree(); }
};

/// Matrix of T_2 on the cuspidal Miller basis g_1..g_d:
/// T_2 g_i = Σ_j M[j][i] g_j.
Matrix<Rational> t2_matrix(long k, long prec);

/// One package per irreducible factor of the characteristic polynomial
/// of T_2 on S_k (dim S_k <= 2), in the order the rational roots sort,
/// with irreducible quadratics last.
std::vector<EigenformPackage> eigen_decompose(long k, long prec, long hecke_check_bound = 13);

/// Coordinates of a(n) in the power basis.
std::vector<Rational> qbasis_decompose(const EigenformPackage& pkg, long n);

/// σ_s(a(n)) for every embedding s and 0 <= n <= prec.
std::vector<std::vector<Real>> conjugate_expansions(const EigenformPackage& pkg, long prec);

/// Coefficientwise image under the nontrivial field automorphism.
NfSeries galois_conjugate(const NfSeries& f);

/// Checks a(p)a(n) = a(pn) + p^{k-1}a(n/p) for every n with pn within
/// precision; returns false at the first failure.
template <class C>
bool satisfies_hecke_relation(const LaurentSeries<C>& f, long k, long p) {
  const LaurentSeries<C> tp = hecke_tp_series(f, k, p);
  const C ap = f.coefficient(p);
  for (long n = 0; n <= tp.prec(); ++n) {
    if (!(tp.coefficient(n) == ap * f.coefficient(n))) return false;
  }
  return true;
}

nlohmann::json to_json(const EigenformPackage& pkg);

}  // namespace modform
