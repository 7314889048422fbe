#include "modform/eigen.hpp"

#include <algorithm>

namespace modform {

namespace {

std::vector<RatSeries> cusp_basis(long k, long prec) {
  std::vector<RatSeries> out;
  auto basis = miller_basis(k, prec);
  for (size_t i = 1; i < basis.size(); ++i) out.push_back(std::move(basis[i].series));
  return out;
}

Matrix<Rational> t2_from_basis(const std::vector<RatSeries>& cusp, long k) {
  const size_t d = cusp.size();
  Matrix<Rational> m(d, std::vector<Rational>(d, Rational(0)));
  for (size_t i = 0; i < d; ++i) {
    const RatSeries image = hecke_tp_series(cusp[i], k, 2);
    // g_j = q^j + O(q^{d+1}) so the coordinates are the coefficients 1..d.
    for (size_t j = 0; j < d; ++j) m[j][i] = image.coefficient(static_cast<long>(j + 1));
  }
  return m;
}

}  // namespace

Matrix<Rational> t2_matrix(long k, long prec) {
  const long d = dim_Sk(k);
  if (d < 1) throw Error(Errc::domain, "S_" + std::to_string(k) + " is zero");
  if (prec < 2 * (d + 1)) {
    throw Error(Errc::precision, "T_2 matrix needs at least " + std::to_string(2 * (d + 1)) + " coefficients");
  }
  return t2_from_basis(cusp_basis(k, prec), k);
}

std::vector<EigenformPackage> eigen_decompose(long k, long prec, long hecke_check_bound) {
  const long d = dim_Sk(k);
  std::vector<EigenformPackage> out;
  if (d == 0) return out;
  if (d > 2) {
    throw Error(Errc::unsupported, "dim S_" + std::to_string(k) + " = " + std::to_string(d) +
                                       " exceeds the supported maximum of 2");
  }
  const long work_prec = std::max(prec, 2 * (d + 1));
  const std::vector<RatSeries> cusp = cusp_basis(k, work_prec);
  const Matrix<Rational> m = t2_from_basis(cusp, k);
  const std::vector<Rational> cp = charpoly(m);
  if (d == 2 && sgn(cp[1] * cp[1] - 4 * cp[0]) == 0) {
    throw Error(Errc::unsupported, "characteristic polynomial of T_2 on S_" + std::to_string(k) +
                                       " is not squarefree");
  }

  std::vector<std::pair<FieldPtr, NfElement>> factors;
  const auto roots = rational_roots(cp);
  if (static_cast<long>(roots.size()) == d) {
    for (const auto& r : roots) {
      FieldPtr q = NumberField::make({Rational(-r), Rational(1)});
      factors.emplace_back(q, NfElement(q, r));
    }
  } else {
    FieldPtr f = NumberField::make(cp);
    factors.emplace_back(f, NfElement::generator(f));
  }

  for (const auto& [field, lambda] : factors) {
    Matrix<NfElement> shifted;
    for (size_t i = 0; i < m.size(); ++i) {
      std::vector<NfElement> row;
      for (size_t j = 0; j < m.size(); ++j) {
        NfElement e(field, m[i][j]);
        if (i == j) e -= lambda;
        row.push_back(e);
      }
      shifted.push_back(std::move(row));
    }
    auto kernel = nullspace(shifted);
    if (kernel.size() != 1) throw Error(Errc::domain, "T_2 eigenspace is not one-dimensional");
    std::vector<NfElement> v = kernel[0];
    if (v[0].is_zero()) throw Error(Errc::domain, "eigenvector cannot be normalized (a(1) = 0)");
    const NfElement lead = v[0];
    for (auto& x : v) x /= lead;

    EigenformPackage pkg;
    pkg.weight = k;
    pkg.field = field;
    pkg.series = linear_combination(v, cusp).truncated(std::min(prec, work_prec));
    for (int s = 0; s < field->embedding_count(); ++s) pkg.embeddings.push_back(field->root(s));
    for (long p : primes_up_to(std::min(hecke_check_bound, pkg.series.prec()))) {
      if (!satisfies_hecke_relation(pkg.series, k, p)) {
        throw Error(Errc::domain, "eigenform fails T_" + std::to_string(p) + " eigen-equation");
      }
      pkg.hecke_verified_up_to = p;
    }
    out.push_back(std::move(pkg));
  }
  return out;
}

std::vector<Rational> qbasis_decompose(const EigenformPackage& pkg, long n) {
  return pkg.series.coefficient(n).coords();
}

std::vector<std::vector<Real>> conjugate_expansions(const EigenformPackage& pkg, long prec) {
  std::vector<std::vector<Real>> out;
  for (int s = 0; s < pkg.field->embedding_count(); ++s) {
    std::vector<Real> seq;
    seq.reserve(static_cast<size_t>(prec + 1));
    for (long n = 0; n <= prec; ++n) seq.push_back(pkg.series.coefficient(n).embed(s));
    out.push_back(std::move(seq));
  }
  return out;
}

NfSeries galois_conjugate(const NfSeries& f) {
  return f.map([](const NfElement& c) { return c.conjugate(); });
}

nlohmann::json to_json(const EigenformPackage& pkg) {
  nlohmann::json j;
  j["weight"] = pkg.weight;
  j["degree"] = pkg.degree();
  j["minpoly"] = nlohmann::json::array();
  for (const auto& c : pkg.field->minpoly()) j["minpoly"].push_back(to_string(c));
  j["prec"] = pkg.series.prec();
  j["hecke_verified_up_to"] = pkg.hecke_verified_up_to;
  j["coefficients"] = nlohmann::json::array();
  for (long n = 0; n <= pkg.series.prec(); ++n) {
    nlohmann::json row = nlohmann::json::array();
    const NfElement c_n = pkg.series.coefficient(n);
    for (const auto& c : c_n.coords()) row.push_back(to_string(c));
    j["coefficients"].push_back(row);
  }
  return j;
}

}  // namespace modform
