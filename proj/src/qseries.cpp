#include "modform/qseries.hpp"

namespace modform {
namespace detail {

namespace {

// a_i = A_i / scale with A_i integral.
std::vector<Integer> integral_scaled(const std::vector<Rational>& a, size_t n, Integer& scale) {
  scale = 1;
  for (size_t i = 0; i < n; ++i) {
    if (a[i].get_den() != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a[i].get_den_mpz_t());
  }
  std::vector<Integer> out(n);
  for (size_t i = 0; i < n; ++i) {
    if (scale == 1) {
      out[i] = a[i].get_num();
    } else {
      mpz_divexact(out[i].get_mpz_t(), scale.get_mpz_t(), a[i].get_den_mpz_t());
      out[i] *= a[i].get_num();
    }
  }
  return out;
}

}  // namespace

template <>
std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b, size_t n) {
  Integer sa, sb;
  const std::vector<Integer> A = integral_scaled(a, n, sa);
  const std::vector<Integer> B = (&a == &b) ? std::vector<Integer>{} : integral_scaled(b, n, sb);

  if (&a == &b) {
    // c_k = 2 Σ_{i<j, i+j=k} A_i A_j + A_{k/2}^2
    std::vector<Integer> acc(n);
    for (size_t i = 0; 2 * i + 1 < n; ++i) {
      if (sgn(A[i]) == 0) continue;
      mpz_srcptr s = A[i].get_mpz_t();
      for (size_t j = i + 1; i + j < n; ++j) mpz_addmul(acc[i + j].get_mpz_t(), s, A[j].get_mpz_t());
    }
    for (size_t k = 0; k < n; ++k) acc[k] *= 2;
    for (size_t i = 0; 2 * i < n; ++i) mpz_addmul(acc[2 * i].get_mpz_t(), A[i].get_mpz_t(), A[i].get_mpz_t());
    const Integer den = sa * sa;
    std::vector<Rational> out(n);
    for (size_t k = 0; k < n; ++k) {
      out[k] = Rational(acc[k], den);
      out[k].canonicalize();
    }
    return out;
  }

  std::vector<size_t> nz_a, nz_b;
  for (size_t i = 0; i < n; ++i) {
    if (sgn(A[i]) != 0) nz_a.push_back(i);
    if (sgn(B[i]) != 0) nz_b.push_back(i);
  }
  const bool a_sparser = nz_a.size() <= nz_b.size();
  const std::vector<Integer>& sparse = a_sparser ? A : B;
  const std::vector<Integer>& dense = a_sparser ? B : A;
  const std::vector<size_t>& sparse_idx = a_sparser ? nz_a : nz_b;

  std::vector<Integer> acc(n);
  for (size_t i : sparse_idx) {
    mpz_srcptr s = sparse[i].get_mpz_t();
    for (size_t j = 0; i + j < n; ++j) {
      mpz_addmul(acc[i + j].get_mpz_t(), s, dense[j].get_mpz_t());
    }
  }

  const Integer den = sa * sb;
  std::vector<Rational> out(n);
  for (size_t k = 0; k < n; ++k) {
    out[k] = Rational(acc[k], den);
    out[k].canonicalize();
  }
  return out;
}

template <>
std::vector<Rational> invert(const std::vector<Rational>& a) {
  // With a = A/scale and u = A_0, put B_k = b_k·u^{k+1} where b = 1/A.
  // Then B_0 = 1 and B_k = -Σ_{i=1..k} A_i u^{i-1} B_{k-i}, all integral.
  const size_t n = a.size();
  Integer scale;
  const std::vector<Integer> A = integral_scaled(a, n, scale);
  const Integer& u = A[0];

  std::vector<Integer> weighted(n);
  Integer upow = 1;
  for (size_t i = 1; i < n; ++i) {
    weighted[i] = A[i] * upow;
    upow *= u;
  }
  std::vector<Integer> B(n);
  B[0] = 1;
  for (size_t k = 1; k < n; ++k) {
    Integer acc = 0;
    for (size_t i = 1; i <= k; ++i) {
      if (sgn(weighted[i]) != 0) mpz_addmul(acc.get_mpz_t(), weighted[i].get_mpz_t(), B[k - i].get_mpz_t());
    }
    B[k] = -acc;
  }
  std::vector<Rational> out(n);
  Integer den = u;
  for (size_t k = 0; k < n; ++k) {
    out[k] = Rational(B[k] * scale, den);
    out[k].canonicalize();
    den *= u;
  }
  return out;
}

}  // namespace detail

NfSeries to_field(const RatSeries& s, const FieldPtr& field) {
  return s.map([&](const Rational& c) { return NfElement(field, c); });
}

NfSeries linear_combination(const std::vector<NfElement>& scalars, const std::vector<RatSeries>& series) {
  if (scalars.empty() || scalars.size() != series.size()) {
    throw Error(Errc::invalid_argument, "linear_combination needs matching non-empty inputs");
  }
  long v = series[0].valuation(), p = series[0].prec();
  for (const auto& s : series) {
    v = std::min(v, s.valuation());
    p = std::min(p, s.prec());
  }
  const FieldPtr& field = scalars[0].field();
  const int t = field->degree();
  std::vector<NfElement> out;
  out.reserve(static_cast<size_t>(p - v + 1));
  for (long n = v; n <= p; ++n) {
    std::vector<Rational> coords(static_cast<size_t>(t), Rational(0));
    for (size_t i = 0; i < series.size(); ++i) {
      Rational c = series[i].coefficient(n);
      if (sgn(c) == 0) continue;
      for (int j = 0; j < t; ++j) coords[static_cast<size_t>(j)] += scalars[i].coords()[static_cast<size_t>(j)] * c;
    }
    out.emplace_back(field, std::move(coords));
  }
  return NfSeries(v, std::move(out));
}

RatSeries rat_series_from_json(const nlohmann::json& j) {
  if (!j.contains("valuation") || !j.contains("coeffs")) {
    throw Error(Errc::parse, "series JSON needs 'valuation' and 'coeffs'");
  }
  std::vector<Rational> coeffs;
  for (const auto& c : j["coeffs"]) {
    coeffs.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
  }
  if (coeffs.empty()) throw Error(Errc::parse, "series JSON has no coefficients");
  const long v = j["valuation"].get<long>();
  RatSeries s(v, std::move(coeffs));
  if (j.contains("prec") && j["prec"].get<long>() != v + static_cast<long>(j["coeffs"].size()) - 1) {
    throw Error(Errc::parse, "series JSON 'prec' disagrees with the coefficient count");
  }
  return s;
}

}  // namespace modform
