#pragma once

// Truncated Laurent series in q with exact coefficients.
//
// A series stores the coefficients for exponents valuation()..prec()
// inclusive; everything above prec() is unknown (the O(q^{prec+1}) tail)
// and everything below valuation() is exactly zero. Each operation
// returns the largest precision that is sound given its inputs.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modform/error.hpp"
#include "modform/exactnum.hpp"

namespace modform {

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static Rational zero_like(const Rational&) { return Rational(0); }
  static Rational one_like(const Rational&) { return Rational(1); }
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static std::string str(const Rational& c) { return to_string(c); }
  static nlohmann::json json(const Rational& c) { return to_string(c); }
};

template <>
struct CoeffTraits<NfElement> {
  static NfElement zero_like(const NfElement& s) { return NfElement(s.field(), Rational(0)); }
  static NfElement one_like(const NfElement& s) { return NfElement(s.field(), Rational(1)); }
  static bool is_zero(const NfElement& c) { return c.is_zero(); }
  static std::string str(const NfElement& c) { return c.to_string(); }
  static nlohmann::json json(const NfElement& c) { return to_json(c); }
};

namespace detail {

template <class C>
std::vector<C> convolve(const std::vector<C>& a, const std::vector<C>& b, size_t n) {
  std::vector<C> out(n, CoeffTraits<C>::zero_like(a.front()));
  for (size_t i = 0; i < n; ++i) {
    if (CoeffTraits<C>::is_zero(a[i])) continue;
    for (size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class C>
std::vector<C> invert(const std::vector<C>& a) {
  const size_t n = a.size();
  std::vector<C> out(n, CoeffTraits<C>::zero_like(a.front()));
  C lead_inv = CoeffTraits<C>::one_like(a.front()) / a[0];
  out[0] = lead_inv;
  for (size_t k = 1; k < n; ++k) {
    C acc = CoeffTraits<C>::zero_like(a.front());
    for (size_t i = 1; i <= k; ++i) {
      if (!CoeffTraits<C>::is_zero(a[i])) acc += a[i] * out[k - i];
    }
    out[k] = -(acc * lead_inv);
  }
  return out;
}

// Integer-scaled fast paths; see qseries.cpp.
template <>
std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b, size_t n);
template <>
std::vector<Rational> invert(const std::vector<Rational>& a);

}  // namespace detail

template <class C>
class LaurentSeries {
 public:
  using coeff_type = C;

  /// Coefficients for exponents valuation .. valuation + coeffs.size() - 1.
  LaurentSeries(long valuation, std::vector<C> coeffs)
      : valuation_(valuation), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(Errc::invalid_argument, "series needs at least one coefficient");
    normalize();
  }

  static LaurentSeries zero(const C& like, long prec) {
    return LaurentSeries(prec, {CoeffTraits<C>::zero_like(like)});
  }
  static LaurentSeries constant(const C& c, long prec) { return monomial(c, 0, prec); }
  /// c·q^exponent + O(q^{prec+1}).
  static LaurentSeries monomial(const C& c, long exponent, long prec) {
    if (prec < exponent) throw Error(Errc::precision, "monomial precision below its exponent");
    std::vector<C> v(static_cast<size_t>(prec - exponent + 1), CoeffTraits<C>::zero_like(c));
    v[0] = c;
    return LaurentSeries(exponent, std::move(v));
  }

  long valuation() const { return valuation_; }
  long prec() const { return valuation_ + static_cast<long>(coeffs_.size()) - 1; }
  /// Number of stored coefficients, i.e. the precision relative to the valuation.
  size_t length() const { return coeffs_.size(); }
  const std::vector<C>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.size() == 1 && CoeffTraits<C>::is_zero(coeffs_[0]); }
  const C& leading() const { return coeffs_.front(); }

  /// a(n). Exponents below the valuation are exactly zero; exponents
  /// beyond the precision are unknown and rejected.
  C coefficient(long n) const {
    if (n > prec()) {
      throw Error(Errc::precision, "coefficient q^" + std::to_string(n) +
                                       " requested beyond precision " + std::to_string(prec()));
    }
    if (n < valuation_) return CoeffTraits<C>::zero_like(coeffs_.front());
    return coeffs_[static_cast<size_t>(n - valuation_)];
  }

  LaurentSeries truncated(long new_prec) const {
    if (new_prec > prec()) {
      throw Error(Errc::precision, "cannot raise precision from " + std::to_string(prec()) +
                                       " to " + std::to_string(new_prec));
    }
    if (new_prec < valuation_) return zero(coeffs_.front(), new_prec);
    return LaurentSeries(valuation_, std::vector<C>(coeffs_.begin(),
                                                    coeffs_.begin() + (new_prec - valuation_ + 1)));
  }

  /// Multiplication by q^s.
  LaurentSeries shifted(long s) const { return LaurentSeries(valuation_ + s, coeffs_); }

  template <class F>
  auto map(F&& f) const {
    using D = std::decay_t<decltype(f(coeffs_.front()))>;
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return LaurentSeries<D>(valuation_, std::move(out));
  }

  LaurentSeries operator-() const {
    return map([](const C& c) { return C(-c); });
  }

  LaurentSeries& operator*=(const C& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  friend LaurentSeries operator*(LaurentSeries a, const C& s) { return a *= s; }
  friend LaurentSeries operator*(const C& s, LaurentSeries a) { return a *= s; }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.valuation_ == b.valuation_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() {
    size_t lead = 0;
    while (lead + 1 < coeffs_.size() && CoeffTraits<C>::is_zero(coeffs_[lead])) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      valuation_ += static_cast<long>(lead);
    }
  }

  long valuation_;
  std::vector<C> coeffs_;
};

using RatSeries = LaurentSeries<Rational>;
using NfSeries = LaurentSeries<NfElement>;

namespace detail {

template <class C, class Op>
LaurentSeries<C> combine(const LaurentSeries<C>& a, const LaurentSeries<C>& b, Op op) {
  const long v = std::min(a.valuation(), b.valuation());
  const long p = std::min(a.prec(), b.prec());
  std::vector<C> out;
  out.reserve(static_cast<size_t>(p - v + 1));
  for (long n = v; n <= p; ++n) out.push_back(op(a.coefficient(n), b.coefficient(n)));
  return LaurentSeries<C>(v, std::move(out));
}

}  // namespace detail

template <class C>
LaurentSeries<C> series_add(const LaurentSeries<C>& a, const LaurentSeries<C>& b) {
  return detail::combine(a, b, [](const C& x, const C& y) { return C(x + y); });
}

template <class C>
LaurentSeries<C> series_sub(const LaurentSeries<C>& a, const LaurentSeries<C>& b) {
  return detail::combine(a, b, [](const C& x, const C& y) { return C(x - y); });
}

/// Product; the relative precision is the smaller of the two inputs'.
template <class C>
LaurentSeries<C> series_mul(const LaurentSeries<C>& a, const LaurentSeries<C>& b) {
  const size_t n = std::min(a.length(), b.length());
  return LaurentSeries<C>(a.valuation() + b.valuation(), detail::convolve(a.coeffs(), b.coeffs(), n));
}

template <class C>
LaurentSeries<C> series_inv(const LaurentSeries<C>& a) {
  if (a.is_zero()) throw Error(Errc::division_by_zero, "cannot invert a series that is zero to its precision");
  return LaurentSeries<C>(-a.valuation(), detail::invert(a.coeffs()));
}

template <class C>
LaurentSeries<C> series_pow(const LaurentSeries<C>& a, long e) {
  if (e < 0) return series_pow(series_inv(a), -e);
  const C one = CoeffTraits<C>::one_like(a.leading());
  LaurentSeries<C> result = LaurentSeries<C>::constant(one, static_cast<long>(a.length()) - 1);
  LaurentSeries<C> base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : series_mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e > 0) base = series_mul(base, base);
  }
  return result;
}

template <class C>
C coefficient(const LaurentSeries<C>& a, long n) {
  return a.coefficient(n);
}

template <class C>
LaurentSeries<C> operator+(const LaurentSeries<C>& a, const LaurentSeries<C>& b) { return series_add(a, b); }
template <class C>
LaurentSeries<C> operator-(const LaurentSeries<C>& a, const LaurentSeries<C>& b) { return series_sub(a, b); }
template <class C>
LaurentSeries<C> operator*(const LaurentSeries<C>& a, const LaurentSeries<C>& b) { return series_mul(a, b); }

/// True when a and b agree on every exponent both know.
template <class C>
bool agree(const LaurentSeries<C>& a, const LaurentSeries<C>& b) {
  const long p = std::min(a.prec(), b.prec());
  const long v = std::min(a.valuation(), b.valuation());
  for (long n = v; n <= p; ++n) {
    if (!(a.coefficient(n) == b.coefficient(n))) return false;
  }
  return true;
}

/// Lift a rational series into a number field.
NfSeries to_field(const RatSeries& s, const FieldPtr& field);

/// Sum of Σ c_i·s_i over number-field scalars with rational series.
NfSeries linear_combination(const std::vector<NfElement>& scalars, const std::vector<RatSeries>& series);

template <class C>
nlohmann::json to_json(const LaurentSeries<C>& s) {
  nlohmann::json j;
  j["valuation"] = s.valuation();
  j["prec"] = s.prec();
  j["coeffs"] = nlohmann::json::array();
  for (const auto& c : s.coeffs()) j["coeffs"].push_back(CoeffTraits<C>::json(c));
  return j;
}

RatSeries rat_series_from_json(const nlohmann::json& j);

/// "n,a(n)" rows from min(valuation, 0) up to `upto` (clamped to the precision).
template <class C>
void write_csv(std::ostream& out, const LaurentSeries<C>& s, long upto) {
  out << "n,a(n)\n";
  for (long n = std::min(s.valuation(), 0L); n <= std::min(upto, s.prec()); ++n) {
    out << n << ',' << CoeffTraits<C>::str(s.coefficient(n)) << '\n';
  }
}

}  // namespace modform
