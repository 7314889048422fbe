#include "modform/djbasis.hpp"

#include <algorithm>

namespace modform {

WeaklyForm WeaklyForm::make(long weight, RatSeries series) {
  const WeightSplit split = weight_split(weight);
  WeaklyForm f;
  f.weight = weight;
  f.series = std::move(series);
  f.o_k = split.o;
  f.k_prime = split.k_prime;
  return f;
}

namespace {

// Δ^o E_{k'} = q^o + ..., known through exponent prec.
RatSeries seed(const WeightSplit& split, long prec) {
  const long o = split.o;
  RatSeries out = RatSeries::constant(Rational(1), std::max(prec, 0L));
  if (o > 0) {
    out = series_pow(delta(std::max(prec, 1L)).series, o);
  } else if (o < 0) {
    // Δ^o keeps the relative length of Δ and has valuation o.
    out = series_pow(delta(prec - o + 1).series, o);
  }
  if (split.k_prime > 0) out = series_mul(out, eisenstein(split.k_prime, std::max(prec, 0L) + 1).series);
  return out.truncated(prec);
}

}  // namespace

DukeJenkinsBasis::DukeJenkinsBasis(long k, long prec, long max_m)
    : k_(k), prec_(prec), max_m_(max_m), split_(weight_split(k)) {
  const long o = split_.o;
  if (max_m < -o) {
    throw Error(Errc::domain, "f_{k,m} needs m >= -o_k = " + std::to_string(-o));
  }
  if (prec < o + 1) throw Error(Errc::precision, "basis precision must be at least o_k + 1");
  const long steps = max_m + o;  // j-multiplications after the seed
  const long seed_prec = prec + steps;
  const long j_prec = seed_prec + max_m + 2;
  const RatSeries j = j_invariant(j_prec);

  elements_.push_back(WeaklyForm::make(k, seed(split_, seed_prec)));
  for (long m = -o; m < max_m; ++m) {
    RatSeries h = series_mul(j, elements_.back().series);
    // h = q^{-(m+1)} + ...; clear exponents -m .. o using f_{k,-e}.
    for (long e = -m; e <= o; ++e) {
      const Rational c = h.coefficient(e);
      if (sgn(c) == 0) continue;
      h = series_sub(h, elements_[static_cast<size_t>(-e + o)].series * c);
    }
    elements_.push_back(WeaklyForm::make(k, std::move(h)));
  }
  for (auto& f : elements_) {
    if (f.series.prec() < prec) {
      throw Error(Errc::precision, "internal precision loss building f_{k,m}");
    }
    f.series = f.series.truncated(prec);
  }
}

const WeaklyForm& DukeJenkinsBasis::element(long m) const {
  if (m < -split_.o || m > max_m_) {
    throw Error(Errc::domain, "f_{" + std::to_string(k_) + "," + std::to_string(m) + "} outside the built range [" +
                                  std::to_string(-split_.o) + ", " + std::to_string(max_m_) + "]");
  }
  return elements_[static_cast<size_t>(m + split_.o)];
}

std::shared_ptr<const DukeJenkinsBasis> dj_basis(long k, long prec, long max_m) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const DukeJenkinsBasis>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it != cache.end() && it->second->prec() >= prec && it->second->max_m() >= max_m) return it->second;
  const long o = weight_split(k).o;
  max_m = std::max(max_m, -o);
  if (it != cache.end()) {
    prec = std::max(prec, it->second->prec());
    max_m = std::max(max_m, it->second->max_m());
  }
  auto basis = std::make_shared<const DukeJenkinsBasis>(k, prec, max_m);
  cache[k] = basis;
  return basis;
}

WeaklyForm dj_basis_element(long k, long m, long prec) {
  const long o = weight_split(k).o;
  if (m < -o) {
    throw Error(Errc::domain, "f_{" + std::to_string(k) + "," + std::to_string(m) +
                                  "} violates ord <= o_k (need m >= " + std::to_string(-o) + ")");
  }
  const WeaklyForm& f = dj_basis(k, std::max(prec, o + 1), m)->element(m);
  return WeaklyForm::make(k, f.series.truncated(prec));
}

WeaklyForm dj_basis_element_via_delta_power(long k, long m, long prec) {
  const long o = weight_split(k).o;
  if (m < -o) throw Error(Errc::domain, "f_{k,m} needs m >= -o_k");
  // g = Δ^m f_{k,m} lies in M_{k+12m} and agrees with q^{-m} Δ^m through
  // q^{o_k+m}, which fixes it in the Miller basis.
  const long inner_prec = prec + m + 1;
  const auto basis = miller_basis(k + 12 * m, inner_prec);
  const RatSeries d = delta(inner_prec + std::abs(m) + 1).series;
  const RatSeries shifted_power = series_mul(series_pow(d, m), RatSeries::monomial(Rational(1), -m, d.prec() + 2 * std::abs(m) + 2));
  RatSeries g = RatSeries::zero(Rational(0), inner_prec);
  for (size_t i = 0; i < basis.size(); ++i) {
    const Rational c = shifted_power.coefficient(static_cast<long>(i));
    if (sgn(c) != 0) g = series_add(g, basis[i].series * c);
  }
  RatSeries f = series_mul(g, series_pow(d, -m));
  return WeaklyForm::make(k, f.truncated(prec));
}

std::map<long, Rational> principal_part(const WeaklyForm& f) {
  std::map<long, Rational> out;
  const long pole = f.pole_order();
  for (long m = 0; m <= pole; ++m) out[m] = f.series.coefficient(-m);
  return out;
}

ModularForm cuspidal_projection(const WeaklyForm& f) {
  const long o = f.o_k;
  if (f.series.prec() < std::max(0L, o + 1)) {
    throw Error(Errc::precision, "cuspidal projection needs precision >= max(0, o_k + 1)");
  }
  RatSeries out = f.series;
  const auto part = principal_part(f);
  const long pole = f.pole_order();
  std::shared_ptr<const DukeJenkinsBasis> basis;
  for (const auto& [m, c] : part) {
    if (sgn(c) == 0) continue;
    if (m < -o) {
      throw Error(Errc::not_modular, "nonzero a(" + std::to_string(-m) + ") contradicts ord <= o_k for weight " +
                                         std::to_string(f.weight));
    }
    if (!basis) basis = dj_basis(f.weight, f.series.prec(), pole);
    out = series_sub(out, basis->element(m).series.truncated(f.series.prec()) * c);
  }
  if (!out.is_zero()) {
    if (out.valuation() < 1) throw Error(Errc::not_modular, "projection left a non-cuspidal remainder");
    if (out.valuation() > o) {
      throw Error(Errc::not_modular, "nonzero remainder vanishes beyond o_k; input is not modular of weight " +
                                         std::to_string(f.weight));
    }
  }
  return ModularForm::make(f.weight, std::move(out));
}

}  // namespace modform
