#include "modform/asymptotics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "modform/djbasis.hpp"

namespace modform {

namespace mp = boost::multiprecision;

LogMagnitude LogMagnitude::of(const Integer& z) {
  LogMagnitude out;
  out.sign = sgn(z);
  if (out.sign == 0) return out;
  Integer a = abs(z);
  // mpfr carries the binary exponent exactly, so thousands of bits are fine.
  out.log_abs = mp::log(modform::to_real(a));
  return out;
}

LogMagnitude LogMagnitude::of(const Rational& q) {
  LogMagnitude out;
  out.sign = sgn(q);
  if (out.sign == 0) return out;
  out.log_abs = mp::log(modform::to_real(Integer(abs(q.get_num())))) -
                mp::log(modform::to_real(Integer(q.get_den())));
  return out;
}

LogMagnitude LogMagnitude::of(const Real& x) {
  LogMagnitude out;
  out.sign = x > 0 ? 1 : (x < 0 ? -1 : 0);
  if (out.sign != 0) out.log_abs = mp::log(mp::abs(x));
  return out;
}

double LogMagnitude::to_double() const {
  if (sign == 0) return 0.0;
  const double l = log_abs.convert_to<double>();
  return sign * std::exp(l);
}

Real LogMagnitude::to_real() const {
  if (sign == 0) return Real(0);
  return sign * mp::exp(log_abs);
}

LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
  LogMagnitude out;
  out.sign = a.sign * b.sign;
  if (out.sign != 0) out.log_abs = a.log_abs + b.log_abs;
  return out;
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) {
  if (b.sign == 0) throw Error(Errc::division_by_zero, "log-magnitude division by zero");
  LogMagnitude out;
  out.sign = a.sign * b.sign;
  if (out.sign != 0) out.log_abs = a.log_abs - b.log_abs;
  return out;
}

std::complex<double> kloosterman_A(long m, long c, long n) {
  if (m < 1 || n < 1 || c < 1) throw Error(Errc::invalid_argument, "kloosterman_A needs m, n, c >= 1");
  std::complex<double> sum = 0;
  for (long d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    long a = 0;
    if (c > 1) {
      for (a = 1; a < c; ++a) {
        if ((a * d) % c == 1) break;
      }
    }
    long r = (n * d - m * a) % c;
    if (r < 0) r += c;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(c);
    sum += std::polar(1.0, angle);
  }
  return sum;
}

LogMagnitude bessel_I_log(long order, const Real& z) {
  if (order < 0) throw Error(Errc::invalid_argument, "bessel_I needs order >= 0");
  if (z < 0) throw Error(Errc::domain, "bessel_I needs z >= 0");
  if (z == 0) {
    LogMagnitude out;
    out.sign = order == 0 ? 1 : 0;
    return out;
  }
  // log of term t: (n + 2t) log(z/2) - log t! - log (n+t)!
  const Real lh = mp::log(z / 2);
  auto log_term = [&](long t) {
    return Real(order + 2 * t) * lh - mp::lgamma(Real(t + 1)) - mp::lgamma(Real(order + t + 1));
  };
  // Terms peak near t ≈ z/2; sum relative to the peak.
  long peak = std::max(0L, static_cast<long>((z / 2).convert_to<double>()));
  const Real lmax = log_term(peak);
  const Real cutoff = Real(-64) * mp::log(Real(2)) - 10;
  Real sum = 0;
  for (long t = peak; t >= 0; --t) {
    const Real rel = log_term(t) - lmax;
    sum += mp::exp(rel);
    if (rel < cutoff) break;
  }
  for (long t = peak + 1;; ++t) {
    const Real rel = log_term(t) - lmax;
    sum += mp::exp(rel);
    if (rel < cutoff) break;
  }
  LogMagnitude out;
  out.sign = 1;
  out.log_abs = lmax + mp::log(sum);
  return out;
}

Real bessel_I(long order, const Real& z) {
  if (z > kBesselDirectLimit) {
    throw Error(Errc::domain, "bessel_I argument beyond the direct-evaluation limit; use bessel_I_log");
  }
  return bessel_I_log(order, z).to_real();
}

LogMagnitude main_term(long k, long m, long n) {
  if (m < 1 || n < 1) throw Error(Errc::invalid_argument, "main_term needs m, n >= 1");
  const Real pi = mp::acos(Real(-1));
  const Real mn = Real(m) * Real(n);
  LogMagnitude out;
  out.sign = 1;
  out.log_abs = Real(k - 1) / 2 * mp::log(Real(n) / Real(m)) + 4 * pi * mp::sqrt(mn) - mp::log(mn) / 4;
  return out;
}

double tail_relative_variation(const std::vector<Estimate>& rows) {
  std::vector<double> vals;
  for (const auto& r : rows) {
    if (!r.skipped) vals.push_back(r.value);
  }
  if (vals.size() < 2) return 0.0;
  const size_t start = vals.size() / 2;
  const auto first = vals.begin() + static_cast<long>(start);
  const auto [lo, hi] = std::minmax_element(first, vals.end());
  const double mean = std::accumulate(first, vals.end(), 0.0) / static_cast<double>(vals.end() - first);
  if (mean == 0.0) return std::numeric_limits<double>::infinity();
  return (*hi - *lo) / std::abs(mean);
}

namespace {

void fill_relative_changes(Diagnostic& d) {
  const Estimate* prev = nullptr;
  for (auto& r : d.rows) {
    if (r.skipped) continue;
    r.relative_change = prev && prev->value != 0.0 ? std::abs(r.value - prev->value) / std::abs(prev->value) : 0.0;
    prev = &r;
  }
  d.tail_variation = tail_relative_variation(d.rows);
}

}  // namespace

Diagnostic ck_diagnostic(long k, long m, const RatSeries& f, const std::vector<long>& n_grid) {
  if (m < 1) throw Error(Errc::invalid_argument, "C_k diagnostic needs a pole (m >= 1)");
  Diagnostic d;
  for (long n : n_grid) {
    Estimate e;
    e.n = n;
    const Rational a = f.coefficient(n);
    if (sgn(a) == 0) {
      e.skipped = true;
      e.value = std::numeric_limits<double>::quiet_NaN();
    } else {
      e.value = (LogMagnitude::of(a) / main_term(k, m, n)).to_double();
    }
    d.rows.push_back(e);
  }
  fill_relative_changes(d);
  return d;
}

Diagnostic ck_diagnostic(long k, long m, const std::vector<long>& n_grid) {
  if (n_grid.empty()) return {};
  const long n_max = *std::max_element(n_grid.begin(), n_grid.end());
  return ck_diagnostic(k, m, dj_basis_element(k, m, n_max).series, n_grid);
}

Diagnostic dk_diagnostic(long k, const std::vector<long>& n_grid) {
  if (k < 4 || k % 2 != 0) throw Error(Errc::domain, "D_k diagnostic needs even k >= 4");
  Diagnostic d;
  if (n_grid.empty()) return d;
  const long n_max = *std::max_element(n_grid.begin(), n_grid.end());
  const RatSeries f = dj_basis_element(k, 0, n_max).series;
  for (long n : n_grid) {
    Estimate e;
    e.n = n;
    const Rational a = f.coefficient(n);
    if (sgn(a) == 0) {
      e.skipped = true;
      e.value = std::numeric_limits<double>::quiet_NaN();
    } else {
      Integer nk;
      mpz_ui_pow_ui(nk.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k - 1));
      const Rational ratio = a / Rational(nk);
      e.value = ratio.get_d();
    }
    d.rows.push_back(e);
  }
  fill_relative_changes(d);
  return d;
}

std::vector<long> integer_grid(long from, long to, long step) {
  if (step < 1) throw Error(Errc::invalid_argument, "grid step must be positive");
  std::vector<long> out;
  for (long n = from; n <= to; n += step) out.push_back(n);
  return out;
}

}  // namespace modform
