#pragma once

// Numerical companions to the coefficient asymptotics of the weakly
// holomorphic basis: Kloosterman-type sums, Bessel I_n, the main-term
// growth in log space, and stabilization diagnostics for the unknown
// constants C_k and D_k.

#include <complex>
#include <vector>

#include "modform/exactnum.hpp"
#include "modform/qseries.hpp"

namespace modform {

/// sign · exp(log_abs). sign == 0 means exactly zero.
struct LogMagnitude {
  int sign = 0;
  Real log_abs = 0;

  static LogMagnitude of(const Integer& z);
  static LogMagnitude of(const Rational& q);
  static LogMagnitude of(const Real& x);

  /// Rounds to double; overflows to ±inf for huge magnitudes.
  double to_double() const;
  Real to_real() const;

  friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
};

/// Σ_{0 <= d < c, gcd(d,c) = 1} exp(2πi (n d - m a) / c) with a d ≡ 1 (mod c).
std::complex<double> kloosterman_A(long m, long c, long n);

/// Modified Bessel function of the first kind by its power series.
/// Rejects z above kBesselDirectLimit; use bessel_I_log there.
Real bessel_I(long order, const Real& z);
LogMagnitude bessel_I_log(long order, const Real& z);
inline constexpr double kBesselDirectLimit = 1.0e5;

/// (n/m)^{(k-1)/2} exp(4π√(mn)) (mn)^{-1/4} in log space.
LogMagnitude main_term(long k, long m, long n);

struct Estimate {
  long n = 0;
  double value = 0;            // NaN when skipped
  double relative_change = 0;  // against the previous unskipped row
  bool skipped = false;        // coefficient was zero
};

struct Diagnostic {
  std::vector<Estimate> rows;
  /// (max - min) / |mean| over the last half of the unskipped rows.
  double tail_variation = 0;
};

double tail_relative_variation(const std::vector<Estimate>& rows);

/// a_{k,m}(n) / main_term(k, m, n) for n in the grid, with f = f_{k,m}.
Diagnostic ck_diagnostic(long k, long m, const RatSeries& f, const std::vector<long>& n_grid);
Diagnostic ck_diagnostic(long k, long m, const std::vector<long>& n_grid);

/// a_{k,0}(n) / n^{k-1} for n in the grid, k >= 4.
Diagnostic dk_diagnostic(long k, const std::vector<long>& n_grid);

std::vector<long> integer_grid(long from, long to, long step = 1);

}  // namespace modform
