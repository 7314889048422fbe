#pragma once

// Holomorphic modular forms of level one: Eisenstein series, Δ, j,
// dimensions, the Miller basis and Hecke operators T_p.

#include <vector>

#include "modform/exactnum.hpp"
#include "modform/qseries.hpp"

namespace modform {

/// k = 12·o + k' with k' in {0, 4, 6, 8, 10, 14}.
struct WeightSplit {
  long o;
  long k_prime;
};

WeightSplit weight_split(long k);

struct ModularForm {
  long weight = 0;
  RatSeries series = RatSeries::zero(Rational(0), 0);
  bool cuspidal = false;

  /// Checks weight parity, holomorphy at the cusp and the cuspidal flag.
  static ModularForm make(long weight, RatSeries series);
};

std::vector<long> primes_up_to(long x);
bool is_prime(long n);

/// B_n with B_1 = -1/2.
Rational bernoulli(long n);

/// σ_power(n) for 0 <= n <= n_max (entry 0 is unused and zero).
std::vector<Integer> divisor_power_sums(long power, long n_max);

/// E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n, k >= 4 even.
ModularForm eisenstein(long k, long prec);

/// (E_4^3 - E_6^2) / 1728.
ModularForm delta(long prec);

/// E_4^3 / Δ = q^{-1} + 744 + ...
RatSeries j_invariant(long prec);

long dim_Mk(long k);
long dim_Sk(long k);

/// g_0..g_{d-1}, d = dim M_k, with g_i = q^i + O(q^d).
std::vector<ModularForm> miller_basis(long k, long prec);

/// Δ^c E_4^a E_6^b with 4a + 6b + 12c = k and b in {0, 1}.
RatSeries miller_monomial(long k, long c, long prec);

/// Coefficientwise T_p on a series of weight k with valuation >= 0:
/// (T_p f)(n) = a(pn) + p^{k-1} a(n/p). Output precision is floor(prec/p).
template <class C>
LaurentSeries<C> hecke_tp_series(const LaurentSeries<C>& f, long k, long p) {
  if (f.valuation() < 0) throw Error(Errc::domain, "T_p is applied to holomorphic series only");
  if (p < 2 || !is_prime(p)) throw Error(Errc::invalid_argument, "T_p needs a prime p");
  const long out_prec = f.prec() / p;
  if (out_prec < 0) throw Error(Errc::precision, "insufficient precision for T_p");
  Integer pk1;
  mpz_ui_pow_ui(pk1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
  const Rational scale(pk1);
  std::vector<C> out;
  out.reserve(static_cast<size_t>(out_prec + 1));
  for (long n = 0; n <= out_prec; ++n) {
    C c = f.coefficient(p * n);
    if (n % p == 0) c += f.coefficient(n / p) * scale;
    out.push_back(std::move(c));
  }
  return LaurentSeries<C>(0, std::move(out));
}

/// T_p f; fails unless f.prec >= p·desired_prec (when desired_prec >= 0).
ModularForm hecke_Tp(const ModularForm& f, long p, long desired_prec = -1);

/// max over 1 <= n <= N of |a(n)| / n^{k/2}.
Real hecke_bound_report(const ModularForm& f, long n_max);
/// Same for number-field coefficients, maximised over all real embeddings.
Real hecke_bound_report(const NfSeries& f, long weight, long n_max);

/// ord_∞(f) <= o_k. Throws for a series that is zero to its precision.
bool valence_check(const RatSeries& f, long k);

}  // namespace modform
