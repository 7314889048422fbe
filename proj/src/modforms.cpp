#include "modform/modforms.hpp"

#include <map>
#include <optional>
#include <mutex>

namespace modform {

WeightSplit weight_split(long k) {
  if (k % 2 != 0) throw Error(Errc::domain, "odd weight " + std::to_string(k));
  long r = ((k % 12) + 12) % 12;
  long k_prime = (r == 2) ? 14 : r;
  return {(k - k_prime) / 12, k_prime};
}

ModularForm ModularForm::make(long weight, RatSeries series) {
  if (weight % 2 != 0) throw Error(Errc::domain, "modular forms of odd weight are not supported");
  if (series.valuation() < 0) {
    throw Error(Errc::domain, "holomorphic modular form has a pole at the cusp");
  }
  ModularForm f;
  f.weight = weight;
  f.cuspidal = series.valuation() >= 1;
  f.series = std::move(series);
  return f;
}

std::vector<long> primes_up_to(long x) {
  std::vector<long> out;
  if (x < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(x + 1), false);
  for (long i = 2; i <= x; ++i) {
    if (composite[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= x; j += i) composite[static_cast<size_t>(j)] = true;
  }
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Rational bernoulli(long n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  if (n < 0) throw Error(Errc::invalid_argument, "negative Bernoulli index");
  std::lock_guard lock(mu);
  // Σ_{j=0}^{m} C(m+1, j) B_j = 0
  for (long m = static_cast<long>(table.size()); m <= n; ++m) {
    Rational acc = 0;
    Integer binom = 1;  // C(m+1, j)
    for (long j = 0; j < m; ++j) {
      acc += Rational(binom) * table[static_cast<size_t>(j)];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    table.push_back(Rational(-acc / (m + 1)));
  }
  return table[static_cast<size_t>(n)];
}

std::vector<Integer> divisor_power_sums(long power, long n_max) {
  std::vector<Integer> sigma(static_cast<size_t>(n_max + 1), Integer(0));
  Integer dp;
  for (long d = 1; d <= n_max; ++d) {
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(power));
    for (long m = d; m <= n_max; m += d) sigma[static_cast<size_t>(m)] += dp;
  }
  return sigma;
}

ModularForm eisenstein(long k, long prec) {
  if (k < 4 || k % 2 != 0) {
    throw Error(Errc::domain, "Eisenstein series need even weight >= 4, got " + std::to_string(k));
  }
  if (prec < 0) throw Error(Errc::precision, "negative precision");
  const Rational factor = Rational(-2 * k) / bernoulli(k);
  const auto sigma = divisor_power_sums(k - 1, prec);
  std::vector<Rational> c(static_cast<size_t>(prec + 1));
  c[0] = 1;
  for (long n = 1; n <= prec; ++n) c[static_cast<size_t>(n)] = factor * sigma[static_cast<size_t>(n)];
  return ModularForm::make(k, RatSeries(0, std::move(c)));
}

namespace {

// E_4, E_6 and Δ at the largest precision requested so far.
class GeneratorCache {
 public:
  struct Entry {
    RatSeries e4, e6, e4_cubed, delta;
  };

  static GeneratorCache& instance() {
    static GeneratorCache cache;
    return cache;
  }

  Entry get(long prec) {
    std::lock_guard lock(mu_);
    if (!entry_ || entry_->delta.prec() < prec) {
      const long p = std::max(prec, entry_ ? entry_->delta.prec() + entry_->delta.prec() / 4 : prec);
      RatSeries e4 = eisenstein(4, p).series;
      RatSeries e6 = eisenstein(6, p).series;
      RatSeries e4_cubed = series_mul(series_mul(e4, e4), e4);
      RatSeries diff = series_sub(e4_cubed, series_mul(e6, e6));
      RatSeries d = diff * Rational(1, 1728);
      entry_ = Entry{std::move(e4), std::move(e6), std::move(e4_cubed), std::move(d)};
    }
    return Entry{entry_->e4.truncated(prec), entry_->e6.truncated(prec), entry_->e4_cubed.truncated(prec),
                 entry_->delta.truncated(prec)};
  }

 private:
  std::mutex mu_;
  std::optional<Entry> entry_;
};

}  // namespace

ModularForm delta(long prec) {
  if (prec < 1) throw Error(Errc::precision, "Δ needs precision >= 1");
  return ModularForm::make(12, GeneratorCache::instance().get(prec).delta);
}

RatSeries j_invariant(long prec) {
  if (prec < -1) throw Error(Errc::precision, "j needs precision >= -1");
  // Δ = q(1 - 24q + ...): inverting keeps the relative length, so Δ to
  // prec + 2 yields j to prec.
  auto g = GeneratorCache::instance().get(prec + 2);
  return series_mul(g.e4_cubed, series_inv(g.delta));
}

long dim_Mk(long k) {
  if (k % 2 != 0) throw Error(Errc::domain, "odd weight " + std::to_string(k));
  if (k < 0) return 0;
  const auto [o, kp] = weight_split(k);
  (void)kp;
  return o < 0 ? 0 : o + 1;
}

long dim_Sk(long k) {
  const long d = dim_Mk(k);
  if (k < 4) return 0;
  return d > 0 ? d - 1 : 0;
}

RatSeries miller_monomial(long k, long c, long prec) {
  const long rest = k - 12 * c;
  if (rest < 0 || rest == 2 || rest % 2 != 0) {
    throw Error(Errc::domain, "no monomial Δ^c E4^a E6^b of weight " + std::to_string(k));
  }
  const long b = (rest % 4 == 0) ? 0 : 1;
  const long a = (rest - 6 * b) / 4;
  const auto g = GeneratorCache::instance().get(prec);
  RatSeries out = RatSeries::constant(Rational(1), prec);
  if (a > 0) out = series_mul(out, series_pow(g.e4, a));
  if (b > 0) out = series_mul(out, g.e6);
  if (c > 0) out = series_mul(out, series_pow(g.delta, c)).truncated(prec);
  return out;
}

std::vector<ModularForm> miller_basis(long k, long prec) {
  const long d = dim_Mk(k);
  std::vector<ModularForm> basis;
  if (d == 0) return basis;
  if (prec < d - 1) throw Error(Errc::precision, "Miller basis needs precision >= dim M_k - 1");
  std::vector<RatSeries> rows;
  for (long c = 0; c < d; ++c) rows.push_back(miller_monomial(k, c, prec));
  // Rows are upper triangular with unit diagonal; clear above the diagonal.
  for (long i = d - 2; i >= 0; --i) {
    for (long j = i + 1; j < d; ++j) {
      const Rational c = rows[static_cast<size_t>(i)].coefficient(j);
      if (sgn(c) != 0) {
        rows[static_cast<size_t>(i)] = series_sub(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)] * c);
      }
    }
  }
  for (auto& r : rows) basis.push_back(ModularForm::make(k, std::move(r)));
  return basis;
}

ModularForm hecke_Tp(const ModularForm& f, long p, long desired_prec) {
  if (desired_prec >= 0 && f.series.prec() < p * desired_prec) {
    throw Error(Errc::precision, "T_" + std::to_string(p) + " to precision " + std::to_string(desired_prec) +
                                     " needs input precision " + std::to_string(p * desired_prec));
  }
  return ModularForm::make(f.weight, hecke_tp_series(f.series, f.weight, p));
}

namespace {

Real bound_ratio(const Real& abs_value, long n, long weight) {
  using boost::multiprecision::pow;
  return abs_value / pow(Real(n), Real(weight) / 2);
}

}  // namespace

Real hecke_bound_report(const ModularForm& f, long n_max) {
  if (!f.cuspidal) throw Error(Errc::domain, "Hecke bound report needs a cusp form");
  if (f.series.prec() < n_max) throw Error(Errc::precision, "series precision below the requested N");
  Real best = 0;
  for (long n = 1; n <= n_max; ++n) {
    Real r = bound_ratio(to_real(Rational(abs(f.series.coefficient(n)))), n, f.weight);
    if (r > best) best = r;
  }
  return best;
}

Real hecke_bound_report(const NfSeries& f, long weight, long n_max) {
  if (!f.is_zero() && f.valuation() < 1) throw Error(Errc::domain, "Hecke bound report needs a cusp form");
  if (f.prec() < n_max) throw Error(Errc::precision, "series precision below the requested N");
  Real best = 0;
  const int embeddings = f.leading().field()->embedding_count();
  for (long n = 1; n <= n_max; ++n) {
    const NfElement c = f.coefficient(n);
    for (int s = 0; s < embeddings; ++s) {
      Real r = bound_ratio(boost::multiprecision::abs(c.embed(s)), n, weight);
      if (r > best) best = r;
    }
  }
  return best;
}

bool valence_check(const RatSeries& f, long k) {
  if (f.is_zero()) throw Error(Errc::domain, "order at infinity of the zero series is undefined");
  return f.valuation() <= weight_split(k).o;
}

}  // namespace modform
