#pragma once

// The canonical basis f_{k,m} = q^{-m} + O(q^{o_k+1}) of weakly holomorphic
// modular forms of weight k, and projection onto cusp forms.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "modform/modforms.hpp"

namespace modform {

struct WeaklyForm {
  long weight = 0;
  RatSeries series = RatSeries::zero(Rational(0), 0);
  long o_k = 0;
  long k_prime = 0;

  static WeaklyForm make(long weight, RatSeries series);
  long pole_order() const { return series.valuation() < 0 ? -series.valuation() : 0; }
};

/// Builds and caches f_{k,m} for one weight. Elements are built in order
/// m = -o_k, -o_k + 1, ... from the seed Δ^{o_k} E_{k'} by multiplying by
/// j and clearing the gap exponents -m .. o_k with earlier elements.
/// Thread-safe.
class DukeJenkinsBasis {
 public:
  /// Every element returned is known through exponent `prec`.
  DukeJenkinsBasis(long k, long prec, long max_m);

  long weight() const { return k_; }
  long prec() const { return prec_; }
  long o_k() const { return split_.o; }
  long max_m() const { return max_m_; }

  const WeaklyForm& element(long m) const;

 private:
  long k_;
  long prec_;
  long max_m_;
  WeightSplit split_;
  std::vector<WeaklyForm> elements_;  // index m + o_k
};

/// f_{k,m} to precision prec.
WeaklyForm dj_basis_element(long k, long m, long prec);

/// Shared per-(k, prec, max_m) cache of bases.
std::shared_ptr<const DukeJenkinsBasis> dj_basis(long k, long prec, long max_m);

/// m -> a(-m) for 0 <= m <= pole order; a(0) is always present.
std::map<long, Rational> principal_part(const WeaklyForm& f);

/// f - Σ_{m>=0} a(-m) f_{k,m}, which is a cusp form.
ModularForm cuspidal_projection(const WeaklyForm& f);

/// Alternate construction of f_{k,m} from Δ^{-m'} times holomorphic
/// forms of weight k + 12 m' (no j multiplications). Used to cross-check
/// uniqueness of the basis.
WeaklyForm dj_basis_element_via_delta_power(long k, long m, long prec);

}  // namespace modform
