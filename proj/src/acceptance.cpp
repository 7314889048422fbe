#include "modform/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "modform/asymptotics.hpp"
#include "modform/catalog.hpp"
#include "modform/djbasis.hpp"
#include "modform/eigen.hpp"
#include "modform/quadform.hpp"
#include "modform/ratioset.hpp"

namespace modform {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// q Π_{n<=N} (1 - q^n)^24 through q^N, multiplied out factor by factor.
RatSeries delta_product(long n_max) {
  std::vector<Integer> p(static_cast<size_t>(n_max), 0);
  p[0] = 1;
  for (long n = 1; n < n_max; ++n) {
    for (long i = n_max - 1; i >= n; --i) p[static_cast<size_t>(i)] -= p[static_cast<size_t>(i - n)];
  }
  std::vector<Rational> coeffs(p.begin(), p.end());
  const RatSeries eta = RatSeries(0, std::move(coeffs));
  return series_pow(eta, 24).shifted(1);
}

void criterion_generators(CriterionResult& r) {
  const long n = 500;
  const RatSeries from_eisenstein = delta(n).series;
  const RatSeries from_product = delta_product(n);
  long mismatches = 0;
  for (long i = 1; i <= n; ++i) {
    if (from_eisenstein.coefficient(i) != from_product.coefficient(i)) ++mismatches;
  }
  r.pass = mismatches == 0;
  r.detail = std::to_string(n) + " coefficients compared, " + std::to_string(mismatches) + " mismatches";
}

void criterion_hecke(CriterionResult& r) {
  const RatSeries tau = delta(10000).series;
  long checked = 0, bad = 0;
  for (long m = 1; m <= 100; ++m) {
    for (long k = m; k <= 100; ++k) {
      if (std::gcd(m, k) != 1) continue;
      ++checked;
      if (tau.coefficient(m * k) != tau.coefficient(m) * tau.coefficient(k)) ++bad;
    }
  }
  long bad_sq = 0;
  for (long p : primes_up_to(31)) {
    Integer p11;
    mpz_ui_pow_ui(p11.get_mpz_t(), static_cast<unsigned long>(p), 11);
    const Rational tp = tau.coefficient(p);
    if (tau.coefficient(p * p) != tp * tp - Rational(p11)) ++bad_sq;
  }
  r.pass = bad == 0 && bad_sq == 0;
  r.detail = std::to_string(checked) + " coprime pairs (" + std::to_string(bad) + " failures), p^2 relation for p <= 31 (" +
             std::to_string(bad_sq) + " failures)";
}

void criterion_dj_gap(CriterionResult& r) {
  long forms = 0, bad = 0;
  for (long k : {-12L, 0L, 4L, 12L, 16L, 24L}) {
    const long o = weight_split(k).o;
    for (long m = -o; m <= 10; ++m) {
      const WeaklyForm f = dj_basis_element(k, m, std::max(o, 0L) + 5);
      ++forms;
      bool ok = f.series.valuation() == -m && f.series.coefficient(-m) == 1;
      for (long e = -m + 1; e <= o; ++e) ok = ok && sgn(f.series.coefficient(e)) == 0;
      if (!ok) ++bad;
    }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(forms) + " basis elements, " + std::to_string(bad) + " with a nonzero gap coefficient";
}

void criterion_ck(CriterionResult& r) {
  const Diagnostic base = ck_diagnostic(0, 1, integer_grid(200, 800));
  const Diagnostic doubled = ck_diagnostic(0, 1, integer_grid(200, 1600));
  const double last = doubled.rows.back().value;
  r.pass = base.tail_variation < 0.05 && doubled.tail_variation < base.tail_variation;
  r.detail = "tail variation " + fmt(base.tail_variation) + " on [200,800], " + fmt(doubled.tail_variation) +
             " on [200,1600]; estimate at n=1600 is " + fmt(last, 8);
}

void criterion_dichotomy(CriterionResult& r) {
  const long x = 10000;
  const FormSeries d = resolve_form("delta", x).form;
  const FormSeries d2 = resolve_form("scale:2:delta", x).form;
  const RatioSet same = ratio_set(d, d2, x);
  const Proportionality prop = proportionality_test(d, d2, 0);
  const bool half = prop.constant && prop.constant->is_rational() && prop.constant->to_rational() == Rational(1, 2);

  const FormSeries de4 = resolve_form("delta*e4", x).form;
  const RatioGrowth growth = ratio_growth(d, de4, {100, 1000, 10000});
  bool increasing = true;
  for (size_t i = 1; i < growth.counts.size(); ++i) {
    increasing = increasing && growth.counts[i].second > growth.counts[i - 1].second;
  }
  const size_t de4_size = growth.counts.back().second;

  const FormSeries f24 = resolve_form("eigen:24:0", x).form;
  const FormSeries f24c = resolve_form("eigen:24:0:1", x).form;
  const RatioSet conj = ratio_set(f24, f24c, x);

  r.pass = same.size() == 1 && half && increasing && de4_size >= 500 && conj.size() >= 500;
  std::string counts;
  for (const auto& [xx, c] : growth.counts) counts += (counts.empty() ? "" : ",") + std::to_string(c);
  r.detail = "|R(delta,2delta)|=" + std::to_string(same.size()) + ", c=" +
             (prop.constant ? prop.constant->to_string() : "none") + "; |R(delta,delta*e4)| over 1e2,1e3,1e4 = " + counts +
             "; weight-24 conjugate directions = " + std::to_string(conj.size());
}

void criterion_square(CriterionResult& r) {
  const long x = 1000;
  const FormSeries d = resolve_form("delta", x).form;
  const FormSeries nd = resolve_form("neg:delta", x).form;
  const SquareProbe neg = square_ratio_probe(d, nd, x);
  const SquareProbe same = square_ratio_probe(d, d, x);
  auto only = [](const RatioSet& s, const Rational& v) {
    if (s.size() != 1) return false;
    const auto* q = std::get_if<Rational>(&s.points[0].value());
    return q && *q == v;
  };
  r.pass = neg.squares_agree && only(neg.set, Rational(-1)) && same.squares_agree && only(same.set, Rational(1));
  r.detail = "probe(delta,-delta)=" + std::string(neg.squares_agree ? "true" : "false") + " R=" +
             (neg.set.size() ? neg.set.points[0].to_string() : "{}") + "; probe(delta,delta)=" +
             (same.squares_agree ? "true" : "false") + " R=" + (same.set.size() ? same.set.points[0].to_string() : "{}");
}

// r(n) for E8 in its ambient model: w = 2v with all w_i of one parity,
// Σ w_i ≡ 0 (mod 4), and Σ w_i^2 = 8n.
Integer e8_box_count(long n) {
  const long target = 8 * n;
  const long b = static_cast<long>(std::sqrt(static_cast<double>(target)));
  long count = 0;
  for (long parity = 0; parity < 2; ++parity) {
    std::vector<long> vals;
    for (long v = -b; v <= b; ++v) {
      if (std::abs(v) % 2 == parity) vals.push_back(v);
    }
    std::vector<size_t> idx(8, 0);
    for (;;) {
      long sum = 0, sq = 0;
      for (size_t i = 0; i < 8; ++i) {
        sum += vals[idx[i]];
        sq += vals[idx[i]] * vals[idx[i]];
      }
      if (sq == target && ((sum % 4) + 4) % 4 == 0) ++count;
      size_t i = 0;
      while (i < 8 && ++idx[i] == vals.size()) idx[i++] = 0;
      if (i == 8) break;
    }
  }
  return Integer(count);
}

void criterion_theta(CriterionResult& r) {
  const ThetaSeries e8 = theta_series(GramMatrix::e8(), 100);
  const bool e8_is_e4 = e8.series == eisenstein(4, 100).series;
  const long x = 1000;
  const ThetaSeries t1 = theta_series(GramMatrix::e8_e8(), x);
  const ThetaSeries t2 = theta_series(GramMatrix::d16_plus(), x);
  const bool equal100 = t1.series.truncated(100) == t2.series.truncated(100);
  const RatioSet rs = ratio_set(FormSeries::rational(t1.series, 8), FormSeries::rational(t2.series, 8), x);
  const bool one_one = rs.size() == 1 && rs.points[0].to_string() == "[1:1]";
  const Integer r1 = rep_count(GramMatrix::e8(), 1), r2 = rep_count(GramMatrix::e8(), 2);
  const Integer b1 = e8_box_count(1), b2 = e8_box_count(2);
  r.pass = e8_is_e4 && equal100 && one_one && r1 == 240 && r2 == 2160 && b1 == r1 && b2 == r2;
  r.detail = std::string("theta(E8)=E4: ") + (e8_is_e4 ? "yes" : "no") + "; theta(E8+E8)=theta(D16+): " +
             (equal100 ? "yes" : "no") + "; R=" + (rs.size() ? rs.points[0].to_string() : "{}") + " (size " +
             std::to_string(rs.size()) + "); r(1)=" + r1.get_str() + " box " + b1.get_str() + ", r(2)=" + r2.get_str() +
             " box " + b2.get_str();
  r.notes.push_back("enumerated through n = " + std::to_string(e8.enumerated_through) + " (E8), " +
                    std::to_string(t2.enumerated_through) + " (D16+); higher terms from M_k");
}

void criterion_growth(CriterionResult& r) {
  const long x = 1000;
  const RatSeries f = dj_basis_element(0, 1, x).series;
  const RatSeries g = delta(x).series;
  long violations = 0, compared = 0;
  std::string first;
  Real prev_ratio = 0, prev_norm = 0;
  long norm_violations = 0;
  bool have = false;
  Real half11 = Real(11) / 2;
  for (long p : primes_up_to(x)) {
    if (p <= 50) continue;
    const Real lr = (LogMagnitude::of(f.coefficient(p)) / LogMagnitude::of(g.coefficient(p))).log_abs;
    const Real ln = LogMagnitude::of(f.coefficient(p)).log_abs - half11 * boost::multiprecision::log(Real(p));
    if (have) {
      ++compared;
      if (!(lr > prev_ratio)) {
        if (violations++ == 0) first = "p=" + std::to_string(p);
      }
      if (!(ln > prev_norm)) ++norm_violations;
    }
    prev_ratio = lr;
    prev_norm = ln;
    have = true;
  }
  r.pass = violations == 0;
  r.detail = std::to_string(compared) + " consecutive prime pairs, " + std::to_string(violations) + " decreases" +
             (violations ? " (first at " + first + ")" : "");
  r.notes.push_back("|a_f(p)|/p^(11/2), which is at most 2|a_f(p)|/|a_g(p)| since |tau(p)| <= 2p^(11/2): " +
                    std::to_string(norm_violations) + " decreases");
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

WeaklyForm random_weakly(std::mt19937& rng, long k, long prec) {
  const long o = weight_split(k).o;
  RatSeries acc = RatSeries::zero(Rational(0), prec);
  for (long m = -o; m <= 3; ++m) acc = series_add(acc, dj_basis_element(k, m, prec).series * random_rational(rng));
  return WeaklyForm::make(k, acc);
}

void criterion_projection(CriterionResult& r) {
  std::mt19937 rng(20240611);
  const long prec = 30;
  const long weights[] = {12, 16, 24};
  long bad = 0;
  for (int t = 0; t < 20; ++t) {
    const long k = weights[t % 3];
    const WeaklyForm f = random_weakly(rng, k, prec);
    const WeaklyForm g = random_weakly(rng, k, prec);
    const Rational a = random_rational(rng), b = random_rational(rng);
    const ModularForm pf = cuspidal_projection(f);
    const ModularForm pg = cuspidal_projection(g);
    const ModularForm ppf = cuspidal_projection(WeaklyForm::make(k, pf.series));
    const ModularForm pfg = cuspidal_projection(WeaklyForm::make(k, series_add(f.series * a, g.series * b)));
    const bool idempotent = ppf.series == pf.series;
    const bool linear = pfg.series == series_add(pf.series * a, pg.series * b);
    if (!idempotent || !linear) ++bad;
  }
  const ModularForm e12 = eisenstein(12, prec);
  const ModularForm p12 = cuspidal_projection(WeaklyForm::make(12, e12.series));
  const bool in_s12 = p12.series.valuation() >= 1 && p12.series == delta(prec).series * Rational(65520, 691);
  r.pass = bad == 0 && in_s12;
  r.detail = "20 random combinations, " + std::to_string(bad) + " failures; proj(E12) = (65520/691) delta: " +
             (in_s12 ? "yes" : "no");
}

void criterion_hecke_bound(CriterionResult& r) {
  const long n_max = 2000;
  const RatSeries tau = delta(n_max).series;
  // |tau(n)| / n^6 compared exactly through squares.
  Rational record = 1;
  long broken = 0;
  double max_ratio = 0;
  long arg_max = 1;
  for (long n = 1; n <= n_max; ++n) {
    Integer n6;
    mpz_ui_pow_ui(n6.get_mpz_t(), static_cast<unsigned long>(n), 6);
    const Rational ratio = abs(tau.coefficient(n)) / Rational(n6);
    if (ratio.get_d() > max_ratio) {
      max_ratio = ratio.get_d();
      arg_max = n;
    }
    if (n > 1 && ratio > record) ++broken;
  }
  r.pass = max_ratio < 10 && broken == 0;
  r.detail = "max |tau(n)|/n^6 = " + fmt(max_ratio) + " at n=" + std::to_string(arg_max) + "; records after n=1: " +
             std::to_string(broken);
}

struct Entry {
  const char* title;
  void (*run)(CriterionResult&);
  double limit_seconds;  // 0 when no runtime bound is stated
};

const Entry kEntries[kCriterionCount] = {
    {"generator consistency: delta = q prod (1-q^n)^24 to 500 terms", criterion_generators, 10},
    {"Hecke structure: tau multiplicative and tau(p^2) = tau(p)^2 - p^11", criterion_hecke, 0},
    {"Duke-Jenkins gap property", criterion_dj_gap, 0},
    {"C_k diagnostic for (k,m) = (0,1)", criterion_ck, 60},
    {"ratio-set dichotomy on the catalog", criterion_dichotomy, 300},
    {"square-ratio example", criterion_square, 0},
    {"theta series corollary check", criterion_theta, 120},
    {"growth separation f_{0,1} vs delta over 50 < p <= 1000", criterion_growth, 0},
    {"cuspidal projection idempotent and linear", criterion_projection, 0},
    {"Hecke bound for delta to n = 2000", criterion_hecke_bound, 0},
};

}  // namespace

std::string criterion_title(int id) {
  if (id < 1 || id > kCriterionCount) throw Error(Errc::invalid_argument, "no criterion " + std::to_string(id));
  return kEntries[id - 1].title;
}

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const Entry& e = kEntries[id - 1];
  const auto start = Clock::now();
  try {
    e.run(r);
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (e.limit_seconds > 0 && r.seconds >= e.limit_seconds) {
    r.pass = false;
    r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(e.limit_seconds) + " s";
  }
  return r;
}

bool run_acceptance(const std::vector<int>& ids, std::ostream& out) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  }
  bool all = true;
  for (int id : todo) {
    const CriterionResult r = run_criterion(id);
    all = all && r.pass;
    out << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.title << "  [" << std::fixed
        << std::setprecision(2) << r.seconds << " s]  " << r.detail << "\n";
    out.unsetf(std::ios::floatfield);
    for (const auto& note : r.notes) out << "          note: " << note << "\n";
    out.flush();
  }
  return all;
}

}  // namespace modform
