#pragma once

// Ratio sets R_X(f, g) = {[a_f(p) : a_g(p)] : p <= X prime}, their growth,
// and exact proportionality detection.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modform/quadform.hpp"

namespace modform {

/// A q-expansion with rational or number-field coefficients, its weight,
/// and the embedding used when it has to be compared across fields.
struct FormSeries {
  std::variant<RatSeries, NfSeries> series = RatSeries::zero(Rational(0), 0);
  long weight = 0;
  int embedding = 0;

  static FormSeries rational(RatSeries s, long weight);
  static FormSeries in_field(NfSeries s, long weight, int embedding = 0);

  bool is_rational() const { return std::holds_alternative<RatSeries>(series); }
  FieldPtr field() const;
  long prec() const;
  long valuation() const;
  long pole_order() const { return valuation() < 0 ? -valuation() : 0; }

  NfElement nf_coefficient(long n) const;
  std::string coefficient_string(long n) const;
  /// σ(a(n)) for the chosen embedding σ.
  Real real_coefficient(long n) const;
};

/// [r : 1] with r exact (Rational or field element) or a high-precision
/// real, or the point at infinity [1 : 0].
class ProjectivePoint {
 public:
  struct Infinity {
    friend bool operator==(Infinity, Infinity) { return true; }
  };
  using Value = std::variant<Infinity, Rational, NfElement, Real>;

  static ProjectivePoint infinity() { return ProjectivePoint(Infinity{}); }
  static ProjectivePoint of(Rational r) { return ProjectivePoint(std::move(r)); }
  /// Stored as a Rational whenever the element is rational.
  static ProjectivePoint of(const NfElement& r);
  static ProjectivePoint of(Real r) { return ProjectivePoint(std::move(r)); }

  const Value& value() const { return v_; }
  bool is_infinity() const { return std::holds_alternative<Infinity>(v_); }
  bool is_exact() const { return !std::holds_alternative<Real>(v_); }

  /// "[a:b]" for rationals with the sign carried by b, "[x:1]" otherwise.
  std::string to_string() const;

 private:
  explicit ProjectivePoint(Value v) : v_(std::move(v)) {}
  Value v_;
};

struct RatioLogEntry {
  long p = 0;
  std::string a_f;
  std::string a_g;
  long point = -1;  // index into RatioSet::points, -1 when skipped
};

struct RatioSet {
  long xmax = 0;
  std::vector<ProjectivePoint> points;  // in order of first occurrence
  std::vector<long> skipped;            // primes with a_f(p) = a_g(p) = 0
  std::vector<RatioLogEntry> log;       // one entry per prime <= xmax
  /// Pairs of real points closer than the separation bound; kept distinct.
  std::vector<std::pair<long, long>> unresolved;
  std::vector<std::string> notes;

  size_t size() const { return points.size(); }
  nlohmann::json summary_json() const;
};

/// Relative separation below which two real ratio values are unresolved.
inline constexpr int kSeparationBits = 200;

RatioSet ratio_set(const FormSeries& f, const FormSeries& g, long xmax);

struct RatioGrowth {
  std::vector<std::pair<long, size_t>> counts;
  /// "bounded" when the count is constant over the last half of the grid,
  /// else "growing". A heuristic report only.
  std::string verdict;
};

RatioGrowth ratio_growth(const FormSeries& f, const FormSeries& g, std::vector<long> grid);

struct Proportionality {
  std::optional<NfElement> constant;  // f = c g
  std::string reason;                 // why no constant exists
  long compared_through = 0;
};

/// Exact test of f = c g for weakly holomorphic forms of the same weight
/// with poles of order <= pole_order. Different weights are never
/// proportional. Needs precision >= o_k + pole_order + dim S_k + 2.
Proportionality proportionality_test(const FormSeries& f, const FormSeries& g, long pole_order);
long proportionality_precision(long k, long pole_order);

struct SquareProbe {
  bool squares_agree = false;
  RatioSet set;
};

/// True iff a_f(p)^2 = a_g(p)^2 for all primes p <= xmax.
SquareProbe square_ratio_probe(const FormSeries& f, const FormSeries& g, long xmax);

/// R(Q1, Q2) over primes up to xmax from the two theta series.
RatioSet ratio_set_quadforms(const GramMatrix& q1, const GramMatrix& q2, long xmax,
                             std::uint64_t point_budget = kDefaultPointBudget);

}  // namespace modform
