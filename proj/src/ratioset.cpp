#include "modform/ratioset.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace modform {

namespace mp = boost::multiprecision;

FormSeries FormSeries::rational(RatSeries s, long weight) {
  FormSeries f;
  f.series = std::move(s);
  f.weight = weight;
  return f;
}

FormSeries FormSeries::in_field(NfSeries s, long weight, int embedding) {
  FormSeries f;
  const int n = s.leading().field()->embedding_count();
  if (embedding < 0 || embedding >= n) {
    throw Error(Errc::invalid_argument, "embedding index " + std::to_string(embedding) + " out of range");
  }
  f.series = std::move(s);
  f.weight = weight;
  f.embedding = embedding;
  return f;
}

FieldPtr FormSeries::field() const {
  if (const auto* s = std::get_if<NfSeries>(&series)) return s->leading().field();
  return NumberField::rationals();
}

long FormSeries::prec() const {
  return std::visit([](const auto& s) { return s.prec(); }, series);
}

long FormSeries::valuation() const {
  return std::visit([](const auto& s) { return s.valuation(); }, series);
}

NfElement FormSeries::nf_coefficient(long n) const {
  if (const auto* s = std::get_if<NfSeries>(&series)) return s->coefficient(n);
  return NfElement(NumberField::rationals(), std::get<RatSeries>(series).coefficient(n));
}

std::string FormSeries::coefficient_string(long n) const {
  if (const auto* s = std::get_if<RatSeries>(&series)) return to_string(s->coefficient(n));
  return std::get<NfSeries>(series).coefficient(n).to_string();
}

Real FormSeries::real_coefficient(long n) const {
  if (const auto* s = std::get_if<RatSeries>(&series)) return to_real(s->coefficient(n));
  return std::get<NfSeries>(series).coefficient(n).embed(embedding);
}

ProjectivePoint ProjectivePoint::of(const NfElement& r) {
  if (r.is_rational()) return ProjectivePoint(r.to_rational());
  return ProjectivePoint(r);
}

std::string ProjectivePoint::to_string() const {
  struct Visitor {
    std::string operator()(Infinity) const { return "[1:0]"; }
    std::string operator()(const Rational& r) const {
      if (sgn(r) == 0) return "[0:1]";
      Integer num = r.get_num(), den = r.get_den();
      if (sgn(num) < 0) {
        num = -num;
        den = -den;
      }
      return "[" + num.get_str() + ":" + den.get_str() + "]";
    }
    std::string operator()(const NfElement& r) const { return "[" + r.to_string() + ":1]"; }
    std::string operator()(const Real& r) const {
      std::ostringstream os;
      os << std::setprecision(30) << r;
      return "[" + os.str() + ":1]";
    }
  };
  return std::visit(Visitor{}, v_);
}

nlohmann::json RatioSet::summary_json() const {
  nlohmann::json j;
  j["xmax"] = xmax;
  j["size"] = points.size();
  j["points"] = nlohmann::json::array();
  for (const auto& p : points) j["points"].push_back(p.to_string());
  j["skipped"] = skipped;
  j["primes"] = log.size();
  j["unresolved"] = nlohmann::json::array();
  for (const auto& [a, b] : unresolved) j["unresolved"].push_back({a, b});
  j["notes"] = notes;
  return j;
}

namespace {

enum class Mode { rational, same_field, embedded };

Mode unify(const FormSeries& f, const FormSeries& g) {
  if (f.is_rational() && g.is_rational()) return Mode::rational;
  const FieldPtr ff = f.field(), gf = g.field();
  if (ff->degree() == 1 || gf->degree() == 1 || ff->same_as(*gf)) return Mode::same_field;
  return Mode::embedded;
}

// Promotes a coefficient into the common field of the pair.
NfElement common(const FormSeries& s, long n, const FieldPtr& field) {
  NfElement c = s.nf_coefficient(n);
  if (c.field()->degree() == 1 && field->degree() > 1) return NfElement(field, c.to_rational());
  return c;
}

FieldPtr common_field(const FormSeries& f, const FormSeries& g) {
  return f.field()->degree() >= g.field()->degree() ? f.field() : g.field();
}

bool close(const Real& x, const Real& y) {
  const Real scale = std::max({Real(1), Real(mp::abs(x)), Real(mp::abs(y))});
  return mp::abs(x - y) <= scale * mp::ldexp(Real(1), -kSeparationBits);
}

struct NfLess {
  bool operator()(const NfElement& a, const NfElement& b) const { return (a <=> b) < 0; }
};

class Builder {
 public:
  explicit Builder(RatioSet& out) : out_(out) {}

  long add(ProjectivePoint pt, bool track_real) {
    const auto& v = pt.value();
    if (pt.is_infinity()) {
      if (infinity_ < 0) infinity_ = push(std::move(pt));
      return infinity_;
    }
    if (const auto* r = std::get_if<Rational>(&v)) {
      if (auto it = rationals_.find(*r); it != rationals_.end()) return it->second;
      const Rational key = *r;
      const long id = push(std::move(pt));
      rationals_.emplace(key, id);
      if (track_real) check_and_track(to_real(key), id);
      return id;
    }
    if (const auto* e = std::get_if<NfElement>(&v)) {
      if (auto it = field_.find(*e); it != field_.end()) return it->second;
      const NfElement key = *e;
      const long id = push(std::move(pt));
      field_.emplace(key, id);
      return id;
    }
    // A real value is never merged: near-coincidences are unresolved.
    const Real x = std::get<Real>(v);
    const long id = push(std::move(pt));
    check_and_track(x, id);
    return id;
  }

 private:
  long push(ProjectivePoint pt) {
    out_.points.push_back(std::move(pt));
    return static_cast<long>(out_.points.size()) - 1;
  }

  void check_and_track(const Real& x, long id) {
    auto it = reals_.lower_bound(x);
    if (it != reals_.end() && close(it->first, x)) out_.unresolved.emplace_back(it->second, id);
    if (it != reals_.begin() && close(std::prev(it)->first, x)) out_.unresolved.emplace_back(std::prev(it)->second, id);
    reals_.emplace(x, id);
  }

  RatioSet& out_;
  long infinity_ = -1;
  std::map<Rational, long> rationals_;
  std::map<NfElement, long, NfLess> field_;
  std::multimap<Real, long> reals_;
};

void require_precision(const FormSeries& f, const FormSeries& g, long xmax) {
  if (xmax < 2) throw Error(Errc::invalid_argument, "ratio sets need X >= 2");
  if (f.prec() < xmax || g.prec() < xmax) {
    throw Error(Errc::precision, "ratio set to X = " + std::to_string(xmax) + " needs precision >= X (have " +
                                     std::to_string(std::min(f.prec(), g.prec())) + ")");
  }
}

}  // namespace

RatioSet ratio_set(const FormSeries& f, const FormSeries& g, long xmax) {
  require_precision(f, g, xmax);
  RatioSet out;
  out.xmax = xmax;
  if (f.weight != g.weight) {
    out.notes.push_back("weights differ (" + std::to_string(f.weight) + " vs " + std::to_string(g.weight) + ")");
  }
  const Mode mode = unify(f, g);
  const FieldPtr field = common_field(f, g);
  Builder builder(out);
  for (long p : primes_up_to(xmax)) {
    RatioLogEntry entry{p, f.coefficient_string(p), g.coefficient_string(p), -1};
    if (mode == Mode::rational) {
      const Rational a = std::get<RatSeries>(f.series).coefficient(p);
      const Rational b = std::get<RatSeries>(g.series).coefficient(p);
      if (sgn(a) == 0 && sgn(b) == 0) {
        out.skipped.push_back(p);
      } else {
        entry.point = builder.add(sgn(b) == 0 ? ProjectivePoint::infinity() : ProjectivePoint::of(Rational(a / b)), false);
      }
    } else if (mode == Mode::same_field) {
      const NfElement a = common(f, p, field), b = common(g, p, field);
      if (a.is_zero() && b.is_zero()) {
        out.skipped.push_back(p);
      } else {
        entry.point = builder.add(b.is_zero() ? ProjectivePoint::infinity() : ProjectivePoint::of(a / b), false);
      }
    } else {
      const NfElement a = f.nf_coefficient(p), b = g.nf_coefficient(p);
      if (a.is_zero() && b.is_zero()) {
        out.skipped.push_back(p);
      } else if (b.is_zero()) {
        entry.point = builder.add(ProjectivePoint::infinity(), true);
      } else if (a.is_rational() && b.is_rational()) {
        entry.point = builder.add(ProjectivePoint::of(Rational(a.to_rational() / b.to_rational())), true);
      } else {
        entry.point = builder.add(ProjectivePoint::of(Real(f.real_coefficient(p) / g.real_coefficient(p))), true);
      }
    }
    out.log.push_back(std::move(entry));
  }
  if (mode == Mode::embedded) {
    out.notes.push_back("coefficient fields differ; ratios compared through real embeddings (" +
                        std::to_string(f.embedding) + ", " + std::to_string(g.embedding) + ")");
  }
  return out;
}

RatioGrowth ratio_growth(const FormSeries& f, const FormSeries& g, std::vector<long> grid) {
  if (grid.empty()) throw Error(Errc::invalid_argument, "empty X grid");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const RatioSet full = ratio_set(f, g, grid.back());
  RatioGrowth out;
  size_t idx = 0;
  long seen = -1;
  for (long x : grid) {
    while (idx < full.log.size() && full.log[idx].p <= x) {
      seen = std::max(seen, full.log[idx].point);
      ++idx;
    }
    out.counts.emplace_back(x, static_cast<size_t>(seen + 1));
  }
  const size_t start = out.counts.size() / 2;
  bool constant = true;
  for (size_t i = start + 1; i < out.counts.size(); ++i) {
    if (out.counts[i].second != out.counts[start].second) constant = false;
  }
  out.verdict = constant ? "bounded" : "growing";
  return out;
}

long proportionality_precision(long k, long pole_order) {
  return std::max(0L, weight_split(k).o) + pole_order + dim_Sk(k) + 2;
}

Proportionality proportionality_test(const FormSeries& f, const FormSeries& g, long pole_order) {
  Proportionality out;
  if (f.weight != g.weight) {
    out.reason = "weight mismatch (" + std::to_string(f.weight) + " vs " + std::to_string(g.weight) + ")";
    return out;
  }
  if (pole_order < 0) throw Error(Errc::invalid_argument, "pole order must be non-negative");
  if (f.pole_order() > pole_order || g.pole_order() > pole_order) {
    throw Error(Errc::invalid_argument, "a series has a pole beyond the stated pole order");
  }
  const long need = proportionality_precision(f.weight, pole_order);
  const long have = std::min(f.prec(), g.prec());
  if (have < need) {
    throw Error(Errc::precision, "proportionality needs precision >= " + std::to_string(need) + " (have " +
                                     std::to_string(have) + ")");
  }
  if (unify(f, g) == Mode::embedded) {
    throw Error(Errc::kind_mismatch, "cannot decide proportionality across different coefficient fields");
  }
  const FieldPtr field = common_field(f, g);
  out.compared_through = have;
  std::optional<NfElement> c;
  for (long n = -pole_order; n <= have; ++n) {
    const NfElement a = common(f, n, field), b = common(g, n, field);
    if (!c) {
      if (b.is_zero()) {
        if (!a.is_zero()) {
          out.reason = "g vanishes at q^" + std::to_string(n) + " but f does not";
          return out;
        }
        continue;
      }
      c = a / b;
    } else if (!(a == *c * b)) {
      out.reason = "coefficients at q^" + std::to_string(n) + " are not proportional";
      return out;
    }
  }
  out.constant = c ? *c : NfElement(field, Rational(1));
  if (!c) out.reason = "both series vanish to the compared precision";
  return out;
}

SquareProbe square_ratio_probe(const FormSeries& f, const FormSeries& g, long xmax) {
  require_precision(f, g, xmax);
  if (unify(f, g) == Mode::embedded) {
    throw Error(Errc::kind_mismatch, "square probe needs comparable coefficient fields");
  }
  const FieldPtr field = common_field(f, g);
  SquareProbe out;
  out.squares_agree = true;
  for (long p : primes_up_to(xmax)) {
    const NfElement a = common(f, p, field), b = common(g, p, field);
    if (!(a * a == b * b)) {
      out.squares_agree = false;
      break;
    }
  }
  out.set = ratio_set(f, g, xmax);
  if (out.squares_agree) {
    for (const auto& pt : out.set.points) {
      const auto* r = std::get_if<Rational>(&pt.value());
      if (!r || (*r != 1 && *r != -1)) {
        throw Error(Errc::domain, "equal squares but ratio " + pt.to_string() + " outside {[1:1],[1:-1]}");
      }
    }
  }
  return out;
}

RatioSet ratio_set_quadforms(const GramMatrix& q1, const GramMatrix& q2, long xmax, std::uint64_t point_budget) {
  const ThetaSeries t1 = theta_series(q1, xmax, point_budget);
  const ThetaSeries t2 = q1 == q2 ? t1 : theta_series(q2, xmax, point_budget);
  RatioSet out = ratio_set(FormSeries::rational(t1.series, t1.weight), FormSeries::rational(t2.series, t2.weight), xmax);
  if (q1.dim() != q2.dim()) {
    out.notes.push_back("dimension mismatch (" + std::to_string(q1.dim()) + " vs " + std::to_string(q2.dim()) + ")");
  }
  return out;
}

}  // namespace modform
