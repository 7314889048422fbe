#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "modform/catalog.hpp"
#include "modform/djbasis.hpp"
#include "modform/ratioset.hpp"

using namespace modform;

namespace {

FormSeries form(const std::string& spec, long prec) { return resolve_form(spec, prec).form; }

std::vector<std::string> point_strings(const RatioSet& r) {
  std::vector<std::string> out;
  for (const auto& p : r.points) out.push_back(p.to_string());
  return out;
}

// Minimum number of lines through the origin covering the nonzero pairs,
// found by grouping pairs whose cross product vanishes.
size_t line_cover(const RatSeries& f, const RatSeries& g, long x) {
  std::vector<std::pair<Rational, Rational>> reps;
  for (long p : primes_up_to(x)) {
    const Rational a = f.coefficient(p), b = g.coefficient(p);
    if (sgn(a) == 0 && sgn(b) == 0) continue;
    bool covered = false;
    for (const auto& [u, v] : reps) {
      if (a * v == b * u) covered = true;
    }
    if (!covered) reps.emplace_back(a, b);
  }
  return reps.size();
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::io;
}

}  // namespace

TEST_SUITE("ratioset") {
  TEST_CASE("proportional forms give one point") {
    const RatioSet r = ratio_set(form("delta", 100), form("scale:2:delta", 100), 100);
    CHECK(r.size() == 1);
    CHECK(point_strings(r) == std::vector<std::string>{"[1:2]"});
    CHECK(r.log.size() == primes_up_to(100).size());
    CHECK(r.skipped.empty());
  }

  TEST_CASE("delta against delta E4 gives many points") {
    const RatioSet r = ratio_set(form("delta", 1000), form("delta*e4", 1000), 1000);
    CHECK(r.size() >= 100);
    CHECK(r.size() <= primes_up_to(1000).size());
  }

  TEST_CASE("growth") {
    const RatioGrowth flat = ratio_growth(form("delta", 1000), form("scale:2:delta", 1000), {10, 100, 1000});
    REQUIRE(flat.counts.size() == 3);
    for (const auto& [x, n] : flat.counts) CHECK(n == 1);
    CHECK(flat.verdict == "bounded");

    const RatioGrowth up = ratio_growth(form("delta", 10000), form("delta*e4", 10000), {100, 1000, 10000});
    REQUIRE(up.counts.size() == 3);
    CHECK(up.counts[0].second < up.counts[1].second);
    CHECK(up.counts[1].second < up.counts[2].second);
    CHECK(up.verdict == "growing");

    const RatioGrowth eig = ratio_growth(form("eigen:16:0", 1000), form("eigen:18:0", 1000), {100, 300, 1000});
    CHECK(eig.counts[0].second < eig.counts[1].second);
    CHECK(eig.counts[1].second < eig.counts[2].second);
    CHECK(eig.verdict == "growing");
    CHECK_THROWS_AS(ratio_growth(form("delta", 10), form("delta", 10), {}), Error);
  }

  TEST_CASE("proportionality") {
    const Proportionality p = proportionality_test(form("delta", 20), form("scale:7:delta", 20), 0);
    REQUIRE(p.constant.has_value());
    CHECK(p.constant->to_rational() == Rational(1, 7));

    const Proportionality w = proportionality_test(form("delta", 20), form("delta*e4", 20), 0);
    CHECK_FALSE(w.constant.has_value());
    CHECK(w.reason == "weight mismatch (12 vs 16)");

    const FormSeries e4cubed = FormSeries::rational(series_pow(eisenstein(4, 20).series, 3), 12);
    const FormSeries shifted = FormSeries::rational(series_add(delta(20).series, series_pow(eisenstein(4, 20).series, 3)), 12);
    const Proportionality n = proportionality_test(e4cubed, shifted, 0);
    CHECK_FALSE(n.constant.has_value());
    CHECK(n.reason == "coefficients at q^1 are not proportional");

    CHECK(code_of([] { proportionality_test(form("delta", 2), form("delta", 2), 0); }) == Errc::precision);
    CHECK(proportionality_precision(12, 0) == 1 + 0 + 1 + 2);
    CHECK(code_of([] { proportionality_test(form("j", 20), form("j", 20), 0); }) == Errc::invalid_argument);

    const Proportionality jj = proportionality_test(form("j", 20), form("scale:-3:j", 20), 1);
    REQUIRE(jj.constant.has_value());
    CHECK(jj.constant->to_rational() == Rational(-1, 3));
  }

  TEST_CASE("square probes") {
    const SquareProbe same = square_ratio_probe(form("delta", 100), form("delta", 100), 100);
    CHECK(same.squares_agree);
    CHECK(point_strings(same.set) == std::vector<std::string>{"[1:1]"});
    const SquareProbe neg = square_ratio_probe(form("delta", 100), form("neg:delta", 100), 100);
    CHECK(neg.squares_agree);
    CHECK(point_strings(neg.set) == std::vector<std::string>{"[1:-1]"});
    const SquareProbe other = square_ratio_probe(form("delta", 100), form("delta*e4", 100), 100);
    CHECK_FALSE(other.squares_agree);
  }

  TEST_CASE("scaling preserves the cardinality") {
    const long x = 300;
    const size_t base = ratio_set(form("delta", x), form("delta*e4", x), x).size();
    for (const auto& [a, b] : {std::pair{"3", "-5"}, std::pair{"-1/2", "7"}, std::pair{"11", "2/3"}}) {
      const RatioSet r = ratio_set(form(std::string("scale:") + a + ":delta", x),
                                   form(std::string("scale:") + b + ":delta*e4", x), x);
      CHECK(r.size() == base);
    }
  }

  TEST_CASE("proportional or growing across the catalog") {
    const long x = 500;
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"delta", "scale:2:delta"},     {"delta", "delta*e4"},      {"e4*delta", "e6*delta"},
        {"eigen:24:0", "eigen:24:0:1"}, {"theta:e8e8", "theta:d16+"}, {"e4", "theta:e8"},
    };
    for (const auto& [a, b] : pairs) {
      CAPTURE(a);
      CAPTURE(b);
      const FormSeries f = form(a, x), g = form(b, x);
      const Proportionality prop = proportionality_test(f, g, 0);
      const RatioGrowth growth = ratio_growth(f, g, {50, 100, 200, 300, 400, 500});
      CHECK((prop.constant.has_value() || growth.verdict == "growing"));
      CHECK(prop.constant.has_value() == (growth.verdict == "bounded"));
    }
  }

  TEST_CASE("set size equals the brute-force line cover") {
    const long x = 50;
    const RatSeries d = delta(x).series;
    const RatSeries de4 = series_mul(delta(x).series, eisenstein(4, x).series);
    const RatSeries e4d2 = series_mul(series_pow(delta(x).series, 2), eisenstein(4, x).series);
    for (const auto& [f, g] : {std::pair{d, de4}, std::pair{d, d}, std::pair{de4, e4d2}}) {
      const RatioSet r = ratio_set(FormSeries::rational(f, 12), FormSeries::rational(g, 12), x);
      CHECK(r.size() == line_cover(f, g, x));
    }
  }

  TEST_CASE("pole against cusp: the normalized coefficient keeps growing") {
    // |c(p)/τ(p)| itself is not monotone, since τ(p) fluctuates within
    // ±2p^{11/2}. The monotone quantity is |c(p)|/p^{11/2}, which bounds
    // |c(p)/τ(p)| from below up to the factor 2.
    const long x = 1000;
    const RatSeries f = dj_basis_element(0, 1, x).series;
    const RatSeries g = delta(x).series;
    double prev = 0;
    double min_ratio = INFINITY;
    for (long p : primes_up_to(x)) {
      if (p <= 50) continue;
      const double log_norm =
          std::log(std::abs(f.coefficient(p).get_d())) - 5.5 * std::log(static_cast<double>(p));
      CHECK(log_norm > prev);
      prev = log_norm;
      const double log_ratio = std::log(std::abs(f.coefficient(p).get_d())) - std::log(std::abs(g.coefficient(p).get_d()));
      CHECK(log_ratio >= log_norm - std::log(2.0));
      min_ratio = std::min(min_ratio, log_ratio);
    }
    CHECK(min_ratio > std::log(1e20));
    const RatioSet r = ratio_set(FormSeries::rational(f, 0), FormSeries::rational(g, 12), x);
    CHECK(r.size() == primes_up_to(x).size());
  }

  TEST_CASE("fields: same field is exact, different fields go through embeddings") {
    const long x = 60;
    const RatioSet same = ratio_set(form("eigen:24:0", x), form("eigen:24:0:1", x), x);
    CHECK(same.size() > 5);
    CHECK(same.unresolved.empty());
    for (const auto& p : same.points) CHECK(p.is_exact());

    const RatioSet mixed = ratio_set(form("eigen:24:0", x), form("eigen:28:0", x), x);
    CHECK(mixed.size() == primes_up_to(x).size());
    CHECK_FALSE(mixed.notes.empty());
    for (const auto& p : mixed.points) CHECK_FALSE(p.is_exact());

    const RatioSet promoted = ratio_set(form("eigen:24:0", x), form("scale:3:eigen:24:0", x), x);
    CHECK(point_strings(promoted) == std::vector<std::string>{"[1:3]"});

    CHECK(proportionality_test(form("eigen:24:0", x), form("eigen:28:0", x), 0).reason == "weight mismatch (24 vs 28)");
    const FieldPtr sqrt5 = NumberField::make({Rational(-5), Rational(0), Rational(1)});
    const FormSeries foreign = FormSeries::in_field(to_field(delta(x).series, sqrt5), 24);
    CHECK(code_of([&] { proportionality_test(form("eigen:24:0", x), foreign, 0); }) == Errc::kind_mismatch);
  }

  TEST_CASE("zero pairs are skipped and poles give infinity") {
    const RatSeries f(0, {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0), Rational(2), Rational(0),
                          Rational(0), Rational(0), Rational(0), Rational(0)});
    const RatSeries g(0, {Rational(0), Rational(0), Rational(0), Rational(0), Rational(0), Rational(1), Rational(0),
                          Rational(5), Rational(0), Rational(0), Rational(0)});
    const RatioSet r = ratio_set(FormSeries::rational(f, 12), FormSeries::rational(g, 12), 10);
    CHECK(r.skipped == std::vector<long>{2});
    CHECK(point_strings(r) == std::vector<std::string>{"[1:0]", "[2:1]", "[0:1]"});
    REQUIRE(r.log.size() == 4);
    CHECK(r.log[0].point == -1);
    CHECK(r.log[1].point == 0);
    CHECK(r.log[3].a_g == "5");
    const nlohmann::json j = r.summary_json();
    CHECK(j["size"] == 3);
    CHECK(j["skipped"] == nlohmann::json({2}));
  }

  TEST_CASE("errors") {
    CHECK(code_of([] { ratio_set(form("delta", 50), form("delta", 50), 100); }) == Errc::precision);
    CHECK(code_of([] { ratio_set(form("delta", 50), form("delta", 50), 1); }) == Errc::invalid_argument);
    CHECK(code_of([] { form("nonsense", 10); }) != Errc::io);
  }

  TEST_CASE("point formatting") {
    CHECK(ProjectivePoint::of(Rational(-3, 4)).to_string() == "[3:-4]");
    CHECK(ProjectivePoint::of(Rational(0)).to_string() == "[0:1]");
    CHECK(ProjectivePoint::of(Rational(5)).to_string() == "[5:1]");
    CHECK(ProjectivePoint::infinity().to_string() == "[1:0]");
    CHECK(ProjectivePoint::infinity().is_exact());
    CHECK_FALSE(ProjectivePoint::of(Real(2)).is_exact());
  }
}
