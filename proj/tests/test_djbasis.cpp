#include <doctest.h>

#include <random>

#include "modform/djbasis.hpp"

using namespace modform;

namespace {

bool same_through(const RatSeries& a, const RatSeries& b, long n) {
  for (long i = std::min(a.valuation(), b.valuation()); i <= n; ++i) {
    if (a.coefficient(i) != b.coefficient(i)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("djbasis") {
  TEST_CASE("weight zero") {
    const WeaklyForm f00 = dj_basis_element(0, 0, 10);
    CHECK(f00.series == RatSeries::constant(Rational(1), 10));
    const WeaklyForm f01 = dj_basis_element(0, 1, 10);
    const RatSeries j = j_invariant(10);
    CHECK(f01.series == series_sub(j, RatSeries::constant(Rational(744), 10)));
    CHECK(f01.series.coefficient(0) == 0);
    CHECK(f01.series.coefficient(1) == 196884);
    const WeaklyForm f02 = dj_basis_element(0, 2, 10);
    CHECK(f02.series.coefficient(-2) == 1);
    CHECK(f02.series.coefficient(-1) == 0);
    CHECK(f02.series.coefficient(0) == 0);
    // j^2 - 1488 j + 159768 is the standard second Faber polynomial.
    CHECK(f02.series.coefficient(1) == 42987520);
  }

  TEST_CASE("weight twelve starts at delta") {
    const WeaklyForm f = dj_basis_element(12, -1, 20);
    CHECK(f.series == delta(20).series);
    const WeaklyForm f0 = dj_basis_element(12, 0, 20);
    CHECK(f0.series.coefficient(0) == 1);
    CHECK(f0.series.coefficient(1) == 0);
  }

  TEST_CASE("negative weight starts at 1/delta") {
    const WeaklyForm f = dj_basis_element(-12, 1, 10);
    CHECK(f.series == series_inv(delta(12).series).truncated(10));
    CHECK(f.pole_order() == 1);
    CHECK(f.o_k == -1);
  }

  TEST_CASE("principal parts") {
    const WeaklyForm f = dj_basis_element(4, 3, 10);
    const auto part = principal_part(f);
    CHECK(part.size() == 4);
    CHECK(part.at(3) == 1);
    CHECK(part.at(2) == 0);
    CHECK(part.at(0) == 0);
    CHECK(principal_part(dj_basis_element(12, -1, 5)).size() == 1);
  }

  TEST_CASE("gap property") {
    for (long k : {-12L, -4L, 0L, 4L, 12L, 16L, 24L, 36L}) {
      const long o = weight_split(k).o;
      for (long m = -o; m <= 8; ++m) {
        CAPTURE(k);
        CAPTURE(m);
        const WeaklyForm f = dj_basis_element(k, m, o + 15);
        CHECK(f.series.valuation() == -m);
        CHECK(f.series.coefficient(-m) == 1);
        for (long e = -m + 1; e <= o; ++e) CHECK(f.series.coefficient(e) == 0);
        for (const auto& c : f.series.coeffs()) CHECK(c.get_den() == 1);
      }
    }
  }

  TEST_CASE("delta-power construction agrees") {
    for (long k : {-12L, 0L, 4L, 12L, 14L, 24L}) {
      const long o = weight_split(k).o;
      for (long m = -o; m <= 4; ++m) {
        CAPTURE(k);
        CAPTURE(m);
        const WeaklyForm a = dj_basis_element(k, m, 50);
        const WeaklyForm b = dj_basis_element_via_delta_power(k, m, 50);
        CHECK(same_through(a.series, b.series, 50));
      }
    }
  }

  TEST_CASE("negative index below -o throws") {
    try {
      dj_basis_element(12, -2, 10);
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::domain);
    }
    CHECK_THROWS_AS(dj_basis_element(-12, 0, 10), Error);
    CHECK_THROWS_AS(dj_basis_element_via_delta_power(0, -1, 10), Error);
  }

  TEST_CASE("cuspidal projection examples") {
    const ModularForm e12_proj = cuspidal_projection(WeaklyForm::make(12, eisenstein(12, 20).series));
    CHECK(e12_proj.series == delta(20).series * Rational(65520, 691));
    const ModularForm j_proj = cuspidal_projection(WeaklyForm::make(0, j_invariant(20)));
    CHECK(j_proj.series.is_zero());
    const ModularForm d = cuspidal_projection(WeaklyForm::make(12, delta(20).series));
    CHECK(d.series == delta(20).series);
    CHECK(cuspidal_projection(WeaklyForm::make(4, RatSeries::zero(Rational(0), 10))).series.is_zero());
  }

  TEST_CASE("projection of a non-modular series is rejected") {
    const RatSeries q2 = RatSeries::monomial(Rational(1), 2, 10);
    try {
      cuspidal_projection(WeaklyForm::make(12, q2));
      FAIL("expected not_modular");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_modular);
    }
    CHECK_THROWS_AS(cuspidal_projection(WeaklyForm::make(-12, RatSeries::constant(Rational(1), 5))), Error);
  }

  TEST_CASE("projection is idempotent and linear") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (long k : {0L, 12L, 24L, 28L}) {
      const long o = weight_split(k).o;
      const long prec = 30;
      for (int trial = 0; trial < 5; ++trial) {
        RatSeries f = RatSeries::zero(Rational(0), prec);
        RatSeries g = RatSeries::zero(Rational(0), prec);
        for (long m = -o; m <= 3; ++m) {
          f = f + dj_basis_element(k, m, prec).series * Rational(coef(rng));
          g = g + dj_basis_element(k, m, prec).series * Rational(coef(rng));
        }
        const ModularForm pf = cuspidal_projection(WeaklyForm::make(k, f));
        const ModularForm pg = cuspidal_projection(WeaklyForm::make(k, g));
        CHECK(cuspidal_projection(WeaklyForm::make(k, pf.series)).series == pf.series);
        const Rational a(coef(rng)), b(coef(rng));
        const ModularForm pfg = cuspidal_projection(WeaklyForm::make(k, f * a + g * b));
        CHECK(pfg.series == pf.series * a + pg.series * b);
      }
    }
  }

  TEST_CASE("cusp forms are fixed") {
    for (long k = 12; k <= 40; k += 2) {
      for (const auto& g : miller_basis(k, 30)) {
        if (!g.cuspidal) continue;
        CHECK(cuspidal_projection(WeaklyForm::make(k, g.series)).series == g.series);
      }
    }
  }

  TEST_CASE("basis cache extends on demand") {
    const auto small = dj_basis(8, 10, 2);
    const auto big = dj_basis(8, 20, 5);
    CHECK(big->prec() >= 20);
    CHECK(big->max_m() >= 5);
    CHECK(same_through(small->element(2).series, big->element(2).series, 10));
    CHECK_THROWS_AS(big->element(big->max_m() + 1), Error);
  }
}
