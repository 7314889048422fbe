#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>

#include "modform/quadform.hpp"
#include "modform/ratioset.hpp"

using namespace modform;

namespace {

// Counts of x in [-b, b]^d with Q(x) = n for n ≤ n_max, by plain nested loops.
std::vector<std::uint64_t> box_counts(const GramMatrix& q, long b, long n_max) {
  const int d = q.dim();
  std::vector<std::uint64_t> out(static_cast<size_t>(n_max + 1), 0);
  std::vector<long> x(static_cast<size_t>(d), -b);
  while (true) {
    const long v = q.value(x);
    if (v <= n_max) ++out[static_cast<size_t>(v)];
    int i = 0;
    while (i < d && x[static_cast<size_t>(i)] == b) x[static_cast<size_t>(i++)] = -b;
    if (i == d) break;
    ++x[static_cast<size_t>(i)];
  }
  return out;
}

// E8 as D8 ∪ (D8 + ½), counted in ambient coordinates y = 2x so that
// Q = |x|²/2 becomes |y|²/8.
std::vector<std::uint64_t> e8_ambient_counts(long n_max) {
  std::vector<std::uint64_t> out(static_cast<size_t>(n_max + 1), 0);
  std::function<void(int, long, long, bool)> rec = [&](int i, long norm, long sum, bool half) {
    if (norm > 8 * n_max) return;
    if (i == 8) {
      if (norm % 8 == 0 && (sum / 2) % 2 == 0) ++out[static_cast<size_t>(norm / 8)];
      return;
    }
    for (long y = -6; y <= 6; ++y) {
      if ((y % 2 != 0) != half) continue;
      rec(i + 1, norm + y * y, sum + y, half);
    }
  };
  rec(0, 0, 0, false);
  rec(0, 0, 0, true);
  return out;
}

// r_8(n) = 16 Σ_{d|n} (-1)^{n+d} d³ for the sum of eight squares.
long r8(long n) {
  if (n == 0) return 1;
  long s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) s += ((n + d) % 2 == 0 ? 1 : -1) * d * d * d;
  }
  return 16 * s;
}

GramMatrix scaled_identity(int d, long diag, long off) {
  std::vector<std::vector<long>> a(static_cast<size_t>(d), std::vector<long>(static_cast<size_t>(d), 0));
  for (int i = 0; i < d; ++i) {
    a[static_cast<size_t>(i)][static_cast<size_t>(i)] = diag;
    if (i + 1 < d) {
      a[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = off;
      a[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = off;
    }
  }
  return GramMatrix::make(a);
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

TEST_SUITE("quadform") {
  TEST_CASE("zero is represented once") {
    CHECK(rep_count(GramMatrix::e8(), 0) == 1);
    CHECK(rep_count(scaled_identity(3, 2, 0), 0) == 1);
  }

  TEST_CASE("E8 counts match the ambient oracle") {
    const auto oracle = e8_ambient_counts(3);
    CHECK(oracle[1] == 240);
    CHECK(oracle[2] == 2160);
    for (long n = 0; n <= 3; ++n) CHECK(rep_count(GramMatrix::e8(), n) == Integer(std::to_string(oracle[static_cast<size_t>(n)])));
  }

  TEST_CASE("the built-in lattices are even unimodular") {
    for (const GramMatrix& q : {GramMatrix::e8(), GramMatrix::e8_e8(), GramMatrix::d16_plus()}) {
      CHECK(q.determinant() == 1);
      CHECK(q.level_one());
    }
    CHECK(GramMatrix::d16_plus().dim() == 16);
    CHECK(GramMatrix::e8_e8().weight() == 8);
  }

  TEST_CASE("enumeration agrees with the box count") {
    // 2I: Q(x) = Σx², so |x_i| ≤ √n. 4I + tridiag(1): Q ≥ Σx², same bound.
    for (const GramMatrix& q : {scaled_identity(8, 2, 0), scaled_identity(8, 4, 1)}) {
      const long n_max = 10;
      const auto box = box_counts(q, 3, n_max);
      const auto fp = representation_counts(q, n_max);
      REQUIRE(fp.size() == box.size());
      std::uint64_t ball = 0, ball_fp = 0;
      for (long n = 0; n <= n_max; ++n) {
        CAPTURE(n);
        CHECK(fp[static_cast<size_t>(n)] == box[static_cast<size_t>(n)]);
        ball += box[static_cast<size_t>(n)];
        ball_fp += fp[static_cast<size_t>(n)];
        if (n >= 1) CHECK(fp[static_cast<size_t>(n)] % 2 == 0);
      }
      CHECK(ball == ball_fp);
    }
    const auto sq = representation_counts(scaled_identity(8, 2, 0), 10);
    for (long n = 0; n <= 10; ++n) CHECK(static_cast<long>(sq[static_cast<size_t>(n)]) == r8(n));
  }

  TEST_CASE("theta of E8 is E4") {
    const ThetaSeries t = theta_series(GramMatrix::e8(), 100);
    CHECK(t.weight == 4);
    CHECK(t.series == eisenstein(4, 100).series);
    CHECK(t.enumerated_through >= 3);
  }

  TEST_CASE("E8+E8 and D16+ have the same theta series") {
    const ThetaSeries a = theta_series(GramMatrix::e8_e8(), 100, 2'000'000);
    const ThetaSeries b = theta_series(GramMatrix::d16_plus(), 100, 2'000'000);
    CHECK(a.series == b.series);
    CHECK(series_sub(a.series, b.series).is_zero());
    CHECK(b.series.coefficient(1) == 480);
    CHECK(b.series.coefficient(2) == 61920);
    for (long n = 1; n <= 100; ++n) {
      const Rational c = b.series.coefficient(n);
      CHECK(c.get_den() == 1);
      CHECK(sgn(c) > 0);
      CHECK(mpz_even_p(c.get_num_mpz_t()));
    }
  }

  TEST_CASE("theta of a non-level-one form is rejected") {
    CHECK(code_of([] { theta_series(scaled_identity(8, 2, 0), 10); }) == Errc::not_modular);
    CHECK_FALSE(scaled_identity(8, 2, 0).level_one());
  }

  TEST_CASE("Gram matrix validation") {
    CHECK(code_of([] { GramMatrix::make({}); }) == Errc::invalid_argument);
    CHECK(code_of([] { GramMatrix::make({{2, 1}, {1}}); }) == Errc::invalid_argument);
    CHECK(code_of([] { GramMatrix::make({{3, 0}, {0, 2}}); }) == Errc::domain);
    CHECK(code_of([] { GramMatrix::make({{2, 1}, {0, 2}}); }) == Errc::domain);
    CHECK(code_of([] { GramMatrix::make({{2, 3}, {3, 2}}); }) == Errc::domain);
    CHECK(code_of([] { GramMatrix::make({{-2}}); }) == Errc::domain);
    CHECK(code_of([] { rep_count(GramMatrix::e8(), -1); }) == Errc::invalid_argument);
  }

  TEST_CASE("Gram matrices load from JSON files") {
    const std::string path = "quadform_test_gram.json";
    {
      std::ofstream out(path);
      out << GramMatrix::e8().to_json().dump();
    }
    CHECK(GramMatrix::load(path) == GramMatrix::e8());
    CHECK(GramMatrix::named_or_file(path) == GramMatrix::e8());
    CHECK(GramMatrix::named_or_file("e8") == GramMatrix::e8());
    {
      std::ofstream out(path);
      out << R"({"d": 3, "gram": [[2, 1], [1, 2]]})";
    }
    CHECK(code_of([&] { GramMatrix::load(path); }) == Errc::parse);
    {
      std::ofstream out(path);
      out << "{not json";
    }
    CHECK(code_of([&] { GramMatrix::load(path); }) == Errc::parse);
    std::remove(path.c_str());
    CHECK(code_of([] { GramMatrix::load("no_such_gram_file.json"); }) == Errc::io);
  }

  TEST_CASE("orthogonal blocks") {
    const auto blocks = GramMatrix::e8_e8().orthogonal_blocks();
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == GramMatrix::e8());
    CHECK(blocks[1] == GramMatrix::e8());
    CHECK(GramMatrix::d16_plus().orthogonal_blocks().size() == 1);
    CHECK(scaled_identity(4, 2, 0).orthogonal_blocks().size() == 4);
  }

  TEST_CASE("modular solution from leading coefficients") {
    const RatSeries e4 = theta_from_leading(4, {Integer(1)}, 20);
    CHECK(e4 == eisenstein(4, 20).series);
    const RatSeries leech = theta_from_leading(12, {Integer(1), Integer(0)}, 5);
    CHECK(leech.coefficient(1) == 0);
    CHECK(leech.coefficient(2) == 196560);
    const RatSeries e8_cubed = theta_from_leading(12, {Integer(1), Integer(720)}, 10);
    CHECK(e8_cubed == series_pow(eisenstein(4, 10).series, 3));
    CHECK(code_of([] { theta_from_leading(12, {Integer(1)}, 5); }) == Errc::invalid_argument);
  }

  TEST_CASE("ratio sets of quadratic forms") {
    const RatioSet same = ratio_set_quadforms(GramMatrix::e8_e8(), GramMatrix::d16_plus(), 200, 2'000'000);
    REQUIRE(same.size() == 1);
    CHECK(same.points[0].to_string() == "[1:1]");
    const RatioSet self = ratio_set_quadforms(GramMatrix::e8(), GramMatrix::e8(), 100);
    REQUIRE(self.size() == 1);
    CHECK(self.points[0].to_string() == "[1:1]");
    const RatioSet mixed = ratio_set_quadforms(GramMatrix::e8(), GramMatrix::e8_e8(), 30, 2'000'000);
    CHECK_FALSE(mixed.notes.empty());
  }

  TEST_CASE("two d = 24 lattices with different r(1) give a growing ratio set") {
    const long x = 1000;
    const RatSeries leech = theta_from_leading(12, {Integer(1), Integer(0)}, x);
    const RatSeries e8_cubed = theta_from_leading(12, {Integer(1), Integer(720)}, x);
    const RatioSet r = ratio_set(FormSeries::rational(leech, 12), FormSeries::rational(e8_cubed, 12), x);
    CHECK(r.size() > 50);
  }
}
