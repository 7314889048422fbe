#include <doctest.h>

#include <random>

#include "modform/exactnum.hpp"

using namespace modform;
namespace mp = boost::multiprecision;

namespace {

FieldPtr sqrt5() { return NumberField::make({Rational(-5), Rational(0), Rational(1)}); }

// √5 by Newton iteration from a rational start, independent of the
// field's own root computation.
Real newton_sqrt(const Real& a) {
  Real x = 2;
  for (int i = 0; i < 20; ++i) x = (x + a / x) / 2;
  return x;
}

Rational small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("exactnum") {
  TEST_CASE("tau squared reduces to 5") {
    const auto k = sqrt5();
    const NfElement t = NfElement::generator(k);
    const NfElement sq = nf_arith(t, t, NfOp::mul);
    CHECK(sq.coords() == std::vector<Rational>{5, 0});
  }

  TEST_CASE("adding zero is the identity") {
    const auto k = sqrt5();
    const NfElement a(k, {Rational(3, 7), Rational(-2)});
    CHECK(nf_arith(a, NfElement(k, Rational(0)), NfOp::add) == a);
  }

  TEST_CASE("(1 + tau)(1 - tau) = -4") {
    const auto k = sqrt5();
    const NfElement one(k, Rational(1));
    const NfElement t = NfElement::generator(k);
    const NfElement prod = nf_arith(one + t, one - t, NfOp::mul);
    CHECK(prod.is_rational());
    CHECK(prod.to_rational() == -4);
  }

  TEST_CASE("embedding 0 of tau is +sqrt(5)") {
    const auto k = sqrt5();
    const Real e = nf_embed(NfElement::generator(k), 0, 50);
    CHECK(mp::abs(e - newton_sqrt(Real(5))) < mp::ldexp(Real(1), -50));
    CHECK(e > 2.236);
  }

  TEST_CASE("rational elements embed exactly") {
    const auto k = sqrt5();
    CHECK(nf_embed(NfElement(k, Rational(3)), 0) == 3);
    CHECK(nf_embed(NfElement(k, Rational(3)), 1) == 3);
  }

  TEST_CASE("1 + tau under embedding 1 is 1 - sqrt(5)") {
    const auto k = sqrt5();
    const NfElement a(k, {Rational(1), Rational(1)});
    CHECK(mp::abs(nf_embed(a, 1) - (1 - newton_sqrt(Real(5)))) < mp::ldexp(Real(1), -200));
  }

  TEST_CASE("division and inverse") {
    const auto k = sqrt5();
    const NfElement a(k, {Rational(2), Rational(3)});
    const NfElement inv = NfElement(k, Rational(1)) / a;
    CHECK(a * inv == NfElement(k, Rational(1)));
    CHECK(a.norm() == 4 - 45);
    CHECK(a.trace() == 4);
    CHECK(a * a.conjugate() == NfElement(k, a.norm()));
  }

  TEST_CASE("distributivity on random elements") {
    std::mt19937 rng(7);
    const auto k = NumberField::make({Rational(-20468736000), Rational(-1080), Rational(1)});
    for (int i = 0; i < 200; ++i) {
      const NfElement a(k, {small_rational(rng), small_rational(rng)});
      const NfElement b(k, {small_rational(rng), small_rational(rng)});
      const NfElement c(k, {small_rational(rng), small_rational(rng)});
      CHECK(nf_arith(a, nf_arith(b, c, NfOp::add), NfOp::mul) ==
            nf_arith(nf_arith(a, b, NfOp::mul), nf_arith(a, c, NfOp::mul), NfOp::add));
    }
  }

  TEST_CASE("embeddings are ring homomorphisms numerically") {
    std::mt19937 rng(11);
    const auto k = sqrt5();
    const unsigned p = 200;
    for (int i = 0; i < 100; ++i) {
      const NfElement a(k, {small_rational(rng), small_rational(rng)});
      const NfElement b(k, {small_rational(rng), small_rational(rng)});
      for (int s = 0; s < 2; ++s) {
        const Real lhs = nf_embed(a * b, s, p);
        const Real rhs = nf_embed(a, s, p) * nf_embed(b, s, p);
        const Real scale = std::max(Real(1), Real(mp::abs(lhs)));
        CHECK(mp::abs(lhs - rhs) < scale * mp::ldexp(Real(1), -static_cast<int>(p) + 4));
      }
    }
  }

  TEST_CASE("rationals round-trip through strings") {
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
      const Rational r = small_rational(rng) * Rational(Integer("123456789012345678901234567890"));
      CHECK(parse_rational(to_string(r)) == r);
    }
    CHECK(to_string(Rational(-3, 1)) == "-3");
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(parse_rational("-0/5") == 0);
  }

  TEST_CASE("malformed rationals are parse errors") {
    for (const char* bad : {"", "1/", "/2", "1.5", "abc", "1/-2", "--1", "1 /2"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_rational(bad), Error);
    }
    try {
      parse_rational("1/0");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::division_by_zero);
    }
  }

  TEST_CASE("field construction is validated") {
    auto code_of = [](std::vector<Rational> m) {
      try {
        NumberField::make(std::move(m));
      } catch (const Error& e) {
        return e.code();
      }
      return Errc::io;  // sentinel: no error
    };
    CHECK(code_of({Rational(-4), Rational(0), Rational(1)}) == Errc::domain);  // (x-2)(x+2)
    CHECK(code_of({Rational(1), Rational(0), Rational(0), Rational(1)}) == Errc::unsupported);
    CHECK(code_of({Rational(-5), Rational(0), Rational(2)}) == Errc::invalid_argument);
    CHECK(NumberField::make({Rational(-7), Rational(1)})->degree() == 1);
  }

  TEST_CASE("mixing fields and dividing by zero fail") {
    const auto a = sqrt5();
    const auto b = NumberField::make({Rational(-2), Rational(0), Rational(1)});
    try {
      (void)(NfElement::generator(a) + NfElement::generator(b));
      FAIL("expected field_mismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::field_mismatch);
    }
    try {
      (void)(NfElement::generator(a) / NfElement(a, Rational(0)));
      FAIL("expected division_by_zero");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::division_by_zero);
    }
  }

  TEST_CASE("embedding index and precision are checked") {
    const auto k = sqrt5();
    CHECK_THROWS_AS(nf_embed(NfElement::generator(k), 2), Error);
    CHECK_THROWS_AS(nf_embed(NfElement::generator(k), 0, kMaxEmbedBits + 1), Error);
    const auto complex_field = NumberField::make({Rational(1), Rational(0), Rational(1)});
    CHECK_THROWS_AS(nf_embed(NfElement::generator(complex_field), 0), Error);
  }

  TEST_CASE("field elements round-trip through JSON") {
    const auto k = sqrt5();
    const NfElement a(k, {Rational(-1, 3), Rational(7, 2)});
    const nlohmann::json j = to_json(a);
    CHECK(j["minpoly"] == nlohmann::json({"-5", "0", "1"}));
    CHECK(j["coords"] == nlohmann::json({"-1/3", "7/2"}));
    CHECK(nf_from_json(j) == a);
  }

  TEST_CASE("helpers") {
    CHECK(lcm_of_denominators({Rational(1, 4), Rational(5, 6), Rational(2)}) == 12);
    CHECK(is_perfect_square(Rational(9, 4)));
    CHECK_FALSE(is_perfect_square(Rational(2)));
    CHECK_FALSE(is_perfect_square(Rational(-4)));
    CHECK(to_real(Rational(1, 4)) == Real(0.25));
  }
}
