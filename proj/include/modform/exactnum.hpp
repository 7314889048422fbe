#pragma once

// Exact integer/rational arithmetic and arithmetic in number fields of
// degree at most two, plus the real embeddings of such fields.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "modform/error.hpp"

namespace modform {

using Integer = mpz_class;
using Rational = mpq_class;

/// Fixed-precision real used wherever a numerical value is required
/// (embeddings, coefficient bounds, asymptotics). 100 decimal digits.
using Real = boost::multiprecision::mpfr_float_100;

/// Binary precision of Real, minus a guard margin. Requests for more
/// bits than this from nf_embed are rejected.
inline constexpr unsigned kMaxEmbedBits = 320;

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

Real to_real(const Integer& z);
Real to_real(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& values);
bool is_perfect_square(const Rational& q);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// ℚ[x]/(m(x)) for a monic irreducible m of degree one or two.
///
/// Coefficients are stored constant term first, so {-5, 0, 1} is x^2 - 5.
/// Degree-one fields are all identified with ℚ. The real embeddings are
/// ordered by decreasing value of the root they send the generator to.
class NumberField {
 public:
  /// Validates monicity and irreducibility; degree >= 3 is rejected.
  static FieldPtr make(std::vector<Rational> minpoly);
  static FieldPtr rationals();

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::vector<Rational>& minpoly() const { return minpoly_; }
  /// Discriminant of the minimal polynomial (0 for degree one).
  const Rational& discriminant() const { return disc_; }

  int embedding_count() const { return static_cast<int>(roots_.size()); }
  /// Image of the power-basis generator under embedding `which`.
  const Real& root(int which) const;

  bool same_as(const NumberField& other) const;

 private:
  explicit NumberField(std::vector<Rational> minpoly);

  std::vector<Rational> minpoly_;
  Rational disc_;
  std::vector<Real> roots_;
};

/// Element of a NumberField in the power basis 1, τ, ..., τ^{t-1}.
class NfElement {
 public:
  NfElement(FieldPtr field, std::vector<Rational> coords);
  NfElement(FieldPtr field, const Rational& value);

  static NfElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  int degree() const { return static_cast<int>(coords_.size()); }

  bool is_zero() const;
  bool is_rational() const;
  /// Value as a rational; throws if the element is irrational.
  Rational to_rational() const;

  Rational trace() const;
  Rational norm() const;
  /// Image under the nontrivial automorphism (identity in degree one).
  NfElement conjugate() const;
  Real embed(int which) const;

  NfElement operator-() const;
  NfElement& operator+=(const NfElement& rhs);
  NfElement& operator-=(const NfElement& rhs);
  NfElement& operator*=(const NfElement& rhs);
  NfElement& operator/=(const NfElement& rhs);
  NfElement& operator*=(const Rational& rhs);

  friend NfElement operator+(NfElement a, const NfElement& b) { return a += b; }
  friend NfElement operator-(NfElement a, const NfElement& b) { return a -= b; }
  friend NfElement operator*(NfElement a, const NfElement& b) { return a *= b; }
  friend NfElement operator/(NfElement a, const NfElement& b) { return a /= b; }
  friend NfElement operator*(NfElement a, const Rational& b) { return a *= b; }

  friend bool operator==(const NfElement& a, const NfElement& b);
  /// Lexicographic on coordinates; only meaningful within one field.
  friend std::strong_ordering operator<=>(const NfElement& a, const NfElement& b);

  std::string to_string() const;

 private:
  void require_same_field(const NfElement& other) const;

  FieldPtr field_;
  std::vector<Rational> coords_;
};

enum class NfOp { add, sub, mul, div };

NfElement nf_arith(const NfElement& a, const NfElement& b, NfOp op);

/// σ_which(a) to within 2^-bits. `bits` may not exceed kMaxEmbedBits.
Real nf_embed(const NfElement& a, int which, unsigned bits = 200);

nlohmann::json to_json(const NfElement& a);
NfElement nf_from_json(const nlohmann::json& j);

}  // namespace modform
