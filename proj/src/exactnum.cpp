#include "modform/exactnum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>

namespace modform {

std::string to_string(const Rational& r) { return r.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(Errc::parse, "malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) part.remove_prefix(1);
    return !part.empty() && std::all_of(part.begin(), part.end(),
                                        [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  std::string_view num = std::string_view(s).substr(0, slash);
  if (!digits_ok(num, true)) throw bad();
  if (num[0] == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d = 1;
  if (slash != std::string::npos) {
    std::string_view den = std::string_view(s).substr(slash + 1);
    if (!digits_ok(den, false)) throw bad();
    d = Integer(std::string(den), 10);
    if (d == 0) throw Error(Errc::division_by_zero, "zero denominator in '" + s + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    if (v.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

bool is_perfect_square(const Rational& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(std::vector<Rational> minpoly) : minpoly_(std::move(minpoly)) {
  if (degree() == 1) {
    disc_ = 0;
    roots_.push_back(to_real(Rational(-minpoly_[0])));
    return;
  }
  // x^2 + b x + c
  const Rational& c = minpoly_[0];
  const Rational& b = minpoly_[1];
  disc_ = b * b - 4 * c;
  if (sgn(disc_) > 0) {
    Real s = boost::multiprecision::sqrt(to_real(disc_));
    Real mb = to_real(Rational(-b));
    roots_.push_back((mb + s) / 2);
    roots_.push_back((mb - s) / 2);
  }
}

FieldPtr NumberField::make(std::vector<Rational> minpoly) {
  if (minpoly.size() < 2) {
    throw Error(Errc::invalid_argument, "minimal polynomial must have degree >= 1");
  }
  if (minpoly.size() > 3) {
    throw Error(Errc::unsupported,
                "number fields of degree " + std::to_string(minpoly.size() - 1) +
                    " are not supported (maximum degree is 2)");
  }
  for (auto& c : minpoly) c.canonicalize();
  if (minpoly.back() != 1) throw Error(Errc::invalid_argument, "minimal polynomial must be monic");
  if (minpoly.size() == 3) {
    Rational disc = minpoly[1] * minpoly[1] - 4 * minpoly[0];
    if (is_perfect_square(disc)) {
      throw Error(Errc::domain, "quadratic minimal polynomial is reducible over Q (square discriminant)");
    }
  }
  return FieldPtr(new NumberField(std::move(minpoly)));
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = make({Rational(0), Rational(1)});
  return q;
}

const Real& NumberField::root(int which) const {
  if (roots_.empty()) {
    throw Error(Errc::domain, "field has no real embeddings (negative discriminant)");
  }
  if (which < 0 || which >= embedding_count()) {
    throw Error(Errc::invalid_argument, "embedding index " + std::to_string(which) + " out of range");
  }
  return roots_[static_cast<size_t>(which)];
}

bool NumberField::same_as(const NumberField& other) const {
  if (degree() == 1 && other.degree() == 1) return true;
  return minpoly_ == other.minpoly_;
}

// ---------------------------------------------------------------------------
// NfElement

NfElement::NfElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != field_->degree()) {
    throw Error(Errc::invalid_argument, "coordinate count does not match field degree");
  }
  for (auto& c : coords_) c.canonicalize();
}

NfElement::NfElement(FieldPtr field, const Rational& value) : field_(std::move(field)) {
  coords_.assign(static_cast<size_t>(field_->degree()), Rational(0));
  coords_[0] = value;
}

NfElement NfElement::generator(FieldPtr field) {
  if (field->degree() == 1) return NfElement(field, Rational(-field->minpoly()[0]));
  return NfElement(field, std::vector<Rational>{0, 1});
}

bool NfElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool NfElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

Rational NfElement::to_rational() const {
  if (!is_rational()) throw Error(Errc::domain, "element " + to_string() + " is not rational");
  return coords_[0];
}

Rational NfElement::trace() const {
  if (degree() == 1) return coords_[0];
  // tr(a + bτ) = 2a + b·tr(τ), tr(τ) = -minpoly[1]
  return 2 * coords_[0] - coords_[1] * field_->minpoly()[1];
}

Rational NfElement::norm() const {
  if (degree() == 1) return coords_[0];
  const auto& m = field_->minpoly();
  const Rational& a = coords_[0];
  const Rational& b = coords_[1];
  // N(a + bτ) = a^2 + a b tr(τ) + b^2 N(τ), tr(τ) = -m1, N(τ) = m0
  return a * a - a * b * m[1] + b * b * m[0];
}

NfElement NfElement::conjugate() const {
  if (degree() == 1) return *this;
  // τ' = -m1 - τ
  const auto& m = field_->minpoly();
  return NfElement(field_, {coords_[0] - coords_[1] * m[1], -coords_[1]});
}

Real NfElement::embed(int which) const {
  const Real& r = field_->root(which);
  if (degree() == 1) return to_real(coords_[0]);
  return to_real(coords_[0]) + to_real(coords_[1]) * r;
}

void NfElement::require_same_field(const NfElement& other) const {
  if (field_ != other.field_ && !field_->same_as(*other.field_)) {
    throw Error(Errc::field_mismatch, "operands live in different number fields");
  }
}

NfElement NfElement::operator-() const {
  NfElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

NfElement& NfElement::operator+=(const NfElement& rhs) {
  require_same_field(rhs);
  for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

NfElement& NfElement::operator-=(const NfElement& rhs) {
  require_same_field(rhs);
  for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

NfElement& NfElement::operator*=(const NfElement& rhs) {
  require_same_field(rhs);
  if (degree() == 1) {
    coords_[0] *= rhs.coords_[0];
    return *this;
  }
  const auto& m = field_->minpoly();
  const Rational a0 = coords_[0], a1 = coords_[1];
  const Rational& b0 = rhs.coords_[0];
  const Rational& b1 = rhs.coords_[1];
  Rational hi = a1 * b1;  // coefficient of τ^2 = -m1 τ - m0
  coords_[0] = a0 * b0 - hi * m[0];
  coords_[1] = a0 * b1 + a1 * b0 - hi * m[1];
  return *this;
}

NfElement& NfElement::operator/=(const NfElement& rhs) {
  require_same_field(rhs);
  if (rhs.is_zero()) throw Error(Errc::division_by_zero, "division by zero in number field");
  if (degree() == 1) {
    coords_[0] /= rhs.coords_[0];
    return *this;
  }
  Rational n = rhs.norm();
  *this *= rhs.conjugate();
  for (auto& c : coords_) c /= n;
  return *this;
}

NfElement& NfElement::operator*=(const Rational& rhs) {
  for (auto& c : coords_) c *= rhs;
  return *this;
}

bool operator==(const NfElement& a, const NfElement& b) {
  a.require_same_field(b);
  return a.coords_ == b.coords_;
}

std::strong_ordering operator<=>(const NfElement& a, const NfElement& b) {
  for (size_t i = 0; i < a.coords_.size() && i < b.coords_.size(); ++i) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.coords_.size() <=> b.coords_.size();
}

std::string NfElement::to_string() const {
  if (degree() == 1) return modform::to_string(coords_[0]);
  std::string out = "(" + modform::to_string(coords_[0]);
  out += sgn(coords_[1]) < 0 ? " - " : " + ";
  out += modform::to_string(Rational(abs(coords_[1]))) + "*t)";
  return out;
}

NfElement nf_arith(const NfElement& a, const NfElement& b, NfOp op) {
  switch (op) {
    case NfOp::add: return a + b;
    case NfOp::sub: return a - b;
    case NfOp::mul: return a * b;
    case NfOp::div: return a / b;
  }
  throw Error(Errc::invalid_argument, "unknown number-field operation");
}

Real nf_embed(const NfElement& a, int which, unsigned bits) {
  if (bits > kMaxEmbedBits) {
    throw Error(Errc::invalid_argument,
                "requested embedding precision exceeds " + std::to_string(kMaxEmbedBits) + " bits");
  }
  return a.embed(which);
}

nlohmann::json to_json(const NfElement& a) {
  nlohmann::json j;
  j["minpoly"] = nlohmann::json::array();
  for (const auto& c : a.field()->minpoly()) j["minpoly"].push_back(to_string(c));
  j["coords"] = nlohmann::json::array();
  for (const auto& c : a.coords()) j["coords"].push_back(to_string(c));
  return j;
}

NfElement nf_from_json(const nlohmann::json& j) {
  if (!j.contains("minpoly") || !j.contains("coords")) {
    throw Error(Errc::parse, "number-field element JSON needs 'minpoly' and 'coords'");
  }
  auto read = [](const nlohmann::json& arr) {
    std::vector<Rational> out;
    for (const auto& v : arr) {
      out.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                  : Rational(v.get<long>()));
    }
    return out;
  };
  return NfElement(NumberField::make(read(j["minpoly"])), read(j["coords"]));
}

}  // namespace modform
