#include "cycdesc/field.hpp"

#include <set>

#include "cycdesc/error.hpp"
#include "cycdesc/factor.hpp"
#include "cycdesc/polynomial.hpp"
#include "cycdesc/ring.hpp"

namespace cycdesc {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mpz(const mpz_class& n, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldPtr FieldDesc::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<FieldDesc>(new FieldDesc());
    f->kind_ = FieldKind::Rationals;
    return f;
  }();
  return q;
}

FieldPtr FieldDesc::prime_field(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  auto f = std::shared_ptr<FieldDesc>(new FieldDesc());
  f->kind_ = FieldKind::PrimeField;
  f->modulus_ = p;
  return f;
}

FieldPtr FieldDesc::rational_functions(FieldPtr base, std::vector<std::string> params) {
  if (!base || !base->is_ground()) {
    fail(ErrorCode::InvalidArgument, "rational function fields nest at most one level");
  }
  if (params.empty()) fail(ErrorCode::InvalidArgument, "rational function field without parameters");
  auto f = std::shared_ptr<FieldDesc>(new FieldDesc());
  f->kind_ = FieldKind::RationalFunctions;
  f->modulus_ = base->modulus_;
  f->param_ring_ = Ring::make(base, params);
  f->base_ = std::move(base);
  f->params_ = std::move(params);
  return f;
}

std::string FieldDesc::to_string() const {
  switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::PrimeField:
      return "F_" + std::to_string(modulus_);
    case FieldKind::RationalFunctions: {
      std::string out = base_->to_string() + "(";
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) out += ", ";
        out += params_[i];
      }
      return out + ")";
    }
  }
  return "?";
}

bool FieldDesc::operator==(const FieldDesc& other) const {
  if (kind_ != other.kind_ || modulus_ != other.modulus_) return false;
  if (kind_ != FieldKind::RationalFunctions) return true;
  return params_ == other.params_ && same_field(base_, other.base_);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

struct FieldElement::Fraction {
  Polynomial num;
  Polynomial den;
};

FieldElement::FieldElement(FieldPtr field) : field_(std::move(field)) {
  switch (field_->kind()) {
    case FieldKind::Rationals:
      value_ = mpq_class(0);
      break;
    case FieldKind::PrimeField:
      value_ = std::uint64_t{0};
      break;
    case FieldKind::RationalFunctions:
      value_ = std::shared_ptr<const Fraction>();
      break;
  }
}

FieldElement FieldElement::from_integer(FieldPtr field, const mpz_class& n) {
  switch (field->kind()) {
    case FieldKind::Rationals:
      return FieldElement(std::move(field), Value(mpq_class(n)));
    case FieldKind::PrimeField: {
      auto r = reduce_mpz(n, field->modulus());
      return FieldElement(std::move(field), Value(r));
    }
    case FieldKind::RationalFunctions: {
      auto c = FieldElement::from_integer(field->base(), n);
      auto num = Polynomial::constant(field->param_ring(), c);
      return make_fraction(std::move(field), std::move(num), Polynomial::constant(field->param_ring(), 1));
    }
  }
  return FieldElement(std::move(field));
}

FieldElement FieldElement::from_rational(FieldPtr field, const mpq_class& q_in) {
  mpq_class q(q_in);
  q.canonicalize();
  switch (field->kind()) {
    case FieldKind::Rationals:
      return FieldElement(std::move(field), Value(q));
    case FieldKind::PrimeField: {
      const auto p = field->modulus();
      auto num = reduce_mpz(q.get_num(), p);
      auto den = reduce_mpz(q.get_den(), p);
      if (den == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes in " + field->to_string());
      auto inv = powmod(den, p - 2, p);
      return FieldElement(std::move(field), Value(mulmod(num, inv, p)));
    }
    case FieldKind::RationalFunctions: {
      auto c = FieldElement::from_rational(field->base(), q);
      auto num = Polynomial::constant(field->param_ring(), c);
      return make_fraction(std::move(field), std::move(num), Polynomial::constant(field->param_ring(), 1));
    }
  }
  return FieldElement(std::move(field));
}

FieldElement FieldElement::from_fraction(FieldPtr field, const Polynomial& num, const Polynomial& den) {
  if (field->kind() != FieldKind::RationalFunctions) {
    fail(ErrorCode::FieldMismatch, "fraction of polynomials in " + field->to_string());
  }
  if (!same_ring(num.ring(), field->param_ring()) || !same_ring(den.ring(), field->param_ring())) {
    fail(ErrorCode::RingMismatch, "fraction components must live in " + field->param_ring()->to_string());
  }
  return make_fraction(std::move(field), num, den);
}

FieldElement FieldElement::make_fraction(FieldPtr field, Polynomial num, Polynomial den) {
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator in " + field->to_string());
  if (num.is_zero()) return FieldElement(std::move(field));
  if (!den.is_constant()) {
    Polynomial g = poly_gcd(num, den);
    if (!g.is_one()) {
      num = *exact_quotient(num, g);
      den = *exact_quotient(den, g);
    }
  }
  const FieldElement lc = den.leading_coefficient();
  if (!lc.is_one()) {
    const FieldElement inv = lc.inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  auto frac = std::make_shared<const Fraction>(Fraction{std::move(num), std::move(den)});
  return FieldElement(std::move(field), Value(std::move(frac)));
}

bool FieldElement::is_zero() const {
  switch (value_.index()) {
    case 0:
      return sgn(std::get<0>(value_)) == 0;
    case 1:
      return std::get<1>(value_) == 0;
    default:
      return std::get<2>(value_) == nullptr;
  }
}

bool FieldElement::is_one() const {
  switch (value_.index()) {
    case 0:
      return std::get<0>(value_) == 1;
    case 1:
      return std::get<1>(value_) == 1 % field_->modulus();
    default: {
      const auto& f = std::get<2>(value_);
      return f && f->num.is_one() && f->den.is_one();
    }
  }
}

bool FieldElement::is_negative() const {
  switch (value_.index()) {
    case 0:
      return sgn(std::get<0>(value_)) < 0;
    case 1:
      return false;
    default: {
      const auto& f = std::get<2>(value_);
      return f && f->num.leading_coefficient().is_negative();
    }
  }
}

bool FieldElement::is_compound() const {
  if (value_.index() != 2) return false;
  const auto& f = std::get<2>(value_);
  return f && (f->num.size() > 1 || !f->den.is_one());
}

const mpq_class& FieldElement::rational() const {
  if (value_.index() != 0) fail(ErrorCode::FieldMismatch, "not a rational: " + to_string());
  return std::get<0>(value_);
}

std::uint64_t FieldElement::residue() const {
  if (value_.index() != 1) fail(ErrorCode::FieldMismatch, "not a residue: " + to_string());
  return std::get<1>(value_);
}

Polynomial FieldElement::numerator() const {
  if (value_.index() != 2) fail(ErrorCode::FieldMismatch, "not a rational function: " + to_string());
  const auto& f = std::get<2>(value_);
  return f ? f->num : Polynomial(field_->param_ring());
}

Polynomial FieldElement::denominator() const {
  if (value_.index() != 2) fail(ErrorCode::FieldMismatch, "not a rational function: " + to_string());
  const auto& f = std::get<2>(value_);
  return f ? f->den : Polynomial::constant(field_->param_ring(), 1);
}

void FieldElement::check_same(const FieldElement& other) const {
  if (field_ != other.field_ && !(*field_ == *other.field_)) {
    fail(ErrorCode::FieldMismatch, "elements of " + field_->to_string() + " and " +
                                       other.field_->to_string() + " combined");
  }
}

FieldElement FieldElement::operator-() const {
  switch (value_.index()) {
    case 0:
      return FieldElement(field_, Value(mpq_class(-std::get<0>(value_))));
    case 1: {
      auto r = std::get<1>(value_);
      return FieldElement(field_, Value(r == 0 ? r : field_->modulus() - r));
    }
    default: {
      const auto& f = std::get<2>(value_);
      if (!f) return *this;
      auto frac = std::make_shared<const Fraction>(Fraction{-f->num, f->den});
      return FieldElement(field_, Value(std::move(frac)));
    }
  }
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in " + field_->to_string());
  switch (value_.index()) {
    case 0:
      return FieldElement(field_, Value(mpq_class(1 / std::get<0>(value_))));
    case 1: {
      const auto p = field_->modulus();
      return FieldElement(field_, Value(powmod(std::get<1>(value_), p - 2, p)));
    }
    default: {
      const auto& f = std::get<2>(value_);
      return make_fraction(field_, f->den, f->num);
    }
  }
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  switch (a.value_.index()) {
    case 0:
      return FieldElement(a.field_, FieldElement::Value(mpq_class(std::get<0>(a.value_) + std::get<0>(b.value_))));
    case 1: {
      const auto p = a.field_->modulus();
      auto s = std::get<1>(a.value_) + std::get<1>(b.value_);
      if (s >= p) s -= p;
      return FieldElement(a.field_, FieldElement::Value(s));
    }
    default: {
      const auto& fa = std::get<2>(a.value_);
      const auto& fb = std::get<2>(b.value_);
      if (!fa) return b;
      if (!fb) return a;
      if (fa->den.is_one() && fb->den.is_one()) {
        Polynomial num = fa->num + fb->num;
        if (num.is_zero()) return FieldElement(a.field_);
        auto frac = std::make_shared<const FieldElement::Fraction>(FieldElement::Fraction{std::move(num), fa->den});
        return FieldElement(a.field_, FieldElement::Value(std::move(frac)));
      }
      if (fa->den == fb->den) return FieldElement::make_fraction(a.field_, fa->num + fb->num, fa->den);
      return FieldElement::make_fraction(a.field_, fa->num * fb->den + fb->num * fa->den, fa->den * fb->den);
    }
  }
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  switch (a.value_.index()) {
    case 0:
      return FieldElement(a.field_, FieldElement::Value(mpq_class(std::get<0>(a.value_) * std::get<0>(b.value_))));
    case 1:
      return FieldElement(a.field_, FieldElement::Value(mulmod(std::get<1>(a.value_), std::get<1>(b.value_),
                                                               a.field_->modulus())));
    default: {
      const auto& fa = std::get<2>(a.value_);
      const auto& fb = std::get<2>(b.value_);
      if (!fa || !fb) return FieldElement(a.field_);
      if (fa->den.is_one() && fb->den.is_one()) {
        auto frac = std::make_shared<const FieldElement::Fraction>(
            FieldElement::Fraction{fa->num * fb->num, fa->den});
        return FieldElement(a.field_, FieldElement::Value(std::move(frac)));
      }
      return FieldElement::make_fraction(a.field_, fa->num * fb->num, fa->den * fb->den);
    }
  }
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  return a * b.inverse();
}

bool FieldElement::operator==(const FieldElement& other) const {
  if (value_.index() != other.value_.index()) return false;
  switch (value_.index()) {
    case 0:
      return std::get<0>(value_) == std::get<0>(other.value_);
    case 1:
      return std::get<1>(value_) == std::get<1>(other.value_);
    default: {
      const auto& fa = std::get<2>(value_);
      const auto& fb = std::get<2>(other.value_);
      if (!fa || !fb) return !fa && !fb;
      return fa->num == fb->num && fa->den == fb->den;
    }
  }
}

int FieldElement::compare(const FieldElement& other) const {
  if (value_.index() != other.value_.index()) return value_.index() < other.value_.index() ? -1 : 1;
  switch (value_.index()) {
    case 0:
      return cmp(std::get<0>(value_), std::get<0>(other.value_)) < 0   ? -1
             : cmp(std::get<0>(value_), std::get<0>(other.value_)) > 0 ? 1
                                                                        : 0;
    case 1: {
      auto x = std::get<1>(value_), y = std::get<1>(other.value_);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    default: {
      const auto& fa = std::get<2>(value_);
      const auto& fb = std::get<2>(other.value_);
      if (!fa || !fb) return (fa ? 1 : 0) - (fb ? 1 : 0);
      if (int c = fa->num.compare(fb->num)) return c;
      return fa->den.compare(fb->den);
    }
  }
}

FieldElement FieldElement::canonicalized() const {
  switch (value_.index()) {
    case 0: {
      mpq_class q(std::get<0>(value_));
      q.canonicalize();
      return FieldElement(field_, Value(q));
    }
    case 1:
      return FieldElement(field_, Value(std::get<1>(value_) % field_->modulus()));
    default: {
      const auto& f = std::get<2>(value_);
      if (!f) return *this;
      return make_fraction(field_, f->num, f->den);
    }
  }
}

std::string FieldElement::to_string() const {
  switch (value_.index()) {
    case 0:
      return std::get<0>(value_).get_str();
    case 1:
      return std::to_string(std::get<1>(value_));
    default: {
      const auto& f = std::get<2>(value_);
      if (!f) return "0";
      if (f->den.is_one()) return f->num.to_string();
      std::string num = f->num.to_string();
      if (f->num.size() > 1) num = "(" + num + ")";
      std::string den = f->den.to_string();
      const bool bare = f->den.size() == 1 && f->den.leading_coefficient().is_one() &&
                        f->den.variables().size() == 1 && f->den.total_degree() == 1;
      if (!bare) den = "(" + den + ")";
      return num + "/" + den;
    }
  }
}

}  // namespace cycdesc
