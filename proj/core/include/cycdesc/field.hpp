#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cycdesc {

class FieldDesc;
class Ring;
class Polynomial;

using FieldPtr = std::shared_ptr<const FieldDesc>;
using RingPtr = std::shared_ptr<const Ring>;

enum class FieldKind { Rationals, PrimeField, RationalFunctions };

/// A coefficient field: Q, F_p, or a rational function field k(u1, ..., un)
/// over one of those. At most one transcendental layer is supported.
class FieldDesc {
 public:
  static FieldPtr rationals();
  /// Throws InvalidArgument unless p is prime.
  static FieldPtr prime_field(std::uint64_t p);
  /// Throws InvalidArgument if base is itself a rational function field or
  /// the parameter list is empty or contains duplicates.
  static FieldPtr rational_functions(FieldPtr base, std::vector<std::string> params);

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return modulus_; }
  /// The prime p for F_p (and for k(u) over F_p); 0 in characteristic zero.
  std::uint64_t modulus() const { return modulus_; }
  bool is_ground() const { return kind_ != FieldKind::RationalFunctions; }

  /// For rational function fields: the ground field, its parameters, and the
  /// polynomial ring k[params] that numerators and denominators live in.
  const FieldPtr& base() const { return base_; }
  const std::vector<std::string>& params() const { return params_; }
  const RingPtr& param_ring() const { return param_ring_; }

  /// "Q", "F_5", "Q(pi)", "F_3(u, v)".
  std::string to_string() const;

  bool operator==(const FieldDesc& other) const;

 private:
  FieldDesc() = default;

  FieldKind kind_ = FieldKind::Rationals;
  std::uint64_t modulus_ = 0;
  FieldPtr base_;
  std::vector<std::string> params_;
  RingPtr param_ring_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

bool is_prime(std::uint64_t n);

/// An element of a FieldDesc in canonical form: reduced rationals, residues
/// in [0, p), or reduced fractions of parameter polynomials with monic
/// denominator. Equality is representational equality.
class FieldElement {
 public:
  /// The zero of `field`.
  explicit FieldElement(FieldPtr field);

  static FieldElement from_integer(FieldPtr field, const mpz_class& n);
  static FieldElement from_integer(FieldPtr field, long n) {
    return from_integer(std::move(field), mpz_class(n));
  }
  static FieldElement from_rational(FieldPtr field, const mpq_class& q);
  /// num/den with num, den in field->param_ring(); den must be nonzero.
  static FieldElement from_fraction(FieldPtr field, const Polynomial& num, const Polynomial& den);

  const FieldPtr& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the printed form carries a leading minus sign.
  bool is_negative() const;

  const mpq_class& rational() const;
  std::uint64_t residue() const;
  /// Rational function fields only.
  Polynomial numerator() const;
  Polynomial denominator() const;
  /// True for rational function values whose printed form needs parentheses
  /// when used as a coefficient.
  bool is_compound() const;

  FieldElement operator-() const;
  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }
  /// Deterministic total order used for sorting output.
  int compare(const FieldElement& other) const;

  /// Re-derives the canonical form from the stored value. Idempotent.
  FieldElement canonicalized() const;

  std::string to_string() const;

 private:
  struct Fraction;
  using Value = std::variant<mpq_class, std::uint64_t, std::shared_ptr<const Fraction>>;

  FieldElement(FieldPtr field, Value value) : field_(std::move(field)), value_(std::move(value)) {}
  static FieldElement make_fraction(FieldPtr field, Polynomial num, Polynomial den);
  void check_same(const FieldElement& other) const;

  FieldPtr field_;
  Value value_;
};

}  // namespace cycdesc
