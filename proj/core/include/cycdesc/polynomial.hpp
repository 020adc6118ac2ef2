#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycdesc/field.hpp"
#include "cycdesc/ring.hpp"

namespace cycdesc {

/// Exact multivariate polynomial. Terms are stored without zero coefficients,
/// sorted by descending DegRevLex so that printing is reproducible.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    FieldElement coeff;
  };

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const FieldElement& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, const FieldElement& c);
  /// Combines like terms and drops zeros; input order is irrelevant.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const FieldPtr& field() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }

  /// Leading term under DegRevLex. Requires a nonzero polynomial.
  const Term& leading_term() const { return terms_.front(); }
  const Term& leading_term(const MonomialOrder& order) const;
  const FieldElement& leading_coefficient() const { return terms_.front().coeff; }

  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  /// Indices of the variables that occur, ascending.
  std::vector<std::size_t> variables() const;

  /// Divides by the DegRevLex leading coefficient; zero stays zero.
  Polynomial monic() const;
  Polynomial scaled(const FieldElement& c) const;
  Polynomial mul_term(const Monomial& m, const FieldElement& c) const;
  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;

  /// f = sum_k coeffs[k] * var^k, each coefficient free of var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;

  /// Ring homomorphism: variable i maps to images[i] (all in `target`).
  Polynomial substitute(const RingPtr& target, std::span<const Polynomial> images) const;
  /// Variable i maps to variable var_map[i] of `target`; fields must agree.
  Polynomial rename(const RingPtr& target, std::span<const std::size_t> var_map) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }
  /// Deterministic total order (by terms, then coefficients).
  int compare(const Polynomial& other) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;

  friend struct PolynomialAccess;
};

/// Throws RingMismatch unless both polynomials live in the same ring.
void check_same_ring(const Polynomial& a, const Polynomial& b);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division: f = sum q_i d_i + r with no term of r divisible by
/// any leading monomial. Divisors are tried in list order.
DivisionResult divrem(const Polynomial& f, std::span<const Polynomial> divisors,
                      const MonomialOrder& order);

/// Parses "x^3 - 2*t + 1/2" over `ring`. Rational-function parameters of the
/// ring's field may appear as constants. Throws Error(Syntax) with column.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

}  // namespace cycdesc
