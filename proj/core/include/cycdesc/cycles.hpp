#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "cycdesc/scheme.hpp"

namespace cycdesc {

/// A finite Z-linear combination of points of one scheme. Zero
/// coefficients are never stored; terms stay sorted by point.
class Cycle {
 public:
  struct Term {
    SchemePoint point;
    mpz_class coeff;
  };

  explicit Cycle(SchemePtr scheme) : scheme_(std::move(scheme)) {}
  static Cycle of_point(const SchemePoint& p, const mpz_class& coeff = 1);

  const SchemePtr& scheme() const { return scheme_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coefficient(const SchemePoint& p) const;

  /// Adds c * p, merging with an equal point.
  void add(const SchemePoint& p, const mpz_class& c);
  void add(const Cycle& other, const mpz_class& c = 1);

  Cycle operator+(const Cycle& other) const;
  Cycle operator-(const Cycle& other) const;
  Cycle operator*(const mpz_class& c) const;
  bool operator==(const Cycle& other) const;
  bool operator!=(const Cycle& other) const { return !(*this == other); }

  /// "2*[piece=X0; (t, x)] - 1*[piece=X1; (pi)]"; the zero cycle prints "0".
  std::string to_string() const;

 private:
  SchemePtr scheme_;
  std::vector<Term> terms_;
};

/// Sum over pieces and minimal primes p of multiplicity(ideal, p) * p.
Cycle cycl(const ClosedSubscheme& z);

/// Linear extension of y -> cycl(f^-1(closure of y)).
Cycle naive_pullback(const MorphismPtr& f, const Cycle& c);
Cycle naive_pullback(const MorphismPtr& f, const SchemePoint& y);

/// Pointwise image along a closed immersion. Throws NotClosedImmersion
/// unless the morphism carries the closed_immersion witness.
Cycle pushforward_closed(const MorphismPtr& i, const Cycle& c);

/// Codimension of the point in its piece.
int point_codimension(const SchemePoint& p);

/// Splits c by codimension of each point in its piece.
std::map<int, Cycle> grade(const Cycle& c);

}  // namespace cycdesc
