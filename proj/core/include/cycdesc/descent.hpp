#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cycdesc/cycles.hpp"
#include "cycdesc/intlat.hpp"

namespace cycdesc {

/// A positive integer kept as a prime factorization. Stands for an lcm or
/// product over a finite list of points, never over all of Y.
class SupernaturalTrunc {
 public:
  SupernaturalTrunc() = default;
  static SupernaturalTrunc of(const mpz_class& n);

  const std::map<mpz_class, unsigned>& factorization() const { return factors_; }
  mpz_class value() const;
  bool is_one() const { return factors_.empty(); }
  bool divides(const mpz_class& n) const;

  SupernaturalTrunc lcm(const SupernaturalTrunc& other) const;
  SupernaturalTrunc operator*(const SupernaturalTrunc& other) const;

  /// "2^2*3", or "1".
  std::string to_string() const;

 private:
  std::map<mpz_class, unsigned> factors_;
};

/// f: X -> Y, the fiber square X x_Y X and the finite set of Y-points the
/// invariants are computed over.
class DescentProblem {
 public:
  /// Throws InvalidArgument if a scope point is not on Y.
  DescentProblem(MorphismPtr f, std::vector<SchemePoint> scope);

  const MorphismPtr& morphism() const { return f_; }
  const FiberProduct& square() const { return square_; }
  const std::vector<SchemePoint>& scope() const { return scope_; }

 private:
  MorphismPtr f_;
  FiberProduct square_;
  std::vector<SchemePoint> scope_;
};

/// (pr1* - pr2*)(c) on X x_Y X.
Cycle descent_defect(const DescentProblem& p, const Cycle& c);

/// Minimal primes of f^-1(closure of y) with their lengths, as X-points.
std::vector<Cycle::Term> preimage_components(const DescentProblem& p, const SchemePoint& y);

/// The components above that lie over y (image_point == y).
std::vector<Cycle::Term> fiber_components(const DescentProblem& p, const SchemePoint& y);

/// gcd of the lengths at all generic points of f^-1(closure of y). Throws
/// EmptyFiber when the preimage is empty.
mpz_class g_y(const DescentProblem& p, const SchemePoint& y);

/// Same gcd over the generic points lying over y. Throws EmptyFiber if none.
mpz_class g_res_y(const DescentProblem& p, const SchemePoint& y);

struct ScopeInvariant {
  SupernaturalTrunc value;
  /// Scope points contributing; points with empty fibers are skipped.
  std::size_t points = 0;
  std::size_t skipped = 0;
};

/// lcm of g_y over the scope.
ScopeInvariant g_scope(const DescentProblem& p);

/// Product of g_res_y over the scope.
ScopeInvariant pi_res_scope(const DescentProblem& p);

struct EffectiveOrder {
  mpz_class order;
  Cycle witness;  // on Y, with f*(witness) == order * c
};

/// Smallest m >= 1 with m*c in the image of f* restricted to the Y-points
/// below c's points and the scope; nullopt if no multiple lies there.
std::optional<EffectiveOrder> effective_order(const DescentProblem& p, const Cycle& c);

/// Invariant factors (1s dropped, 0 for a free summand) of
///   (fiber span intersected with ker(pr1* - pr2*)) / Z f*(y).
/// Requires f to be asserted universally generalizing
/// (NotUniversallyGeneralizing otherwise). Every torsion factor is checked
/// to divide g_y (VerificationFailure otherwise).
IntVector h_local(const DescentProblem& p, const SchemePoint& y);

/// Invariants of Z^{X-points} / span{f*(y) : y in scope}, over the X-points
/// appearing in those pullbacks.
struct EffectiveQuotient {
  std::vector<SchemePoint> basis;
  IntVector invariants;
};
EffectiveQuotient effective_descent_quotient(const DescentProblem& p);

struct PointReport {
  SchemePoint point;
  std::optional<mpz_class> g, g_res;  // empty for empty fibers
  std::optional<IntVector> h_local;   // only for universally generalizing f
};

struct SaturationReport {
  std::vector<PointReport> points;
  std::size_t span_rank = 0;
  bool desc_saturated = false;
  bool eff_desc_saturated = false;
  SupernaturalTrunc g;
  /// Set when f is asserted generalizing: eff-desc saturated iff g == 1.
  std::optional<bool> criterion_holds;
  bool hard_failure() const;
};

SaturationReport check_saturation(const DescentProblem& p);

}  // namespace cycdesc
