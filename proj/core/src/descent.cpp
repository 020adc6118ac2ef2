#include "cycdesc/descent.hpp"

#include <algorithm>

#include "cycdesc/error.hpp"

namespace cycdesc {

namespace {

std::vector<SchemePoint> support_union(const std::vector<const Cycle*>& cycles) {
  std::vector<SchemePoint> out;
  for (const Cycle* c : cycles) {
    for (const auto& t : c->terms()) {
      if (std::find(out.begin(), out.end(), t.point) == out.end()) out.push_back(t.point);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntVector coordinates(const Cycle& c, const std::vector<SchemePoint>& basis) {
  IntVector v(basis.size());
  for (const auto& t : c.terms()) {
    auto it = std::find(basis.begin(), basis.end(), t.point);
    if (it == basis.end()) fail(ErrorCode::VerificationFailure, "cycle leaves the chosen point span");
    v[static_cast<std::size_t>(it - basis.begin())] = t.coeff;
  }
  return v;
}

mpz_class gcd_of(const std::vector<Cycle::Term>& terms) {
  mpz_class g = 0;
  for (const auto& t : terms) g = gcd(g, t.coeff);
  return g;
}

// Matrix of (pr1* - pr2*) on the given X-points, with its row basis.
IntMatrix defect_matrix(const DescentProblem& p, const std::vector<SchemePoint>& span) {
  std::vector<Cycle> defects;
  for (const auto& x : span) defects.push_back(descent_defect(p, Cycle::of_point(x)));
  std::vector<const Cycle*> ptrs;
  for (const auto& d : defects) ptrs.push_back(&d);
  const auto rows = support_union(ptrs);
  std::vector<IntVector> cols;
  for (const auto& d : defects) cols.push_back(coordinates(d, rows));
  return IntMatrix::from_columns(rows.size(), cols);
}

bool generalizing(const MorphismPtr& f) {
  return f->has(MorphismProperty::Generalizing) || f->has(MorphismProperty::UniversallyGeneralizing) ||
         f->has(MorphismProperty::Flat);
}

}  // namespace

SupernaturalTrunc SupernaturalTrunc::of(const mpz_class& n) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "supernatural truncation of a nonpositive integer");
  SupernaturalTrunc out;
  mpz_class rest = n;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    while (rest % p == 0) {
      ++out.factors_[p];
      rest /= p;
    }
  }
  if (rest > 1) ++out.factors_[rest];
  return out;
}

mpz_class SupernaturalTrunc::value() const {
  mpz_class v = 1;
  for (const auto& [p, e] : factors_) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

bool SupernaturalTrunc::divides(const mpz_class& n) const { return n % value() == 0; }

SupernaturalTrunc SupernaturalTrunc::lcm(const SupernaturalTrunc& other) const {
  SupernaturalTrunc out = *this;
  for (const auto& [p, e] : other.factors_) out.factors_[p] = std::max(out.factors_[p], e);
  return out;
}

SupernaturalTrunc SupernaturalTrunc::operator*(const SupernaturalTrunc& other) const {
  SupernaturalTrunc out = *this;
  for (const auto& [p, e] : other.factors_) out.factors_[p] += e;
  return out;
}

std::string SupernaturalTrunc::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : factors_) {
    if (!out.empty()) out += '*';
    out += p.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

DescentProblem::DescentProblem(MorphismPtr f, std::vector<SchemePoint> scope)
    : f_(std::move(f)), square_(fiber_product(f_, f_)), scope_(std::move(scope)) {
  for (const auto& y : scope_) {
    if (y.scheme() != f_->target()) fail(ErrorCode::InvalidArgument, "scope point " + y.to_string() + " is not on the target");
  }
}

Cycle descent_defect(const DescentProblem& p, const Cycle& c) {
  return naive_pullback(p.square().pr1, c) - naive_pullback(p.square().pr2, c);
}

std::vector<Cycle::Term> preimage_components(const DescentProblem& p, const SchemePoint& y) {
  return naive_pullback(p.morphism(), y).terms();
}

std::vector<Cycle::Term> fiber_components(const DescentProblem& p, const SchemePoint& y) {
  std::vector<Cycle::Term> out;
  for (const auto& t : preimage_components(p, y)) {
    if (image_point(p.morphism(), t.point) == y) out.push_back(t);
  }
  return out;
}

mpz_class g_y(const DescentProblem& p, const SchemePoint& y) {
  const auto terms = preimage_components(p, y);
  if (terms.empty()) fail(ErrorCode::EmptyFiber, "preimage of the closure of " + y.to_string() + " is empty");
  return gcd_of(terms);
}

mpz_class g_res_y(const DescentProblem& p, const SchemePoint& y) {
  const auto terms = fiber_components(p, y);
  if (terms.empty()) fail(ErrorCode::EmptyFiber, "fiber over " + y.to_string() + " is empty");
  return gcd_of(terms);
}

namespace {

template <typename F>
ScopeInvariant over_scope(const DescentProblem& p, F combine, mpz_class (*value)(const DescentProblem&, const SchemePoint&)) {
  ScopeInvariant out;
  for (const auto& y : p.scope()) {
    try {
      out.value = combine(out.value, SupernaturalTrunc::of(value(p, y)));
      ++out.points;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyFiber) throw;
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace

ScopeInvariant g_scope(const DescentProblem& p) {
  return over_scope(
      p, [](const SupernaturalTrunc& a, const SupernaturalTrunc& b) { return a.lcm(b); }, &g_y);
}

ScopeInvariant pi_res_scope(const DescentProblem& p) {
  return over_scope(
      p, [](const SupernaturalTrunc& a, const SupernaturalTrunc& b) { return a * b; }, &g_res_y);
}

std::optional<EffectiveOrder> effective_order(const DescentProblem& p, const Cycle& c) {
  const MorphismPtr& f = p.morphism();
  if (c.is_zero()) fail(ErrorCode::InvalidArgument, "effective order of the zero cycle");
  if (c.scheme() != f->source()) fail(ErrorCode::InvalidArgument, "cycle does not live on the source of " + f->name());
  std::vector<SchemePoint> candidates;
  auto add_candidate = [&](const SchemePoint& y) {
    if (std::find(candidates.begin(), candidates.end(), y) == candidates.end()) candidates.push_back(y);
  };
  for (const auto& t : c.terms()) add_candidate(image_point(f, t.point));
  for (const auto& y : p.scope()) add_candidate(y);
  std::sort(candidates.begin(), candidates.end());

  std::vector<Cycle> pulled;
  for (const auto& y : candidates) pulled.push_back(naive_pullback(f, y));
  std::vector<const Cycle*> ptrs{&c};
  for (const auto& q : pulled) ptrs.push_back(&q);
  const auto basis = support_union(ptrs);

  // Kernel of [A | -c]: its last coordinates form the ideal of admissible m.
  std::vector<IntVector> cols;
  for (const auto& q : pulled) cols.push_back(coordinates(q, basis));
  IntVector target = coordinates(c, basis);
  IntVector neg = target;
  for (auto& v : neg) v = -v;
  cols.push_back(neg);
  const IntMatrix augmented = IntMatrix::from_columns(basis.size(), cols);
  mpz_class m = 0;
  for (const auto& k : kernel_basis(augmented)) m = gcd(m, k.back());
  if (m == 0) return std::nullopt;

  cols.pop_back();
  for (auto& v : target) v *= m;
  const auto x = solve_integer(IntMatrix::from_columns(basis.size(), cols), target);
  if (!x) fail(ErrorCode::VerificationFailure, "no witness for the computed effective order");
  Cycle witness(f->target());
  for (std::size_t i = 0; i < candidates.size(); ++i) witness.add(candidates[i], (*x)[i]);
  if (naive_pullback(f, witness) != c * m) fail(ErrorCode::VerificationFailure, "effective order witness does not pull back");
  return EffectiveOrder{m, std::move(witness)};
}

IntVector h_local(const DescentProblem& p, const SchemePoint& y) {
  const MorphismPtr& f = p.morphism();
  if (!f->has(MorphismProperty::UniversallyGeneralizing)) {
    fail(ErrorCode::NotUniversallyGeneralizing, f->name() + " is not asserted universally_generalizing");
  }
  std::vector<SchemePoint> fiber;
  for (const auto& t : fiber_components(p, y)) fiber.push_back(t.point);
  if (fiber.empty()) return {};
  std::sort(fiber.begin(), fiber.end());

  const IntMatrix defects = defect_matrix(p, fiber);
  const auto kernel = kernel_basis(defects);
  const IntVector v = coordinates(naive_pullback(f, y), fiber);
  const IntMatrix kmat = IntMatrix::from_columns(fiber.size(), kernel);
  const auto c = solve_integer(kmat, v);
  if (!c) fail(ErrorCode::VerificationFailure, "pullback of " + y.to_string() + " has a nonzero descent defect");

  IntVector out;
  const mpz_class g = g_y(p, y);
  for (const auto& d : quotient_invariants(kernel.size(), IntMatrix::from_columns(kernel.size(), {*c}))) {
    if (d == 1) continue;
    if (d != 0 && g % d != 0) {
      fail(ErrorCode::VerificationFailure, "torsion factor " + d.get_str() + " at " + y.to_string() +
                                               " does not divide g_y = " + g.get_str());
    }
    out.push_back(d);
  }
  return out;
}

EffectiveQuotient effective_descent_quotient(const DescentProblem& p) {
  std::vector<Cycle> pulled;
  for (const auto& y : p.scope()) pulled.push_back(naive_pullback(p.morphism(), y));
  std::vector<const Cycle*> ptrs;
  for (const auto& q : pulled) ptrs.push_back(&q);
  EffectiveQuotient out;
  out.basis = support_union(ptrs);
  std::vector<IntVector> cols;
  for (const auto& q : pulled) cols.push_back(coordinates(q, out.basis));
  out.invariants = quotient_invariants(out.basis.size(), IntMatrix::from_columns(out.basis.size(), cols));
  return out;
}

bool SaturationReport::hard_failure() const { return !desc_saturated || (criterion_holds && !*criterion_holds); }

SaturationReport check_saturation(const DescentProblem& p) {
  const MorphismPtr& f = p.morphism();
  if (p.scope().empty()) fail(ErrorCode::InvalidArgument, "saturation check needs a nonempty scope");
  SaturationReport report;
  for (const auto& y : p.scope()) {
    PointReport pr{y, std::nullopt, std::nullopt, std::nullopt};
    try {
      pr.g = g_y(p, y);
      pr.g_res = g_res_y(p, y);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyFiber) throw;
    }
    if (f->has(MorphismProperty::UniversallyGeneralizing)) pr.h_local = h_local(p, y);
    report.points.push_back(std::move(pr));
  }
  const EffectiveQuotient eff = effective_descent_quotient(p);
  report.span_rank = eff.basis.size();
  report.eff_desc_saturated = std::all_of(eff.invariants.begin(), eff.invariants.end(),
                                          [](const mpz_class& d) { return d == 0 || d == 1; });
  const auto kernel = kernel_basis(defect_matrix(p, eff.basis));
  report.desc_saturated = is_saturated(eff.basis.size(), IntMatrix::from_columns(eff.basis.size(), kernel));
  report.g = g_scope(p).value;
  if (generalizing(f)) report.criterion_holds = report.eff_desc_saturated == report.g.is_one();
  return report;
}

}  // namespace cycdesc
