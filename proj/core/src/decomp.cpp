#include "cycdesc/decomp.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cycdesc/error.hpp"
#include "cycdesc/factor.hpp"

namespace cycdesc {

namespace {

constexpr int kMaxSplitDepth = 64;
constexpr int kPrimitiveElementTries = 8;

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& set) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (std::find(set.begin(), set.end(), v) == set.end()) out.push_back(v);
  }
  return out;
}

std::string fresh_variable(const FieldPtr& field, const std::string& stem) {
  const auto& params = field->params();
  std::string name = stem;
  for (int k = 1; std::find(params.begin(), params.end(), name) != params.end(); ++k) {
    name = stem + std::to_string(k);
  }
  return name;
}

// Splits the variables of `ring` into parameters u and remaining w.
struct Extension {
  RingPtr source;
  std::vector<std::size_t> u, w;
  RingPtr target;  // K[w], K = k(u)

  Extension(const RingPtr& ring, const std::vector<std::size_t>& independent)
      : source(ring), u(independent), w(complement(ring->nvars(), independent)) {
    if (u.empty()) {
      target = ring;
      return;
    }
    std::vector<std::string> params, vars;
    for (auto v : u) params.push_back(ring->vars()[v]);
    for (auto v : w) vars.push_back(ring->vars()[v]);
    target = Ring::make(FieldDesc::rational_functions(ring->field(), params), vars);
  }

  Polynomial extend(const Polynomial& f) const {
    if (u.empty()) return f;
    const FieldPtr& field = target->field();
    const RingPtr& pring = field->param_ring();
    std::map<Monomial, std::vector<Polynomial::Term>> grouped;
    for (const auto& t : f.terms()) {
      Monomial mw(w.size()), mu(u.size());
      for (std::size_t i = 0; i < w.size(); ++i) mw[i] = t.monomial[w[i]];
      for (std::size_t i = 0; i < u.size(); ++i) mu[i] = t.monomial[u[i]];
      grouped[mw].push_back({std::move(mu), t.coeff});
    }
    std::vector<Polynomial::Term> terms;
    const Polynomial one = Polynomial::constant(pring, 1);
    for (auto& [mw, coeff_terms] : grouped) {
      terms.push_back({mw, FieldElement::from_fraction(field, Polynomial::from_terms(pring, std::move(coeff_terms)), one)});
    }
    return Polynomial::from_terms(target, std::move(terms));
  }

  Ideal extend(const Ideal& ideal) const {
    if (u.empty()) return ideal;
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(extend(g));
    return Ideal(target, std::move(gens));
  }

  // A polynomial of k[x] generating the same ideal of K[w] as f.
  Polynomial contract(const Polynomial& f) const {
    if (u.empty()) return f;
    const RingPtr& pring = target->field()->param_ring();
    Polynomial den = Polynomial::constant(pring, 1);
    for (const auto& t : f.terms()) {
      const Polynomial d = t.coeff.denominator();
      den = *exact_quotient(den * d, poly_gcd(den, d));
    }
    std::vector<Polynomial::Term> terms;
    for (const auto& t : f.terms()) {
      const Polynomial num = *exact_quotient(t.coeff.numerator() * den, t.coeff.denominator());
      for (const auto& pt : num.terms()) {
        Monomial m(source->nvars());
        for (std::size_t i = 0; i < w.size(); ++i) m[w[i]] = t.monomial[i];
        for (std::size_t i = 0; i < u.size(); ++i) m[u[i]] = pt.monomial[i];
        terms.push_back({std::move(m), pt.coeff});
      }
    }
    return Polynomial::from_terms(source, std::move(terms)).monic();
  }
};

// Minimal polynomial of ell in K[w]/ideal (ideal zero-dimensional), as a
// polynomial in a fresh variable over K.
Polynomial minimal_polynomial(const Ideal& ideal, const Polynomial& ell) {
  const RingPtr& ring = ideal.ring();
  const FieldPtr& field = ring->field();
  const auto monomials = standard_monomials(ideal);
  if (!monomials) fail(ErrorCode::VerificationFailure, "extended ideal is not zero-dimensional");
  std::map<Monomial, std::size_t> column;
  for (std::size_t i = 0; i < monomials->size(); ++i) column[(*monomials)[i]] = i;
  const std::size_t dim = monomials->size();

  auto to_vector = [&](const Polynomial& p) {
    std::vector<FieldElement> v(dim, FieldElement(field));
    for (const auto& t : p.terms()) v[column.at(t.monomial)] = t.coeff;
    return v;
  };

  struct Row {
    std::vector<FieldElement> vec;
    std::vector<FieldElement> comb;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Polynomial power = ideal.normal_form(Polynomial::constant(ring, 1));
  for (std::size_t i = 0; i <= dim; ++i) {
    std::vector<FieldElement> v = to_vector(power);
    std::vector<FieldElement> comb(i + 1, FieldElement(field));
    comb[i] = FieldElement::from_integer(field, 1);
    for (const auto& row : rows) {
      if (v[row.pivot].is_zero()) continue;
      const FieldElement factor = v[row.pivot] / row.vec[row.pivot];
      for (std::size_t k = 0; k < dim; ++k) {
        if (!row.vec[k].is_zero()) v[k] -= factor * row.vec[k];
      }
      for (std::size_t k = 0; k < row.comb.size(); ++k) comb[k] -= factor * row.comb[k];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const FieldElement& e) { return !e.is_zero(); });
    if (nz == v.end()) {
      const RingPtr zring = Ring::make(field, {fresh_variable(field, "z")});
      std::vector<Polynomial::Term> terms;
      for (std::size_t k = 0; k < comb.size(); ++k) {
        if (!comb[k].is_zero()) terms.push_back({Monomial(std::vector<std::uint32_t>{static_cast<std::uint32_t>(k)}), comb[k]});
      }
      return Polynomial::from_terms(zring, std::move(terms)).monic();
    }
    const auto pivot = static_cast<std::size_t>(nz - v.begin());
    rows.push_back({std::move(v), std::move(comb), pivot});
    power = ideal.normal_form(power * ell);
  }
  fail(ErrorCode::VerificationFailure, "no linear dependency among powers of the primitive element");
}

// Lcm over the block-order basis of the leading coefficients in k[u].
Polynomial leading_coefficient_lcm(const Ideal& ideal, const std::vector<std::size_t>& w) {
  const RingPtr& ring = ideal.ring();
  std::vector<bool> mask(ring->nvars(), false);
  for (auto v : w) mask[v] = true;
  const MonomialOrder order = MonomialOrder::block_elim(mask);
  Polynomial h = Polynomial::constant(ring, 1);
  for (const auto& g : ideal.groebner_basis(order)) {
    const Monomial& lm = g.leading_term(order).monomial;
    std::vector<Polynomial::Term> coeff_terms;
    for (const auto& t : g.terms()) {
      bool same = true;
      for (auto v : w) same = same && t.monomial[v] == lm[v];
      if (!same) continue;
      Monomial m = t.monomial;
      for (auto v : w) m[v] = 0;
      coeff_terms.push_back({std::move(m), t.coeff});
    }
    const Polynomial c = Polynomial::from_terms(ring, std::move(coeff_terms));
    if (!c.is_constant()) h = *exact_quotient(h * c, poly_gcd(h, c));
  }
  return h.monic();
}

class Splitter {
 public:
  std::vector<PrimeIdeal> found;

  void split(const Ideal& j, int depth) {
    if (depth > kMaxSplitDepth) fail(ErrorCode::UndecidedPrimality, "prime splitting exceeded its depth bound");
    if (j.is_unit()) return;
    const auto& gb = j.groebner_basis();
    if (gb.empty()) {
      found.emplace_back(j, PrimeCertificate::FactorSplitLeaf);
      return;
    }
    bool all_irreducible = true;
    for (const auto& g : gb) {
      std::vector<Factor> fs;
      try {
        fs = factor_poly(g);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedShape) throw;
        all_irreducible = false;
        continue;
      }
      if (fs.size() > 1 || fs.front().multiplicity > 1) {
        for (const auto& f : fs) split(j.with(f.factor), depth + 1);
        return;
      }
    }
    const bool linear = std::all_of(gb.begin(), gb.end(), [](const Polynomial& g) { return g.total_degree() <= 1; });
    if (linear || (gb.size() == 1 && all_irreducible)) {
      found.emplace_back(Ideal(j.ring(), gb), PrimeCertificate::FactorSplitLeaf);
      return;
    }
    function_field_step(j, depth);
  }

 private:
  void function_field_step(const Ideal& j, int depth) {
    const RingPtr& ring = j.ring();
    const auto dim = ideal_dimension(j);
    const Extension ext(ring, dim.independent_set);
    const Polynomial h = ext.u.empty() ? Polynomial::constant(ring, 1) : leading_coefficient_lcm(j, ext.w);
    const Ideal je = ext.extend(j);
    const auto vd = vector_space_dimension(je);
    if (!vd) fail(ErrorCode::VerificationFailure, "independent set does not make the ideal zero-dimensional");

    for (int attempt = 0; attempt < kPrimitiveElementTries; ++attempt) {
      // ell = w_last + c*w_{last-1} + c^2*w_{last-2} + ...
      Polynomial ell(ext.target);
      FieldElement weight = FieldElement::from_integer(ext.target->field(), 1);
      const FieldElement c = FieldElement::from_integer(ext.target->field(), attempt);
      for (std::size_t k = ext.w.size(); k-- > 0;) {
        ell = ell + Polynomial::variable(ext.target, k).scaled(weight);
        weight *= c;
        if (weight.is_zero()) break;
      }
      const Polynomial m = minimal_polynomial(je, ell);
      const auto fs = factor_poly(m);
      if (fs.size() > 1 || fs.front().multiplicity > 1) {
        for (const auto& f : fs) {
          std::vector<Polynomial> at{ell};
          split(j.with(ext.contract(f.factor.substitute(ext.target, at))), depth + 1);
        }
        if (!h.is_constant()) split(j.with(h), depth + 1);
        return;
      }
      if (m.total_degree() == *vd) {
        const Ideal sat = h.is_constant() ? j : saturate(j, h);
        found.emplace_back(Ideal(ring, sat.groebner_basis()), PrimeCertificate::TriangularIrreducible);
        if (!h.is_constant() && sat != j) split(j.with(h), depth + 1);
        return;
      }
    }
    fail(ErrorCode::UndecidedPrimality, "could not certify primality of " + j.to_string());
  }
};

std::vector<PrimeIdeal> minimal_only(std::vector<PrimeIdeal> primes) {
  std::vector<PrimeIdeal> unique;
  for (auto& p : primes) {
    if (std::none_of(unique.begin(), unique.end(), [&](const PrimeIdeal& q) { return q == p; })) {
      unique.push_back(std::move(p));
    }
  }
  std::vector<PrimeIdeal> out;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    bool minimal = true;
    for (std::size_t k = 0; k < unique.size() && minimal; ++k) {
      if (k != i && unique[i].ideal().contains(unique[k].ideal())) minimal = false;
    }
    if (minimal) out.push_back(unique[i]);
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.to_string() < b.to_string();
  });
  return out;
}

std::uint64_t multiplicity_with(const Ideal& ideal, const PrimeIdeal& p, const std::vector<PrimeIdeal>& minimal) {
  auto self = std::find(minimal.begin(), minimal.end(), p);
  if (self == minimal.end()) {
    fail(ErrorCode::NotMinimal, p.to_string() + " is not a minimal prime of " + ideal.to_string());
  }
  const RingPtr& ring = ideal.ring();
  Polynomial s = Polynomial::constant(ring, 1);
  for (const auto& q : minimal) {
    if (q == p) continue;
    for (const auto& g : q.ideal().groebner_basis()) {
      if (!p.ideal().contains(g)) {
        s = s * g;
        break;
      }
    }
  }
  const Extension ext(ring, ideal_dimension(p.ideal()).independent_set);
  Ideal primary = ext.extend(ideal);
  if (!s.is_constant()) primary = saturate(primary, ext.extend(s));
  const auto total = vector_space_dimension(primary);
  const auto residue = vector_space_dimension(ext.extend(p.ideal()));
  if (!total || !residue || *residue == 0) {
    fail(ErrorCode::VerificationFailure, "localization at " + p.to_string() + " is not zero-dimensional");
  }
  if (*total % *residue != 0) {
    fail(ErrorCode::NonExactDivision, "length computation for " + p.to_string() + ": " + std::to_string(*total) +
                                          " is not a multiple of " + std::to_string(*residue));
  }
  return *total / *residue;
}

}  // namespace

const char* certificate_name(PrimeCertificate c) {
  switch (c) {
    case PrimeCertificate::FactorSplitLeaf:
      return "factor-split-leaf";
    case PrimeCertificate::TriangularIrreducible:
      return "triangular-irreducible";
    case PrimeCertificate::UserAsserted:
      return "user-asserted";
    case PrimeCertificate::Contraction:
      return "contraction";
  }
  return "unknown";
}

PrimeIdeal::PrimeIdeal(Ideal ideal, PrimeCertificate certificate)
    : ideal_(std::move(ideal)), certificate_(certificate) {
  if (ideal_.is_unit()) fail(ErrorCode::InvalidArgument, "the unit ideal is not prime");
}

std::string PrimeIdeal::to_string() const {
  const auto gens = ideal_.canonical_generators();
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += gens[i].to_string();
  }
  return out + ")";
}

namespace {

// Decompositions are memoized by ring and reduced Groebner basis; pullbacks
// along a fiber square revisit the same ideals many times.
template <typename Value>
class DecompCache {
 public:
  template <typename Compute>
  Value get(const Ideal& ideal, Compute compute) {
    std::string key = ideal.ring()->to_string();
    for (const auto& g : ideal.groebner_basis()) key += "|" + g.to_string();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = entries_.find(key);
      if (it != entries_.end()) return it->second;
    }
    Value v = compute();
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.emplace(std::move(key), std::move(v)).first->second;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.clear();
  }

 private:
  std::mutex mu_;
  std::map<std::string, Value> entries_;
};

DecompCache<std::vector<PrimeIdeal>>& prime_cache() {
  static DecompCache<std::vector<PrimeIdeal>> cache;
  return cache;
}

DecompCache<std::vector<ComponentData>>& component_cache() {
  static DecompCache<std::vector<ComponentData>> cache;
  return cache;
}

}  // namespace

void clear_decomposition_cache() {
  prime_cache().clear();
  component_cache().clear();
}

std::vector<PrimeIdeal> minimal_primes(const Ideal& ideal) {
  return prime_cache().get(ideal, [&] {
    Splitter splitter;
    splitter.split(ideal, 0);
    return minimal_only(std::move(splitter.found));
  });
}

std::uint64_t multiplicity(const Ideal& ideal, const PrimeIdeal& p) {
  if (!same_ring(ideal.ring(), p.ideal().ring())) fail(ErrorCode::RingMismatch, "prime and ideal in different rings");
  if (!p.ideal().contains(ideal)) {
    fail(ErrorCode::NotMinimal, p.to_string() + " does not contain " + ideal.to_string());
  }
  return multiplicity_with(ideal, p, minimal_primes(ideal));
}

std::vector<ComponentData> components(const Ideal& ideal) {
  return component_cache().get(ideal, [&] {
    const auto minimal = minimal_primes(ideal);
    std::vector<ComponentData> out;
    for (const auto& p : minimal) out.push_back({p, multiplicity_with(ideal, p, minimal)});
    return out;
  });
}

int prime_dimension(const PrimeIdeal& p) { return ideal_dimension(p.ideal()).dimension; }

int point_codim(const Ideal& ideal, const PrimeIdeal& p) {
  if (!p.ideal().contains(ideal)) {
    fail(ErrorCode::NotContaining, p.to_string() + " does not contain " + ideal.to_string());
  }
  const int dp = prime_dimension(p);
  int best = 0;
  for (const auto& q : minimal_primes(ideal)) {
    if (p.ideal().contains(q.ideal())) best = std::max(best, prime_dimension(q) - dp);
  }
  return best;
}

Ideal extend_to_function_field(const Ideal& ideal, const std::vector<std::size_t>& independent) {
  return Extension(ideal.ring(), independent).extend(ideal);
}

Polynomial extend_polynomial(const Polynomial& f, const RingPtr& extended, const std::vector<std::size_t>& independent) {
  const Extension ext(f.ring(), independent);
  if (!same_ring(ext.target, extended)) fail(ErrorCode::RingMismatch, "extension ring does not match");
  return ext.extend(f);
}

}  // namespace cycdesc
