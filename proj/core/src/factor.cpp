#include "cycdesc/factor.hpp"

#include <algorithm>
#include <map>

#include "cycdesc/error.hpp"
#include "upoly.hpp"

namespace cycdesc {

using detail::FpPoly;
using detail::QPoly;
using detail::ZPoly;

namespace {

constexpr std::uint64_t kMaxKroneckerDegree = 1024;
constexpr std::size_t kMaxKroneckerCombos = std::size_t{1} << 16;
constexpr int kSpecializationTries = 3;

// ------------------------------------------------------------ conversions

std::optional<std::size_t> single_variable(const Polynomial& f) {
  auto vars = f.variables();
  if (vars.size() == 1) return vars.front();
  return std::nullopt;
}

QPoly to_qpoly(const Polynomial& f, std::size_t var) {
  QPoly out(f.degree_in(var) + 1, 0);
  for (const auto& t : f.terms()) out[t.monomial[var]] = t.coeff.rational();
  detail::trim(out);
  return out;
}

FpPoly to_fppoly(const Polynomial& f, std::size_t var) {
  FpPoly out(f.degree_in(var) + 1, 0);
  for (const auto& t : f.terms()) out[t.monomial[var]] = t.coeff.residue();
  detail::trim(out);
  return out;
}

template <class Coeffs, class Make>
Polynomial from_dense(const RingPtr& ring, std::size_t var, const Coeffs& coeffs, Make make) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Monomial m(ring->nvars());
    m[var] = static_cast<std::uint32_t>(i);
    terms.push_back({std::move(m), make(coeffs[i])});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

Polynomial from_qpoly(const RingPtr& ring, std::size_t var, const QPoly& a) {
  return from_dense(ring, var, a, [&](const mpq_class& c) { return FieldElement::from_rational(ring->field(), c); });
}

Polynomial from_zpoly(const RingPtr& ring, std::size_t var, const ZPoly& a) {
  return from_dense(ring, var, a, [&](const mpz_class& c) { return FieldElement::from_integer(ring->field(), c); });
}

Polynomial from_fppoly(const RingPtr& ring, std::size_t var, const FpPoly& a) {
  return from_dense(ring, var, a, [&](std::uint64_t c) {
    return FieldElement::from_integer(ring->field(), mpz_class(std::to_string(c)));
  });
}

Polynomial one(const RingPtr& ring) { return Polynomial::constant(ring, 1); }

// ------------------------------------------------------------ gcd

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& f, std::size_t var) {
  Polynomial g(f.ring());
  for (const auto& c : f.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial lead_in(const Polynomial& f, std::size_t var) { return f.coefficients_in(var).back(); }

Polynomial exact_or_fail(const Polynomial& a, const Polynomial& b) {
  auto q = exact_quotient(a, b);
  if (!q) fail(ErrorCode::NonExactDivision, "inexact division in gcd");
  return *q;
}

// Pseudo-remainder of a by b with respect to var.
Polynomial prem(Polynomial a, const Polynomial& b, std::size_t var) {
  const std::uint32_t db = b.degree_in(var);
  const Polynomial lb = lead_in(b, var);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const std::uint32_t da = a.degree_in(var);
    Monomial shift(a.ring()->nvars());
    shift[var] = da - db;
    const Polynomial la = lead_in(a, var);
    a = lb * a - (la * b).mul_term(shift, FieldElement::from_integer(a.field(), 1));
  }
  return a;
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return one(a.ring());

  auto va = a.variables();
  auto vb = b.variables();
  if (a.field()->is_ground() && va.size() == 1 && vb.size() == 1 && va == vb) {
    const std::size_t v = va.front();
    if (a.field()->kind() == FieldKind::Rationals) {
      return from_qpoly(a.ring(), v, detail::q_gcd(to_qpoly(a, v), to_qpoly(b, v)));
    }
    const std::uint64_t p = a.field()->modulus();
    return from_fppoly(a.ring(), v, detail::fp_gcd(to_fppoly(a, v), to_fppoly(b, v), p));
  }

  std::vector<std::size_t> all;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(all));
  const std::size_t v = all.front();

  const Polynomial ca = content_in(a, v);
  const Polynomial cb = content_in(b, v);
  const Polynomial gc = gcd_rec(ca, cb);
  Polynomial pa = exact_or_fail(a, ca);
  Polynomial pb = exact_or_fail(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  if (pb.degree_in(v) == 0) return gc;

  for (;;) {
    Polynomial r = prem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return gc;
    r = exact_or_fail(r, content_in(r, v)).monic();
    pa = std::move(pb);
    pb = std::move(r);
  }
  return (gc * pb).monic();
}

// ------------------------------------------------------------ univariate

std::vector<Factor> factor_univariate(const Polynomial& f, std::size_t var) {
  std::vector<Factor> out;
  const RingPtr& ring = f.ring();
  if (f.field()->kind() == FieldKind::Rationals) {
    for (auto& [part, mult] : detail::q_squarefree(detail::q_monic(to_qpoly(f, var)))) {
      for (const auto& z : detail::z_factor_squarefree(detail::q_to_primitive_z(part))) {
        out.push_back({from_zpoly(ring, var, z).monic(), mult});
      }
    }
  } else {
    const std::uint64_t p = f.field()->modulus();
    std::mt19937_64 rng(0xc0ffee);
    for (auto& [part, mult] : detail::fp_squarefree(detail::fp_monic(to_fppoly(f, var), p), p)) {
      for (const auto& g : detail::fp_factor_squarefree(part, p, rng)) {
        out.push_back({from_fppoly(ring, var, g), mult});
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ multivariate

// a*v + b with gcd(a, b) = 1 is irreducible.
bool degree_one_certificate(const Polynomial& f) {
  for (auto v : f.variables()) {
    if (f.degree_in(v) != 1) continue;
    auto coeffs = f.coefficients_in(v);
    if (gcd_rec(coeffs[0], coeffs[1]).is_constant()) return true;
  }
  return false;
}

Polynomial homogenize(const Polynomial& f, std::size_t var, std::uint64_t degree) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m = t.monomial;
    m[var] += static_cast<std::uint32_t>(degree - t.monomial.degree());
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

Polynomial set_to_one(const Polynomial& f, std::size_t var) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m = t.monomial;
    m[var] = 0;
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

// f is irreducible if, for some variable v, its coefficients in v have no
// common factor and some substitution of constants for the other variables
// keeps deg_v(f) and leaves an irreducible polynomial in v.
bool specialization_certificate(const Polynomial& f) {
  const RingPtr& ring = f.ring();
  const std::uint64_t p = f.field()->modulus();
  const auto vars = f.variables();
  for (auto v : vars) {
    const auto coeffs = f.coefficients_in(v);
    Polynomial content = coeffs.back();
    for (const auto& c : coeffs) {
      if (content.is_constant()) break;
      if (!c.is_zero()) content = gcd_rec(content, c);
    }
    if (!content.is_constant()) continue;
    for (int attempt = 0; attempt < kSpecializationTries; ++attempt) {
      std::vector<Polynomial> images;
      for (std::size_t w = 0; w < ring->nvars(); ++w) {
        long c = 2 + attempt + 3 * static_cast<long>(w);
        if (p) c %= static_cast<long>(p);
        images.push_back(w == v ? Polynomial::variable(ring, w) : Polynomial::constant(ring, c));
      }
      const Polynomial g = f.substitute(ring, images);
      if (g.degree_in(v) != f.degree_in(v)) continue;
      const auto parts = factor_univariate(g, v);
      if (parts.size() == 1 && parts.front().multiplicity == 1) return true;
    }
  }
  return false;
}

// Smallest-degree proper irreducible divisor via Kronecker substitution, or
// nullopt when f is irreducible.
std::optional<Polynomial> kronecker_divisor(const Polynomial& f) {
  const auto vars = f.variables();
  std::uint64_t base = 0;
  for (auto v : vars) base = std::max<std::uint64_t>(base, f.degree_in(v));
  base += 1;
  std::vector<std::uint64_t> weight(vars.size());
  std::uint64_t w = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    weight[i] = w;
    if (w > kMaxKroneckerDegree) fail(ErrorCode::UnsupportedShape, "Kronecker image too large to factor");
    w *= base;
  }
  std::uint64_t image_degree = 0;
  for (const auto& t : f.terms()) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) e += t.monomial[vars[i]] * weight[i];
    image_degree = std::max(image_degree, e);
  }
  if (image_degree > kMaxKroneckerDegree) {
    fail(ErrorCode::UnsupportedShape, "Kronecker image of degree " + std::to_string(image_degree) +
                                          " exceeds the bound " + std::to_string(kMaxKroneckerDegree));
  }

  const RingPtr uring = Ring::make(f.field(), {"y"});
  std::vector<Polynomial::Term> image_terms;
  for (const auto& t : f.terms()) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) e += t.monomial[vars[i]] * weight[i];
    image_terms.push_back({Monomial(std::vector<std::uint32_t>{static_cast<std::uint32_t>(e)}), t.coeff});
  }
  const Polynomial image = Polynomial::from_terms(uring, std::move(image_terms));

  // Irreducible factors of the image, including the power of y.
  std::vector<Factor> parts;
  const std::uint32_t low = image.terms().back().monomial[0];
  if (low > 0) parts.push_back({Polynomial::variable(uring, 0), low});
  Monomial shift(std::vector<std::uint32_t>{low});
  std::vector<Polynomial::Term> shifted;
  for (const auto& t : image.terms()) shifted.push_back({t.monomial / shift, t.coeff});
  const Polynomial rest = Polynomial::from_terms(uring, std::move(shifted));
  if (!rest.is_constant()) {
    for (auto& fac : factor_univariate(rest, 0)) parts.push_back(std::move(fac));
  }

  std::size_t combos = 1;
  for (const auto& part : parts) {
    combos *= part.multiplicity + 1;
    if (combos > kMaxKroneckerCombos) fail(ErrorCode::UnsupportedShape, "too many Kronecker factor combinations");
  }
  struct Choice {
    std::uint64_t degree;
    std::vector<unsigned> counts;
  };
  std::vector<Choice> choices;
  std::vector<unsigned> counts(parts.size(), 0);
  for (std::size_t n = 0; n < combos; ++n) {
    std::size_t rem = n;
    std::uint64_t deg = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      counts[j] = static_cast<unsigned>(rem % (parts[j].multiplicity + 1));
      rem /= parts[j].multiplicity + 1;
      deg += counts[j] * parts[j].factor.total_degree();
    }
    if (deg == 0 || 2 * deg > image_degree) continue;
    choices.push_back({deg, counts});
  }
  std::stable_sort(choices.begin(), choices.end(),
                   [](const Choice& a, const Choice& b) { return a.degree < b.degree; });

  for (const auto& choice : choices) {
    Polynomial prod = one(uring);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (choice.counts[j]) prod = prod * parts[j].factor.pow(choice.counts[j]);
    }
    std::vector<Polynomial::Term> terms;
    for (const auto& t : prod.terms()) {
      std::uint64_t e = t.monomial[0];
      Monomial m(f.ring()->nvars());
      for (std::size_t i = 0; i < vars.size(); ++i) {
        m[vars[i]] = static_cast<std::uint32_t>(e % base);
        e /= base;
      }
      if (e != 0) break;
      terms.push_back({std::move(m), t.coeff});
    }
    if (terms.size() != prod.size()) continue;
    const Polynomial candidate = Polynomial::from_terms(f.ring(), std::move(terms));
    if (candidate.is_constant()) continue;
    if (exact_quotient(f, candidate)) return candidate.monic();
  }
  return std::nullopt;
}

void factor_ground(const Polynomial& f, std::vector<Factor>& out) {
  if (f.is_constant()) return;
  const RingPtr& ring = f.ring();

  // Monomial content.
  Monomial content = f.terms().front().monomial;
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < content.size(); ++v) content[v] = std::min(content[v], t.monomial[v]);
  }
  Polynomial g = f;
  if (!content.is_one()) {
    for (std::size_t v = 0; v < content.size(); ++v) {
      if (content[v]) out.push_back({Polynomial::variable(ring, v), content[v]});
    }
    std::vector<Polynomial::Term> terms;
    for (const auto& t : f.terms()) terms.push_back({t.monomial / content, t.coeff});
    g = Polynomial::from_terms(ring, std::move(terms));
  }
  if (g.is_constant()) return;

  const auto vars = g.variables();
  if (vars.size() == 1) {
    for (auto& fac : factor_univariate(g, vars.front())) out.push_back(std::move(fac));
    return;
  }
  if (degree_one_certificate(g)) {
    out.push_back({g.monic(), 1});
    return;
  }
  if (g.is_homogeneous()) {
    const std::size_t y = vars.back();
    std::vector<Factor> inner;
    factor_ground(set_to_one(g, y), inner);
    for (auto& fac : inner) {
      out.push_back({homogenize(fac.factor, y, fac.factor.total_degree()).monic(), fac.multiplicity});
    }
    return;
  }
  if (specialization_certificate(g)) {
    out.push_back({g.monic(), 1});
    return;
  }
  auto divisor = kronecker_divisor(g);
  if (!divisor) {
    out.push_back({g.monic(), 1});
    return;
  }
  unsigned mult = 0;
  while (auto q = exact_quotient(g, *divisor)) {
    g = std::move(*q);
    ++mult;
  }
  out.push_back({*divisor, mult});
  factor_ground(g, out);
}

// ------------------------------------------------------------ k(u)[x]

Polynomial lcm_poly(const Polynomial& a, const Polynomial& b) {
  return exact_or_fail(a * b, gcd_rec(a, b)).monic();
}

void factor_over_function_field(const Polynomial& f, std::vector<Factor>& out) {
  const FieldPtr& field = f.field();
  const RingPtr& pring = field->param_ring();
  const std::size_t np = pring->nvars();
  const std::size_t nx = f.ring()->nvars();

  Polynomial den = one(pring);
  for (const auto& t : f.terms()) den = lcm_poly(den, t.coeff.denominator());

  std::vector<std::string> names = field->params();
  for (const auto& v : f.ring()->vars()) names.push_back(v);
  const RingPtr big = Ring::make(field->base(), names);

  std::vector<Polynomial::Term> terms;
  for (const auto& t : f.terms()) {
    const Polynomial num = exact_or_fail(t.coeff.numerator() * den, t.coeff.denominator());
    for (const auto& pt : num.terms()) {
      Monomial m(np + nx);
      for (std::size_t i = 0; i < np; ++i) m[i] = pt.monomial[i];
      for (std::size_t j = 0; j < nx; ++j) m[np + j] = t.monomial[j];
      terms.push_back({std::move(m), pt.coeff});
    }
  }
  std::vector<Factor> inner;
  factor_ground(Polynomial::from_terms(big, std::move(terms)), inner);

  for (const auto& fac : inner) {
    std::map<Monomial, std::vector<Polynomial::Term>> grouped;
    for (const auto& t : fac.factor.terms()) {
      Monomial mx(nx), mu(np);
      for (std::size_t i = 0; i < np; ++i) mu[i] = t.monomial[i];
      for (std::size_t j = 0; j < nx; ++j) mx[j] = t.monomial[np + j];
      grouped[mx].push_back({std::move(mu), t.coeff});
    }
    if (grouped.size() == 1 && grouped.begin()->first.is_one()) continue;  // unit in k(u)
    std::vector<Polynomial::Term> back;
    for (auto& [mx, coeff_terms] : grouped) {
      const Polynomial num = Polynomial::from_terms(pring, std::move(coeff_terms));
      back.push_back({mx, FieldElement::from_fraction(field, num, one(pring))});
    }
    out.push_back({Polynomial::from_terms(f.ring(), std::move(back)).monic(), fac.multiplicity});
  }
}

std::vector<Factor> normalize(std::vector<Factor> factors) {
  std::vector<Factor> merged;
  for (auto& fac : factors) {
    Polynomial m = fac.factor.monic();
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Factor& x) { return x.factor == m; });
    if (it == merged.end()) {
      merged.push_back({std::move(m), fac.multiplicity});
    } else {
      it->multiplicity += fac.multiplicity;
    }
  }
  std::sort(merged.begin(), merged.end(), [](const Factor& a, const Factor& b) {
    return a.factor.compare(b.factor) < 0;
  });
  return merged;
}

}  // namespace

std::optional<Polynomial> exact_quotient(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "exact division by zero");
  const Polynomial divisors[] = {b};
  auto res = divrem(a, divisors, MonomialOrder::degrevlex());
  if (!res.remainder.is_zero()) return std::nullopt;
  return std::move(res.quotients.front());
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  return gcd_rec(a, b);
}

std::vector<Factor> squarefree_decomposition(const Polynomial& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "square-free decomposition of zero");
  if (!f.field()->is_ground()) {
    fail(ErrorCode::UnsupportedShape, "square-free decomposition needs a ground field");
  }
  std::vector<Factor> out;
  if (f.is_constant()) return out;
  auto var = single_variable(f);
  if (!var) fail(ErrorCode::UnsupportedShape, "square-free decomposition of a multivariate polynomial");
  const RingPtr& ring = f.ring();
  if (f.field()->kind() == FieldKind::Rationals) {
    for (auto& [part, mult] : detail::q_squarefree(detail::q_monic(to_qpoly(f, *var)))) {
      out.push_back({from_qpoly(ring, *var, part), mult});
    }
  } else {
    const std::uint64_t p = f.field()->modulus();
    for (auto& [part, mult] : detail::fp_squarefree(detail::fp_monic(to_fppoly(f, *var), p), p)) {
      out.push_back({from_fppoly(ring, *var, part), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.multiplicity < b.multiplicity; });
  return out;
}

std::vector<Factor> factor_poly(const Polynomial& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "factorization of the zero polynomial");
  std::vector<Factor> out;
  if (f.is_constant()) return out;
  if (f.field()->is_ground()) {
    factor_ground(f, out);
  } else {
    factor_over_function_field(f, out);
  }
  return normalize(std::move(out));
}

bool is_irreducible(const Polynomial& f) {
  if (f.is_zero() || f.is_constant()) return false;
  auto factors = factor_poly(f);
  return factors.size() == 1 && factors.front().multiplicity == 1;
}

}  // namespace cycdesc
