#include <numeric>
#include <random>

#include "cycdesc/error.hpp"
#include "cycdesc/factor.hpp"
#include "cycdesc/polynomial.hpp"
#include "doctest.h"

using namespace cycdesc;

namespace {

RingPtr qring(std::vector<std::string> vars) { return Ring::make(FieldDesc::rationals(), std::move(vars)); }

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }

Polynomial product(const std::vector<Factor>& fs, const RingPtr& r) {
  Polynomial acc = Polynomial::constant(r, 1);
  for (const auto& f : fs) acc = acc * f.factor.pow(f.multiplicity);
  return acc;
}

// Multiplicative order of p modulo d.
unsigned order_mod(unsigned p, unsigned d) {
  unsigned k = 1, v = p % d;
  while (v != 1) {
    v = v * p % d;
    ++k;
  }
  return k;
}

unsigned phi(unsigned n) {
  unsigned c = 0;
  for (unsigned k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

}  // namespace

TEST_CASE("fields: canonical forms and arithmetic") {
  auto q = FieldDesc::rationals();
  auto a = FieldElement::from_rational(q, mpq_class(6, 4));
  CHECK(a.to_string() == "3/2");
  CHECK((a * a.inverse()).is_one());
  CHECK_THROWS_AS(FieldElement(q).inverse(), Error);

  auto f7 = FieldDesc::prime_field(7);
  auto b = FieldElement::from_integer(f7, -1);
  CHECK(b.residue() == 6);
  CHECK((b * b).is_one());
  for (long k = 1; k < 7; ++k) {
    auto x = FieldElement::from_integer(f7, k);
    CHECK((x * x.inverse()).is_one());
  }
  CHECK_THROWS_AS(FieldDesc::prime_field(9), Error);

  auto ku = FieldDesc::rational_functions(q, {"u"});
  auto u = parse_polynomial("u", ku->param_ring());
  auto one = Polynomial::constant(ku->param_ring(), 1);
  auto fu = FieldElement::from_fraction(ku, u * u - one, u - one);
  CHECK(fu.to_string() == "u + 1");
  auto inv = fu.inverse();
  CHECK((fu * inv).is_one());
  CHECK(inv.to_string() == "1/(u + 1)");
  CHECK(FieldElement::from_fraction(ku, u, u).is_one());
}

TEST_CASE("polynomials: parsing and printing round trip") {
  auto r = qring({"t", "x"});
  auto f = P(r, "x^3 - 2*t + 1/2");
  CHECK(f.to_string() == "x^3 - 2*t + 1/2");
  CHECK(P(r, f.to_string()) == f);
  CHECK(P(r, "(x + t)^2").to_string() == "t^2 + 2*t*x + x^2");
  CHECK(P(r, "x - x").to_string() == "0");
  CHECK(P(r, "-x*t/3").to_string() == "-1/3*t*x");
  CHECK_THROWS_AS(P(r, "x / t"), Error);
  CHECK_THROWS_AS(P(r, "y + 1"), Error);
  try {
    P(r, "x + * t");
    FAIL("expected syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
  }
}

TEST_CASE("polynomials: ring axioms on random inputs") {
  auto r = qring({"a", "b", "c"});
  std::mt19937 rng(7);
  auto e = [&] { return static_cast<std::uint32_t>(rng() % 3); };
  auto random_poly = [&] {
    std::vector<Polynomial::Term> terms;
    for (int i = 0; i < 5; ++i) {
      Monomial m(std::vector<std::uint32_t>{e(), e(), e()});
      long c = static_cast<long>(rng() % 11) - 5;
      terms.push_back({m, FieldElement::from_integer(r->field(), c)});
    }
    return Polynomial::from_terms(r, terms);
  };
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_poly(), g = random_poly(), h = random_poly();
    CHECK((f + g) == (g + f));
    CHECK((f * g) == (g * f));
    CHECK((f * (g + h)) == (f * g + f * h));
    CHECK(((f * g) * h) == (f * (g * h)));
    CHECK((f - f).is_zero());
    if (!g.is_zero()) {
      auto q = exact_quotient(f * g, g);
      REQUIRE(q.has_value());
      CHECK(*q == f);
    }
  }
}

TEST_CASE("polynomials: division identity") {
  auto r = qring({"x", "y"});
  auto f = P(r, "x^2*y + x*y^2 + y^2");
  std::vector<Polynomial> ds = {P(r, "x*y - 1"), P(r, "y^2 - 1")};
  for (auto order : {MonomialOrder::lex(), MonomialOrder::degrevlex()}) {
    auto res = divrem(f, ds, order);
    auto recon = res.remainder;
    for (std::size_t i = 0; i < ds.size(); ++i) recon = recon + res.quotients[i] * ds[i];
    CHECK(recon == f);
    for (const auto& t : res.remainder.terms()) {
      for (const auto& d : ds) CHECK_FALSE(d.leading_term(order).monomial.divides(t.monomial));
    }
  }
  CHECK_THROWS_AS(divrem(f, std::vector<Polynomial>{Polynomial(r)}, MonomialOrder::lex()), Error);
}

TEST_CASE("polynomials: substitution is a ring map") {
  auto src = qring({"a", "b"});
  auto dst = qring({"t"});
  std::vector<Polynomial> images = {P(dst, "t^2"), P(dst, "t^3")};
  CHECK(P(src, "b^2 - a^3").substitute(dst, images).is_zero());
  auto f = P(src, "a*b + 1"), g = P(src, "a - b");
  CHECK((f * g).substitute(dst, images) == f.substitute(dst, images) * g.substitute(dst, images));
}

TEST_CASE("gcd over Q and F_p") {
  auto r = qring({"x", "y"});
  auto g = P(r, "x*y + 1");
  CHECK(poly_gcd(g * P(r, "x^2 - y"), g * P(r, "y^3 + x")) == g);
  CHECK(poly_gcd(P(r, "x^2 - 1"), P(r, "x^2 - 2*x + 1")) == P(r, "x - 1"));
  CHECK(poly_gcd(P(r, "x"), P(r, "y")).is_one());

  auto r5 = Ring::make(FieldDesc::prime_field(5), {"x"});
  CHECK(poly_gcd(parse_polynomial("x^5 - x", r5), parse_polynomial("x^2 - 1", r5)) ==
        parse_polynomial("x^2 - 1", r5));
}

TEST_CASE("factorization over Q: cyclotomic counts") {
  auto r = qring({"x"});
  for (unsigned n = 1; n <= 24; ++n) {
    auto f = P(r, "x^" + std::to_string(n) + " - 1");
    auto fs = factor_poly(f);
    unsigned divisors = 0;
    for (unsigned d = 1; d <= n; ++d) divisors += n % d == 0;
    CHECK(fs.size() == divisors);
    CHECK(product(fs, r) == f);
    for (const auto& fac : fs) CHECK(fac.multiplicity == 1);
  }
}

TEST_CASE("factorization over Q: hard cases") {
  auto r = qring({"x"});
  // Irreducible over Q but reducible modulo every prime.
  CHECK(is_irreducible(P(r, "x^4 - 10*x^2 + 1")));
  auto fs = factor_poly(P(r, "x^4 + 4"));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor.total_degree() == 2);
  auto g = P(r, "(x - 1)^3*(x^2 + 1)^2*(2*x + 3)");
  fs = factor_poly(g);
  REQUIRE(fs.size() == 3);
  CHECK(product(fs, r) == g.monic());
  CHECK(is_irreducible(P(r, "x^2 - 2")));
  CHECK_FALSE(is_irreducible(P(r, "x^2")));
  CHECK_FALSE(is_irreducible(P(r, "3")));
  CHECK_THROWS_AS(factor_poly(Polynomial(r)), Error);
}

TEST_CASE("factorization over F_p: x^n - 1 counts match the order formula") {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
    auto r = Ring::make(FieldDesc::prime_field(p), {"x"});
    for (unsigned n = 1; n <= 20; ++n) {
      if (n % p == 0) continue;
      unsigned expected = 0;
      for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0) expected += d == 1 ? 1 : phi(d) / order_mod(p, d);
      }
      auto f = parse_polynomial("x^" + std::to_string(n) + " - 1", r);
      auto fs = factor_poly(f);
      CHECK(fs.size() == expected);
      CHECK(product(fs, r) == f);
    }
  }
}

TEST_CASE("factorization over F_p: inseparable input") {
  auto r = Ring::make(FieldDesc::prime_field(3), {"x", "t"});
  auto f = parse_polynomial("x^3 - t^3", r);
  auto fs = factor_poly(f);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].multiplicity == 3);
  auto r2 = Ring::make(FieldDesc::prime_field(2), {"x"});
  auto g = parse_polynomial("x^4 + 1", r2);
  fs = factor_poly(g);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].multiplicity == 4);
  auto sq = squarefree_decomposition(parse_polynomial("x^6 + x^4 + x^2 + 1", r2));
  CHECK(product(sq, r2) == parse_polynomial("x^6 + x^4 + x^2 + 1", r2));
}

TEST_CASE("factorization: brute-force irreducibility oracle over F_3") {
  // Every monic polynomial of degree <= 4 over F_3 is checked against trial
  // division by all monic polynomials of degree <= 2.
  auto r = Ring::make(FieldDesc::prime_field(3), {"x"});
  auto f3 = r->field();
  auto make = [&](unsigned code, unsigned deg) {
    std::vector<Polynomial::Term> terms;
    for (unsigned i = 0; i < deg; ++i) {
      terms.push_back({Monomial(std::vector<std::uint32_t>{i}), FieldElement::from_integer(f3, code % 3)});
      code /= 3;
    }
    terms.push_back({Monomial(std::vector<std::uint32_t>{deg}), FieldElement::from_integer(f3, 1)});
    return Polynomial::from_terms(r, terms);
  };
  std::vector<Polynomial> small;
  for (unsigned d = 1; d <= 2; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= 3;
    for (unsigned c = 0; c < count; ++c) small.push_back(make(c, d));
  }
  for (unsigned deg = 1; deg <= 4; ++deg) {
    unsigned count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= 3;
    for (unsigned c = 0; c < count; ++c) {
      auto f = make(c, deg);
      bool reducible = false;
      for (const auto& s : small) {
        if (2 * s.total_degree() <= deg && exact_quotient(f, s)) reducible = true;
      }
      CHECK(is_irreducible(f) == !reducible);
    }
  }
}

TEST_CASE("factorization: multivariate") {
  auto r = qring({"a", "b", "c"});
  CHECK(is_irreducible(P(r, "b^2 - a^3")));
  auto fs = factor_poly(P(r, "a^2 - b^2"));
  CHECK(fs.size() == 2);
  fs = factor_poly(P(r, "a^3*b^2 - a*b^4"));
  CHECK(product(fs, r) == P(r, "a^3*b^2 - a*b^4"));
  CHECK(fs.size() == 4);
  auto g = P(r, "(a*b + c)^2*(a^2 - c^3 + 1)");
  fs = factor_poly(g);
  REQUIRE(fs.size() == 2);
  CHECK(product(fs, r) == g.monic());
  CHECK(is_irreducible(P(r, "a*c + b + 1")));
}

TEST_CASE("factorization over a rational function field") {
  auto ku = FieldDesc::rational_functions(FieldDesc::rationals(), {"u"});
  auto r = Ring::make(ku, {"x"});
  CHECK(is_irreducible(parse_polynomial("x^2 - u", r)));
  auto fs = factor_poly(parse_polynomial("x^2 - u^2", r));
  CHECK(fs.size() == 2);
  fs = factor_poly(parse_polynomial("u*x^2 - 1/u", r));
  CHECK(fs.size() == 2);
  CHECK(poly_gcd(parse_polynomial("x^2 - u^2", r), parse_polynomial("x - u", r)) ==
        parse_polynomial("x - u", r));
}
