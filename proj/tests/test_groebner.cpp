#include <random>

#include "cycdesc/error.hpp"
#include "cycdesc/groebner.hpp"
#include "doctest.h"

using namespace cycdesc;

namespace {

RingPtr qring(std::vector<std::string> vars) { return Ring::make(FieldDesc::rationals(), std::move(vars)); }

Ideal I(const RingPtr& r, std::vector<std::string> gens) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, r));
  return Ideal(r, ps);
}

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST_CASE("groebner bases: small examples") {
  auto r = qring({"x", "t"});
  auto gb = I(r, {"x^2 - t", "t"}).groebner_basis(MonomialOrder::lex());
  CHECK(strings(gb) == std::vector<std::string>{"t", "x^2"});
  CHECK(strings(I(r, {"x"}).groebner_basis()) == std::vector<std::string>{"x"});
  CHECK(strings(I(r, {"x", "x - 1"}).groebner_basis()) == std::vector<std::string>{"1"});
  CHECK(I(r, {}).groebner_basis().empty());
  CHECK(I(r, {"x", "x - 1"}).is_unit());
}

TEST_CASE("groebner bases: reducedness and S-pair closure") {
  auto r = qring({"x", "y", "z"});
  auto ideal = I(r, {"x^2 + y*z - 2", "y^2 + x*z - 3", "x*y + z^2 - 5"});
  for (auto order : {MonomialOrder::lex(), MonomialOrder::degrevlex(), MonomialOrder::block_elim(1, 3)}) {
    const auto& gb = ideal.groebner_basis(order);
    CHECK(is_groebner_basis(gb, order));
    for (std::size_t i = 0; i < gb.size(); ++i) {
      CHECK(gb[i].leading_term(order).coeff.is_one());
      for (std::size_t j = 0; j < gb.size(); ++j) {
        if (i == j) continue;
        for (const auto& t : gb[i].terms()) CHECK_FALSE(gb[j].leading_term(order).monomial.divides(t.monomial));
      }
    }
    for (const auto& g : ideal.generators()) CHECK(ideal.normal_form(g, order).is_zero());
  }
}

TEST_CASE("membership") {
  auto r = qring({"x", "t"});
  auto ideal = I(r, {"x^2 - t", "t"});
  CHECK(ideal_member(parse_polynomial("x^4", r), ideal));
  CHECK_FALSE(ideal_member(parse_polynomial("1", r), I(r, {"x"})));
  CHECK(ideal_member(Polynomial(r), I(r, {})));
  auto other = qring({"y"});
  CHECK_THROWS_AS(ideal_member(parse_polynomial("y", other), ideal), Error);
}

TEST_CASE("elimination") {
  auto r = qring({"x", "t"});
  auto e1 = eliminate(I(r, {"x^2 - t"}), {0});
  CHECK(e1.is_zero());
  CHECK(e1.ring()->vars() == std::vector<std::string>{"t"});
  auto e2 = eliminate(I(r, {"x^2 - t", "x"}), {0});
  CHECK(e2.to_string() == "ideal(t)");
  CHECK(eliminate(I(r, {"x^2 - t"}), {}) == I(r, {"x^2 - t"}));
}

TEST_CASE("intersection, quotient, saturation") {
  auto r = qring({"x", "t"});
  CHECK(intersect(I(r, {"x"}), I(r, {"t"})) == I(r, {"x*t"}));
  CHECK(intersect(I(r, {"x^2"}), I(r, {"x^3"})) == I(r, {"x^3"}));
  auto inter = intersect(I(r, {"x", "t"}), I(r, {"x - 1"}));
  auto expected = I(r, {"x^2 - x", "t*x - t"});
  CHECK(inter.contains(expected));
  CHECK(expected.contains(inter));

  CHECK(ideal_quotient(I(r, {"x^2"}), I(r, {"x"})) == I(r, {"x"}));
  CHECK(saturate(I(r, {"x"}), I(r, {"t"})) == I(r, {"x"}));

  auto rp = qring({"pi", "t"});
  CHECK(saturate(I(rp, {"pi^3*t^3", "t^2"}), I(rp, {"pi"})) == I(rp, {"t^2"}));
  CHECK(saturate(I(rp, {"pi^2*t^2", "t^4"}), I(rp, {"pi"})) == I(rp, {"t^2"}));
}

TEST_CASE("saturation chain on random ideals") {
  auto r = qring({"x", "y"});
  std::mt19937 rng(11);
  const char* pool[] = {"x^2*y", "x*y^2", "x^3 - y", "y^2", "x*y - x", "x^2 - y^2", "y^3 + x"};
  for (int trial = 0; trial < 12; ++trial) {
    auto i = I(r, {pool[rng() % 7], pool[rng() % 7]});
    auto j = I(r, {rng() % 2 ? "x" : "y"});
    auto q = ideal_quotient(i, j);
    auto s = saturate(i, j);
    CHECK(q.contains(i));
    CHECK(s.contains(q));
    CHECK(saturate(s, j) == s);
  }
}

TEST_CASE("ideal equality is an equivalence on generator permutations") {
  auto r = qring({"x", "y"});
  auto a = I(r, {"x^2 - y", "x*y"});
  auto b = I(r, {"x*y", "x^2 - y", "x^3 - x*y"});
  auto c = I(r, {"x*y + x^2 - y", "x*y"});
  CHECK(a == a);
  CHECK(a == b);
  CHECK(b == a);
  CHECK(b == c);
  CHECK(a == c);
  CHECK_FALSE(a == I(r, {"x"}));
}

TEST_CASE("dimension") {
  auto r = qring({"t", "x"});
  for (int n : {2, 3, 5}) {
    auto d = ideal_dimension(I(r, {"x^" + std::to_string(n) + " - t"}));
    CHECK(d.dimension == 1);
    CHECK(d.independent_set == std::vector<std::size_t>{0});
  }
  CHECK(ideal_dimension(I(r, {})).dimension == 2);
  CHECK(ideal_dimension(I(r, {"1"})).dimension == -1);
  CHECK(ideal_dimension(I(r, {"t", "x"})).dimension == 0);
  // Squaring generators leaves the dimension unchanged.
  auto rp = qring({"pi", "t"});
  CHECK(ideal_dimension(I(rp, {"pi^3*t^3", "t^2"})).dimension ==
        ideal_dimension(I(rp, {"pi^6*t^6", "t^4"})).dimension);
}

TEST_CASE("standard monomials") {
  auto r = qring({"x", "y"});
  CHECK(vector_space_dimension(I(r, {"x^2", "y^3"})) == 6u);
  CHECK(vector_space_dimension(I(r, {"x^2", "x*y", "y^2"})) == 3u);
  CHECK_FALSE(vector_space_dimension(I(r, {"x^2"})).has_value());
  CHECK(vector_space_dimension(I(r, {"1"})) == 0u);
}

TEST_CASE("finite field bases") {
  auto r = Ring::make(FieldDesc::prime_field(3), {"x", "t"});
  auto ideal = I(r, {"x^2 - t", "t - 1"});
  CHECK(ideal.to_string() == "ideal(x^2 + 2, t + 2)");
  CHECK(vector_space_dimension(ideal) == 2u);
}
