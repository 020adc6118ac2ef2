#include <random>

#include "cycdesc/error.hpp"
#include "cycdesc/intlat.hpp"
#include "doctest.h"

using namespace cycdesc;

namespace {

IntVector ints(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("Smith form of small matrices") {
  CHECK(snf(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).diagonal() == ints({2, 6, 12}));
  CHECK(snf(IntMatrix::from_rows({{6}})).diagonal() == ints({6}));
  CHECK(snf(IntMatrix::from_rows({{0, 0}, {0, 0}})).diagonal() == ints({0, 0}));
  CHECK(snf(IntMatrix::from_rows({{2, 0}, {0, 3}})).diagonal() == ints({1, 6}));
  CHECK(snf(IntMatrix::from_rows({{1, 2, 3}})).rank() == 1);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), Error);
}

TEST_CASE("Smith form transforms are unimodular on random input") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, r, c, 40);
    const SNFResult s = snf(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
  }
}

TEST_CASE("determinant") {
  CHECK(IntMatrix::from_rows({{2, 1}, {7, 4}}).determinant() == 1);
  CHECK(IntMatrix::from_rows({{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}).determinant() == 0);
  CHECK(IntMatrix::from_rows({{0, 2, 0}, {1, 0, 0}, {0, 0, 3}}).determinant() == -6);
}

TEST_CASE("integer solutions") {
  const IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  CHECK(solve_integer(a, ints({4, 9})) == ints({2, 3}));
  CHECK_FALSE(solve_integer(a, ints({1, 0})));
  const IntMatrix b = IntMatrix::from_rows({{3, 5}});
  const auto x = solve_integer(b, ints({1}));
  REQUIRE(x);
  CHECK(b * *x == ints({1}));
  CHECK_THROWS_AS(solve_integer(a, ints({1})), Error);
}

TEST_CASE("kernel basis spans the kernel") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + rng() % 3, c = r + 1 + rng() % 3;
    const IntMatrix a = random_matrix(rng, r, c, 9);
    const auto k = kernel_basis(a);
    CHECK(k.size() == c - snf(a).rank());
    for (const auto& v : k) CHECK(a * v == IntVector(r));
    // The kernel of an integer matrix is saturated in Z^c.
    if (!k.empty()) CHECK(is_saturated(c, IntMatrix::from_columns(c, k)));
  }
}

TEST_CASE("quotient invariants") {
  // Z^3 / <(2,0,1), (0,2,1)> = Z + Z/2.
  const IntMatrix gens = IntMatrix::from_columns(3, {ints({2, 0, 1}), ints({0, 2, 1})});
  CHECK(quotient_invariants(3, gens) == ints({1, 2, 0}));
  CHECK_FALSE(is_saturated(3, gens));
  CHECK(quotient_invariants(2, IntMatrix(2, 0)) == ints({0, 0}));
  CHECK(is_saturated(2, IntMatrix::from_columns(2, {ints({1, 1})})));
  CHECK_THROWS_AS(quotient_invariants(2, gens), Error);
}
