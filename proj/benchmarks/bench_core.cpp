#include <benchmark/benchmark.h>

#include <random>

#include "cycdesc/decomp.hpp"
#include "cycdesc/factor.hpp"
#include "cycdesc/groebner.hpp"
#include "cycdesc/intlat.hpp"

using namespace cycdesc;

namespace {

Ideal ideal_of(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(parse_polynomial(g, r));
  return Ideal(r, ps);
}

void BM_GroebnerCyclic3(benchmark::State& state) {
  const RingPtr r = Ring::make(FieldDesc::rationals(), {"x", "y", "z"});
  for (auto _ : state) {
    // Fresh ideal each time so the per-ideal basis cache does not kick in.
    const Ideal i = ideal_of(r, {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});
    benchmark::DoNotOptimize(groebner_basis(i, MonomialOrder::degrevlex()));
  }
}
BENCHMARK(BM_GroebnerCyclic3);

void BM_FactorCyclotomicProduct(benchmark::State& state) {
  const RingPtr r = Ring::make(FieldDesc::rationals(), {"x"});
  const Polynomial f = parse_polynomial("x^" + std::to_string(state.range(0)) + " - 1", r);
  for (auto _ : state) benchmark::DoNotOptimize(factor_poly(f));
}
BENCHMARK(BM_FactorCyclotomicProduct)->Arg(12)->Arg(30)->Arg(60);

void BM_FactorFp(benchmark::State& state) {
  const RingPtr r = Ring::make(FieldDesc::prime_field(101), {"x"});
  std::mt19937 rng(5);
  std::string text = "x^" + std::to_string(state.range(0));
  for (int k = static_cast<int>(state.range(0)) - 1; k >= 0; --k) text += " + " + std::to_string(rng() % 101) + "*x^" + std::to_string(k);
  const Polynomial f = parse_polynomial(text, r);
  for (auto _ : state) benchmark::DoNotOptimize(factor_poly(f));
}
BENCHMARK(BM_FactorFp)->Arg(16)->Arg(64);

void BM_MinimalPrimesFiberSquare(benchmark::State& state) {
  const RingPtr r = Ring::make(FieldDesc::rationals(), {"t", "x1", "x2"});
  const std::string n = std::to_string(state.range(0));
  for (auto _ : state) {
    clear_decomposition_cache();
    const Ideal i = ideal_of(r, {("x1^" + n + " - t").c_str(), ("x2^" + n + " - t").c_str()});
    benchmark::DoNotOptimize(minimal_primes(i));
  }
}
BENCHMARK(BM_MinimalPrimesFiberSquare)->Arg(2)->Arg(3);

void BM_SmithForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-20, 20);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_SmithForm)->Arg(3)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
