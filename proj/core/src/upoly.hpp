#pragma once

// Dense univariate arithmetic over F_p, Z and Q. Coefficient vectors are
// indexed by degree and carry no trailing zeros; the zero polynomial is empty.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace cycdesc::detail {

using FpPoly = std::vector<std::uint64_t>;
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}
inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}
std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p);

int degree(const FpPoly& a);
void trim(FpPoly& a);
FpPoly fp_add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_scale(const FpPoly& a, std::uint64_t c, std::uint64_t p);
/// (quotient, remainder); b must be nonzero.
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_monic(const FpPoly& a, std::uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p);
/// Monic gcd g with s*a + t*b = g.
void fp_xgcd(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& g, FpPoly& s, FpPoly& t);
FpPoly fp_derivative(const FpPoly& a, std::uint64_t p);
FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, std::uint64_t p);

/// Square-free decomposition of a monic polynomial over F_p.
std::vector<std::pair<FpPoly, unsigned>> fp_squarefree(const FpPoly& f, std::uint64_t p);
/// Monic irreducible factors of a monic square-free polynomial over F_p.
std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, std::uint64_t p, std::mt19937_64& rng);

int degree(const ZPoly& a);
void trim(ZPoly& a);
ZPoly z_mul(const ZPoly& a, const ZPoly& b);
mpz_class z_content(const ZPoly& a);
FpPoly z_reduce(const ZPoly& a, std::uint64_t p);
/// Exact quotient over Z, or nullopt when b does not divide a.
std::optional<ZPoly> z_exact_div(const ZPoly& a, const ZPoly& b);
/// Irreducible factors over Z of a primitive square-free polynomial with
/// positive leading coefficient and degree >= 1.
std::vector<ZPoly> z_factor_squarefree(const ZPoly& f);

int degree(const QPoly& a);
void trim(QPoly& a);
QPoly q_monic(const QPoly& a);
std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b);
QPoly q_gcd(QPoly a, QPoly b);
QPoly q_derivative(const QPoly& a);
QPoly q_sub(const QPoly& a, const QPoly& b);
/// Yun's square-free decomposition of a monic polynomial over Q.
std::vector<std::pair<QPoly, unsigned>> q_squarefree(const QPoly& f);
/// Primitive integer multiple with positive leading coefficient.
ZPoly q_to_primitive_z(const QPoly& a);

}  // namespace cycdesc::detail
