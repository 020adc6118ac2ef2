#pragma once

#include <optional>
#include <vector>

#include "cycdesc/polynomial.hpp"

namespace cycdesc {

struct Factor {
  Polynomial factor;
  unsigned multiplicity = 1;
};

/// Irreducible factorization over the polynomial's coefficient field.
/// Factors are monic (DegRevLex) and sorted; their product times a unit is f.
///
/// Over F_p univariate input goes through square-free decomposition,
/// distinct-degree and equal-degree (Cantor-Zassenhaus) splitting; over Q
/// through square-free decomposition and Zassenhaus (modular factorization,
/// Hensel lifting, factor recombination). Multivariate input is handled by
/// monomial content extraction, dehomogenization, a degree-one
/// irreducibility certificate and otherwise Kronecker substitution. Over a
/// rational function field k(u) the polynomial is cleared of denominators
/// and factored in k[u, x] (Gauss's lemma).
///
/// Throws UnsupportedShape when the Kronecker image or the recombination
/// search exceeds the built-in bounds; throws InvalidArgument on zero.
std::vector<Factor> factor_poly(const Polynomial& f);

/// True if f is irreducible (nonconstant with a single simple factor).
bool is_irreducible(const Polynomial& f);

/// Square-free decomposition f = u * prod a_i^i of a univariate polynomial
/// over a ground field. Returns the nonconstant a_i with i as multiplicity.
std::vector<Factor> squarefree_decomposition(const Polynomial& f);

/// Monic greatest common divisor. Multivariate over Q and F_p; over a
/// rational function field only univariate input is supported.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// a / b when b divides a exactly, otherwise nullopt.
std::optional<Polynomial> exact_quotient(const Polynomial& a, const Polynomial& b);

}  // namespace cycdesc
