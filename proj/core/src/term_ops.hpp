#pragma once

// Sorted-term-vector kernels shared by division and Buchberger.

#include <vector>

#include "cycdesc/polynomial.hpp"

namespace cycdesc::detail {

using Terms = std::vector<Polynomial::Term>;

/// Terms of f sorted descending under `order`.
Terms sorted_terms(const Polynomial& f, const MonomialOrder& order);

/// a - c*m*b, all inputs and the result sorted descending under `order`.
Terms sub_scaled(const Terms& a, const Terms& b, const Monomial& m, const FieldElement& c,
                 const MonomialOrder& order);

/// Multiplies every coefficient by c.
void scale_in_place(Terms& terms, const FieldElement& c);

}  // namespace cycdesc::detail
