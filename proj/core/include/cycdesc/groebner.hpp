#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cycdesc/polynomial.hpp"

namespace cycdesc {

/// An ideal given by generators, with reduced Groebner bases cached per
/// monomial order. Copies share the cache; computing a basis is guarded so
/// concurrent readers trigger at most one computation per order.
class Ideal {
 public:
  /// Zero generators are dropped; all generators must live in `ring`.
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  explicit Ideal(RingPtr ring) : Ideal(std::move(ring), {}) {}

  static Ideal unit(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Reduced basis (monic, sorted by leading monomial ascending).
  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& order = MonomialOrder::degrevlex()) const;

  bool is_zero() const { return generators_.empty(); }
  bool is_unit() const;

  Polynomial normal_form(const Polynomial& f, const MonomialOrder& order = MonomialOrder::degrevlex()) const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  /// Ideal equality (same reduced DegRevLex basis).
  bool operator==(const Ideal& other) const;
  bool operator!=(const Ideal& other) const { return !(*this == other); }

  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;
  Ideal with(const Polynomial& g) const;
  Ideal with(const std::vector<Polynomial>& gs) const;

  /// Image under the ring map sending variable i to images[i].
  Ideal substitute(const RingPtr& target, std::span<const Polynomial> images) const;

  /// Reduced DegRevLex generators in descending leading-monomial order.
  std::vector<Polynomial> canonical_generators() const;
  /// "ideal(t, x^2)"
  std::string to_string() const;

 private:
  struct Cache;

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Buchberger with normal selection and the Gebauer-Moeller criteria.
std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order);

/// True when every S-polynomial of `basis` reduces to zero.
bool is_groebner_basis(const std::vector<Polynomial>& basis, const MonomialOrder& order);

bool ideal_member(const Polynomial& f, const Ideal& ideal);

/// I intersected with k[kept variables], as an ideal of the smaller ring
/// whose variables keep their original relative order.
Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& drop_vars);

Ideal intersect(const Ideal& a, const Ideal& b);

/// (I : J). The zero ideal J gives the unit ideal.
Ideal ideal_quotient(const Ideal& i, const Ideal& j);

/// (I : J^inf), iterating quotients until stable. Throws SaturationLimit
/// after kSaturationRounds rounds.
Ideal saturate(const Ideal& i, const Ideal& j);
Ideal saturate(const Ideal& i, const Polynomial& g);

inline constexpr int kSaturationRounds = 64;

struct DimensionResult {
  /// Krull dimension of R/I; -1 for the unit ideal.
  int dimension = -1;
  /// One maximal independent set of variables (ascending indices).
  std::vector<std::size_t> independent_set;
};

DimensionResult ideal_dimension(const Ideal& ideal);

/// Standard monomials of a zero-dimensional ideal (DegRevLex), or nullopt
/// when R/I is infinite dimensional.
std::optional<std::vector<Monomial>> standard_monomials(const Ideal& ideal);

/// dim_k R/I for zero-dimensional I, nullopt otherwise.
std::optional<std::uint64_t> vector_space_dimension(const Ideal& ideal);

}  // namespace cycdesc
