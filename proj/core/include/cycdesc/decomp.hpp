#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cycdesc/groebner.hpp"

namespace cycdesc {

/// How primality of a PrimeIdeal was established.
enum class PrimeCertificate {
  /// Leaf of the factor-splitting recursion: zero ideal, principal
  /// irreducible generator, or generated by linear forms.
  FactorSplitLeaf,
  /// Saturation of a triangular set whose extension to the function field
  /// of an independent set is a field (irreducible minimal polynomial of a
  /// primitive element).
  TriangularIrreducible,
  /// Declared by the user; echoed with an "asserted" marker.
  UserAsserted,
  /// Contraction of a certified prime along a ring map.
  Contraction,
};

const char* certificate_name(PrimeCertificate c);

class PrimeIdeal {
 public:
  /// Throws InvalidArgument for the unit ideal.
  PrimeIdeal(Ideal ideal, PrimeCertificate certificate);

  const Ideal& ideal() const { return ideal_; }
  PrimeCertificate certificate() const { return certificate_; }
  bool asserted() const { return certificate_ == PrimeCertificate::UserAsserted; }

  /// "(t, x)"; the zero ideal prints as "(0)".
  std::string to_string() const;

  /// Ideal equality; the certificate is not compared.
  bool operator==(const PrimeIdeal& other) const { return ideal_ == other.ideal_; }
  bool operator!=(const PrimeIdeal& other) const { return !(*this == other); }

 private:
  Ideal ideal_;
  PrimeCertificate certificate_;
};

struct ComponentData {
  PrimeIdeal prime;
  std::uint64_t multiplicity;
};

/// Minimal primes of a proper ideal, sorted by printed form. The unit ideal
/// has none. Throws UndecidedPrimality when a leaf cannot be certified.
/// Results of this and components() are memoized per reduced basis.
std::vector<PrimeIdeal> minimal_primes(const Ideal& ideal);
void clear_decomposition_cache();

/// Length of (R/I) localized at the minimal prime p. Throws NotMinimal
/// unless p is one of the minimal primes of I.
std::uint64_t multiplicity(const Ideal& ideal, const PrimeIdeal& p);

/// Minimal primes together with their multiplicities.
std::vector<ComponentData> components(const Ideal& ideal);

/// Codimension of V(p) in V(I). Throws NotContaining unless I is in p.
int point_codim(const Ideal& ideal, const PrimeIdeal& p);

/// Dimension of R/p.
int prime_dimension(const PrimeIdeal& p);

/// The extension of I to K[w] where K = k(u) is the rational function field
/// in the variables `independent` and w are the remaining variables. With an
/// empty independent set the ideal is returned unchanged.
Ideal extend_to_function_field(const Ideal& ideal, const std::vector<std::size_t>& independent);

/// Image of f in K[w] for the same split of variables.
Polynomial extend_polynomial(const Polynomial& f, const RingPtr& extended,
                             const std::vector<std::size_t>& independent);

}  // namespace cycdesc
