#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cycdesc/decomp.hpp"

namespace cycdesc {

/// Spec(ring / ideal) with a proper ideal.
struct AffinePiece {
  std::string name;
  RingPtr ring;
  Ideal ideal;
};

/// A finite disjoint union of affine pieces over one ground field.
class Scheme {
 public:
  /// Throws InvalidDeclaration on duplicate piece names, an empty piece
  /// list, unit-ideal pieces or pieces over different fields.
  Scheme(std::string name, std::vector<AffinePiece> pieces);

  const std::string& name() const { return name_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const AffinePiece& piece(std::size_t i) const { return pieces_.at(i); }
  std::optional<std::size_t> piece_index(const std::string& name) const;
  const FieldPtr& field() const { return pieces_.front().ring->field(); }

 private:
  std::string name_;
  std::vector<AffinePiece> pieces_;
};

using SchemePtr = std::shared_ptr<const Scheme>;

SchemePtr make_scheme(std::string name, std::vector<AffinePiece> pieces);

/// A prime of one piece containing that piece's ideal.
class SchemePoint {
 public:
  /// Throws NotContaining unless the prime contains the piece ideal.
  SchemePoint(SchemePtr scheme, std::size_t piece, PrimeIdeal prime);

  const SchemePtr& scheme() const { return scheme_; }
  std::size_t piece() const { return piece_; }
  const std::string& piece_name() const { return scheme_->piece(piece_).name; }
  const PrimeIdeal& prime() const { return prime_; }

  /// "[piece=X0; (t, x)]"
  std::string to_string() const;

  /// Same scheme object, same piece, equal prime ideals.
  bool operator==(const SchemePoint& other) const;
  bool operator!=(const SchemePoint& other) const { return !(*this == other); }
  /// Order by piece name, then printed prime.
  bool operator<(const SchemePoint& other) const;

 private:
  SchemePtr scheme_;
  std::size_t piece_;
  PrimeIdeal prime_;
  std::string key_;
};

/// Properties recorded on a morphism. Only closed_immersion is checked;
/// the rest are taken on trust.
enum class MorphismProperty {
  Flat,
  Surjective,
  Generalizing,
  UniversallyGeneralizing,
  UniversallyBijective,
  ClosedImmersion,
};

const char* property_name(MorphismProperty p);
std::optional<MorphismProperty> parse_property(const std::string& name);

/// Where one source piece goes: the target piece and the image in the
/// source ring of every target-piece variable.
struct PieceMap {
  std::size_t target_piece;
  std::vector<Polynomial> images;
};

class SchemeMorphism {
 public:
  /// Checks that each map is well defined (target ideal lands in source
  /// ideal; IllDefinedMorphism names the offending generator) and, when
  /// closed_immersion is asserted, that every source variable is the image
  /// of a target polynomial modulo the source ideal (NotClosedImmersion).
  SchemeMorphism(std::string name, SchemePtr source, SchemePtr target, std::vector<PieceMap> maps,
                 std::set<MorphismProperty> asserted);

  const std::string& name() const { return name_; }
  const SchemePtr& source() const { return source_; }
  const SchemePtr& target() const { return target_; }
  const std::vector<PieceMap>& maps() const { return maps_; }
  const PieceMap& map(std::size_t source_piece) const { return maps_.at(source_piece); }
  const std::set<MorphismProperty>& asserted() const { return asserted_; }
  bool has(MorphismProperty p) const { return asserted_.count(p) > 0; }
  /// "flat,surjective" in declaration order of the enum; "-" when empty.
  std::string asserted_string() const;

  /// Pullback to `source_piece` of a polynomial on the target piece it maps to.
  Polynomial pull(std::size_t source_piece, const Polynomial& f) const;

 private:
  std::string name_;
  SchemePtr source_, target_;
  std::vector<PieceMap> maps_;
  std::set<MorphismProperty> asserted_;
};

using MorphismPtr = std::shared_ptr<const SchemeMorphism>;

MorphismPtr make_morphism(std::string name, SchemePtr source, SchemePtr target, std::vector<PieceMap> maps,
                          std::set<MorphismProperty> asserted);

MorphismPtr identity_morphism(const SchemePtr& scheme);

/// g after f. Properties stable under composition are kept when both carry them.
MorphismPtr compose(const MorphismPtr& f, const MorphismPtr& g, std::string name = {});

/// Per-piece ideals, each containing the piece ideal. A unit ideal means the
/// subscheme misses that piece.
class ClosedSubscheme {
 public:
  /// Throws NotContaining if some ideal does not contain its piece ideal.
  ClosedSubscheme(SchemePtr ambient, std::vector<Ideal> ideals);

  /// The whole scheme as a subscheme of itself.
  static ClosedSubscheme whole(const SchemePtr& scheme);

  const SchemePtr& ambient() const { return ambient_; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  const Ideal& ideal(std::size_t piece) const { return ideals_.at(piece); }

  bool operator==(const ClosedSubscheme& other) const;

 private:
  SchemePtr ambient_;
  std::vector<Ideal> ideals_;
};

struct FiberProduct {
  SchemePtr scheme;
  MorphismPtr pr1, pr2;
};

/// X x_S Y for f: X -> S and g: Y -> S. Pieces are named "A*B" with
/// variables suffixed _1 and _2; unit-ideal pieces are dropped. Throws
/// InvalidDeclaration if the product is empty.
FiberProduct fiber_product(const MorphismPtr& f, const MorphismPtr& g);

ClosedSubscheme preimage_subscheme(const MorphismPtr& f, const ClosedSubscheme& z);

/// V(prime) on the point's piece, empty elsewhere.
ClosedSubscheme closure_of_point(const SchemePoint& x);

/// f(x): the contraction of x's prime along the piece map.
SchemePoint image_point(const MorphismPtr& f, const SchemePoint& x);

}  // namespace cycdesc
