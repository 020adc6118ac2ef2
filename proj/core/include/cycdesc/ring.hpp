#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycdesc/field.hpp"

namespace cycdesc {

/// A polynomial ring k[x1, ..., xn]; variable order defines x1 > x2 > ... .
class Ring {
 public:
  /// Throws InvalidArgument on duplicate or malformed variable names, or on
  /// names that clash with the field's parameters.
  static RingPtr make(FieldPtr field, std::vector<std::string> vars);

  const FieldPtr& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// "Q[t, x]"
  std::string to_string() const;

  bool operator==(const Ring& other) const;

 private:
  Ring() = default;
  FieldPtr field_;
  std::vector<std::string> vars_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
bool is_identifier(std::string_view name);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  /// Coprime: no variable occurs in both.
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }
  bool operator<(const Monomial& other) const { return exps_ < other.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
};

class MonomialOrder {
 public:
  enum class Kind { Lex, DegRevLex, BlockElim };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex, {}); }
  /// Variables flagged in `eliminated` form a block that dominates the rest;
  /// both blocks are compared by DegRevLex.
  static MonomialOrder block_elim(std::vector<bool> eliminated);
  /// The first `split` of `nvars` variables are eliminated.
  static MonomialOrder block_elim(std::size_t split, std::size_t nvars);

  Kind kind() const { return kind_; }
  const std::vector<bool>& eliminated() const { return eliminated_; }

  /// Three-way comparison: negative if a < b.
  int compare(const Monomial& a, const Monomial& b) const;

  bool operator==(const MonomialOrder& other) const {
    return kind_ == other.kind_ && eliminated_ == other.eliminated_;
  }
  bool operator<(const MonomialOrder& other) const {
    if (kind_ != other.kind_) return kind_ < other.kind_;
    return eliminated_ < other.eliminated_;
  }

  std::string to_string() const;

 private:
  MonomialOrder(Kind kind, std::vector<bool> eliminated)
      : kind_(kind), eliminated_(std::move(eliminated)) {}

  Kind kind_;
  std::vector<bool> eliminated_;
};

int degrevlex_compare(const Monomial& a, const Monomial& b);

}  // namespace cycdesc
