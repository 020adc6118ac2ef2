#include "cycdesc/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cycdesc/error.hpp"

namespace cycdesc {

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

RingPtr Ring::make(FieldPtr field, std::vector<std::string> vars) {
  if (!field) fail(ErrorCode::InvalidArgument, "ring without a field");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!is_identifier(v)) fail(ErrorCode::InvalidArgument, "invalid variable name '" + v + "'");
    if (!seen.insert(v).second) fail(ErrorCode::InvalidArgument, "duplicate variable '" + v + "'");
    for (const auto& p : field->params()) {
      if (p == v) {
        fail(ErrorCode::InvalidArgument,
             "variable '" + v + "' clashes with a parameter of " + field->to_string());
      }
    }
  }
  auto ring = std::shared_ptr<Ring>(new Ring());
  ring->field_ = std::move(field);
  ring->vars_ = std::move(vars);
  return ring;
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

std::string Ring::to_string() const {
  std::string out = field_->to_string() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ", ";
    out += vars_[i];
  }
  return out + "]";
}

bool Ring::operator==(const Ring& other) const {
  return vars_ == other.vars_ && same_field(field_, other.field_);
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] && other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return out;
}

int degrevlex_compare(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

int lex_compare(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// DegRevLex restricted to the variables with mask[i] == want.
int masked_degrevlex(const Monomial& a, const Monomial& b, const std::vector<bool>& mask, bool want) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask[i] == want) {
      da += a[i];
      db += b[i];
    }
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (mask[i] != want) continue;
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

MonomialOrder MonomialOrder::block_elim(std::vector<bool> eliminated) {
  return MonomialOrder(Kind::BlockElim, std::move(eliminated));
}

MonomialOrder MonomialOrder::block_elim(std::size_t split, std::size_t nvars) {
  if (split < 1 || split > nvars) {
    fail(ErrorCode::InvalidArgument, "block split index outside 1.." + std::to_string(nvars));
  }
  std::vector<bool> mask(nvars, false);
  for (std::size_t i = 0; i < split; ++i) mask[i] = true;
  return block_elim(std::move(mask));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      return lex_compare(a, b);
    case Kind::DegRevLex:
      return degrevlex_compare(a, b);
    case Kind::BlockElim: {
      if (int c = masked_degrevlex(a, b, eliminated_, true)) return c;
      return masked_degrevlex(a, b, eliminated_, false);
    }
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::DegRevLex:
      return "degrevlex";
    case Kind::BlockElim: {
      std::string out = "block(";
      for (bool b : eliminated_) out += b ? '1' : '0';
      return out + ")";
    }
  }
  return "?";
}

}  // namespace cycdesc
