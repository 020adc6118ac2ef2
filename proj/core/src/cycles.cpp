#include "cycdesc/cycles.hpp"

#include <algorithm>

#include "cycdesc/error.hpp"

namespace cycdesc {

Cycle Cycle::of_point(const SchemePoint& p, const mpz_class& coeff) {
  Cycle c(p.scheme());
  c.add(p, coeff);
  return c;
}

mpz_class Cycle::coefficient(const SchemePoint& p) const {
  for (const auto& t : terms_) {
    if (t.point == p) return t.coeff;
  }
  return 0;
}

void Cycle::add(const SchemePoint& p, const mpz_class& c) {
  if (p.scheme() != scheme_) fail(ErrorCode::InvalidArgument, "point " + p.to_string() + " is not on " + scheme_->name());
  if (c == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->point == p) {
      it->coeff += c;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
  }
  auto pos = std::upper_bound(terms_.begin(), terms_.end(), p, [](const SchemePoint& q, const Term& t) {
    return q < t.point;
  });
  terms_.insert(pos, Term{p, c});
}

void Cycle::add(const Cycle& other, const mpz_class& c) {
  for (const auto& t : other.terms_) add(t.point, c * t.coeff);
}

Cycle Cycle::operator+(const Cycle& other) const {
  Cycle out = *this;
  out.add(other);
  return out;
}

Cycle Cycle::operator-(const Cycle& other) const {
  Cycle out = *this;
  out.add(other, -1);
  return out;
}

Cycle Cycle::operator*(const mpz_class& c) const {
  Cycle out(scheme_);
  out.add(*this, c);
  return out;
}

bool Cycle::operator==(const Cycle& other) const {
  if (scheme_ != other.scheme_ || terms_.size() != other.terms_.size()) return false;
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return other.coefficient(t.point) == t.coeff; });
}

std::string Cycle::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    const mpz_class mag = abs(t.coeff);
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += mag.get_str() + "*" + t.point.to_string();
  }
  return out;
}

Cycle cycl(const ClosedSubscheme& z) {
  Cycle out(z.ambient());
  for (std::size_t a = 0; a < z.ideals().size(); ++a) {
    const Ideal& ideal = z.ideal(a);
    if (ideal.is_unit()) continue;
    for (const auto& comp : components(ideal)) {
      out.add(SchemePoint(z.ambient(), a, comp.prime), comp.multiplicity);
    }
  }
  return out;
}

Cycle naive_pullback(const MorphismPtr& f, const SchemePoint& y) {
  if (y.scheme() != f->target()) fail(ErrorCode::InvalidArgument, "point does not live on the target of " + f->name());
  return cycl(preimage_subscheme(f, closure_of_point(y)));
}

Cycle naive_pullback(const MorphismPtr& f, const Cycle& c) {
  if (c.scheme() != f->target()) fail(ErrorCode::InvalidArgument, "cycle does not live on the target of " + f->name());
  Cycle out(f->source());
  for (const auto& t : c.terms()) out.add(naive_pullback(f, t.point), t.coeff);
  return out;
}

Cycle pushforward_closed(const MorphismPtr& i, const Cycle& c) {
  if (!i->has(MorphismProperty::ClosedImmersion)) {
    fail(ErrorCode::NotClosedImmersion, i->name() + " is not declared as a closed immersion");
  }
  if (c.scheme() != i->source()) fail(ErrorCode::InvalidArgument, "cycle does not live on the source of " + i->name());
  Cycle out(i->target());
  for (const auto& t : c.terms()) out.add(image_point(i, t.point), t.coeff);
  return out;
}

int point_codimension(const SchemePoint& p) { return point_codim(p.scheme()->piece(p.piece()).ideal, p.prime()); }

std::map<int, Cycle> grade(const Cycle& c) {
  std::map<int, Cycle> out;
  for (const auto& t : c.terms()) {
    const int r = point_codimension(t.point);
    out.try_emplace(r, c.scheme()).first->second.add(t.point, t.coeff);
  }
  return out;
}

}  // namespace cycdesc
