#include "cycdesc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "cycdesc/error.hpp"
#include "term_ops.hpp"

namespace cycdesc {

struct PolynomialAccess {
  // Installs terms already sorted by descending DegRevLex with no zeros and no
  // repeated monomials.
  static Polynomial adopt(RingPtr ring, std::vector<Polynomial::Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }
};

namespace {

std::vector<Polynomial::Term> canonical_terms(std::vector<Polynomial::Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Polynomial::Term& a, const Polynomial::Term& b) {
    return degrevlex_compare(a.monomial, b.monomial) > 0;
  });
  std::vector<Polynomial::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return out;
}

std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a,
                                    const std::vector<Polynomial::Term>& b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = degrevlex_compare(a[i].monomial, b[j].monomial);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].monomial, subtract ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      FieldElement s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

void check_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring())) {
    fail(ErrorCode::RingMismatch, "polynomials from " + a.ring()->to_string() + " and " +
                                      b.ring()->to_string() + " combined");
  }
}

const FieldPtr& Polynomial::field() const { return ring_->field(); }

Polynomial Polynomial::constant(RingPtr ring, const FieldElement& c) {
  if (!same_field(ring->field(), c.field())) {
    fail(ErrorCode::FieldMismatch, "constant from " + c.field()->to_string() + " in " + ring->to_string());
  }
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  auto f = ring->field();
  return constant(std::move(ring), FieldElement::from_integer(f, c));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) fail(ErrorCode::InvalidArgument, "variable index out of range");
  Monomial m(ring->nvars());
  m[index] = 1;
  auto one = FieldElement::from_integer(ring->field(), 1);
  return monomial(std::move(ring), std::move(m), one);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, const FieldElement& c) {
  Polynomial p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.monomial.size() != ring->nvars()) {
      fail(ErrorCode::InvalidArgument, "monomial length differs from variable count of " + ring->to_string());
    }
  }
  return PolynomialAccess::adopt(std::move(ring), canonical_terms(std::move(terms)));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_.front().monomial.is_one() && terms_.front().coeff.is_one();
}

const Polynomial::Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) fail(ErrorCode::InvalidArgument, "leading term of zero");
  if (order.kind() == MonomialOrder::Kind::DegRevLex) return terms_.front();
  std::size_t best = 0;
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (order.compare(terms_[i].monomial, terms_[best].monomial) > 0) best = i;
  }
  return terms_[best];
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  }
  return true;
}

std::vector<std::size_t> Polynomial::variables() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < ring_->nvars(); ++v) {
    if (degree_in(v) > 0) out.push_back(v);
  }
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_.front().coeff.is_one()) return *this;
  return scaled(terms_.front().coeff.inverse());
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.monomial, t.coeff * c});
  return PolynomialAccess::adopt(ring_, std::move(out));
}

Polynomial Polynomial::mul_term(const Monomial& m, const FieldElement& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  // Multiplying by a monomial preserves DegRevLex order.
  for (const auto& t : terms_) out.push_back({t.monomial * m, t.coeff * c});
  return PolynomialAccess::adopt(ring_, std::move(out));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial[var] == 0) continue;
    Monomial m = t.monomial;
    auto e = m[var]--;
    auto c = t.coeff * FieldElement::from_integer(field(), static_cast<long>(e));
    if (!c.is_zero()) out.push_back({std::move(m), std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.monomial;
    auto e = m[var];
    m[var] = 0;
    buckets[e].push_back({std::move(m), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Polynomial Polynomial::substitute(const RingPtr& target, std::span<const Polynomial> images) const {
  if (images.size() != ring_->nvars()) {
    fail(ErrorCode::InvalidArgument, "substitution needs one image per variable of " + ring_->to_string());
  }
  if (!same_field(field(), target->field())) {
    fail(ErrorCode::FieldMismatch, "substitution between " + field()->to_string() + " and " +
                                       target->field()->to_string());
  }
  for (const auto& img : images) {
    if (!same_ring(img.ring(), target)) fail(ErrorCode::RingMismatch, "substitution image outside target ring");
  }
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Polynomial prod = constant(target, t.coeff);
    for (std::size_t v = 0; v < images.size() && !prod.is_zero(); ++v) {
      if (t.monomial[v]) prod = prod * power(v, t.monomial[v]);
    }
    for (auto& pt : prod.terms_) acc.push_back(std::move(pt));
  }
  return from_terms(target, std::move(acc));
}

Polynomial Polynomial::rename(const RingPtr& target, std::span<const std::size_t> var_map) const {
  if (var_map.size() != ring_->nvars()) fail(ErrorCode::InvalidArgument, "rename map has wrong length");
  if (!same_field(field(), target->field())) {
    fail(ErrorCode::FieldMismatch, "rename between " + field()->to_string() + " and " +
                                       target->field()->to_string());
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->nvars());
    for (std::size_t v = 0; v < var_map.size(); ++v) m[var_map[v]] += t.monomial[v];
    out.push_back({std::move(m), t.coeff});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.monomial, -t.coeff});
  return PolynomialAccess::adopt(ring_, std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  return PolynomialAccess::adopt(a.ring_, merge(a.terms_, b.terms_, false));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  return PolynomialAccess::adopt(a.ring_, merge(a.terms_, b.terms_, true));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].monomial, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].monomial, b.terms_[0].coeff);
  std::map<Monomial, FieldElement> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Monomial m = ta.monomial * tb.monomial;
      FieldElement c = ta.coeff * tb.coeff;
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(std::move(m), std::move(c));
      } else {
        it->second += c;
      }
    }
  }
  std::vector<Polynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  }
  std::sort(out.begin(), out.end(), [](const Polynomial::Term& x, const Polynomial::Term& y) {
    return degrevlex_compare(x.monomial, y.monomial) > 0;
  });
  return PolynomialAccess::adopt(a.ring_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (!same_ring(ring_, other.ring_) || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].monomial != other.terms_[i].monomial || terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

int Polynomial::compare(const Polynomial& other) const {
  const std::size_t n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = degrevlex_compare(terms_[i].monomial, other.terms_[i].monomial)) return c;
  }
  if (terms_.size() != other.terms_.size()) return terms_.size() < other.terms_.size() ? -1 : 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = terms_[i].coeff.compare(other.terms_[i].coeff)) return c;
  }
  return 0;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff.is_negative();
    const FieldElement magnitude = negative ? -t.coeff : t.coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t v = 0; v < t.monomial.size(); ++v) {
      if (!t.monomial[v]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->vars()[v];
      if (t.monomial[v] > 1) mono += "^" + std::to_string(t.monomial[v]);
    }
    std::string coeff = magnitude.to_string();
    if (magnitude.is_compound()) coeff = "(" + coeff + ")";
    if (mono.empty()) {
      out += coeff;
    } else if (magnitude.is_one()) {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

namespace detail {

Terms sorted_terms(const Polynomial& f, const MonomialOrder& order) {
  Terms out = f.terms();
  if (order.kind() != MonomialOrder::Kind::DegRevLex) {
    std::sort(out.begin(), out.end(), [&](const Polynomial::Term& a, const Polynomial::Term& b) {
      return order.compare(a.monomial, b.monomial) > 0;
    });
  }
  return out;
}

Terms sub_scaled(const Terms& a, const Terms& b, const Monomial& m, const FieldElement& c,
                 const MonomialOrder& order) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Monomial bm;
  bool have_bm = false;
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && !have_bm) {
      bm = b[j].monomial * m;
      have_bm = true;
    }
    int cmp;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = order.compare(a[i].monomial, bm);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(bm), -(b[j].coeff * c)});
      ++j;
      have_bm = false;
    } else {
      FieldElement s = a[i].coeff - b[j].coeff * c;
      if (!s.is_zero()) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
      have_bm = false;
    }
  }
  return out;
}

void scale_in_place(Terms& terms, const FieldElement& c) {
  for (auto& t : terms) t.coeff *= c;
}

}  // namespace detail

DivisionResult divrem(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order) {
  const RingPtr& ring = f.ring();
  std::vector<detail::Terms> ds;
  std::vector<std::vector<Polynomial::Term>> qs(divisors.size());
  for (const auto& d : divisors) {
    check_same_ring(f, d);
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "division by the zero polynomial");
    ds.push_back(detail::sorted_terms(d, order));
  }
  detail::Terms p = detail::sorted_terms(f, order);
  std::vector<Polynomial::Term> rem;
  while (!p.empty()) {
    const Polynomial::Term lead = p.front();
    bool divided = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& dl = ds[i].front();
      if (!dl.monomial.divides(lead.monomial)) continue;
      Monomial m = lead.monomial / dl.monomial;
      FieldElement c = lead.coeff / dl.coeff;
      qs[i].push_back({m, c});
      p = detail::sub_scaled(p, ds[i], m, c, order);
      divided = true;
      break;
    }
    if (!divided) {
      rem.push_back(lead);
      p.erase(p.begin());
    }
  }
  DivisionResult out{{}, Polynomial::from_terms(ring, std::move(rem))};
  for (auto& q : qs) out.quotients.push_back(Polynomial::from_terms(ring, std::move(q)));
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Syntax, "polynomial '" + std::string(text_) + "', column " + std::to_string(pos_ + 1) +
                                ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          error("division only by nonzero constants");
        }
        acc = acc.scaled(d.leading_coefficient().inverse());
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected a non-negative integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 6) error("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class n(std::string(text_.substr(start, pos_ - start)));
      return Polynomial::constant(ring_, FieldElement::from_integer(ring_->field(), n));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (auto idx = ring_->index_of(name)) return Polynomial::variable(ring_, *idx);
      const FieldPtr& field = ring_->field();
      if (field->kind() == FieldKind::RationalFunctions) {
        if (auto pidx = field->param_ring()->index_of(name)) {
          auto num = Polynomial::variable(field->param_ring(), *pidx);
          auto den = Polynomial::constant(field->param_ring(), 1);
          return Polynomial::constant(ring_, FieldElement::from_fraction(field, num, den));
        }
      }
      pos_ = start;
      error("unknown variable '" + std::string(name) + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return PolyParser(text, ring).parse();
}

}  // namespace cycdesc
