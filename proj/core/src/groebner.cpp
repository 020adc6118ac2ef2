#include "cycdesc/groebner.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cycdesc/error.hpp"
#include "cycdesc/factor.hpp"
#include "term_ops.hpp"

namespace cycdesc {

using detail::Terms;

namespace {

constexpr std::uint64_t kMaxStandardMonomials = 2'000'000;

const Monomial& lead(const Terms& t) { return t.front().monomial; }

void make_monic(Terms& t) {
  if (t.empty() || t.front().coeff.is_one()) return;
  detail::scale_in_place(t, t.front().coeff.inverse());
}

Terms mul_monomial(const Terms& t, const Monomial& m) {
  Terms out;
  out.reserve(t.size());
  for (const auto& term : t) out.push_back({term.monomial * m, term.coeff});
  return out;
}

// Full reduction of p by the monic polynomials basis[idx] for idx in `use`.
Terms reduce_full(Terms p, const std::vector<Terms>& basis, const std::vector<std::size_t>& use,
                  const MonomialOrder& order) {
  Terms rem;
  while (!p.empty()) {
    const Polynomial::Term top = p.front();
    const Terms* reducer = nullptr;
    for (auto k : use) {
      if (lead(basis[k]).divides(top.monomial)) {
        reducer = &basis[k];
        break;
      }
    }
    if (reducer) {
      p = detail::sub_scaled(p, *reducer, top.monomial / lead(*reducer), top.coeff, order);
    } else {
      rem.push_back(top);
      p.erase(p.begin());
    }
  }
  return rem;
}

Terms s_polynomial(const Terms& a, const Terms& b, const MonomialOrder& order) {
  const Monomial l = lead(a).lcm(lead(b));
  const Terms left = mul_monomial(a, l / lead(a));
  return detail::sub_scaled(left, b, l / lead(b), FieldElement::from_integer(a.front().coeff.field(), 1), order);
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  explicit Buchberger(MonomialOrder order) : order_(std::move(order)) {}

  void add_generator(Terms t) {
    t = reduce_full(std::move(t), polys_, basis_, order_);
    if (t.empty()) return;
    make_monic(t);
    insert(std::move(t));
  }

  bool unit() const { return unit_; }

  void run() {
    while (!pairs_.empty() && !unit_) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin() + 1; it != pairs_.end(); ++it) {
        if (order_.compare(it->lcm, best->lcm) < 0) best = it;
      }
      const Pair pair = *best;
      pairs_.erase(best);
      Terms s = s_polynomial(polys_[pair.i], polys_[pair.j], order_);
      s = reduce_full(std::move(s), polys_, basis_, order_);
      if (s.empty()) continue;
      make_monic(s);
      insert(std::move(s));
    }
  }

  std::vector<Terms> reduced() const {
    if (unit_) return {};
    std::vector<std::size_t> idx = basis_;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return order_.compare(lead(polys_[a]), lead(polys_[b])) < 0;
    });
    std::vector<Terms> out;
    for (auto k : idx) {
      std::vector<std::size_t> others;
      for (auto o : idx) {
        if (o != k) others.push_back(o);
      }
      Terms tail(polys_[k].begin() + 1, polys_[k].end());
      Terms reduced = reduce_full(std::move(tail), polys_, others, order_);
      Terms full{polys_[k].front()};
      full.insert(full.end(), reduced.begin(), reduced.end());
      out.push_back(std::move(full));
    }
    return out;
  }

 private:
  void insert(Terms h) {
    if (lead(h).is_one()) {
      unit_ = true;
      return;
    }
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    const Monomial& lh = lead(polys_[hi]);

    // Gebauer-Moeller update.
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < basis_.size(); ++c) {
      const std::size_t g1 = basis_[c];
      const Monomial& l1 = lead(polys_[g1]);
      if (lh.coprime(l1)) {
        kept.push_back(g1);
        continue;
      }
      const Monomial lcm1 = lh.lcm(l1);
      bool drop = false;
      for (std::size_t c2 = c + 1; c2 < basis_.size() && !drop; ++c2) {
        drop = lh.lcm(lead(polys_[basis_[c2]])).divides(lcm1);
      }
      for (auto g2 : kept) {
        if (drop) break;
        drop = lh.lcm(lead(polys_[g2])).divides(lcm1);
      }
      if (!drop) kept.push_back(g1);
    }
    std::vector<Pair> next;
    for (auto& p : pairs_) {
      const bool redundant = lh.divides(p.lcm) && lh.lcm(lead(polys_[p.i])) != p.lcm &&
                             lh.lcm(lead(polys_[p.j])) != p.lcm;
      if (!redundant) next.push_back(std::move(p));
    }
    for (auto g : kept) {
      if (!lh.coprime(lead(polys_[g]))) next.push_back({g, hi, lh.lcm(lead(polys_[g]))});
    }
    pairs_ = std::move(next);
    std::vector<std::size_t> basis;
    for (auto g : basis_) {
      if (!lh.divides(lead(polys_[g]))) basis.push_back(g);
    }
    basis.push_back(hi);
    basis_ = std::move(basis);
  }

  MonomialOrder order_;
  std::vector<Terms> polys_;
  std::vector<std::size_t> basis_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
};

std::string fresh_name(const RingPtr& ring, const std::string& stem) {
  auto taken = [&](const std::string& n) {
    if (ring->index_of(n)) return true;
    const auto& params = ring->field()->params();
    return std::find(params.begin(), params.end(), n) != params.end();
  };
  std::string name = stem;
  for (int k = 1; taken(name); ++k) name = stem + std::to_string(k);
  return name;
}

Polynomial from_order_terms(const RingPtr& ring, Terms t) { return Polynomial::from_terms(ring, std::move(t)); }

// Ideal in `target` (whose variables are the kept ones, in order) spanned by
// the basis elements free of the dropped variables.
Ideal eliminate_into(const Ideal& ideal, const std::vector<std::size_t>& drop_vars, const RingPtr& target) {
  const std::size_t n = ideal.ring()->nvars();
  std::vector<bool> mask(n, false);
  for (auto v : drop_vars) {
    if (v >= n) fail(ErrorCode::InvalidArgument, "eliminated variable index out of range");
    mask[v] = true;
  }
  std::vector<std::size_t> new_index(n, 0);
  for (std::size_t v = 0, k = 0; v < n; ++v) {
    if (!mask[v]) new_index[v] = k++;
  }
  const auto& basis = std::any_of(mask.begin(), mask.end(), [](bool b) { return b; })
                          ? ideal.groebner_basis(MonomialOrder::block_elim(mask))
                          : ideal.groebner_basis();
  std::vector<Polynomial> kept;
  for (const auto& g : basis) {
    bool free = true;
    for (std::size_t v = 0; v < n && free; ++v) free = !(mask[v] && g.degree_in(v) > 0);
    if (!free) continue;
    std::vector<Polynomial::Term> terms;
    for (const auto& t : g.terms()) {
      Monomial m(target->nvars());
      for (std::size_t v = 0; v < n; ++v) {
        if (!mask[v]) m[new_index[v]] = t.monomial[v];
      }
      terms.push_back({std::move(m), t.coeff});
    }
    kept.push_back(Polynomial::from_terms(target, std::move(terms)));
  }
  return Ideal(target, std::move(kept));
}

}  // namespace

struct Ideal::Cache {
  std::mutex mutex;
  std::map<MonomialOrder, std::vector<Polynomial>> bases;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ring_)) {
      fail(ErrorCode::RingMismatch, "generator " + g.to_string() + " is not in " + ring_->to_string());
    }
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {one});
}

const std::vector<Polynomial>& Ideal::groebner_basis(const MonomialOrder& order) const {
  if (order.kind() == MonomialOrder::Kind::BlockElim && order.eliminated().size() != ring_->nvars()) {
    fail(ErrorCode::InvalidArgument, "block order does not match " + ring_->to_string());
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->bases.find(order);
  if (it != cache_->bases.end()) return it->second;
  return cache_->bases.emplace(order, cycdesc::groebner_basis(*this, order)).first->second;
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb.front().is_constant();
}

Polynomial Ideal::normal_form(const Polynomial& f, const MonomialOrder& order) const {
  check_same_ring(f, Polynomial(ring_));
  const auto& gb = groebner_basis(order);
  std::vector<Terms> basis;
  std::vector<std::size_t> use;
  for (const auto& g : gb) {
    use.push_back(basis.size());
    basis.push_back(detail::sorted_terms(g, order));
  }
  return from_order_terms(ring_, reduce_full(detail::sorted_terms(f, order), basis, use, order));
}

bool Ideal::contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) fail(ErrorCode::RingMismatch, "ideals from different rings");
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const Polynomial& g) { return contains(g); });
}

bool Ideal::operator==(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) return false;
  return groebner_basis() == other.groebner_basis();
}

Ideal Ideal::operator+(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) fail(ErrorCode::RingMismatch, "sum of ideals from different rings");
  auto gens = generators_;
  gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::operator*(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) fail(ErrorCode::RingMismatch, "product of ideals from different rings");
  std::vector<Polynomial> gens;
  for (const auto& a : generators_) {
    for (const auto& b : other.generators_) gens.push_back(a * b);
  }
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::with(const Polynomial& g) const {
  auto gens = generators_;
  gens.push_back(g);
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::with(const std::vector<Polynomial>& gs) const {
  auto gens = generators_;
  gens.insert(gens.end(), gs.begin(), gs.end());
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::substitute(const RingPtr& target, std::span<const Polynomial> images) const {
  std::vector<Polynomial> gens;
  for (const auto& g : generators_) gens.push_back(g.substitute(target, images));
  return Ideal(target, std::move(gens));
}

std::vector<Polynomial> Ideal::canonical_generators() const {
  auto gb = groebner_basis();
  std::reverse(gb.begin(), gb.end());
  return gb;
}

std::string Ideal::to_string() const {
  const auto gens = canonical_generators();
  if (gens.empty()) return "ideal(0)";
  std::string out = "ideal(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += gens[i].to_string();
  }
  return out + ")";
}

std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order) {
  const RingPtr& ring = ideal.ring();
  Buchberger bb(order);
  // Smaller generators first keeps intermediate coefficients small.
  std::vector<Terms> inputs;
  for (const auto& g : ideal.generators()) inputs.push_back(detail::sorted_terms(g, order));
  std::stable_sort(inputs.begin(), inputs.end(), [&](const Terms& a, const Terms& b) {
    return order.compare(lead(a), lead(b)) < 0;
  });
  for (auto& t : inputs) bb.add_generator(std::move(t));
  bb.run();
  if (bb.unit()) return {Polynomial::constant(ring, 1)};
  std::vector<Polynomial> out;
  for (auto& t : bb.reduced()) out.push_back(from_order_terms(ring, std::move(t)));
  return out;
}

bool is_groebner_basis(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  std::vector<Terms> polys;
  std::vector<std::size_t> use;
  for (const auto& g : basis) {
    if (g.is_zero()) return false;
    Terms t = detail::sorted_terms(g, order);
    make_monic(t);
    use.push_back(polys.size());
    polys.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (!reduce_full(s_polynomial(polys[i], polys[j], order), polys, use, order).empty()) return false;
    }
  }
  return true;
}

bool ideal_member(const Polynomial& f, const Ideal& ideal) {
  if (!same_ring(f.ring(), ideal.ring())) {
    fail(ErrorCode::RingMismatch, "membership of " + f.to_string() + " in an ideal of " + ideal.ring()->to_string());
  }
  return ideal.contains(f);
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& drop_vars) {
  std::vector<std::string> kept;
  for (std::size_t v = 0; v < ideal.ring()->nvars(); ++v) {
    if (std::find(drop_vars.begin(), drop_vars.end(), v) == drop_vars.end()) {
      kept.push_back(ideal.ring()->vars()[v]);
    }
  }
  if (drop_vars.empty()) return ideal;
  return eliminate_into(ideal, drop_vars, Ring::make(ideal.ring()->field(), kept));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  const RingPtr& ring = a.ring();
  if (!same_ring(ring, b.ring())) fail(ErrorCode::RingMismatch, "intersection of ideals from different rings");
  if (a.is_zero() || b.is_zero()) return Ideal(ring);
  std::vector<std::string> names{fresh_name(ring, "T")};
  for (const auto& v : ring->vars()) names.push_back(v);
  const RingPtr big = Ring::make(ring->field(), names);
  std::vector<std::size_t> shift(ring->nvars());
  for (std::size_t v = 0; v < shift.size(); ++v) shift[v] = v + 1;
  const Polynomial t = Polynomial::variable(big, 0);
  const Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * g.rename(big, shift));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.rename(big, shift));
  return eliminate_into(Ideal(big, std::move(gens)), {0}, ring);
}

Ideal ideal_quotient(const Ideal& i, const Ideal& j) {
  const RingPtr& ring = i.ring();
  if (!same_ring(ring, j.ring())) fail(ErrorCode::RingMismatch, "quotient of ideals from different rings");
  std::optional<Ideal> acc;
  for (const auto& g : j.generators()) {
    const Ideal both = intersect(i, Ideal(ring, {g}));
    std::vector<Polynomial> gens;
    for (const auto& h : both.generators()) {
      auto q = exact_quotient(h, g);
      if (!q) fail(ErrorCode::NonExactDivision, "intersection generator not divisible in ideal quotient");
      gens.push_back(std::move(*q));
    }
    Ideal part(ring, std::move(gens));
    acc = acc ? intersect(*acc, part) : part;
  }
  return acc ? *acc : Ideal::unit(ring);
}

Ideal saturate(const Ideal& i, const Ideal& j) {
  if (j.is_zero()) fail(ErrorCode::InvalidArgument, "saturation by the zero ideal");
  Ideal current = i;
  for (int round = 0; round < kSaturationRounds; ++round) {
    Ideal next = ideal_quotient(current, j);
    if (next == current) return current;
    current = std::move(next);
  }
  fail(ErrorCode::SaturationLimit, "saturation did not stabilize within " + std::to_string(kSaturationRounds) +
                                       " rounds");
}

Ideal saturate(const Ideal& i, const Polynomial& g) { return saturate(i, Ideal(i.ring(), {g})); }

DimensionResult ideal_dimension(const Ideal& ideal) {
  DimensionResult out;
  if (ideal.is_unit()) return out;
  const std::size_t n = ideal.ring()->nvars();
  if (n > 24) fail(ErrorCode::UnsupportedShape, "dimension of a ring with more than 24 variables");
  std::vector<std::uint32_t> supports;
  for (const auto& g : ideal.groebner_basis()) {
    std::uint32_t mask = 0;
    const Monomial& lm = g.leading_term().monomial;
    for (std::size_t v = 0; v < n; ++v) {
      if (lm[v]) mask |= 1u << v;
    }
    supports.push_back(mask);
  }
  auto independent = [&](std::uint32_t set) {
    return std::none_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & ~set) == 0; });
  };
  // Largest independent set; ties go to the lexicographically first index list.
  for (int size = static_cast<int>(n); size >= 0; --size) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(size));
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    for (;;) {
      std::uint32_t set = 0;
      for (auto v : idx) set |= 1u << v;
      if (independent(set)) {
        out.dimension = size;
        out.independent_set = idx;
        return out;
      }
      std::size_t k = idx.size();
      while (k > 0 && idx[k - 1] == n - idx.size() + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t q = k; q < idx.size(); ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return out;
}

std::optional<std::vector<Monomial>> standard_monomials(const Ideal& ideal) {
  const std::size_t n = ideal.ring()->nvars();
  const auto& gb = ideal.groebner_basis();
  std::vector<Monomial> out;
  if (gb.size() == 1 && gb.front().is_constant()) return out;
  std::vector<std::uint32_t> bound(n, 0);
  std::vector<Monomial> leads;
  for (const auto& g : gb) {
    const Monomial& lm = g.leading_term().monomial;
    leads.push_back(lm);
    std::size_t count = 0, var = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lm[v]) {
        ++count;
        var = v;
      }
    }
    if (count == 1 && (bound[var] == 0 || lm[var] < bound[var])) bound[var] = lm[var];
  }
  std::uint64_t box = 1;
  for (auto b : bound) {
    if (b == 0) return std::nullopt;
    box *= b;
    if (box > kMaxStandardMonomials) fail(ErrorCode::UnsupportedShape, "too many standard monomials");
  }
  Monomial m(n);
  for (;;) {
    if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); })) {
      out.push_back(m);
    }
    std::size_t v = 0;
    while (v < n && m[v] + 1 == bound[v]) m[v++] = 0;
    if (v == n) break;
    ++m[v];
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return degrevlex_compare(a, b) < 0; });
  return out;
}

std::optional<std::uint64_t> vector_space_dimension(const Ideal& ideal) {
  auto sm = standard_monomials(ideal);
  if (!sm) return std::nullopt;
  return sm->size();
}

}  // namespace cycdesc
