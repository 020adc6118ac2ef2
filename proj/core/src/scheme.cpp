#include "cycdesc/scheme.hpp"

#include <algorithm>
#include <numeric>

#include "cycdesc/error.hpp"

namespace cycdesc {

namespace {

// Variable names v0, v1, ... avoiding the field's parameters.
std::vector<std::string> internal_names(const FieldPtr& field, std::size_t count) {
  const auto& params = field->params();
  std::vector<std::string> out;
  for (std::size_t k = 0; out.size() < count; ++k) {
    std::string name = "v" + std::to_string(k);
    if (std::find(params.begin(), params.end(), name) == params.end()) out.push_back(std::move(name));
  }
  return out;
}

// Ring on source variables followed by target variables, with the graph
// relations y_j - f(y_j) and the given source ideal.
struct Graph {
  RingPtr ring;
  std::size_t nx;
  Ideal ideal;
};

Graph graph_ideal(const RingPtr& source, const Ideal& source_ideal, const RingPtr& target,
                  const std::vector<Polynomial>& images) {
  const std::size_t nx = source->nvars(), ny = target->nvars();
  const RingPtr ring = Ring::make(source->field(), internal_names(source->field(), nx + ny));
  std::vector<std::size_t> shift(nx);
  std::iota(shift.begin(), shift.end(), 0);
  std::vector<Polynomial> gens;
  for (const auto& g : source_ideal.generators()) gens.push_back(g.rename(ring, shift));
  for (std::size_t j = 0; j < ny; ++j) {
    gens.push_back(Polynomial::variable(ring, nx + j) - images[j].rename(ring, shift));
  }
  return {ring, nx, Ideal(ring, std::move(gens))};
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

Polynomial to_ring(const Polynomial& f, const RingPtr& target) { return f.rename(target, iota_indices(f.ring()->nvars())); }

bool base_change_stable(MorphismProperty p) { return p != MorphismProperty::Generalizing; }

}  // namespace

Scheme::Scheme(std::string name, std::vector<AffinePiece> pieces) : name_(std::move(name)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) fail(ErrorCode::InvalidDeclaration, "scheme " + name_ + " has no pieces");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!same_field(p.ring->field(), pieces_.front().ring->field())) {
      fail(ErrorCode::InvalidDeclaration, "pieces of " + name_ + " live over different fields");
    }
    if (!same_ring(p.ring, p.ideal.ring())) fail(ErrorCode::RingMismatch, "ideal of piece " + p.name + " is in another ring");
    if (p.ideal.is_unit()) fail(ErrorCode::InvalidDeclaration, "piece " + p.name + " of " + name_ + " is empty");
    for (std::size_t k = 0; k < i; ++k) {
      if (pieces_[k].name == p.name) fail(ErrorCode::InvalidDeclaration, "duplicate piece " + p.name + " in " + name_);
    }
  }
}

std::optional<std::size_t> Scheme::piece_index(const std::string& name) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].name == name) return i;
  }
  return std::nullopt;
}

SchemePtr make_scheme(std::string name, std::vector<AffinePiece> pieces) {
  return std::make_shared<const Scheme>(std::move(name), std::move(pieces));
}

SchemePoint::SchemePoint(SchemePtr scheme, std::size_t piece, PrimeIdeal prime)
    : scheme_(std::move(scheme)), piece_(piece), prime_(std::move(prime)) {
  const AffinePiece& p = scheme_->piece(piece_);
  if (!same_ring(p.ring, prime_.ideal().ring())) fail(ErrorCode::RingMismatch, "prime is not in the ring of " + p.name);
  if (!prime_.ideal().contains(p.ideal)) {
    fail(ErrorCode::NotContaining, prime_.to_string() + " does not contain the ideal of piece " + p.name);
  }
  key_ = p.name + '\x01' + prime_.to_string();
}

std::string SchemePoint::to_string() const { return "[piece=" + piece_name() + "; " + prime_.to_string() + "]"; }

bool SchemePoint::operator==(const SchemePoint& other) const {
  return scheme_ == other.scheme_ && piece_ == other.piece_ && prime_ == other.prime_;
}

bool SchemePoint::operator<(const SchemePoint& other) const { return key_ < other.key_; }

const char* property_name(MorphismProperty p) {
  switch (p) {
    case MorphismProperty::Flat:
      return "flat";
    case MorphismProperty::Surjective:
      return "surjective";
    case MorphismProperty::Generalizing:
      return "generalizing";
    case MorphismProperty::UniversallyGeneralizing:
      return "universally_generalizing";
    case MorphismProperty::UniversallyBijective:
      return "universally_bijective";
    case MorphismProperty::ClosedImmersion:
      return "closed_immersion";
  }
  return "unknown";
}

std::optional<MorphismProperty> parse_property(const std::string& name) {
  for (auto p : {MorphismProperty::Flat, MorphismProperty::Surjective, MorphismProperty::Generalizing,
                 MorphismProperty::UniversallyGeneralizing, MorphismProperty::UniversallyBijective,
                 MorphismProperty::ClosedImmersion}) {
    if (name == property_name(p)) return p;
  }
  return std::nullopt;
}

SchemeMorphism::SchemeMorphism(std::string name, SchemePtr source, SchemePtr target, std::vector<PieceMap> maps,
                               std::set<MorphismProperty> asserted)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      maps_(std::move(maps)),
      asserted_(std::move(asserted)) {
  if (!same_field(source_->field(), target_->field())) {
    fail(ErrorCode::IllDefinedMorphism, name_ + ": source and target live over different fields");
  }
  if (maps_.size() != source_->pieces().size()) {
    fail(ErrorCode::IllDefinedMorphism, name_ + ": every source piece needs exactly one piece map");
  }
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const AffinePiece& src = source_->piece(a);
    const PieceMap& m = maps_[a];
    if (m.target_piece >= target_->pieces().size()) fail(ErrorCode::IllDefinedMorphism, name_ + ": bad target piece");
    const AffinePiece& dst = target_->piece(m.target_piece);
    if (m.images.size() != dst.ring->nvars()) {
      fail(ErrorCode::IllDefinedMorphism, name_ + ": piece " + src.name + " must give an image for each variable of " +
                                              dst.name);
    }
    for (const auto& img : m.images) {
      if (!same_ring(img.ring(), src.ring)) {
        fail(ErrorCode::IllDefinedMorphism, name_ + ": image " + img.to_string() + " is not in the ring of " + src.name);
      }
    }
    for (const auto& g : dst.ideal.generators()) {
      if (!src.ideal.contains(pull(a, g))) {
        fail(ErrorCode::IllDefinedMorphism, name_ + ": generator " + g.to_string() + " of piece " + dst.name +
                                                " does not pull back into the ideal of piece " + src.name);
      }
    }
  }
  if (has(MorphismProperty::ClosedImmersion)) {
    for (std::size_t a = 0; a < maps_.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        if (maps_[a].target_piece == maps_[b].target_piece) {
          fail(ErrorCode::NotClosedImmersion, name_ + ": two source pieces map to the same target piece");
        }
      }
      const AffinePiece& src = source_->piece(a);
      const Graph gr = graph_ideal(src.ring, src.ideal, target_->piece(maps_[a].target_piece).ring, maps_[a].images);
      std::vector<bool> mask(gr.ring->nvars(), false);
      std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(gr.nx), true);
      const MonomialOrder order = MonomialOrder::block_elim(mask);
      for (std::size_t v = 0; v < gr.nx; ++v) {
        const Polynomial nf = gr.ideal.normal_form(Polynomial::variable(gr.ring, v), order);
        for (std::size_t u = 0; u < gr.nx; ++u) {
          if (nf.degree_in(u) > 0) {
            fail(ErrorCode::NotClosedImmersion, name_ + ": variable " + src.ring->vars()[v] + " of piece " + src.name +
                                                    " is not in the image of the pullback map");
          }
        }
      }
    }
  }
}

std::string SchemeMorphism::asserted_string() const {
  if (asserted_.empty()) return "-";
  std::string out;
  for (auto p : asserted_) {
    if (!out.empty()) out += ',';
    out += property_name(p);
  }
  return out;
}

Polynomial SchemeMorphism::pull(std::size_t source_piece, const Polynomial& f) const {
  const PieceMap& m = map(source_piece);
  return f.substitute(source_->piece(source_piece).ring, m.images);
}

MorphismPtr make_morphism(std::string name, SchemePtr source, SchemePtr target, std::vector<PieceMap> maps,
                          std::set<MorphismProperty> asserted) {
  return std::make_shared<const SchemeMorphism>(std::move(name), std::move(source), std::move(target), std::move(maps),
                                                std::move(asserted));
}

MorphismPtr identity_morphism(const SchemePtr& scheme) {
  std::vector<PieceMap> maps;
  for (std::size_t a = 0; a < scheme->pieces().size(); ++a) {
    const RingPtr& r = scheme->piece(a).ring;
    PieceMap m{a, {}};
    for (std::size_t v = 0; v < r->nvars(); ++v) m.images.push_back(Polynomial::variable(r, v));
    maps.push_back(std::move(m));
  }
  std::set<MorphismProperty> all{MorphismProperty::Flat,
                                 MorphismProperty::Surjective,
                                 MorphismProperty::Generalizing,
                                 MorphismProperty::UniversallyGeneralizing,
                                 MorphismProperty::UniversallyBijective,
                                 MorphismProperty::ClosedImmersion};
  return make_morphism("id_" + scheme->name(), scheme, scheme, std::move(maps), std::move(all));
}

MorphismPtr compose(const MorphismPtr& f, const MorphismPtr& g, std::string name) {
  if (f->target() != g->source()) {
    fail(ErrorCode::IllDefinedMorphism, "cannot compose " + f->name() + " with " + g->name() + ": schemes differ");
  }
  std::vector<PieceMap> maps;
  for (std::size_t a = 0; a < f->maps().size(); ++a) {
    const PieceMap& fm = f->map(a);
    const PieceMap& gm = g->map(fm.target_piece);
    PieceMap m{gm.target_piece, {}};
    for (const auto& img : gm.images) m.images.push_back(img.substitute(f->source()->piece(a).ring, fm.images));
    maps.push_back(std::move(m));
  }
  std::set<MorphismProperty> props;
  std::set_intersection(f->asserted().begin(), f->asserted().end(), g->asserted().begin(), g->asserted().end(),
                        std::inserter(props, props.begin()));
  if (name.empty()) name = g->name() + "o" + f->name();
  return make_morphism(std::move(name), f->source(), g->target(), std::move(maps), std::move(props));
}

ClosedSubscheme::ClosedSubscheme(SchemePtr ambient, std::vector<Ideal> ideals)
    : ambient_(std::move(ambient)), ideals_(std::move(ideals)) {
  if (ideals_.size() != ambient_->pieces().size()) {
    fail(ErrorCode::InvalidDeclaration, "subscheme of " + ambient_->name() + " needs one ideal per piece");
  }
  for (std::size_t a = 0; a < ideals_.size(); ++a) {
    const AffinePiece& p = ambient_->piece(a);
    if (!same_ring(ideals_[a].ring(), p.ring)) fail(ErrorCode::RingMismatch, "subscheme ideal not in the ring of " + p.name);
    if (!ideals_[a].contains(p.ideal)) {
      fail(ErrorCode::NotContaining, "subscheme ideal " + ideals_[a].to_string() + " does not contain the ideal of piece " +
                                         p.name);
    }
  }
}

ClosedSubscheme ClosedSubscheme::whole(const SchemePtr& scheme) {
  std::vector<Ideal> ideals;
  for (const auto& p : scheme->pieces()) ideals.push_back(p.ideal);
  return ClosedSubscheme(scheme, std::move(ideals));
}

bool ClosedSubscheme::operator==(const ClosedSubscheme& other) const {
  return ambient_ == other.ambient_ && ideals_ == other.ideals_;
}

FiberProduct fiber_product(const MorphismPtr& f, const MorphismPtr& g) {
  if (f->target() != g->target()) {
    fail(ErrorCode::IllDefinedMorphism, "fiber product of " + f->name() + " and " + g->name() + " over different bases");
  }
  const SchemePtr& x = f->source();
  const SchemePtr& y = g->source();
  std::vector<AffinePiece> pieces;
  std::vector<PieceMap> map1, map2;
  for (std::size_t a = 0; a < x->pieces().size(); ++a) {
    for (std::size_t b = 0; b < y->pieces().size(); ++b) {
      const std::size_t s = f->map(a).target_piece;
      if (g->map(b).target_piece != s) continue;
      const RingPtr& ra = x->piece(a).ring;
      const RingPtr& rb = y->piece(b).ring;
      std::vector<std::string> names;
      for (const auto& v : ra->vars()) names.push_back(v + "_1");
      for (const auto& v : rb->vars()) names.push_back(v + "_2");
      const RingPtr ring = Ring::make(x->field(), names);
      std::vector<std::size_t> first = iota_indices(ra->nvars()), second(rb->nvars());
      std::iota(second.begin(), second.end(), ra->nvars());
      std::vector<Polynomial> gens;
      for (const auto& h : x->piece(a).ideal.generators()) gens.push_back(h.rename(ring, first));
      for (const auto& h : y->piece(b).ideal.generators()) gens.push_back(h.rename(ring, second));
      for (std::size_t j = 0; j < f->map(a).images.size(); ++j) {
        gens.push_back(f->map(a).images[j].rename(ring, first) - g->map(b).images[j].rename(ring, second));
      }
      Ideal ideal(ring, std::move(gens));
      if (ideal.is_unit()) continue;
      PieceMap m1{a, {}}, m2{b, {}};
      for (auto v : first) m1.images.push_back(Polynomial::variable(ring, v));
      for (auto v : second) m2.images.push_back(Polynomial::variable(ring, v));
      pieces.push_back({x->piece(a).name + "*" + y->piece(b).name, ring, std::move(ideal)});
      map1.push_back(std::move(m1));
      map2.push_back(std::move(m2));
    }
  }
  if (pieces.empty()) fail(ErrorCode::InvalidDeclaration, "fiber product of " + f->name() + " and " + g->name() + " is empty");
  const SchemePtr product = make_scheme(x->name() + "*" + y->name(), std::move(pieces));
  std::set<MorphismProperty> p1, p2;
  for (auto p : g->asserted()) {
    if (base_change_stable(p)) p1.insert(p);
  }
  for (auto p : f->asserted()) {
    if (base_change_stable(p)) p2.insert(p);
  }
  return {product, make_morphism("pr1", product, x, std::move(map1), std::move(p1)),
          make_morphism("pr2", product, y, std::move(map2), std::move(p2))};
}

ClosedSubscheme preimage_subscheme(const MorphismPtr& f, const ClosedSubscheme& z) {
  if (z.ambient() != f->target()) fail(ErrorCode::InvalidArgument, "subscheme does not live on the target of " + f->name());
  std::vector<Ideal> ideals;
  for (std::size_t a = 0; a < f->maps().size(); ++a) {
    std::vector<Polynomial> pulled;
    for (const auto& g : z.ideal(f->map(a).target_piece).generators()) pulled.push_back(f->pull(a, g));
    ideals.push_back(f->source()->piece(a).ideal.with(pulled));
  }
  return ClosedSubscheme(f->source(), std::move(ideals));
}

ClosedSubscheme closure_of_point(const SchemePoint& x) {
  std::vector<Ideal> ideals;
  for (std::size_t a = 0; a < x.scheme()->pieces().size(); ++a) {
    ideals.push_back(a == x.piece() ? x.prime().ideal() : Ideal::unit(x.scheme()->piece(a).ring));
  }
  return ClosedSubscheme(x.scheme(), std::move(ideals));
}

SchemePoint image_point(const MorphismPtr& f, const SchemePoint& x) {
  if (x.scheme() != f->source()) fail(ErrorCode::InvalidArgument, "point does not live on the source of " + f->name());
  const PieceMap& m = f->map(x.piece());
  const RingPtr& target = f->target()->piece(m.target_piece).ring;
  const Graph gr = graph_ideal(x.prime().ideal().ring(), x.prime().ideal(), target, m.images);
  const Ideal contracted = eliminate(gr.ideal, iota_indices(gr.nx));
  std::vector<Polynomial> gens;
  for (const auto& g : contracted.generators()) gens.push_back(to_ring(g, target));
  const PrimeCertificate cert =
      x.prime().asserted() ? PrimeCertificate::UserAsserted : PrimeCertificate::Contraction;
  return SchemePoint(f->target(), m.target_piece, PrimeIdeal(Ideal(target, std::move(gens)), cert));
}

}  // namespace cycdesc
