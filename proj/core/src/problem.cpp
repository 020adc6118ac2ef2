#include "cycdesc/problem.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "cycdesc/error.hpp"

namespace cycdesc {

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string join_polys(const std::vector<Polynomial>& ps) {
  if (ps.empty()) return "0";
  std::string out;
  for (const auto& p : ps) {
    if (!out.empty()) out += "; ";
    out += p.to_string();
  }
  return out;
}

std::string format_vector(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + "]";
}

bool is_keyword(const std::string& s) {
  static const char* const words[] = {"piece", "ring", "ideal", "map", "assert", "prime", "scheme", "terms", "vars"};
  return std::any_of(std::begin(words), std::end(words), [&](const char* w) { return s == w; });
}

}  // namespace

class ProblemParser {
 public:
  explicit ProblemParser(Problem& p) : p_(p) {}

  void line(int number, std::string_view text) {
    line_ = number;
    toks_ = tokenize(text);
    pos_ = 0;
    if (toks_.empty()) return;
    const std::string head = toks_[0].text;
    ++pos_;
    if (head != "field" && !p_.field_) error(ErrorCode::Syntax, toks_[0], "the field must be declared first");
    try {
      if (head == "field") {
        field();
      } else if (head == "ring") {
        ring();
      } else if (head == "scheme") {
        scheme();
      } else if (head == "morphism") {
        morphism();
      } else if (head == "compose") {
        composition();
      } else if (head == "subscheme") {
        subscheme();
      } else if (head == "point") {
        point();
      } else if (head == "cycle") {
        cycle();
      } else if (head == "task") {
        task();
      } else {
        error(ErrorCode::Syntax, toks_[0], "unknown declaration '" + head + "'");
      }
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw Error(e.code(), "line " + std::to_string(line_) + ": " + msg);
    }
  }

  void finish() {
    if (!p_.field_) fail(ErrorCode::Syntax, "line 1, column 1: missing field declaration");
  }

 private:
  [[noreturn]] void error(ErrorCode code, const Token& at, const std::string& msg) const {
    fail(code, "line " + std::to_string(line_) + ", column " + std::to_string(at.col) + ": " + msg);
  }

  [[noreturn]] void error_at_end(const std::string& msg) const {
    const int col = toks_.empty() ? 1 : toks_.back().col + static_cast<int>(toks_.back().text.size());
    fail(ErrorCode::Syntax, "line " + std::to_string(line_) + ", column " + std::to_string(col) + ": " + msg);
  }

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) error_at_end("unexpected end of line");
    return toks_[pos_];
  }
  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& word) {
    if (done()) error_at_end("expected '" + word + "'");
    const Token& t = next();
    if (t.text != word) error(ErrorCode::Syntax, t, "expected '" + word + "', found '" + t.text + "'");
  }
  const Token& identifier() {
    const Token& t = next();
    if (!is_identifier(t.text) || is_keyword(t.text)) error(ErrorCode::Syntax, t, "expected a name, found '" + t.text + "'");
    return t;
  }
  // Joins tokens up to (not including) any of the stop words.
  std::pair<std::string, Token> rest_until(std::initializer_list<const char*> stops) {
    std::string out;
    Token first{"", done() ? 0 : peek().col};
    while (!done()) {
      const std::string& t = peek().text;
      if (std::any_of(stops.begin(), stops.end(), [&](const char* s) { return t == s; })) break;
      if (!out.empty()) out += ' ';
      out += next().text;
    }
    first.text = out;
    return {out, first};
  }

  void declare(const std::string& name, const Token& at, Problem::Object obj, std::string text) {
    if (p_.objects_.count(name)) error(ErrorCode::InvalidDeclaration, at, "'" + name + "' is already declared");
    p_.objects_.emplace(name, std::move(obj));
    p_.decls_.push_back({name, std::move(text)});
  }

  template <typename T>
  const T& lookup(const Token& t, const char* kind) const {
    auto it = p_.objects_.find(t.text);
    if (it == p_.objects_.end()) error(ErrorCode::UnresolvedReference, t, "unknown " + std::string(kind) + " '" + t.text + "'");
    const T* v = std::get_if<T>(&it->second);
    if (!v) error(ErrorCode::UnresolvedReference, t, "'" + t.text + "' is not a " + kind);
    return *v;
  }

  std::vector<Polynomial> polys(const std::string& text, const Token& at, const RingPtr& ring) {
    std::vector<Polynomial> out;
    if (trim(text).empty()) error(ErrorCode::Syntax, at, "expected polynomials");
    for (const auto& part : split(text, ';')) {
      try {
        Polynomial f = parse_polynomial(part, ring);
        if (!f.is_zero()) out.push_back(std::move(f));
      } catch (const Error& e) {
        error(e.code(), at, e.what());
      }
    }
    return out;
  }

  std::size_t piece_of(const SchemePtr& s, const Token& t) const {
    auto idx = s->piece_index(t.text);
    if (!idx) error(ErrorCode::UnresolvedReference, t, "scheme " + s->name() + " has no piece '" + t.text + "'");
    return *idx;
  }

  void end_of_line() {
    if (!done()) error(ErrorCode::Syntax, peek(), "unexpected '" + peek().text + "'");
  }

  void field() {
    if (p_.field_) error(ErrorCode::Syntax, toks_[0], "field declared twice");
    const Token& kind = next();
    if (kind.text == "Q") {
      p_.field_ = FieldDesc::rationals();
      p_.decls_.push_back({"", "field Q"});
    } else if (kind.text == "Fp") {
      const Token& pt = next();
      std::uint64_t prime = 0;
      try {
        std::size_t used = 0;
        prime = std::stoull(pt.text, &used);
        if (used != pt.text.size()) throw std::invalid_argument("digits");
      } catch (const std::exception&) {
        error(ErrorCode::Syntax, pt, "expected a prime, found '" + pt.text + "'");
      }
      if (!is_prime(prime)) error(ErrorCode::InvalidDeclaration, pt, pt.text + " is not prime");
      p_.field_ = FieldDesc::prime_field(prime);
      p_.decls_.push_back({"", "field Fp " + pt.text});
    } else {
      error(ErrorCode::Syntax, kind, "expected 'Q' or 'Fp <p>'");
    }
    end_of_line();
  }

  void ring() {
    const Token& name = identifier();
    expect("vars");
    std::vector<std::string> vars;
    std::string text = "ring " + name.text + " vars";
    while (!done()) {
      const Token& v = identifier();
      vars.push_back(v.text);
      text += " " + v.text;
    }
    RingPtr r;
    try {
      r = Ring::make(p_.field_, vars);
    } catch (const Error& e) {
      error(ErrorCode::InvalidDeclaration, name, e.what());
    }
    declare(name.text, name, r, text);
  }

  void scheme() {
    const Token& name = identifier();
    std::vector<AffinePiece> pieces;
    std::string text = "scheme " + name.text;
    if (done()) error_at_end("expected 'piece'");
    while (!done()) {
      expect("piece");
      const Token& pname = identifier();
      expect("ring");
      const Token& rname = next();
      const RingPtr& r = lookup<RingPtr>(rname, "ring");
      expect("ideal");
      auto [gens_text, at] = rest_until({"piece"});
      auto gens = polys(gens_text, at, r);
      text += " piece " + pname.text + " ring " + rname.text + " ideal " + join_polys(gens);
      pieces.push_back({pname.text, r, Ideal(r, std::move(gens))});
    }
    declare(name.text, name, make_scheme(name.text, std::move(pieces)), text);
  }

  std::vector<Polynomial> images(const std::string& text, const Token& at, const RingPtr& source,
                                 const RingPtr& target) {
    std::vector<std::optional<Polynomial>> out(target->nvars());
    if (!trim(text).empty()) {
      for (const auto& part : split(text, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) error(ErrorCode::Syntax, at, "expected <var>=<poly>, found '" + part + "'");
        const std::string var = trim(std::string_view(part).substr(0, eq));
        auto idx = target->index_of(var);
        if (!idx) error(ErrorCode::UnresolvedReference, at, "target ring has no variable '" + var + "'");
        if (out[*idx]) error(ErrorCode::Syntax, at, "variable '" + var + "' mapped twice");
        try {
          out[*idx] = parse_polynomial(std::string_view(part).substr(eq + 1), source);
        } catch (const Error& e) {
          error(e.code(), at, e.what());
        }
      }
    }
    std::vector<Polynomial> result;
    for (std::size_t v = 0; v < out.size(); ++v) {
      if (!out[v]) error(ErrorCode::IllDefinedMorphism, at, "no image given for variable '" + target->vars()[v] + "'");
      result.push_back(*out[v]);
    }
    return result;
  }

  static std::string images_text(const RingPtr& target, const std::vector<Polynomial>& imgs) {
    std::string out;
    for (std::size_t v = 0; v < imgs.size(); ++v) {
      if (v) out += ", ";
      out += target->vars()[v] + "=" + imgs[v].to_string();
    }
    return out;
  }

  void morphism() {
    const Token& name = identifier();
    const SchemePtr& x = lookup<SchemePtr>(next(), "scheme");
    expect("->");
    const SchemePtr& y = lookup<SchemePtr>(next(), "scheme");
    std::vector<std::optional<PieceMap>> maps(x->pieces().size());
    std::set<MorphismProperty> props;
    std::string text = "morphism " + name.text + " " + x->name() + " -> " + y->name();
    auto clause = [&](std::size_t a, std::size_t b, const Token& at) {
      if (maps[a]) error(ErrorCode::Syntax, at, "piece " + x->piece(a).name + " mapped twice");
      expect("map");
      auto [img_text, img_at] = rest_until({"piece", "assert"});
      maps[a] = PieceMap{b, images(img_text, img_at, x->piece(a).ring, y->piece(b).ring)};
    };
    if (!done() && peek().text == "map") {
      if (x->pieces().size() != 1 || y->pieces().size() != 1) {
        error(ErrorCode::Syntax, peek(), "'map' without 'piece' needs single-piece schemes");
      }
      clause(0, 0, peek());
    }
    while (!done() && peek().text == "piece") {
      next();
      const Token& arrow = next();
      const auto sep = arrow.text.find("->");
      if (sep == std::string::npos) error(ErrorCode::Syntax, arrow, "expected <source>-><target>");
      Token a{arrow.text.substr(0, sep), arrow.col};
      Token b{arrow.text.substr(sep + 2), arrow.col + static_cast<int>(sep) + 2};
      clause(piece_of(x, a), piece_of(y, b), arrow);
    }
    if (!done()) {
      expect("assert");
      auto [list, at] = rest_until({});
      for (const auto& word : split(list, ',')) {
        auto prop = parse_property(word);
        if (!prop) error(ErrorCode::Syntax, at, "unknown property '" + word + "'");
        props.insert(*prop);
      }
    }
    std::vector<PieceMap> final_maps;
    for (std::size_t a = 0; a < maps.size(); ++a) {
      if (!maps[a]) error(ErrorCode::IllDefinedMorphism, name, "no map for piece " + x->piece(a).name);
      text += " piece " + x->piece(a).name + "->" + y->piece(maps[a]->target_piece).name + " map " +
              images_text(y->piece(maps[a]->target_piece).ring, maps[a]->images);
      final_maps.push_back(std::move(*maps[a]));
    }
    auto f = make_morphism(name.text, x, y, std::move(final_maps), props);
    if (!props.empty()) text += " assert " + f->asserted_string();
    declare(name.text, name, f, text);
  }

  void composition() {
    const Token& name = identifier();
    const MorphismPtr& f = lookup<MorphismPtr>(next(), "morphism");
    expect("then");
    const MorphismPtr& g = lookup<MorphismPtr>(next(), "morphism");
    end_of_line();
    declare(name.text, name, compose(f, g, name.text), "compose " + name.text + " " + f->name() + " then " + g->name());
  }

  void subscheme() {
    const Token& name = identifier();
    expect("scheme");
    const SchemePtr& s = lookup<SchemePtr>(next(), "scheme");
    std::vector<std::optional<Ideal>> ideals(s->pieces().size());
    std::string text = "subscheme " + name.text + " scheme " + s->name();
    if (done()) error_at_end("expected 'piece'");
    while (!done()) {
      expect("piece");
      const Token& pt = next();
      const std::size_t a = piece_of(s, pt);
      if (ideals[a]) error(ErrorCode::Syntax, pt, "piece listed twice");
      expect("ideal");
      auto [gens_text, at] = rest_until({"piece"});
      auto gens = polys(gens_text, at, s->piece(a).ring);
      text += " piece " + pt.text + " ideal " + join_polys(gens);
      ideals[a] = s->piece(a).ideal.with(gens);
    }
    std::vector<Ideal> all;
    for (std::size_t a = 0; a < ideals.size(); ++a) all.push_back(ideals[a] ? *ideals[a] : Ideal::unit(s->piece(a).ring));
    declare(name.text, name, ClosedSubscheme(s, std::move(all)), text);
  }

  void point() {
    const Token& name = identifier();
    expect("scheme");
    const SchemePtr& s = lookup<SchemePtr>(next(), "scheme");
    std::size_t a = 0;
    if (!done() && peek().text == "piece") {
      next();
      a = piece_of(s, next());
    } else if (s->pieces().size() != 1) {
      error(ErrorCode::Syntax, done() ? name : peek(), "expected 'piece' for a scheme with several pieces");
    }
    expect("prime");
    const bool asserted = !toks_.empty() && toks_.back().text == "asserted";
    if (asserted) toks_.pop_back();
    auto [gens_text, at] = rest_until({});
    auto gens = polys(gens_text, at, s->piece(a).ring);
    const Ideal ideal = s->piece(a).ideal.with(gens);
    std::optional<PrimeIdeal> prime;
    if (asserted) {
      if (ideal.is_unit()) error(ErrorCode::InvalidDeclaration, name, "point " + name.text + " is the unit ideal");
      prime.emplace(ideal, PrimeCertificate::UserAsserted);
    } else {
      const auto mins = minimal_primes(ideal);
      if (mins.size() != 1 || mins.front() != PrimeIdeal(ideal, PrimeCertificate::UserAsserted)) {
        error(ErrorCode::InvalidDeclaration, name, "ideal of point " + name.text + " is not prime");
      }
      prime.emplace(ideal, mins.front().certificate());
    }
    std::string text = "point " + name.text + " scheme " + s->name() + " piece " + s->piece(a).name + " prime " +
                       join_polys(gens) + (asserted ? " asserted" : "");
    declare(name.text, name, SchemePoint(s, a, *prime), text);
  }

  void cycle() {
    const Token& name = identifier();
    expect("scheme");
    const SchemePtr& s = lookup<SchemePtr>(next(), "scheme");
    expect("terms");
    Cycle c(s);
    std::string text = "cycle " + name.text + " scheme " + s->name() + " terms";
    while (!done()) {
      const Token& t = next();
      std::string coeff = "1", pname = t.text;
      const auto star = t.text.find('*');
      if (star != std::string::npos) {
        coeff = t.text.substr(0, star);
        pname = t.text.substr(star + 1);
      } else if (!pname.empty() && (pname[0] == '-' || pname[0] == '+')) {
        coeff = pname[0] == '-' ? "-1" : "1";
        pname = pname.substr(1);
      }
      mpz_class k;
      if (coeff.empty() || k.set_str(coeff[0] == '+' ? coeff.substr(1) : coeff, 10) != 0) {
        error(ErrorCode::Syntax, t, "bad coefficient in '" + t.text + "'");
      }
      const SchemePoint& p = lookup<SchemePoint>(Token{pname, t.col}, "point");
      if (p.scheme() != s) error(ErrorCode::InvalidDeclaration, t, "point " + pname + " is not on " + s->name());
      c.add(p, k);
      text += " " + k.get_str() + "*" + pname;
    }
    declare(name.text, name, c, text);
  }

  void task() {
    TaskSpec t;
    t.line = line_;
    t.command = next().text;
    while (!done()) t.args.push_back(next().text);
    p_.tasks_.push_back(std::move(t));
  }

  Problem& p_;
  int line_ = 0;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Problem Problem::parse(std::string_view text) {
  Problem p;
  ProblemParser parser(p);
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    parser.line(++number, text.substr(start, end - start));
    start = end + 1;
  }
  parser.finish();
  return p;
}

std::string Problem::print() const {
  std::string out;
  for (const auto& d : decls_) out += d.text + "\n";
  for (const auto& t : tasks_) {
    out += "task " + t.command;
    for (const auto& a : t.args) out += " " + a;
    out += "\n";
  }
  return out;
}

template <typename T>
const T& Problem::get(const std::string& name) const {
  auto it = objects_.find(name);
  if (it == objects_.end()) fail(ErrorCode::UnresolvedReference, "unknown name '" + name + "'");
  const T* v = std::get_if<T>(&it->second);
  if (!v) fail(ErrorCode::UnresolvedReference, "'" + name + "' has the wrong kind");
  return *v;
}

template const RingPtr& Problem::get<RingPtr>(const std::string&) const;
template const SchemePtr& Problem::get<SchemePtr>(const std::string&) const;
template const MorphismPtr& Problem::get<MorphismPtr>(const std::string&) const;
template const ClosedSubscheme& Problem::get<ClosedSubscheme>(const std::string&) const;
template const SchemePoint& Problem::get<SchemePoint>(const std::string&) const;
template const Cycle& Problem::get<Cycle>(const std::string&) const;

template <typename T>
std::vector<std::string> Problem::names() const {
  std::vector<std::string> out;
  for (const auto& d : decls_) {
    if (d.name.empty()) continue;
    if (std::holds_alternative<T>(objects_.at(d.name))) out.push_back(d.name);
  }
  return out;
}

template std::vector<std::string> Problem::names<RingPtr>() const;
template std::vector<std::string> Problem::names<SchemePtr>() const;
template std::vector<std::string> Problem::names<MorphismPtr>() const;
template std::vector<std::string> Problem::names<ClosedSubscheme>() const;
template std::vector<std::string> Problem::names<SchemePoint>() const;
template std::vector<std::string> Problem::names<Cycle>() const;

std::vector<std::string> Problem::morphism_names() const { return names<MorphismPtr>(); }

std::string Report::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : header) out << k << ": " << v << "\n";
  for (const auto& t : tasks) {
    out << "\ntask: " << t.task << "\n";
    for (const auto& [k, v] : t.fields) out << k << ": " << v << "\n";
  }
  return out.str();
}

namespace {

Cycle cycle_arg(const Problem& p, const std::string& name) {
  if (!p.has(name)) fail(ErrorCode::UnresolvedReference, "unknown cycle or point '" + name + "'");
  try {
    return p.get<Cycle>(name);
  } catch (const Error&) {
    return Cycle::of_point(p.get<SchemePoint>(name));
  }
}

std::vector<SchemePoint> points_arg(const Problem& p, const std::vector<std::string>& args, std::size_t from) {
  std::vector<SchemePoint> out;
  for (std::size_t i = from; i < args.size(); ++i) out.push_back(p.get<SchemePoint>(args[i]));
  return out;
}

void need_args(const TaskSpec& t, std::size_t min, const char* usage) {
  if (t.args.size() < min) fail(ErrorCode::Syntax, "line " + std::to_string(t.line) + ": usage: " + usage);
}

std::string truncation_label(const ScopeInvariant& s) {
  return "truncated to " + std::to_string(s.points) + " scope point(s)" +
         (s.skipped ? ", " + std::to_string(s.skipped) + " with empty preimage skipped" : std::string());
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

TaskReport run_task(const Problem& p, const TaskSpec& t) {
  TaskReport r;
  r.task = t.command;
  for (const auto& a : t.args) r.task += " " + a;
  auto& f = r.fields;
  const std::string& cmd = t.command;
  if (cmd == "cycl") {
    need_args(t, 1, "cycl <subscheme|scheme>");
    const std::string& n = t.args[0];
    if (!p.has(n)) fail(ErrorCode::UnresolvedReference, "unknown subscheme '" + n + "'");
    try {
      f.emplace_back("result", cycl(p.get<ClosedSubscheme>(n)).to_string());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnresolvedReference) throw;
      f.emplace_back("result", cycl(ClosedSubscheme::whole(p.get<SchemePtr>(n))).to_string());
    }
  } else if (cmd == "pullback") {
    need_args(t, 2, "pullback <morphism>... <cycle>");
    Cycle c = cycle_arg(p, t.args.back());
    for (std::size_t i = t.args.size() - 1; i-- > 0;) c = naive_pullback(p.get<MorphismPtr>(t.args[i]), c);
    f.emplace_back("result", c.to_string());
  } else if (cmd == "pushforward") {
    need_args(t, 2, "pushforward <closed immersion> <cycle>");
    f.emplace_back("result", pushforward_closed(p.get<MorphismPtr>(t.args[0]), cycle_arg(p, t.args[1])).to_string());
  } else if (cmd == "image") {
    need_args(t, 2, "image <morphism> <point>");
    f.emplace_back("result", image_point(p.get<MorphismPtr>(t.args[0]), p.get<SchemePoint>(t.args[1])).to_string());
  } else if (cmd == "grade") {
    need_args(t, 1, "grade <cycle>");
    const auto graded = grade(cycle_arg(p, t.args[0]));
    if (graded.empty()) f.emplace_back("result", "0");
    for (const auto& [codim, c] : graded) f.emplace_back("codim " + std::to_string(codim), c.to_string());
  } else if (cmd == "defect") {
    need_args(t, 2, "defect <morphism> <cycle>");
    DescentProblem dp(p.get<MorphismPtr>(t.args[0]), {});
    f.emplace_back("result", descent_defect(dp, cycle_arg(p, t.args[1])).to_string());
  } else if (cmd == "gy" || cmd == "gres") {
    need_args(t, 2, "gy|gres <morphism> <point>");
    const SchemePoint& y = p.get<SchemePoint>(t.args[1]);
    DescentProblem dp(p.get<MorphismPtr>(t.args[0]), {y});
    f.emplace_back(cmd == "gy" ? "g_y" : "g_res_y", (cmd == "gy" ? g_y(dp, y) : g_res_y(dp, y)).get_str());
  } else if (cmd == "gscope" || cmd == "piscope") {
    need_args(t, 2, "gscope|piscope <morphism> <point>...");
    DescentProblem dp(p.get<MorphismPtr>(t.args[0]), points_arg(p, t.args, 1));
    const ScopeInvariant s = cmd == "gscope" ? g_scope(dp) : pi_res_scope(dp);
    f.emplace_back(cmd == "gscope" ? "g_scope" : "pi_res_scope", s.value.to_string());
    f.emplace_back("truncation", truncation_label(s));
  } else if (cmd == "order") {
    need_args(t, 2, "order <morphism> <cycle> [<point>...]");
    DescentProblem dp(p.get<MorphismPtr>(t.args[0]), points_arg(p, t.args, 2));
    const auto eo = effective_order(dp, cycle_arg(p, t.args[1]));
    f.emplace_back("order", eo ? eo->order.get_str() : "none");
    if (eo) f.emplace_back("witness", eo->witness.to_string());
  } else if (cmd == "hlocal") {
    need_args(t, 2, "hlocal <morphism> <point>");
    const SchemePoint& y = p.get<SchemePoint>(t.args[1]);
    DescentProblem dp(p.get<MorphismPtr>(t.args[0]), {y});
    f.emplace_back("h_local_invariants", format_vector(h_local(dp, y)));
  } else if (cmd == "saturation") {
    need_args(t, 2, "saturation <morphism> <point>...");
    DescentProblem dp(p.get<MorphismPtr>(t.args[0]), points_arg(p, t.args, 1));
    const SaturationReport s = check_saturation(dp);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& pr = s.points[i];
      f.emplace_back("point", t.args[i + 1] + " " + pr.point.to_string());
      f.emplace_back("g_y", pr.g ? pr.g->get_str() : "empty");
      f.emplace_back("g_res_y", pr.g_res ? pr.g_res->get_str() : "empty");
      if (pr.h_local) f.emplace_back("h_local_invariants", format_vector(*pr.h_local));
    }
    const EffectiveQuotient eq = effective_descent_quotient(dp);
    f.emplace_back("span_rank", std::to_string(s.span_rank));
    f.emplace_back("eff_desc_quotient_invariants", format_vector(eq.invariants));
    f.emplace_back("desc_saturated", yes_no(s.desc_saturated));
    f.emplace_back("eff_desc_saturated", yes_no(s.eff_desc_saturated));
    const ScopeInvariant g = g_scope(dp);
    f.emplace_back("g_scope", g.value.to_string() + " (" + truncation_label(g) + ")");
    f.emplace_back("criterion", s.criterion_holds ? (*s.criterion_holds ? "consistent" : "VIOLATED")
                                                  : "not applicable (not asserted generalizing)");
    if (s.hard_failure()) fail(ErrorCode::VerificationFailure, "saturation criterion violated for " + t.args[0]);
  } else {
    fail(ErrorCode::Syntax, "line " + std::to_string(t.line) + ": unknown task '" + cmd + "'");
  }
  return r;
}

Report run_problem(const Problem& p, const std::string& only) {
  Report report;
  report.header.emplace_back("note", "cycl is computed for closed subschemes (cyclic modules) only");
  for (const auto& name : p.morphism_names()) {
    const MorphismPtr& m = p.get<MorphismPtr>(name);
    report.header.emplace_back("morphism", name + ": " + m->source()->name() + " -> " + m->target()->name() +
                                               " asserted=" + m->asserted_string());
  }
  for (const auto& t : p.tasks()) {
    if (!only.empty() && t.command != only) continue;
    try {
      report.tasks.push_back(run_task(p, t));
    } catch (const Error& e) {
      TaskReport failed;
      failed.task = t.command;
      for (const auto& a : t.args) failed.task += " " + a;
      failed.fields.emplace_back("error", std::string(error_code_name(e.code())) + ": " + e.what());
      report.tasks.push_back(std::move(failed));
      report.exit_code = e.exit_code();
      break;
    }
  }
  return report;
}

std::vector<CorpusEntry> verify_corpus(const std::string& dir, const std::string& filter, bool update) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".cyc") continue;
    if (!filter.empty() && fnmatch(filter.c_str(), entry.path().filename().c_str(), 0) != 0) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& path : files) {
    CorpusEntry e{path.stem().string(), false, {}};
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text;
    try {
      text = run_problem(Problem::parse(buf.str())).to_text();
    } catch (const Error& err) {
      text = std::string("error: ") + error_code_name(err.code()) + ": " + err.what() + "\n";
    }
    fs::path golden = path;
    golden.replace_extension(".golden");
    if (update) {
      std::ofstream(golden) << text;
      e.matched = true;
      e.detail = "updated";
    } else if (!fs::exists(golden)) {
      e.detail = "missing golden file";
    } else {
      std::ifstream g(golden);
      std::stringstream expected;
      expected << g.rdbuf();
      e.matched = expected.str() == text;
      if (!e.matched) e.detail = "output differs from " + golden.filename().string();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cycdesc
