// Acceptance run: one PASS/FAIL line per criterion. Expected values are
// written out here (or computed by test-side oracles), never read back from
// golden files.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cycdesc/cycles.hpp"
#include "cycdesc/decomp.hpp"
#include "cycdesc/descent.hpp"
#include "cycdesc/error.hpp"
#include "cycdesc/factor.hpp"
#include "cycdesc/intlat.hpp"
#include "cycdesc/problem.hpp"

using namespace cycdesc;
namespace fs = std::filesystem;

namespace {

// Matrices in the Smith form sweep: every shape up to 3x3.
constexpr int kSnfMaxDim = 3;
constexpr long kSnfEntryBound = 3;
// Factorization sweep: every polynomial of degree 1..4 over these fields.
constexpr std::array<std::uint64_t, 2> kFactorPrimes{2, 3};
constexpr int kFactorMaxDegree = 4;

const fs::path kCorpus = CYCDESC_CORPUS_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

Problem load(const std::string& stem) {
  std::ifstream in(kCorpus / (stem + ".cyc"));
  if (!in) fail(ErrorCode::InvalidArgument, "missing corpus file " + stem);
  std::stringstream buf;
  buf << in.rdbuf();
  return Problem::parse(buf.str());
}

std::vector<std::string> corpus_stems() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(kCorpus)) {
    if (e.path().extension() == ".cyc") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cycle pt(const Problem& p, const std::string& name, long coeff = 1) {
  return Cycle::of_point(p.get<SchemePoint>(name), coeff);
}

std::vector<SchemePoint> points_on(const Problem& p, const SchemePtr& s) {
  std::vector<SchemePoint> out;
  for (const auto& n : p.names<SchemePoint>()) {
    const auto& x = p.get<SchemePoint>(n);
    if (x.scheme() == s) out.push_back(x);
  }
  return out;
}

std::string show(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out + "]";
}

IntVector ints(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

bool generalizing(const MorphismPtr& f) {
  return f->has(MorphismProperty::Flat) || f->has(MorphismProperty::Generalizing) ||
         f->has(MorphismProperty::UniversallyGeneralizing);
}

// ---------------------------------------------------------------------------

Outcome composite_pullback() {
  Outcome o;
  for (int n : {2, 3, 5}) {
    const Problem p = load("xn_cover_" + std::to_string(n));
    const auto& f = p.get<MorphismPtr>("f");
    const auto& i = p.get<MorphismPtr>("i");
    const Cycle origin = pt(p, "y0");
    const Cycle chain = naive_pullback(i, naive_pullback(f, origin));
    const Cycle direct = naive_pullback(compose(i, f), origin);
    o.expect(chain == pt(p, "xpt", n), "n=" + std::to_string(n) + ": i*f*(origin) = " + chain.to_string());
    o.expect(direct == pt(p, "xpt", 1), "n=" + std::to_string(n) + ": (f o i)*(origin) = " + direct.to_string());
  }
  return o;
}

Outcome cusp_chain() {
  Outcome o;
  const Problem p = load("cusp");
  const auto& f = p.get<MorphismPtr>("f");
  const auto& g = p.get<MorphismPtr>("g");
  const Cycle z = pt(p, "Zeta");
  const Cycle gz = naive_pullback(g, z);
  o.expect(gz == pt(p, "cusp", 2), "g*(Z) = " + gz.to_string());
  const Cycle fgz = naive_pullback(f, gz);
  o.expect(fgz == pt(p, "torigin", 4), "f*g*(Z) = " + fgz.to_string());
  const Cycle gfz = naive_pullback(compose(f, g), z);
  o.expect(gfz == pt(p, "torigin", 2), "(g o f)*(Z) = " + gfz.to_string());
  return o;
}

Outcome dvr_example() {
  Outcome o;
  for (int n : {2, 3}) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const Problem p = load("dvr_" + std::to_string(n));
    const auto& f = p.get<MorphismPtr>("f");
    const Cycle x1 = pt(p, "x1"), x2 = pt(p, "x2");
    const Cycle feta = naive_pullback(f, p.get<SchemePoint>("eta"));
    o.expect(feta == x1 * n + x2, tag + "f*(eta) = " + feta.to_string());
    const Cycle fs = naive_pullback(f, p.get<SchemePoint>("s"));
    o.expect(fs == x1 + x2, tag + "f*(s) = " + fs.to_string());

    const DescentProblem dp(f, {});
    const Cycle defect = descent_defect(dp, x1 * n + x2);
    // (x1, x2) and (x2, x1) on the mixed pieces of X x_Y X.
    const SchemePtr& xx = dp.square().scheme;
    const RingPtr& r12 = xx->piece(*xx->piece_index("X1*X2")).ring;
    const RingPtr& r21 = xx->piece(*xx->piece_index("X2*X1")).ring;
    const auto mixed = [&](const char* piece, const RingPtr& r) {
      const Ideal ideal(r, {parse_polynomial("pi_1", r), parse_polynomial("pi_2", r)});
      return SchemePoint(xx, *xx->piece_index(piece), PrimeIdeal(ideal, PrimeCertificate::UserAsserted));
    };
    Cycle expected(xx);
    expected.add(mixed("X1*X2", r12), n - 1);
    expected.add(mixed("X2*X1", r21), -(n - 1));
    o.expect(defect == expected, tag + "defect = " + defect.to_string());
    o.expect(!defect.is_zero(), tag + "defect vanishes");
  }
  return o;
}

Outcome torsion_example() {
  Outcome o;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{3, 2}, {2, 4}, {1, 2}}) {
    const std::string tag = "(n,m)=(" + std::to_string(n) + "," + std::to_string(m) + "): ";
    const Problem p = load("torsion_n" + std::to_string(n) + "_m" + std::to_string(m));
    const auto& f = p.get<MorphismPtr>("f");
    const DescentProblem dp(f, {p.get<SchemePoint>("eta"), p.get<SchemePoint>("s")});
    const int e = std::min(n, m);
    const long d = std::gcd(e, m);
    const IntVector inv = effective_descent_quotient(dp).invariants;
    o.expect(inv == ints({1, d, 0}), tag + "quotient invariants " + show(inv));
    const mpz_class gres = g_res_y(dp, p.get<SchemePoint>("eta"));
    o.expect(gres == e, tag + "g_res(eta) = " + gres.get_str());
    const ScopeInvariant g = g_scope(dp);
    o.expect(g.value.is_one(), tag + "g = " + g.value.to_string());
  }
  return o;
}

Outcome xn_descent() {
  Outcome o;
  for (int n : {2, 3, 5}) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const Problem p = load("xn_cover_" + std::to_string(n));
    const auto& f = p.get<MorphismPtr>("f");
    const SchemePoint y0 = p.get<SchemePoint>("y0");
    const DescentProblem dp(f, {y0});
    const Cycle yorigin = pt(p, "yorigin");
    o.expect(descent_defect(dp, yorigin).is_zero(), tag + "defect of the origin is nonzero");
    o.expect(descent_defect(dp, naive_pullback(f, y0)).is_zero(), tag + "defect of f*(origin) is nonzero");
    const auto ord = effective_order(dp, yorigin);
    o.expect(ord && ord->order == n, tag + "effective order " + (ord ? ord->order.get_str() : "none"));
    const IntVector h = h_local(dp, y0);
    o.expect(h == ints({n}), tag + "h_local(t) = " + show(h));
  }
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 7}, {5, 11}}) {
    const std::string tag = "n=" + std::to_string(n) + " over F_" + std::to_string(q) + ": ";
    const Problem p = load("fp_split_n" + std::to_string(n) + "_p" + std::to_string(q));
    o.expect(q % n != 0 && (q - 1) % n == 0, tag + "fiber is not split");
    const auto& f = p.get<MorphismPtr>("f");
    const SchemePoint one = p.get<SchemePoint>("one");
    const DescentProblem dp(f, {one});
    const auto fiber = fiber_components(dp, one);
    o.expect(fiber.size() == static_cast<std::size_t>(n), tag + std::to_string(fiber.size()) + " fiber points");
    const IntVector h = h_local(dp, one);
    o.expect(h.empty(), tag + "h_local(t-1) = " + show(h));
  }
  return o;
}

Outcome main_theorem_suite() {
  Outcome o;
  int instances = 0;
  for (const auto& stem : corpus_stems()) {
    const Problem p = load(stem);
    for (const auto& name : p.names<MorphismPtr>()) {
      const auto& f = p.get<MorphismPtr>(name);
      if (!f->has(MorphismProperty::UniversallyGeneralizing)) continue;
      const std::string tag = stem + "/" + name + ": ";
      const auto scope = points_on(p, f->target());
      if (scope.empty()) continue;
      ++instances;
      const DescentProblem dp(f, scope);
      bool all_trivial = true, all_nonempty = true;
      std::vector<Cycle> pulled;
      for (const auto& y : scope) {
        const IntVector h = h_local(dp, y);
        const bool nonempty = !fiber_components(dp, y).empty();
        all_nonempty = all_nonempty && nonempty;
        all_trivial = all_trivial && h.empty();
        for (const auto& d : h) {
          o.expect(nonempty && d != 0 && g_y(dp, y) % d == 0,
                   tag + "factor " + d.get_str() + " at " + y.to_string() + " does not divide g_y");
        }
        pulled.push_back(naive_pullback(f, y));
      }
      // f* injective on the scope span: distinct scope points have disjoint
      // fibers, so this is nonvanishing of every f*(y).
      const bool injective =
          std::none_of(pulled.begin(), pulled.end(), [](const Cycle& c) { return c.is_zero(); });
      const bool exact = injective && all_trivial;
      const bool rhs = g_scope(dp).value.is_one() && all_nonempty;
      o.expect(exact == rhs, tag + "exact=" + std::to_string(exact) + " but g=1 and surjective=" + std::to_string(rhs));
    }
  }
  o.expect(instances >= 8, "only " + std::to_string(instances) + " universally generalizing instances");
  if (o.pass) o.detail = std::to_string(instances) + " instances";
  return o;
}

Outcome bijective_suite() {
  Outcome o;
  int instances = 0;
  for (const auto& stem : corpus_stems()) {
    const Problem p = load(stem);
    for (const auto& name : p.names<MorphismPtr>()) {
      const auto& f = p.get<MorphismPtr>(name);
      if (!f->has(MorphismProperty::UniversallyBijective)) continue;
      ++instances;
      const std::string tag = stem + "/" + name + ": ";
      const auto scope = points_on(p, f->target());
      const DescentProblem dp(f, scope);
      std::vector<SchemePoint> span = points_on(p, f->source());
      for (const auto& y : scope) {
        for (const auto& t : fiber_components(dp, y)) {
          if (std::find(span.begin(), span.end(), t.point) == span.end()) span.push_back(t.point);
        }
      }
      for (const auto& x : span) {
        const Cycle c = Cycle::of_point(x);
        o.expect(naive_pullback(dp.square().pr1, c) == naive_pullback(dp.square().pr2, c),
                 tag + "pr1* != pr2* at " + x.to_string());
      }
      const mpz_class pi_res = pi_res_scope(dp).value.value();
      for (const auto& y : scope) {
        for (const auto& t : fiber_components(dp, y)) {
          const auto ord = effective_order(dp, Cycle::of_point(t.point));
          o.expect(ord && pi_res % ord->order == 0,
                   tag + "effective order at " + t.point.to_string() + " does not divide " + pi_res.get_str());
        }
      }
    }
  }
  o.expect(instances >= 1, "no universally bijective instance");
  return o;
}

// Cyclic additivity: J, I = J + (h), J : h with common minimal primes.
Outcome additivity_cases() {
  Outcome o;
  const RingPtr r = Ring::make(FieldDesc::rationals(), {"x", "y"});
  const auto ideal = [&](std::vector<std::string> gens) {
    std::vector<Polynomial> ps;
    for (const auto& g : gens) ps.push_back(parse_polynomial(g, r));
    return Ideal(r, ps);
  };
  const auto pw = [](const std::string& base, int e) { return "(" + base + ")^" + std::to_string(e); };
  struct Case {
    std::vector<std::string> j;
    std::string h;
  };
  std::vector<Case> cases;
  for (int a = 2; a <= 4; ++a) {
    for (int c = 1; c < a; ++c) {
      cases.push_back({{pw("x", a)}, pw("x", c)});
      for (int b = 1; b <= 2; ++b) cases.push_back({{pw("x - 1", a), pw("y + 2", b)}, pw("x - 1", c)});
      cases.push_back({{pw("x", a) + "*" + pw("x - 1", a + 1)}, pw("x", c) + "*" + pw("x - 1", c)});
      cases.push_back({{pw("x^2 + 1", a) + "*" + pw("y", a)}, pw("x^2 + 1", c) + "*" + pw("y", c)});
      cases.push_back({{pw("y - x^2", a)}, pw("y - x^2", c)});
    }
  }
  for (const auto& c : cases) {
    const Ideal j = ideal(c.j);
    const Polynomial h = parse_polynomial(c.h, r);
    const Ideal i = j.with(h);
    const Ideal q = ideal_quotient(j, Ideal(r, {h}));
    const SchemePtr s = make_scheme("A", {AffinePiece{"A0", r, Ideal(r)}});
    const auto cyc = [&](const Ideal& k) { return cycl(ClosedSubscheme(s, {k})); };
    const auto primes = [](const Ideal& k) {
      auto v = minimal_primes(k);
      std::vector<std::string> out;
      for (const auto& p : v) out.push_back(p.to_string());
      return out;
    };
    const std::string tag = "J=" + j.to_string() + ", h=" + c.h + ": ";
    o.expect(primes(j) == primes(i) && primes(j) == primes(q), tag + "minimal primes differ");
    o.expect(cyc(j) == cyc(i) + cyc(q), tag + cyc(j).to_string() + " != " + cyc(i).to_string() + " + " + cyc(q).to_string());
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " additivity cases";
  return o;
}

// Rank of f* on the span of the given target points.
std::size_t pullback_rank(const MorphismPtr& f, const std::vector<SchemePoint>& ys) {
  std::vector<Cycle> pulled;
  std::vector<SchemePoint> basis;
  for (const auto& y : ys) {
    pulled.push_back(naive_pullback(f, y));
    for (const auto& t : pulled.back().terms()) {
      if (std::find(basis.begin(), basis.end(), t.point) == basis.end()) basis.push_back(t.point);
    }
  }
  if (basis.empty()) return 0;
  std::vector<IntVector> cols;
  for (const auto& c : pulled) {
    IntVector v(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = c.coefficient(basis[i]);
    cols.push_back(v);
  }
  return snf(IntMatrix::from_columns(basis.size(), cols)).rank();
}

Outcome structural_suite() {
  Outcome o;
  int compat = 0, functorial = 0, graded = 0, squares = 0, injective = 0;
  for (const auto& stem : corpus_stems()) {
    const Problem p = load(stem);
    std::vector<MorphismPtr> maps;
    for (const auto& n : p.names<MorphismPtr>()) maps.push_back(p.get<MorphismPtr>(n));
    for (const auto& f : maps) {
      const std::string tag = stem + "/" + f->name() + ": ";
      const auto targets = points_on(p, f->target());
      if (f->has(MorphismProperty::Flat)) {
        std::vector<ClosedSubscheme> zs;
        for (const auto& n : p.names<ClosedSubscheme>()) {
          if (p.get<ClosedSubscheme>(n).ambient() == f->target()) zs.push_back(p.get<ClosedSubscheme>(n));
        }
        for (const auto& y : targets) zs.push_back(closure_of_point(y));
        for (const auto& z : zs) {
          ++compat;
          o.expect(naive_pullback(f, cycl(z)) == cycl(preimage_subscheme(f, z)), tag + "flat compatibility fails");
        }
        for (const auto& g : maps) {
          if (g->source() != f->target() || !g->has(MorphismProperty::Flat)) continue;
          const MorphismPtr gf = compose(f, g);
          for (const auto& y : points_on(p, g->target())) {
            ++functorial;
            o.expect(naive_pullback(gf, y) == naive_pullback(f, naive_pullback(g, y)),
                     tag + "functoriality with " + g->name() + " fails at " + y.to_string());
          }
        }
      }
      if (generalizing(f)) {
        for (const auto& y : targets) {
          ++graded;
          const int c = point_codimension(y);
          for (const auto& [k, part] : grade(naive_pullback(f, y))) {
            o.expect(k == c, tag + "pullback of codim " + std::to_string(c) + " point has codim " + std::to_string(k) + " part");
          }
        }
      }
      if (f->has(MorphismProperty::Surjective) || stem.rfind("dvr_", 0) == 0) {
        ++injective;
        o.expect(pullback_rank(f, targets) == targets.size(), tag + "pullback is not injective on the declared points");
      }
      if (f->has(MorphismProperty::ClosedImmersion)) {
        for (const auto& g : maps) {
          if (g == f || g->target() != f->target()) continue;
          const FiberProduct sq = fiber_product(f, g);
          for (const auto& x : points_on(p, f->source())) {
            ++squares;
            const Cycle c = Cycle::of_point(x);
            o.expect(naive_pullback(g, pushforward_closed(f, c)) == pushforward_closed(sq.pr2, naive_pullback(sq.pr1, c)),
                     tag + "push-pull square with " + g->name() + " fails at " + x.to_string());
          }
        }
      }
    }
  }
  o.expect(compat > 0 && functorial > 0 && graded > 0 && squares > 0 && injective > 0, "a structural suite is empty");
  const Outcome add = additivity_cases();
  o.expect(add.pass, add.detail);
  if (o.pass) {
    o.detail = std::to_string(compat) + " compatibility, " + std::to_string(functorial) + " functoriality, " +
               std::to_string(graded) + " grading, " + std::to_string(squares) + " square, " + std::to_string(injective) +
               " injectivity checks; " + add.detail;
  }
  return o;
}

// --- Smith form oracle: d_k = gcd of k x k minors, s_k = d_k / d_{k-1}. ----

long det_small(const std::vector<long>& a, int n, const int* rows, const int* cols, int k) {
  if (k == 1) return a[rows[0] * n + cols[0]];
  if (k == 2) return a[rows[0] * n + cols[0]] * a[rows[1] * n + cols[1]] - a[rows[0] * n + cols[1]] * a[rows[1] * n + cols[0]];
  long out = 0;
  for (int j = 0; j < 3; ++j) {
    int sub[2], s = 0;
    for (int jj = 0; jj < 3; ++jj) {
      if (jj != j) sub[s++] = cols[jj];
    }
    const long term = a[rows[0] * n + cols[j]] * det_small(a, n, rows + 1, sub, 2);
    out += (j % 2 ? -term : term);
  }
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<long> oracle_invariants(const std::vector<long>& a, int m, int n) {
  std::vector<long> out;
  long prev = 1;
  for (int k = 1; k <= std::min(m, n); ++k) {
    long d = 0;
    for (const auto& rs : subsets(m, k)) {
      for (const auto& cs : subsets(n, k)) d = std::gcd(d, det_small(a, n, rs.data(), cs.data(), k));
    }
    if (d == 0) {
      out.resize(static_cast<std::size_t>(std::min(m, n)), 0);
      return out;
    }
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

Outcome snf_sweep() {
  Outcome o;
  std::atomic<long> checked{0}, bad{0};
  std::string first_bad;
  std::mutex mu;
  const long base = 2 * kSnfEntryBound + 1;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  for (int m = 1; m <= kSnfMaxDim; ++m) {
    for (int n = 1; n <= kSnfMaxDim; ++n) {
      long total = 1;
      for (int i = 0; i < m * n; ++i) total *= base;
      auto work = [&](unsigned w) {
        std::vector<long> a(static_cast<std::size_t>(m * n));
        IntMatrix mat(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
        for (long idx = w; idx < total; idx += workers) {
          long rest = idx;
          for (int e = 0; e < m * n; ++e) {
            a[e] = rest % base - kSnfEntryBound;
            rest /= base;
            mat(static_cast<std::size_t>(e / n), static_cast<std::size_t>(e % n)) = a[e];
          }
          const std::vector<long> expect = oracle_invariants(a, m, n);
          bool ok = false;
          try {
            const IntVector got = snf(mat).diagonal();
            ok = got.size() == expect.size();
            for (std::size_t i = 0; ok && i < got.size(); ++i) ok = got[i] == expect[i];
          } catch (const Error&) {
            ok = false;
          }
          ++checked;
          if (!ok && bad++ == 0) {
            std::lock_guard<std::mutex> lock(mu);
            first_bad = mat.to_string();
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
  }
  o.expect(bad == 0, std::to_string(bad.load()) + " Smith form mismatches, first " + first_bad);
  if (o.pass) o.detail = std::to_string(checked.load()) + " matrices";
  return o;
}

// --- Multiplicity against standard monomial counts. ------------------------

Outcome multiplicity_suite() {
  Outcome o;
  struct Case {
    std::uint64_t p;
    std::vector<std::string> gens;
  };
  std::vector<Case> cases;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const std::string sa = std::to_string(a), sb = std::to_string(b);
      cases.push_back({0, {"x^" + sa, "y^" + sb}});
      cases.push_back({0, {"(x - 1)^" + sa, "(y + 2)^" + sb}});
      cases.push_back({0, {"(x^2 - 2)^" + sa, "y^" + sb}});
      cases.push_back({0, {"(x + y)^" + sa, "(x - y)^" + sb}});
      cases.push_back({0, {"(x^2 + 1)^" + sa, "(y - x)^" + sb}});
      cases.push_back({3, {"(x^2 + 1)^" + sa, "y^" + sb}});
      cases.push_back({5, {"(x - 2)^" + sa, "(y^2 - 2)^" + sb}});
    }
  }
  cases.push_back({0, {"x^2", "x*y", "y^3"}});
  cases.push_back({0, {"x^3", "x^2*y", "y^2"}});
  cases.push_back({0, {"x^2 - 2*y", "y^2"}});
  cases.push_back({7, {"x^3", "y^3", "x*y"}});
  for (const auto& c : cases) {
    const FieldPtr k = c.p ? FieldDesc::prime_field(c.p) : FieldDesc::rationals();
    const RingPtr r = Ring::make(k, {"x", "y"});
    std::vector<Polynomial> ps;
    for (const auto& g : c.gens) ps.push_back(parse_polynomial(g, r));
    const Ideal ideal(r, ps);
    const std::string tag = ideal.to_string() + (c.p ? " mod " + std::to_string(c.p) : "") + ": ";
    const auto primes = minimal_primes(ideal);
    if (primes.size() != 1) {
      o.expect(false, tag + std::to_string(primes.size()) + " components");
      continue;
    }
    const auto total = vector_space_dimension(ideal);
    const auto residue = vector_space_dimension(primes.front().ideal());
    const std::uint64_t mult = multiplicity(ideal, primes.front());
    o.expect(total && residue && mult * *residue == *total,
             tag + std::to_string(mult) + " * " + (residue ? std::to_string(*residue) : "?") +
                 " != " + (total ? std::to_string(*total) : "?"));
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " ideals";
  return o;
}

// --- Factorization against exhaustive search. ------------------------------

using Coeffs = std::vector<int>;  // low degree first, trimmed

Coeffs mul_mod(const Coeffs& a, const Coeffs& b, int p) {
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

std::vector<Coeffs> monic_of_degree(int d, int p) {
  std::vector<Coeffs> out;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  for (int idx = 0; idx < total; ++idx) {
    Coeffs c(static_cast<std::size_t>(d + 1), 0);
    int rest = idx;
    for (int i = 0; i < d; ++i) {
      c[i] = rest % p;
      rest /= p;
    }
    c[d] = 1;
    out.push_back(c);
  }
  return out;
}

std::string coeffs_string(const Coeffs& c) {
  std::string out;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(c[i]);
    if (i > 0) out += "*x^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Outcome factor_sweep() {
  Outcome o;
  long checked = 0;
  for (const std::uint64_t up : kFactorPrimes) {
    const int p = static_cast<int>(up);
    const RingPtr r = Ring::make(FieldDesc::prime_field(up), {"x"});
    // Irreducible monic polynomials by sieving out products.
    std::set<Coeffs> reducible;
    for (int d = 2; d <= kFactorMaxDegree; ++d) {
      for (int a = 1; a <= d / 2; ++a) {
        for (const auto& u : monic_of_degree(a, p)) {
          for (const auto& v : monic_of_degree(d - a, p)) reducible.insert(mul_mod(u, v, p));
        }
      }
    }
    std::vector<Coeffs> irreducible;
    for (int d = 1; d <= kFactorMaxDegree; ++d) {
      for (const auto& c : monic_of_degree(d, p)) {
        if (!reducible.count(c)) irreducible.push_back(c);
      }
    }
    // Every monic polynomial as a product of irreducibles, by enumeration of
    // multisets: the map product -> factorization.
    std::map<Coeffs, std::map<Coeffs, unsigned>> factorization;
    std::function<void(std::size_t, Coeffs, std::map<Coeffs, unsigned>)> grow = [&](std::size_t from, Coeffs acc,
                                                                                     std::map<Coeffs, unsigned> fs) {
      if (acc.size() > 1) factorization[acc] = fs;
      for (std::size_t i = from; i < irreducible.size(); ++i) {
        if (acc.size() - 1 + irreducible[i].size() - 1 > static_cast<std::size_t>(kFactorMaxDegree)) continue;
        auto next = fs;
        ++next[irreducible[i]];
        grow(i, mul_mod(acc, irreducible[i], p), next);
      }
    };
    grow(0, Coeffs{1}, {});
    for (int d = 1; d <= kFactorMaxDegree; ++d) {
      for (const auto& monic : monic_of_degree(d, p)) {
        for (int lead = 1; lead < p; ++lead) {
          Coeffs c = monic;
          for (auto& v : c) v = v * lead % p;
          const Polynomial f = parse_polynomial(coeffs_string(c), r);
          std::map<std::string, unsigned> expect, got;
          for (const auto& [q, e] : factorization.at(monic)) expect[parse_polynomial(coeffs_string(q), r).to_string()] = e;
          try {
            for (const auto& fac : factor_poly(f)) got[fac.factor.to_string()] += fac.multiplicity;
          } catch (const Error& e) {
            got.clear();
          }
          ++checked;
          o.expect(got == expect, "F_" + std::to_string(p) + ": " + f.to_string());
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " polynomials";
  return o;
}

Outcome oracle_suites() {
  Outcome o;
  for (const auto& part : {snf_sweep(), multiplicity_suite(), factor_sweep()}) {
    o.expect(part.pass, part.detail);
    if (part.pass) o.detail += (o.detail.empty() ? "" : "; ") + part.detail;
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "composite pullback along x^n = t is n times the direct pullback", composite_pullback},
      {2, "cusp chain: 2, 4 and 2 times the point", cusp_chain},
      {3, "DVR pullbacks and descent defect", dvr_example},
      {4, "torsion example quotient Z + Z/d", torsion_example},
      {5, "x^n - t descent invariants", xn_descent},
      {6, "h_local torsion divides g_y; exactness iff g = 1 and surjective", main_theorem_suite},
      {7, "universally bijective: pr1* = pr2*, orders divide pi_res", bijective_suite},
      {8, "flat compatibility, functoriality, additivity, grading, push-pull square", structural_suite},
      {9, "Smith form, multiplicity and factorization oracles", oracle_suites},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !out.pass;
    std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << c.title;
    if (!out.detail.empty()) std::cout << "  (" << out.detail << ")";
    std::cout << "  [" << static_cast<int>(secs * 1000) << " ms]" << std::endl;
  }
  return failures ? 1 : 0;
}
