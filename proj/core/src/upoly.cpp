#include "upoly.hpp"

#include <algorithm>
#include <numeric>

#include "cycdesc/error.hpp"
#include "cycdesc/field.hpp"

namespace cycdesc::detail {

// ---------------------------------------------------------------- F_p

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(p));
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = fp_mul(result, base, p);
    base = fp_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fp_add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  }
  trim(out);
  return out;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fp_sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  }
  trim(out);
  return out;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = fp_add(out[i + j], fp_mul(a[i], b[j], p), p);
  }
  trim(out);
  return out;
}

FpPoly fp_scale(const FpPoly& a, std::uint64_t c, std::uint64_t p) {
  FpPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = fp_mul(a[i], c, p);
  trim(out);
  return out;
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "division by the zero polynomial");
  FpPoly r = a;
  if (r.size() < b.size()) return {{}, r};
  FpPoly q(r.size() - b.size() + 1, 0);
  const std::uint64_t inv = fp_inv(b.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::uint64_t c = fp_mul(r[k + b.size() - 1], inv, p);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = fp_sub(r[k + j], fp_mul(c, b[j], p), p);
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return fp_divmod(a, b, p).second; }

FpPoly fp_monic(const FpPoly& a, std::uint64_t p) {
  if (a.empty() || a.back() == 1) return a;
  return fp_scale(a, fp_inv(a.back(), p), p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

void fp_xgcd(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& g, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    g = {};
    s = {};
    t = {};
    return;
  }
  const std::uint64_t inv = fp_inv(r0.back(), p);
  g = fp_scale(r0, inv, p);
  s = fp_scale(s0, inv, p);
  t = fp_scale(t0, inv, p);
}

FpPoly fp_derivative(const FpPoly& a, std::uint64_t p) {
  FpPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(fp_mul(a[i], i % p, p));
  trim(out);
  return out;
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, std::uint64_t p) {
  FpPoly result{1};
  result = fp_mod(result, mod, p);
  FpPoly b = fp_mod(base, mod, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_mod(fp_mul(result, result, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = fp_mod(fp_mul(result, b, p), mod, p);
  }
  return result;
}

namespace {

// f(x) = g(x^p): returns g (coefficients are fixed by Frobenius on F_p).
FpPoly fp_pth_root(const FpPoly& f, std::uint64_t p) {
  FpPoly out;
  for (std::size_t i = 0; i < f.size(); i += p) out.push_back(f[i]);
  trim(out);
  return out;
}

bool is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> fp_squarefree(const FpPoly& f, std::uint64_t p) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  if (degree(f) < 1) return out;
  const FpPoly d = fp_derivative(f, p);
  if (d.empty()) {
    for (auto& [g, m] : fp_squarefree(fp_pth_root(f, p), p)) out.emplace_back(std::move(g), m * p);
    return out;
  }
  FpPoly c = fp_gcd(f, d, p);
  FpPoly w = fp_divmod(f, c, p).first;
  unsigned i = 1;
  while (!is_one(w)) {
    FpPoly y = fp_gcd(w, c, p);
    FpPoly z = fp_divmod(w, y, p).first;
    if (degree(z) > 0) out.emplace_back(fp_monic(z, p), i);
    ++i;
    w = std::move(y);
    c = fp_divmod(c, w, p).first;
  }
  if (degree(c) > 0) {
    for (auto& [g, m] : fp_squarefree(fp_pth_root(c, p), p)) out.emplace_back(std::move(g), m * p);
  }
  return out;
}

namespace {

// Splits a product of distinct monic irreducibles of degree d.
void fp_equal_degree(const FpPoly& g, int d, std::uint64_t p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  mpz_class exponent;
  if (p != 2) {
    mpz_ui_pow_ui(exponent.get_mpz_t(), p, static_cast<unsigned long>(d));
    exponent = (exponent - 1) / 2;
  }
  for (;;) {
    FpPoly a(static_cast<std::size_t>(degree(g)));
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (degree(a) < 1) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      FpPoly term = a;
      b = a;
      for (int i = 1; i < d; ++i) {
        term = fp_mod(fp_mul(term, term, p), g, p);
        b = fp_add(b, term, p);
      }
    } else {
      b = fp_sub(fp_powmod(a, exponent, g, p), FpPoly{1}, p);
    }
    FpPoly h = fp_gcd(g, b, p);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      fp_equal_degree(h, d, p, rng, out);
      fp_equal_degree(fp_divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, std::uint64_t p, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  FpPoly rest = fp_monic(f, p);
  if (degree(rest) < 1) return out;
  const FpPoly x{0, 1};
  FpPoly h = fp_mod(x, rest, p);
  const mpz_class pz(std::to_string(p));
  for (int d = 1; 2 * d <= degree(rest); ++d) {
    h = fp_powmod(h, pz, rest, p);
    FpPoly g = fp_gcd(fp_sub(h, x, p), rest, p);
    if (degree(g) > 0) {
      fp_equal_degree(g, d, p, rng, out);
      rest = fp_divmod(rest, g, p).first;
      h = fp_mod(h, rest, p);
    }
  }
  if (degree(rest) > 0) out.push_back(rest);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- Z

int degree(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

mpz_class z_content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

FpPoly z_reduce(const ZPoly& a, std::uint64_t p) {
  FpPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  trim(out);
  return out;
}

std::optional<ZPoly> z_exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "division by the zero polynomial");
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1, 0);
  mpz_class c;
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpz_class& top = r[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (r[i] != 0) return std::nullopt;
  }
  trim(q);
  return q;
}

namespace {

void z_mod_in_place(ZPoly& a, const mpz_class& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
}

ZPoly from_fp(const FpPoly& a) {
  ZPoly out;
  out.reserve(a.size());
  for (auto c : a) out.emplace_back(std::to_string(c));
  return out;
}

// Lifts F = g*h (mod p), g monic, to F = g*h (mod p^k).
void hensel_lift_pair(const ZPoly& F, ZPoly& g, ZPoly& h, std::uint64_t p, const mpz_class& pk) {
  FpPoly gp = z_reduce(g, p), hp = z_reduce(h, p), gcd, s, t;
  fp_xgcd(gp, hp, p, gcd, s, t);
  if (degree(gcd) != 0) fail(ErrorCode::VerificationFailure, "Hensel lifting of non-coprime factors");
  const mpz_class pz(std::to_string(p));
  mpz_class m = pz;
  while (m < pk) {
    ZPoly e = F;
    const ZPoly gh = z_mul(g, h);
    e.resize(std::max(e.size(), gh.size()), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    for (auto& c : e) {
      if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) {
        fail(ErrorCode::VerificationFailure, "Hensel lifting lost the congruence");
      }
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    trim(e);
    const FpPoly ep = z_reduce(e, p);
    const FpPoly r = fp_mod(fp_mul(t, ep, p), gp, p);
    const FpPoly H = fp_divmod(fp_sub(ep, fp_mul(r, hp, p), p), gp, p).first;
    ZPoly rz = from_fp(r), Hz = from_fp(H);
    g.resize(std::max(g.size(), rz.size()), 0);
    for (std::size_t i = 0; i < rz.size(); ++i) g[i] += m * rz[i];
    h.resize(std::max(h.size(), Hz.size()), 0);
    for (std::size_t i = 0; i < Hz.size(); ++i) h[i] += m * Hz[i];
    m *= pz;
    z_mod_in_place(g, m);
    z_mod_in_place(h, m);
  }
}

// Lifts F = lc(F) * prod(factors) (mod p) to monic factors mod p^k.
void hensel_lift(const ZPoly& F, const std::vector<FpPoly>& factors, std::uint64_t p, const mpz_class& pk,
                 std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), F.back().get_mpz_t(), pk.get_mpz_t())) {
      fail(ErrorCode::VerificationFailure, "leading coefficient not invertible during lifting");
    }
    ZPoly leaf = F;
    for (auto& c : leaf) c *= inv;
    z_mod_in_place(leaf, pk);
    out.push_back(std::move(leaf));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<FpPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<FpPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  FpPoly gp{1}, hp{z_reduce(ZPoly{F.back()}, p)};
  for (const auto& f : left) gp = fp_mul(gp, f, p);
  for (const auto& f : right) hp = fp_mul(hp, f, p);
  ZPoly g = from_fp(gp), h = from_fp(hp);
  hensel_lift_pair(F, g, h, p, pk);
  hensel_lift(g, left, p, pk, out);
  hensel_lift(h, right, p, pk, out);
}

ZPoly sym_mod(ZPoly a, const mpz_class& m) {
  const mpz_class half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(a);
  return a;
}

ZPoly primitive(ZPoly a) {
  const mpz_class c = z_content(a);
  if (c > 1) {
    for (auto& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  }
  if (!a.empty() && a.back() < 0) {
    for (auto& v : a) v = -v;
  }
  return a;
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

constexpr std::size_t kMaxRecombinationTrials = std::size_t{1} << 18;

}  // namespace

std::vector<ZPoly> z_factor_squarefree(const ZPoly& f) {
  if (degree(f) < 1) return {};
  if (degree(f) == 1) return {f};

  // Pick the prime with the fewest modular factors among a few candidates.
  std::mt19937_64 rng(0x5eed);
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best;
  const ZPoly df = [&] {
    ZPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    return d;
  }();
  int tried = 0;
  for (std::uint64_t p = 3; tried < 5; p = next_prime(p + 1)) {
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    const FpPoly fp = z_reduce(f, p);
    if (degree(fp_gcd(fp, z_reduce(df, p), p)) != 0) continue;
    ++tried;
    auto facs = fp_factor_squarefree(fp, p, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) return {f};
  }

  // Coefficient bound for lc(f)/lc(g) * g over all factors g of f.
  const std::size_t n = f.size() - 1;
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  mpz_class bound = norm * abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
  const mpz_class pz(std::to_string(best_p));
  mpz_class pk = pz;
  while (pk <= bound) pk *= pz;

  std::vector<ZPoly> lifted;
  hensel_lift(f, best, best_p, pk, lifted);

  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::size_t trials = 0;
  for (std::size_t s = 1; 2 * s <= lifted.size();) {
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    bool found = false;
    for (;;) {
      if (++trials > kMaxRecombinationTrials) {
        fail(ErrorCode::UnsupportedShape, "factor recombination exceeds the search bound");
      }
      ZPoly cand{rest.back()};
      for (auto i : idx) {
        cand = z_mul(cand, lifted[i]);
        z_mod_in_place(cand, pk);
      }
      ZPoly g = primitive(sym_mod(cand, pk));
      if (degree(g) > 0) {
        if (auto q = z_exact_div(rest, g)) {
          out.push_back(g);
          rest = std::move(*q);
          for (std::size_t k = idx.size(); k-- > 0;) {
            lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[k]));
          }
          found = true;
          break;
        }
      }
      // Next combination in lexicographic order.
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == lifted.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (degree(rest) > 0) out.push_back(primitive(rest));
  return out;
}

// ---------------------------------------------------------------- Q

int degree(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly q_monic(const QPoly& a) {
  if (a.empty() || a.back() == 1) return a;
  QPoly out = a;
  const mpq_class lc = a.back();
  for (auto& c : out) c /= lc;
  return out;
}

std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "division by the zero polynomial");
  QPoly r = a;
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    mpq_class c = r[k + b.size() - 1] / b.back();
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
    q[k] = c;
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

QPoly q_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = q_monic(q_divmod(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  return q_monic(a);
}

QPoly q_derivative(const QPoly& a) {
  QPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

std::vector<std::pair<QPoly, unsigned>> q_squarefree(const QPoly& f) {
  std::vector<std::pair<QPoly, unsigned>> out;
  if (degree(f) < 1) return out;
  const QPoly df = q_derivative(f);
  const QPoly a0 = q_gcd(f, df);
  QPoly b = q_divmod(f, a0).first;
  QPoly c = q_divmod(df, a0).first;
  QPoly d = q_sub(c, q_derivative(b));
  for (unsigned i = 1; degree(b) > 0; ++i) {
    QPoly a = q_gcd(b, d);
    if (degree(a) > 0) out.emplace_back(a, i);
    b = q_divmod(b, a).first;
    c = q_divmod(d, a).first;
    d = q_sub(c, q_derivative(b));
  }
  return out;
}

ZPoly q_to_primitive_z(const QPoly& a) {
  mpz_class den = 1;
  for (const auto& c : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out;
  out.reserve(a.size());
  for (const auto& c : a) {
    mpz_class v = c.get_num() * (den / c.get_den());
    out.push_back(v);
  }
  return primitive(out);
}

}  // namespace cycdesc::detail
