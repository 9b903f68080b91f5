#include "cal/factor.hh"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace cal {

// global degree cap for factorization inputs (see DegreeLimit)
static int g_factor_degree_limit = 24;
int factor_degree_limit() { return g_factor_degree_limit; }
void set_factor_degree_limit(int v) { g_factor_degree_limit = v; }

Poly FactorList::expand() const {
  Poly r{unit};
  for (auto& [f, m] : factors) r *= f.pow(m);
  return r;
}

// =======================  Fp[x] arithmetic  =======================
namespace {

using u64 = uint64_t;
using u128 = __uint128_t;
using FpPoly = std::vector<u64>;  // coeff of x^k; trimmed

struct Rng {
  u64 s = 0x9e3779b97f4a7c15ull;
  u64 next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
};

u64 subp(u64 a, u64 b, u64 p) { return (a + p - b) % p; }
u64 mulp(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }
u64 powp(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulp(r, a, p);
    a = mulp(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invp(u64 a, u64 p) { return powp(a, p - 2, p); }

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int fp_deg(const FpPoly& f) { return (int)f.size() - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (u64)((r[i + j] + (u128)a[i] * b[j]) % p);
  }
  fp_trim(r);
  return r;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = subp(a[i], b[i], p);
  fp_trim(a);
  return a;
}

FpPoly fp_scale(FpPoly a, u64 c, u64 p) {
  for (auto& x : a) x = mulp(x, c, p);
  fp_trim(a);
  return a;
}

// a = q*b + r; returns r, writes q if requested
FpPoly fp_divmod(FpPoly a, const FpPoly& b, u64 p, FpPoly* quo = nullptr) {
  assert(!b.empty());
  u64 inv = invp(b.back(), p);
  if (quo) quo->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    u64 c = mulp(a.back(), inv, p);
    size_t d = a.size() - b.size();
    if (quo) (*quo)[d] = c;
    if (c)
      for (size_t i = 0; i < b.size(); ++i)
        a[d + i] = subp(a[d + i], mulp(c, b[i], p), p);
    a.pop_back();
    fp_trim(a);
  }
  return a;
}

FpPoly fp_monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  return fp_scale(a, invp(a.back(), p), p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = fp_divmod(a, b, p);
    a = b;
    b = r;
  }
  return fp_monic(a, p);
}

FpPoly fp_deriv(const FpPoly& f, u64 p) {
  FpPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(mulp(f[i], i % p, p));
  fp_trim(r);
  return r;
}

FpPoly fp_powmod(FpPoly base, const Z& e, const FpPoly& mod, u64 p) {
  FpPoly r{1};
  base = fp_divmod(base, mod, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = fp_divmod(fp_mul(r, r, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_divmod(fp_mul(r, base, p), mod, p);
  }
  return r;
}

// equal-degree splitting (Cantor–Zassenhaus, p odd) of monic squarefree f all
// of whose irreducible factors have degree d
void fp_edf(const FpPoly& f, int d, u64 p, Rng& rng, std::vector<FpPoly>& out) {
  if (fp_deg(f) == d) {
    out.push_back(f);
    return;
  }
  Z pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, (unsigned long)d);
  Z e = (pd - 1) / 2;
  while (true) {
    FpPoly r((size_t)fp_deg(f), 0);
    for (auto& c : r) c = rng.next() % p;
    fp_trim(r);
    if (r.empty()) continue;
    FpPoly s = fp_powmod(r, e, f, p);
    if (s.empty())
      s = FpPoly{subp(0, 1, p)};
    else
      s[0] = subp(s[0], 1, p);
    fp_trim(s);
    if (s.empty()) continue;
    FpPoly g = fp_gcd(s, f, p);
    if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
      FpPoly q;
      fp_divmod(f, g, p, &q);
      fp_edf(g, d, p, rng, out);
      fp_edf(fp_monic(q, p), d, p, rng, out);
      return;
    }
  }
}

// full factorization of monic squarefree f over Fp
std::vector<FpPoly> fp_factor_sqf(FpPoly f, u64 p) {
  std::vector<FpPoly> out;
  Rng rng;
  FpPoly x{0, 1};
  FpPoly h = x;
  int d = 0;
  while (fp_deg(f) > 0 && 2 * (d + 1) <= fp_deg(f)) {
    ++d;
    h = fp_powmod(h, Z(p), f, p);
    FpPoly hx = fp_sub(h, x, p);
    if (hx.empty()) {  // every remaining factor divides x^{p^d}-x
      fp_edf(f, d, p, rng, out);
      return out;
    }
    FpPoly g = fp_gcd(hx, f, p);
    if (fp_deg(g) > 0) {
      fp_edf(g, d, p, rng, out);
      FpPoly q;
      fp_divmod(f, g, p, &q);
      f = fp_monic(q, p);
      h = fp_divmod(h, f, p);
    }
  }
  if (fp_deg(f) > 0) out.push_back(f);
  return out;
}

// =======================  Z[x] helpers  =======================

using ZP = std::vector<Z>;  // coeff of x^k, trimmed

void z_trim(ZP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int z_deg(const ZP& f) { return (int)f.size() - 1; }

ZP z_mul(const ZP& a, const ZP& b) {
  if (a.empty() || b.empty()) return {};
  ZP r(a.size() + b.size() - 1, Z(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  z_trim(r);
  return r;
}

// exact division of a by monic-leading? general: returns true and quotient if
// b divides a over Z
bool z_divexact(const ZP& a, const ZP& b, ZP& q) {
  assert(!b.empty());
  ZP r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Z(0));
  while (r.size() >= b.size()) {
    Z c, rem;
    mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(),
                b.back().get_mpz_t());
    if (rem != 0) return false;
    size_t d = r.size() - b.size();
    q[d] = c;
    for (size_t i = 0; i < b.size(); ++i) r[d + i] -= c * b[i];
    if (!r.empty() && r.back() == 0) r.pop_back();
    else if (!r.empty()) return false;  // leading term failed to cancel
    z_trim(r);
  }
  z_trim(r);
  return r.empty();
}

Z z_sym(const Z& a, const Z& M) {  // symmetric representative mod M
  Z r = a % M;
  if (r < 0) r += M;
  if (2 * r > M) r -= M;
  return r;
}

FpPoly z_to_fp(const ZP& f, u64 p) {
  FpPoly r;
  for (auto& c : f) {
    Z m = c % (long)p;
    if (m < 0) m += (long)p;
    r.push_back(m.get_ui());
  }
  fp_trim(r);
  return r;
}

// =======================  univariate Zassenhaus  =======================

// Bezout cofactors over Fp: sigma[i] with sum sigma_i * prod_{j!=i} g_j = 1
std::vector<FpPoly> fp_bezout(const std::vector<FpPoly>& gs, u64 p) {
  size_t r = gs.size();
  std::vector<FpPoly> sigma(r);
  for (size_t i = 0; i < r; ++i) {
    FpPoly prod{1};
    for (size_t j = 0; j < r; ++j)
      if (j != i) prod = fp_divmod(fp_mul(prod, gs[j], p), gs[i], p);
    // invert prod mod gs[i] via extended Euclid
    FpPoly r0 = gs[i], r1 = prod, s0{}, s1{1};
    while (fp_deg(r1) > 0) {
      FpPoly q;
      FpPoly r2 = fp_divmod(r0, r1, p, &q);
      FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
      r0 = r1;
      r1 = r2;
      s0 = s1;
      s1 = s2;
    }
    assert(!r1.empty());
    sigma[i] = fp_divmod(fp_scale(s1, invp(r1[0], p), p), gs[i], p);
  }
  return sigma;
}

// factor a primitive squarefree f in Z[x], deg >= 1; returns primitive
// irreducible factors with positive leading coefficient (up to global sign)
std::vector<ZP> z_factor_sqf(const ZP& f0) {
  int n = z_deg(f0);
  if (n <= 0) return {};
  if (n == 1) return {f0};
  // monicize: fm(x) = L^(n-1) f(x/L)
  // fm(x) = L^(n-1) f(x/L), monic: fm[i] = f0[i] * L^(n-1-i)
  Z L = f0.back();
  ZP fm(f0.size());
  fm[n] = 1;
  Z pw(1);
  for (int i = n - 1; i >= 0; --i) {
    fm[i] = f0[i] * pw;
    pw *= L;
  }
  // choose a prime with squarefree image and few modular factors
  static const u64 primes[] = {1000003, 1000033, 1000037, 1000039, 1000081,
                               1000099, 1000117, 1000121, 1000133, 1000151,
                               1000159, 1000171, 1000183, 1000187, 1000193,
                               1000199, 1000211, 1000213, 1000231, 1000249};
  u64 best_p = 0;
  std::vector<FpPoly> best_fac;
  int tried = 0;
  for (u64 p : primes) {
    FpPoly fp = z_to_fp(fm, p);
    if (fp_deg(fp) != n) continue;
    if (fp_deg(fp_gcd(fp, fp_deriv(fp, p), p)) != 0) continue;
    auto fac = fp_factor_sqf(fp_monic(fp, p), p);
    if (best_p == 0 || fac.size() < best_fac.size()) {
      best_p = p;
      best_fac = fac;
    }
    if (++tried >= 3 || best_fac.size() == 1) break;
  }
  if (best_p == 0) throw std::runtime_error("z_factor_sqf: no good prime");
  if (best_fac.size() == 1) return {f0};
  u64 p = best_p;
  auto& gs = best_fac;
  auto sigma = fp_bezout(gs, p);
  // coefficient bound for monic factors of fm (Mignotte-style, generous)
  Z norm(0);
  for (auto& c : fm) norm += abs(c);
  Z bound = (Z(1) << (n + 2)) * norm;
  // linear Hensel lifting of all factors simultaneously
  std::vector<ZP> G(gs.size());
  for (size_t i = 0; i < gs.size(); ++i) {
    G[i].clear();
    for (auto c : gs[i]) G[i].push_back(z_sym(Z((long)c), Z((long)p)));
  }
  Z M((long)p);
  while (M < 2 * bound) {
    ZP prod{Z(1)};
    for (auto& g : G) prod = z_mul(prod, g);
    ZP E(fm.size(), Z(0));
    for (size_t i = 0; i < fm.size(); ++i) E[i] = fm[i];
    for (size_t i = 0; i < prod.size(); ++i) E[i] -= prod[i];
    z_trim(E);
    if (E.empty()) break;
    ZP e(E.size());
    for (size_t i = 0; i < E.size(); ++i) e[i] = E[i] / M;
    FpPoly ep = z_to_fp(e, p);
    for (size_t i = 0; i < G.size(); ++i) {
      FpPoly di = fp_divmod(fp_mul(sigma[i], ep, p), gs[i], p);
      for (size_t k = 0; k < di.size(); ++k) {
        if ((int)k >= (int)G[i].size()) G[i].resize(k + 1, Z(0));
        G[i][k] += M * z_sym(Z((long)di[k]), Z((long)p));
      }
    }
    M *= (long)p;
  }
  // recombination over subsets (increasing cardinality)
  std::vector<int> alive(G.size());
  for (size_t i = 0; i < G.size(); ++i) alive[i] = (int)i;
  ZP rem = fm;  // remaining monic cofactor
  std::vector<ZP> monic_factors;
  auto reduceM = [&](ZP a) {
    for (auto& c : a) c = z_sym(c, M);
    z_trim(a);
    return a;
  };
  bool progress = true;
  while (progress && alive.size() > 1) {
    progress = false;
    for (size_t card = 1; card <= alive.size() / 2 && !progress; ++card) {
      std::vector<size_t> idx(card);
      // iterate combinations of `alive` of size `card`
      std::vector<size_t> comb(card);
      for (size_t i = 0; i < card; ++i) comb[i] = i;
      while (true) {
        ZP C{Z(1)};
        for (size_t i = 0; i < card; ++i) C = reduceM(z_mul(C, G[alive[comb[i]]]));
        ZP q;
        if (z_divexact(rem, C, q)) {
          monic_factors.push_back(C);
          rem = q;
          std::vector<int> na;
          for (size_t i = 0, j = 0; i < alive.size(); ++i) {
            if (j < card && comb[j] == i) {
              ++j;
              continue;
            }
            na.push_back(alive[i]);
          }
          alive = na;
          progress = true;
          break;
        }
        // next combination
        int i = (int)card - 1;
        while (i >= 0 && comb[i] == alive.size() - card + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (size_t j = i + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }
  if (z_deg(rem) > 0) monic_factors.push_back(rem);
  // map monic factors of fm back to primitive factors of f0: g = pp(C(L*x))
  std::vector<ZP> out;
  for (auto& C : monic_factors) {
    ZP g(C.size());
    Z pw2(1);
    for (size_t i = 0; i < C.size(); ++i) {
      g[i] = C[i] * pw2;
      pw2 *= L;
    }
    Z cont(0);
    for (auto& c : g) cont = gcd(cont, c);
    if (g.back() < 0) cont = -cont;
    for (auto& c : g) c /= cont;
    out.push_back(g);
  }
  return out;
}

// =======================  Poly <-> ZP bridge  =======================

ZP poly_to_zp(const Poly& p, int x) {
  auto cs = uv_coeffs(p, x);
  Z den(1);
  for (auto& c : cs) {
    assert(c.is_constant());
    den = lcm(den, Z(c.constant().get_den()));
  }
  ZP r;
  for (auto& c : cs) r.push_back(Z(c.constant().get_num()) * (den / Z(c.constant().get_den())));
  z_trim(r);
  return r;
}

Poly zp_to_poly(const ZP& f, int x) {
  Poly r;
  for (size_t i = 0; i < f.size(); ++i) r += Q(f[i]) * Poly::var(x, (int)i);
  return r;
}

// =======================  multivariate over Q  =======================

// remainder of P by g (monic in x, univariate in x) w.r.t. x
Poly rem_monic_x(Poly P, const Poly& g, int x) {
  int dg = g.deg(x);
  while (P.deg(x) >= dg) {
    int d = P.deg(x);
    P -= uv_lead(P, x) * Poly::var(x, d - dg) * g;
  }
  return P;
}

// extended Euclid inverse: s with s*a = 1 mod g, univariate in x over Q
Poly inv_mod_uni(const Poly& a, const Poly& g, int x) {
  // returns s of degree < deg g
  Poly r0 = g, r1 = rem_monic_x(a, g, x), s0, s1(Q(1));
  while (r1.deg(x) > 0) {
    // divide r0 by r1 with rational coefficients
    Poly q, r = r0;
    int d1 = r1.deg(x);
    Poly lc1 = uv_lead(r1, x);
    assert(lc1.is_constant());
    while (!r.is_zero() && r.deg(x) >= d1) {
      int d = r.deg(x);
      Poly t = Poly(uv_lead(r, x).constant() / lc1.constant()) * Poly::var(x, d - d1);
      q += t;
      r -= t * r1;
    }
    Poly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (r1.is_zero()) throw std::runtime_error("inv_mod_uni: not coprime");
  return rem_monic_x(Poly(Q(1) / r1.constant()) * s1, g, x);
}

int u_total_deg(const Mono& m, const std::vector<int>& uvars) {
  int d = 0;
  for (int v : uvars) d += m.deg(v);
  return d;
}

Poly u_truncate(const Poly& p, const std::vector<int>& uvars, int K) {
  Poly r;
  for (auto& [m, c] : p.terms())
    if (u_total_deg(m, uvars) <= K) r.set_coeff(m, c);
  return r;
}

Poly u_part(const Poly& p, const std::vector<int>& uvars, int m) {
  Poly r;
  for (auto& [mo, c] : p.terms())
    if (u_total_deg(mo, uvars) == m) r.set_coeff(mo, c);
  return r;
}

int u_min_deg(const Poly& p, const std::vector<int>& uvars) {
  int d = -1;
  for (auto& [mo, c] : p.terms()) {
    int k = u_total_deg(mo, uvars);
    if (d < 0 || k < d) d = k;
  }
  return d;
}

std::vector<ZP> z_factor_sqf(const ZP& f0);

std::vector<Poly> factor_sqf_multi(const Poly& s_in, int x);

// factor a primitive squarefree (w.r.t. x) polynomial; dispatch uni/multi
std::vector<Poly> factor_sqf(const Poly& s, int x) {
  auto vs = s.vars();
  if (vs.size() == 1 && vs[0] == x) {
    auto zf = z_factor_sqf(poly_to_zp(s, x));
    std::vector<Poly> out;
    for (auto& f : zf) out.push_back(normalize_primitive(zp_to_poly(f, x)));
    return out;
  }
  return factor_sqf_multi(s, x);
}

std::vector<Poly> factor_sqf_multi(const Poly& s, int x) {
  if (s.total_deg() > g_factor_degree_limit)
    throw DegreeLimit("factorization degree limit exceeded: total degree " +
                      std::to_string(s.total_deg()));
  int n = s.deg(x);
  assert(n >= 1);
  std::vector<int> uvars;
  for (int v : s.vars())
    if (v != x) uvars.push_back(v);
  Poly L = uv_lead(s, x);
  // search evaluation point b: lc nonzero, squarefree univariate image
  static const long seq[] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7, 11, -11, 13, 17, 19, 23};
  std::map<int, Q> b;
  bool found = false;
  size_t nseq = sizeof(seq) / sizeof(seq[0]);
  // enumerate tuples over seq by mixed radix, bounded attempts
  size_t total = 1;
  for (size_t i = 0; i < uvars.size(); ++i) total = std::min<size_t>(total * nseq, 200000);
  for (size_t code = 0; code < total; ++code) {
    size_t c = code;
    std::map<int, Q> cand;
    for (int v : uvars) {
      cand[v] = Q(seq[c % nseq]);
      c /= nseq;
    }
    if (eval_q(L, cand) == 0) continue;
    // univariate image
    Poly img;
    for (auto& [mo, co] : s.terms()) {
      Q val = co;
      Mono mx;
      bool zero = false;
      for (auto& [v, k] : mo.e) {
        if (v == x) {
          mx = mx * Mono{{{x, k}}};
        } else {
          Q base = cand[v];
          if (base == 0 && k > 0) {
            zero = true;
            break;
          }
          for (int i = 0; i < k; ++i) val *= base;
        }
      }
      if (!zero) img.set_coeff(mx, img.coeff(mx) + val);
    }
    if (img.deg(x) != n) continue;
    Poly g = gcd(img, deriv(img, x));
    if (!g.is_constant()) continue;
    b = cand;
    found = true;
    break;
  }
  if (!found) throw std::runtime_error("factor_sqf_multi: no good evaluation point");

  // monicize and shift: T(x,u) = L^(n-1) s(x/L), then u -> u + b; coefficient
  // of x^i becomes cs[i] * L^(n-1-i), and cs[n] = L gives the monic x^n term
  Poly T;
  {
    auto cs = uv_coeffs(s, x);
    for (int i = 0; i < n; ++i) T += cs[i] * L.pow(n - 1 - i) * Poly::var(x, i);
    T += Poly::var(x, n);
  }
  std::map<int, Poly> shift, unshift;
  for (int v : uvars) {
    shift[v] = Poly::var(v) + Poly(b[v]);
    unshift[v] = Poly::var(v) - Poly(b[v]);
  }
  T = subst(T, shift);
  Poly T0 = u_part(T, uvars, 0);  // univariate image, monic

  auto zf = z_factor_sqf(poly_to_zp(T0, x));
  if (zf.size() == 1) return {s};
  std::vector<Poly> g0;
  for (auto& f : zf) {
    Poly g = zp_to_poly(f, x);
    // make monic over Q
    g = Poly(Q(1) / uv_lead(g, x).constant()) * g;
    g0.push_back(g);
  }
  size_t r = g0.size();
  // Bezout cofactors over Q[x]
  std::vector<Poly> sigma(r);
  for (size_t i = 0; i < r; ++i) {
    Poly prod(Q(1));
    for (size_t j = 0; j < r; ++j)
      if (j != i) prod = rem_monic_x(prod * g0[j], g0[i], x);
    sigma[i] = inv_mod_uni(prod, g0[i], x);
  }
  int degL = 0;
  for (int v : uvars) degL = std::max(degL, 0);
  int Lu = 0;  // total degree of L in u
  {
    for (auto& [mo, c] : L.terms()) Lu = std::max(Lu, u_total_deg(mo, uvars));
  }
  int su = 0;
  for (auto& [mo, c] : s.terms()) su = std::max(su, u_total_deg(mo, uvars));
  int K = su + n * Lu + 2;

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Poly> G = g0;
    // ideal-adic lifting by total u-degree
    for (int it = 0; it <= K + 2; ++it) {
      Poly prod(Q(1));
      for (auto& g : G) prod = u_truncate(prod * g, uvars, K);
      Poly E = u_truncate(T, uvars, K) - prod;
      if (E.is_zero()) break;
      int m = u_min_deg(E, uvars);
      if (m > K) break;
      Poly Em = u_part(E, uvars, m);
      for (size_t i = 0; i < r; ++i) {
        Poly di = rem_monic_x(sigma[i] * Em, g0[i], x);
        G[i] += di;
      }
    }
    // recombination
    std::vector<size_t> alive(r);
    for (size_t i = 0; i < r; ++i) alive[i] = i;
    Poly rem_s = s;
    std::vector<Poly> out;
    bool progress = true;
    while (progress && !alive.empty()) {
      progress = false;
      size_t maxcard = alive.size();
      for (size_t card = 1; card <= maxcard && !progress; ++card) {
        std::vector<size_t> comb(card);
        for (size_t i = 0; i < card; ++i) comb[i] = i;
        while (true) {
          Poly C(Q(1));
          for (size_t i = 0; i < card; ++i)
            C = u_truncate(C * G[alive[comb[i]]], uvars, K);
          // candidate: unshift, then x -> L*x, primitive part
          Poly Cu = subst(C, unshift);
          auto cc = uv_coeffs(Cu, x);
          Poly cand;
          for (size_t i = 0; i < cc.size(); ++i)
            cand += cc[i] * L.pow((int)i) * Poly::var(x, (int)i);
          if (!cand.is_zero()) {
            cand = normalize_primitive(uv_primpart(cand, x));
            Poly q;
            if (cand.deg(x) >= 1 && try_divexact(rem_s, cand, q)) {
              out.push_back(cand);
              rem_s = q;
              std::vector<size_t> na;
              for (size_t i = 0, j = 0; i < alive.size(); ++i) {
                if (j < card && comb[j] == i) {
                  ++j;
                  continue;
                }
                na.push_back(alive[i]);
              }
              alive = na;
              progress = true;
              break;
            }
          }
          int i = (int)card - 1;
          while (i >= 0 && comb[i] == alive.size() - card + i) --i;
          if (i < 0) break;
          ++comb[i];
          for (size_t j = (size_t)i + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
        }
      }
    }
    if (alive.empty() && rem_s.is_constant()) return out;
    if (alive.empty() && !rem_s.is_constant()) {
      out.push_back(normalize_primitive(rem_s));
      return out;
    }
    K *= 2;  // precision was insufficient; retry
  }
  throw std::runtime_error("factor_sqf_multi: recombination failed");
}

}  // namespace

// =======================  squarefree + top level over Q  =======================

std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p, int x) {
  std::vector<std::pair<Poly, int>> out;
  Poly cont = uv_content(p, x);
  if (!cont.is_constant()) out.push_back({cont, 1});
  Poly f = divexact(p, cont);
  if (f.deg(x) < 1) return out;
  // Yun
  Poly fp = deriv(f, x);
  Poly G = gcd(f, fp);
  Poly C = divexact(f, G);
  Poly D = divexact(fp, G) - deriv(C, x);
  int i = 1;
  while (C.deg(x) >= 1) {
    Poly P = gcd(C, D);
    if (P.deg(x) >= 1 || !P.is_constant()) {
      if (!P.is_constant()) out.push_back({normalize_primitive(P), i});
    }
    C = divexact(C, P);
    D = divexact(D, P) - deriv(C, x);
    ++i;
  }
  return out;
}

FactorList factor_q(const Poly& p) {
  FactorList fl;
  if (p.is_zero()) {
    fl.unit = 0;
    return fl;
  }
  Q cont = rational_content(p);
  Poly f = normalize_primitive(p);
  // recover sign: normalize_primitive flips to positive leading
  Poly rec = Poly(cont) * f;
  if (rec != p) cont = -cont;
  fl.unit = cont;
  if (f.is_constant()) return fl;

  // main variable: the present variable of least positive degree
  int x = -1, best = 1 << 30;
  for (int v : f.vars()) {
    int d = f.deg(v);
    if (d >= 1 && d < best) {
      best = d;
      x = v;
    }
  }
  assert(x >= 0);
  auto sq = squarefree_decompose(f, x);
  for (auto& [part0, mult] : sq) {
    Poly part = part0;
    if (part.deg(x) >= 1) {
      Poly cont = uv_content(part, x);
      if (!cont.is_constant()) {
        FactorList sub = factor_q(cont);
        fl.unit *= sub.unit;
        for (auto& [g, m] : sub.factors) fl.factors.push_back({g, m * mult});
        part = divexact(part, cont);
      }
    }
    if (part.deg(x) < 1) {
      // content w.r.t. x: recurse
      FactorList sub = factor_q(part);
      fl.unit *= sub.unit;
      for (auto& [g, m] : sub.factors) fl.factors.push_back({g, m * mult});
      continue;
    }
    for (auto& g : factor_sqf(normalize_primitive(part), x))
      fl.factors.push_back({normalize_primitive(g), mult});
  }
  // deterministic order
  std::sort(fl.factors.begin(), fl.factors.end(), [](auto& a, auto& b) {
    if (a.first.total_deg() != b.first.total_deg())
      return a.first.total_deg() < b.first.total_deg();
    return a.first.str() < b.first.str();
  });
  // fix the unit so the expansion reproduces p exactly
  {
    Poly prod(Q(1));
    for (auto& [g, m] : fl.factors) prod *= g.pow(m);
    Q cp = p.terms().begin()->second;
    Q cq = prod.terms().begin()->second;
    fl.unit = cp / cq;
  }
  return fl;
}

// =======================  over towers (Trager)  =======================

namespace {

// squarefree decomposition w.r.t. x over the tower field:
// layers[k] = product of distinct factors of multiplicity > k; the factors of
// multiplicity exactly m form layers[m-1] / layers[m]
std::vector<std::pair<Poly, int>> f_sqf_decompose(const Poly& p, int x, const Tower& tw) {
  std::vector<Poly> layers;
  Poly f = p;
  while (f.deg(x) >= 1) {
    layers.push_back(fsquarefree_part(f, x, tw));
    Poly g = fgcd(f, deriv(f, x), x, tw);
    if (g.deg(x) < 1) break;
    f = g;
  }
  std::vector<std::pair<Poly, int>> out;
  for (size_t m = 0; m < layers.size(); ++m) {
    Poly num = layers[m];
    Poly den = (m + 1 < layers.size()) ? layers[m + 1] : Poly(Q(1));
    Poly part = den.deg(x) >= 1 ? field_divexact(num, den, x, tw) : num;
    if (part.deg(x) >= 1) out.push_back({part, (int)m + 1});
  }
  return out;
}

int fresh_counter = 0;

// Trager: factor a squarefree (w.r.t. x) polynomial over the tower field,
// where the tower has at least one extension
std::vector<Poly> trager_sqf(const Poly& s, int x, const Tower& tw);

// factor a squarefree polynomial over the tower field (any number of exts)
std::vector<Poly> field_factor_sqf(const Poly& s, int x, const Tower& tw) {
  if (tw.exts.empty()) {
    // factor over Q(params): factor the cleared numerator over Q; factors
    // free of x are field units here
    FactorList fl = factor_q(s);
    std::vector<Poly> out;
    for (auto& [g, m] : fl.factors) {
      if (g.deg(x) < 1) continue;
      for (int i = 0; i < m; ++i) out.push_back(g);  // m>1 impossible: s sqfree
    }
    return out;
  }
  return trager_sqf(s, x, tw);
}

std::vector<Poly> trager_sqf(const Poly& s, int x, const Tower& tw) {
  const Ext& ext = tw.exts.back();
  Tower lower = tw.without_top_ext();
  if (!s.has_var(ext.var)) {
    // coefficients live below; factor there, but factors may still split over
    // the extension only if they share roots with ext... they can: e.g. x^2-a
    // splits over Q(a)(sqrt a). So we cannot shortcut; fall through.
  }
  static const long cs[] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
  for (long c : cs) {
    Poly sh = subst(s, x, Poly::var(x) - Poly(Q(c)) * Poly::var(ext.var));
    Poly den(Q(1));
    reduce_exts(sh, den, tw);
    Poly N = ext_norm(sh, ext);
    if (N.deg(x) != s.deg(x) * ext.minpoly.deg(ext.var)) continue;
    // squarefree over the lower field?
    if (fgcd(N, deriv(N, x), x, lower).deg(x) != 0) continue;
    std::vector<Poly> nf = field_factor_sqf(normalize_primitive(N), x, lower);
    std::vector<Poly> out;
    int degsum = 0;
    for (auto& Ni : nf) {
      Poly gi = fgcd(sh, Ni, x, tw);
      if (gi.deg(x) >= 1) {
        Poly back = subst(gi, x, Poly::var(x) + Poly(Q(c)) * Poly::var(ext.var));
        Poly d2(Q(1));
        reduce_exts(back, d2, tw);
        back = normalize_primitive(back);
        out.push_back(back);
        degsum += back.deg(x);
      }
    }
    if (degsum == s.deg(x)) return out;
  }
  throw std::runtime_error("trager_sqf: no squarefree norm found");
}

}  // namespace

TowerFactorList factor_over_tower(const Poly& p, const Tower& tw) {
  TowerFactorList out;
  Poly f = p;
  Poly den(Q(1));
  reduce_exts(f, den, tw);
  if (f.is_zero()) {
    out.unit_poly = Poly();
    return out;
  }
  f = normalize_primitive(f);
  // main variable: first free variable present
  int x = -1;
  for (int v : f.vars())
    if (!tw.is_field_var(v)) {
      x = v;
      break;
    }
  if (x < 0) {
    out.unit_poly = f;
    return out;
  }
  if (tw.exts.empty()) {
    FactorList fl = factor_q(f);
    for (auto& [g, m] : fl.factors) {
      bool unit = true;
      for (int v : g.vars())
        if (!tw.is_field_var(v)) unit = false;
      if (unit)
        out.unit_poly *= g.pow(m);
      else
        out.factors.push_back({g, m});
    }
    return out;
  }
  Poly cont = uv_content(f, x);
  bool cont_unit = true;
  for (int v : cont.vars())
    if (!tw.is_field_var(v)) cont_unit = false;
  if (!cont_unit) {
    // content involves other free variables: factor it recursively
    TowerFactorList sub = factor_over_tower(cont, tw);
    out.unit_poly *= sub.unit_poly;
    for (auto& fm : sub.factors) out.factors.push_back(fm);
    f = divexact(f, cont);
  } else {
    out.unit_poly *= cont;
    f = divexact(f, cont);
  }
  for (auto& [part, mult] : f_sqf_decompose(f, x, tw)) {
    for (auto& g : field_factor_sqf(part, x, tw))
      out.factors.push_back({normalize_primitive(g), mult});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](auto& a, auto& b) {
    if (a.first.total_deg() != b.first.total_deg())
      return a.first.total_deg() < b.first.total_deg();
    return a.first.str() < b.first.str();
  });
  return out;
}

TowerFactorList factor_univariate_ext(const Poly& p, int x, const Tower& tw) {
  (void)x;
  return factor_over_tower(p, tw);
}

bool absolutely_irreducible(const Poly& f_in, int x, int y, const Tower& tw) {
  TowerFactorList fl = factor_over_tower(f_in, tw);
  if (fl.factors.size() != 1 || fl.factors[0].second != 1) return false;
  Poly f = fl.factors[0].first;
  // absolute factors are conjugate and share the degree in each variable, so
  // their count divides gcd(deg_x, deg_y); coprime degrees settle it at once
  if (f.deg(x) >= 1 && f.deg(y) >= 1 && std::gcd(f.deg(x), f.deg(y)) == 1)
    return true;
  if (!tw.params.empty() && tw.exts.empty()) {
    // absolute irreducibility is open in the parameters: one specialization
    // of full degree that is absolutely irreducible certifies the generic
    // statement, and a reducible generic polynomial specializes reducibly
    // outside a hypersurface; inconclusive trials fall through to the exact
    // extension computation
    auto dxy = [&](const Poly& p) {
      int d = -1;
      for (auto& [mo, c] : p.terms()) {
        (void)c;
        d = std::max(d, mo.deg(x) + mo.deg(y));
      }
      return d;
    };
    int d = dxy(f);
    std::mt19937 rng(9176);
    std::uniform_int_distribution<long> val(-9, 9);
    for (int trial = 0; trial < 8; ++trial) {
      std::map<int, Poly> sp;
      for (int a : tw.params) sp[a] = Poly(Q(val(rng)));
      Poly f0 = subst(f, sp);
      if (dxy(f0) != d) continue;
      int mv = f0.deg(x) >= 1 ? x : y;
      if (!gcd(f0, deriv(f0, mv)).is_constant()) continue;
      Tower none;
      if (absolutely_irreducible(f0, x, y, none)) return true;
    }
  }
  if (f.deg(y) == 0) std::swap(x, y);
  if (f.deg(x) == 0) {
    // univariate over the field: splits absolutely unless linear
    return f.deg(y) == 1;
  }
  if (f.deg(y) == 1 || f.deg(x) == 1) return true;
  // find a good fiber x = x0
  for (long x0 = 0; x0 < 50; x0 = (x0 >= 0 ? -x0 - 1 : -x0)) {
    Poly g = subst(f, x, Poly(Q(x0)));
    Poly d(Q(1));
    reduce_exts(g, d, tw);
    if (g.deg(y) != f.deg(y)) continue;
    if (fgcd(g, deriv(g, y), y, tw).deg(y) != 0) continue;
    TowerFactorList gf = factor_univariate_ext(normalize_primitive(g), y, tw);
    if (gf.factors.empty()) continue;
    // deterministic pick: smallest degree, then string order
    const Poly* g1 = &gf.factors[0].first;
    for (auto& [cand, m] : gf.factors) {
      if (cand.deg(y) < g1->deg(y) ||
          (cand.deg(y) == g1->deg(y) && cand.str() < g1->str()))
        g1 = &cand;
    }
    if (g1->deg(y) == 1) return true;  // rational regular point on the curve
    // adjoin a root of g1 and re-factor
    std::string th = "_th" + std::to_string(fresh_counter++);
    int tv = var_id(th);
    Poly mp = subst(*g1, y, Poly::var(tv));
    Tower tw2 = tw.with_ext(tv, mp);
    TowerFactorList fl2 = factor_over_tower(f, tw2);
    return fl2.factors.size() == 1 && fl2.factors[0].second == 1;
  }
  throw std::runtime_error("absolutely_irreducible: no good fiber found");
}

}  // namespace cal

