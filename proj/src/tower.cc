#include "cal/tower.hh"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace cal {

bool Tower::is_param(int v) const {
  return std::find(params.begin(), params.end(), v) != params.end();
}

int Tower::ext_index(int v) const {
  for (size_t i = 0; i < exts.size(); ++i)
    if (exts[i].var == v) return (int)i;
  return -1;
}

Tower Tower::with_ext(int var, const Poly& minpoly) const {
  Tower t = *this;
  t.exts.push_back({var, minpoly});
  return t;
}

Tower Tower::without_top_ext() const {
  Tower t = *this;
  assert(!t.exts.empty());
  t.exts.pop_back();
  return t;
}

std::string Frac::str() const {
  if (den == Poly(Q(1))) return num.str();
  return "(" + num.str() + ")/(" + den.str() + ")";
}

// ---- extension reduction ----
namespace {

// reduce p modulo minpoly in var (pseudo-division), accumulating the needed
// power of the minpoly's leading coefficient into den
void reduce_one_ext(Poly& p, Poly& den, const Ext& ext) {
  int dm = ext.minpoly.deg(ext.var);
  assert(dm >= 1);
  if (p.deg(ext.var) < dm) return;
  Poly lc = uv_lead(ext.minpoly, ext.var);
  while (p.deg(ext.var) >= dm) {
    int d = p.deg(ext.var);
    Poly t = uv_lead(p, ext.var);
    p = p * lc - t * Poly::var(ext.var, d - dm) * ext.minpoly;
    den *= lc;
    assert(p.deg(ext.var) < d);
  }
}

}  // namespace

void reduce_exts(Poly& num, Poly& den, const Tower& tw) {
  // top-down: higher minpolys may involve lower ext vars, so reducing the
  // topmost first can reintroduce lower vars but never higher ones
  for (auto it = tw.exts.rbegin(); it != tw.exts.rend(); ++it)
    reduce_one_ext(num, den, *it);
}

bool is_zero_in_tower(const Poly& p, const Tower& tw) {
  Poly n = p, d(Q(1));
  reduce_exts(n, d, tw);
  return n.is_zero();
}

// ---- univariate polys with Frac coefficients (internal helper) ----
namespace {

using FU = std::vector<Frac>;  // coefficient k = coeff of t^k

void fu_trim(FU& f, const Tower& tw) {
  while (!f.empty() && fnorm(f.back(), tw).is_zero()) f.pop_back();
}

FU fu_from(const Poly& p, int var) {
  auto cs = uv_coeffs(p, var);
  FU f;
  for (auto& c : cs) f.push_back(Frac(c));
  return f;
}

FU fu_sub(const FU& a, const FU& b, const Tower& tw) {
  FU r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    Frac x = i < a.size() ? a[i] : Frac(Q(0));
    Frac y = i < b.size() ? b[i] : Frac(Q(0));
    r[i] = fsub(x, y, tw);
  }
  fu_trim(r, tw);
  return r;
}

FU fu_scale(const FU& a, const Frac& c, const Tower& tw) {
  FU r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = fmul(a[i], c, tw);
  fu_trim(r, tw);
  return r;
}

FU fu_mul(const FU& a, const FU& b, const Tower& tw) {
  if (a.empty() || b.empty()) return {};
  FU r(a.size() + b.size() - 1, Frac(Q(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = fadd(r[i + j], fmul(a[i], b[j], tw), tw);
  fu_trim(r, tw);
  return r;
}

// a mod b with field coefficients; also returns quotient
FU fu_divmod(FU a, const FU& b, const Tower& tw, FU* quo) {
  assert(!b.empty());
  Frac inv_lc = finv(b.back(), tw);
  if (quo) quo->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Frac(Q(0)));
  while (a.size() >= b.size()) {
    size_t d = a.size() - b.size();
    Frac c = fmul(a.back(), inv_lc, tw);
    if (quo) (*quo)[d] = fadd((*quo)[d], c, tw);
    for (size_t i = 0; i < b.size(); ++i)
      a[d + i] = fsub(a[d + i], fmul(c, b[i], tw), tw);
    a.pop_back();  // leading term cancelled exactly
    fu_trim(a, tw);
  }
  return a;
}

// clear the (parameter-only) denominators of an FU and rebuild a primitive Poly
Poly fu_to_poly_cleared(const FU& f, int var) {
  Poly den(Q(1));
  for (auto& c : f) den = divexact(den * c.den, gcd(den, c.den));
  Poly r;
  for (size_t k = 0; k < f.size(); ++k)
    r += f[k].num * divexact(den, f[k].den) * Poly::var(var, (int)k);
  return normalize_primitive(r);
}

}  // namespace

// exact division of p by g as polynomials in x over the tower field;
// result is denominator-cleared and primitive (defined up to a field unit)
Poly field_divexact(const Poly& p, const Poly& g, int x, const Tower& tw) {
  FU a, b;
  {
    auto ca = uv_coeffs(p, x);
    for (auto& c : ca) a.push_back(Frac(c));
    auto cb = uv_coeffs(g, x);
    for (auto& c : cb) b.push_back(Frac(c));
  }
  FU quo;
  FU rem = fu_divmod(a, b, tw, &quo);
  for (auto& c : rem)
    if (!fnorm(c, tw).is_zero()) throw std::runtime_error("field_divexact: not divisible");
  return fu_to_poly_cleared(quo, x);
}

// ---- inverse of an algebraic element ----
Frac inv_algebraic(const Poly& d, const Tower& tw) {
  // topmost extension variable occurring in d
  int top = -1;
  for (int i = (int)tw.exts.size() - 1; i >= 0; --i)
    if (d.has_var(tw.exts[i].var)) {
      top = i;
      break;
    }
  if (top < 0) {
    if (d.is_zero()) throw std::runtime_error("inv_algebraic: zero");
    return Frac(Poly(Q(1)), d);
  }
  const Ext& ext = tw.exts[top];
  // extended Euclid: s*d + t*m = gcd = 1 over the field generated without this
  // ext variable (coefficients may involve lower exts; recursion bottoms out)
  FU r0 = fu_from(ext.minpoly, ext.var);
  FU r1 = fu_from(d, ext.var);
  FU s0 = {}, s1 = {Frac(Q(1))};  // s coefficients for d
  while (true) {
    fu_trim(r1, const_cast<const Tower&>(tw));
    assert(!r1.empty());
    if (r1.size() == 1) break;  // constant gcd reached (minpoly irreducible)
    FU q;
    FU r2 = fu_divmod(r0, r1, tw, &q);
    FU s2 = fu_sub(s0, fu_mul(q, s1, tw), tw);
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  Frac unit_inv = finv(r1[0], tw);
  // inverse of d is s1 * unit_inv, as a polynomial in ext.var
  FU s = fu_scale(s1, unit_inv, tw);
  Frac acc(Q(0));
  for (int k = (int)s.size() - 1; k >= 0; --k) {
    acc = fmul(acc, Frac(Poly::var(ext.var)), tw);
    acc = fadd(acc, s[k], tw);
  }
  return fnorm(acc, tw);
}

// ---- Frac arithmetic ----
Frac fnorm(const Frac& f, const Tower& tw) {
  Poly n = f.num, d = f.den;
  if (d.is_zero()) throw std::runtime_error("fnorm: zero denominator");
  if (n.is_zero()) return Frac(Poly(), Poly(Q(1)));
  reduce_exts(n, d, tw);
  if (n.is_zero()) return Frac(Poly(), Poly(Q(1)));
  // clear extension vars from the denominator
  bool den_has_ext = false;
  for (auto& e : tw.exts)
    if (d.has_var(e.var)) den_has_ext = true;
  if (den_has_ext) {
    Frac inv = inv_algebraic(d, tw);
    Poly n2 = n * inv.num, d2 = inv.den;
    reduce_exts(n2, d2, tw);
    n = n2;
    d = d2;
  }
  // cancel common factors (plain gcd: ext vars in num are treated as free,
  // den has none, so any common factor is genuinely cancellable)
  Poly g = gcd(n, d);
  if (!g.is_constant()) {
    n = divexact(n, g);
    d = divexact(d, g);
  }
  // rational content + sign to den
  Q cn = rational_content(n), cd = rational_content(d);
  if (d.terms().rbegin()->second < 0) cd = -cd;
  Q c = cn / cd;
  Poly num_out;
  for (auto& [m, co] : n.terms()) num_out.set_coeff(m, co / cn * c);
  Poly den_out;
  for (auto& [m, co] : d.terms()) den_out.set_coeff(m, co / cd);
  return Frac(num_out, den_out);
}

Frac fadd(const Frac& a, const Frac& b, const Tower& tw) {
  return fnorm(Frac(a.num * b.den + b.num * a.den, a.den * b.den), tw);
}
Frac fsub(const Frac& a, const Frac& b, const Tower& tw) {
  return fnorm(Frac(a.num * b.den - b.num * a.den, a.den * b.den), tw);
}
Frac fmul(const Frac& a, const Frac& b, const Tower& tw) {
  return fnorm(Frac(a.num * b.num, a.den * b.den), tw);
}
Frac finv(const Frac& a, const Tower& tw) {
  if (a.is_zero()) throw std::runtime_error("finv: zero");
  return fnorm(Frac(a.den, a.num), tw);
}
Frac fdiv(const Frac& a, const Frac& b, const Tower& tw) {
  return fmul(a, finv(b, tw), tw);
}
Frac fneg(const Frac& a) { return Frac(-a.num, a.den); }

Frac fpow(const Frac& a, int n, const Tower& tw) {
  if (n < 0) return fpow(finv(a, tw), -n, tw);
  Frac r(Q(1)), b = a;
  while (n) {
    if (n & 1) r = fmul(r, b, tw);
    n >>= 1;
    if (n) b = fmul(b, b, tw);
  }
  return r;
}

Frac fsubst(const Frac& f, int var, const Frac& value, const Tower& tw) {
  auto horner = [&](const Poly& p) {
    auto cs = uv_coeffs(p, var);
    Frac r(Q(0));
    for (int k = (int)cs.size() - 1; k >= 0; --k)
      r = fadd(fmul(r, value, tw), Frac(cs[k]), tw);
    return r;
  };
  return fdiv(horner(f.num), horner(f.den), tw);
}

// ---- field gcd ----
Poly fgcd(const Poly& A, const Poly& B, int x, const Tower& tw) {
  if (tw.exts.empty()) {
    // pure transcendental tower: plain gcd, but restricted to x
    Poly g = gcd(A, B);
    // keep only the part that is a gcd as polys in x over the fraction field:
    // divide out the content w.r.t. x
    if (g.is_constant()) return Poly(Q(1));
    Poly gx = g.deg(x) > 0 ? uv_primpart(g, x) : Poly(Q(1));
    return gx;
  }
  auto red = [&](const Poly& p) {
    Poly n = p, d(Q(1));
    reduce_exts(n, d, tw);
    return normalize_primitive(n);
  };
  Poly f = red(A), g = red(B);
  if (f.is_zero()) return g.deg(x) > 0 ? g : Poly(Q(1));
  if (g.is_zero()) return f.deg(x) > 0 ? f : Poly(Q(1));
  if (f.deg(x) < g.deg(x)) std::swap(f, g);
  while (g.deg(x) > 0) {
    // pseudo-reduce f by g in x, then ext-reduce and strip content
    Poly r = f;
    Poly lcg = uv_lead(g, x);
    int dg = g.deg(x);
    while (!r.is_zero() && r.deg(x) >= dg) {
      int d = r.deg(x);
      r = r * lcg - uv_lead(r, x) * Poly::var(x, d - dg) * g;
      r = red(r);
      if (!r.is_zero() && r.deg(x) >= d) throw std::runtime_error("fgcd: no progress");
    }
    f = g;
    g = r.is_zero() ? r : normalize_primitive(uv_primpart(r, x));
  }
  if (!g.is_zero()) return Poly(Q(1));  // nonzero field constant remainder
  return normalize_primitive(uv_primpart(f, x));
}

Poly fgcd_many(const std::vector<Poly>& ps, int x, const Tower& tw) {
  Poly g;
  bool first = true;
  for (auto& p : ps) {
    if (p.is_zero()) continue;
    g = first ? (p.deg(x) > 0 ? p : Poly(Q(1))) : fgcd(g, p, x, tw);
    first = false;
    if (!first && g.is_constant()) return Poly(Q(1));
  }
  if (first) return Poly();
  if (g.deg(x) <= 0) return Poly(Q(1));
  return g;
}

Poly fsquarefree_part(const Poly& p, int x, const Tower& tw) {
  if (p.deg(x) <= 0) return p;
  Poly g = fgcd(p, deriv(p, x), x, tw);
  if (g.deg(x) <= 0) return p;
  return field_divexact(p, g, x, tw);
}

Frac fresultant(const Poly& f, const Poly& g, int x, const Tower& tw) {
  auto red = [&](const Poly& p) {
    Poly n = p, d(Q(1));
    reduce_exts(n, d, tw);
    return n;
  };
  Poly F = red(f), G = red(g);
  if (!F.is_zero() && is_zero_in_tower(uv_lead(F, x), tw))
    throw std::runtime_error("fresultant: leading coefficient vanishes");
  if (!G.is_zero() && is_zero_in_tower(uv_lead(G, x), tw))
    throw std::runtime_error("fresultant: leading coefficient vanishes");
  Poly r = resultant(F, G, x);
  return fnorm(Frac(r), tw);
}

Poly ext_norm(const Poly& f, const Ext& ext) {
  static const char* fresh = "_nrm";
  int s = var_id(fresh);
  Poly fs = subst(f, ext.var, Poly::var(s));
  Poly ms = subst(ext.minpoly, ext.var, Poly::var(s));
  return resultant(fs, ms, s);
}

}  // namespace cal
