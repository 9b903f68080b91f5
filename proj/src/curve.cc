#include "cal/curve.hh"

#include <cassert>

namespace cal {

// ---- LinearChange ----

LinearChange LinearChange::identity() {
  LinearChange L;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      L.m[i][j] = Q(i == j ? 1 : 0);
      L.inv[i][j] = L.m[i][j];
    }
  return L;
}

static Q det3(const std::array<std::array<Q, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

LinearChange LinearChange::make(const std::array<std::array<Q, 3>, 3>& mat) {
  LinearChange L;
  L.m = mat;
  Q d = det3(mat);
  assert(d != 0);
  auto cof = [&](int i, int j) -> Q {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return mat[r0][c0] * mat[r1][c1] - mat[r0][c1] * mat[r1][c0];
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L.inv[i][j] = cof(j, i) / d;
  return L;
}

bool LinearChange::is_identity() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[i][j] != Q(i == j ? 1 : 0)) return false;
  return true;
}

Poly LinearChange::apply(const Poly& g, int x, int y, int z) const {
  Poly vs[3] = {Poly::var(x), Poly::var(y), Poly::var(z)};
  std::map<int, Poly> sub;
  int ids[3] = {x, y, z};
  for (int i = 0; i < 3; ++i) {
    Poly row;
    for (int j = 0; j < 3; ++j) row += m[i][j] * vs[j];
    sub[ids[i]] = row;
  }
  return subst(g, sub);
}

std::array<Poly, 3> LinearChange::map_point(const Poly& p1, const Poly& p2,
                                            const Poly& p3) const {
  const Poly* p[3] = {&p1, &p2, &p3};
  std::array<Poly, 3> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += m[i][j] * *p[j];
  return r;
}

// ---- curve construction ----

int deg_in(const Poly& p, const std::vector<int>& vars) {
  int d = -1;
  for (auto& [mo, c] : p.terms()) {
    int k = 0;
    for (int v : vars) k += mo.deg(v);
    if (k > d) d = k;
  }
  return d;
}

PlaneCurve make_curve(const Poly& F, int x, int y, int z, const Tower& tw) {
  PlaneCurve c;
  Poly num = F, den(Q(1));
  reduce_exts(num, den, tw);  // den is a field unit
  c.F = normalize_primitive(num);
  c.tw = tw;
  c.x = x;
  c.y = y;
  c.z = z;
  c.d = deg_in(c.F, {x, y});
  assert(c.d >= 1);
  c.Fh = homogenize(c.F, x, y, z, c.d);
  return c;
}

std::vector<ConjugateFamily> StandardDecomposition::all() const {
  std::vector<ConjugateFamily> r = affine;
  r.insert(r.end(), infinity.begin(), infinity.end());
  return r;
}

// ---- families ----

Tower family_tower(const Tower& tw, const ConjugateFamily& fam) {
  assert(fam.m.deg(fam.tvar) >= 1);
  return tw.with_ext(fam.tvar, fam.m);
}

bool vanishes_on_family(const Poly& g, const PlaneCurve& c,
                        const ConjugateFamily& fam) {
  Poly v = subst(g, {{c.x, fam.f1}, {c.y, fam.f2}, {c.z, fam.f3}});
  return is_zero_in_tower(v, family_tower(c.tw, fam));
}

void canonicalize_family(ConjugateFamily& fam, const Tower& tw) {
  fam.m = normalize_primitive(fam.m);
  Tower ftw = family_tower(tw, fam);
  Frac co[3] = {fnorm(Frac(fam.f1), ftw), fnorm(Frac(fam.f2), ftw),
                fnorm(Frac(fam.f3), ftw)};
  // pivot preference z, x, y: affine families read (f1 : f2 : unit), families
  // at infinity (unit : f2 : 0) or (0 : unit : 0)
  const int pref[3] = {2, 0, 1};
  int piv = -1;
  for (int i : pref)
    if (piv < 0 && !co[i].is_zero() && !co[i].num.has_var(fam.tvar)) piv = i;
  for (int i : pref)
    if (piv < 0 && !co[i].is_zero()) piv = i;
  assert(piv >= 0);
  Frac sc[3];
  for (int i = 0; i < 3; ++i) sc[i] = fdiv(co[i], co[piv], ftw);
  // common denominator (denominators are free of extension variables)
  Poly D(Q(1));
  for (int i = 0; i < 3; ++i)
    D = divexact(D * sc[i].den, gcd(D, sc[i].den));
  Poly n[3];
  for (int i = 0; i < 3; ++i) n[i] = sc[i].num * divexact(D, sc[i].den);
  // joint content / common factor removal (divides the pivot coordinate, so
  // it is a base-field unit) and sign normalization
  Poly g = gcd(gcd(n[0], n[1]), n[2]);
  for (int i = 0; i < 3; ++i)
    if (!n[i].is_zero()) n[i] = divexact(n[i], g);
  Q rc(1);
  for (int i = 0; i < 3; ++i)
    if (!n[i].is_zero()) {
      rc = rational_content(n[i]);
      break;
    }
  bool neg = false;
  for (int i = 0; i < 3; ++i)
    if (!n[i].is_zero()) {
      neg = n[i].terms().rbegin()->second < 0;
      break;
    }
  for (int i = 0; i < 3; ++i) {
    n[i] = (Q(neg ? -1 : 1) / rc) * n[i];
  }
  fam.f1 = n[0];
  fam.f2 = n[1];
  fam.f3 = n[2];
}

static int fresh_family_var(const PlaneCurve& c) {
  auto used = [&](int v) {
    return v == c.x || v == c.y || v == c.z || c.tw.is_field_var(v);
  };
  int v = var_id("t");
  if (!used(v)) return v;
  for (int k = 1;; ++k) {
    v = var_id("t" + std::to_string(k));
    if (!used(v)) return v;
  }
}

// ---- regular position ----

// squarefree part (over the tower field) of res_y(F, F_x); exact projection
// of the critical locus because the y-leading coefficient of F is constant
static Poly critical_eliminant(const Poly& F, const Poly& Fx, int x, int y,
                               const Tower& tw) {
  Poly R = resultant(F, Fx, y), den(Q(1));
  reduce_exts(R, den, tw);
  if (R.is_zero() || R.deg(x) <= 0) return R;
  return fsquarefree_part(R, x, tw);
}

// fiber over one irreducible factor p(x) of the critical locus, examined in
// the extension by one of its roots: the squarefree part of gcd(F, F_x)
// there must be linear in y (one distinct critical point on the fiber).  On
// success stores that root y = B as a fraction over the extension m(tv).
static bool thick_fiber_linear(const Poly& F, const Poly& Fx, int x, int y,
                               const Poly& p, int tv, const Tower& tw,
                               Frac* root) {
  Poly m = normalize_primitive(subst(p, x, Poly::var(tv)));
  Tower etw = tw.with_ext(tv, m);
  Poly Fs = subst(F, x, Poly::var(tv));
  Poly Fxs = subst(Fx, x, Poly::var(tv));
  Poly d1(Q(1));
  reduce_exts(Fxs, d1, etw);
  Poly h = Fxs.is_zero() ? Fs : fgcd(Fs, Fxs, y, etw);
  Poly hs = fsquarefree_part(h, y, etw);
  if (hs.deg(y) != 1) return false;
  if (root) *root = fnorm(Frac(-uv_coeff(hs, y, 0), uv_coeff(hs, y, 1)), etw);
  return true;
}

bool regular_position_check(const Poly& F, int x, int y, const Tower& tw) {
  int d = deg_in(F, {x, y});
  if (d < 1) return false;
  Poly cy = uv_coeff(F, y, d);
  if (cy.is_zero() || cy.deg(x) > 0 || is_zero_in_tower(cy, tw)) return false;
  if (d == 1) return true;  // a line has no critical point
  Poly Fx = deriv(F, x);
  if (Fx.is_zero()) return false;
  int tv = var_id("_rp");  // scratch extension variable for thick fibers
  if (Fx.deg(y) == 0) {
    // every branch over a critical x is critical; each fiber must still
    // carry a single distinct point
    Poly fx = Fx, den(Q(1));
    reduce_exts(fx, den, tw);
    if (fx.is_zero()) return false;
    if (fx.deg(x) == 0) return true;
    Poly Sx = fsquarefree_part(fx, x, tw);
    for (auto& [p, e] : factor_univariate_ext(Sx, x, tw).factors) {
      (void)e;
      if (p.deg(x) < 1) continue;
      if (!thick_fiber_linear(F, Fx, x, y, p, tv, tw, nullptr)) return false;
    }
    return true;
  }
  Poly S = critical_eliminant(F, Fx, x, y, tw);
  if (S.is_zero()) return false;  // F and F_x share a factor
  if (S.deg(x) <= 0) return true;
  // where the first principal subresultant coefficient is nonzero the fiber
  // gcd has degree 1 and the point is unique; elsewhere ("thick" fibers,
  // multiplicity >= 2) decide over the extension field
  Poly u, v;
  subresultant1(F, Fx, y, u, v);
  Poly du(Q(1));
  reduce_exts(u, du, tw);
  Poly thick = u.is_zero() ? S : fgcd(S, u, x, tw);
  if (thick.deg(x) > 0) {
    for (auto& [p, e] : factor_univariate_ext(thick, x, tw).factors) {
      (void)e;
      if (p.deg(x) < 1) continue;
      if (!thick_fiber_linear(F, Fx, x, y, p, tv, tw, nullptr)) return false;
    }
  }
  return true;
}

// fixed candidate table of affine rational changes, cheapest first
static std::vector<LinearChange> change_table() {
  std::vector<LinearChange> r;
  auto push = [&](Q a, Q b, Q c2, Q d2, Q e, Q f) {
    if (a * d2 - b * c2 == 0) return;
    r.push_back(LinearChange::make({{{a, b, e}, {c2, d2, f}, {0, 0, 1}}}));
  };
  r.push_back(LinearChange::identity());
  const long cs[] = {1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
  for (long c : cs) push(1, c, 0, 1, 0, 0);  // x -> x + c y
  push(0, 1, 1, 0, 0, 0);                    // swap x, y
  const long tab[] = {0, 1, -1, 2, -2, 3, -3};
  for (long a : tab)
    for (long b : tab)
      for (long c : tab)
        for (long d2 : tab) push(a, b, c, d2, 0, 0);
  const long tr[] = {1, -1, 2, -2};
  for (long e : tr) for (long f : tr) {
    push(1, 0, 0, 1, e, f);
    for (long c : cs) push(1, c, 0, 1, e, f);
  }
  return r;
}

std::pair<LinearChange, Poly> regular_position_transform(const Poly& F, int x,
                                                         int y,
                                                         const Tower& tw) {
  int z = var_id("_hz");  // scratch; affine changes never produce it
  for (const LinearChange& L : change_table()) {
    Poly G = L.is_identity() ? F : L.apply(F, x, y, z);
    if (regular_position_check(G, x, y, tw))
      return {L, normalize_primitive(G)};
  }
  throw ChangeSearchExhausted("no regular-position change in the table");
}

// ---- singular families ----

std::vector<ConjugateFamily> singular_families_infinity(const PlaneCurve& c) {
  Poly cy = uv_coeff(c.F, c.y, c.d);
  if (cy.is_zero() || cy.deg(c.x) > 0 || is_zero_in_tower(cy, c.tw))
    throw NotRegularPosition("coefficient of y^deg is not a nonzero constant");
  int tv = fresh_family_var(c);
  Poly w = subst(subst(subst(c.Fh, c.z, Poly(Q(0))), c.x, Poly(Q(1))), c.y,
                 Poly::var(tv));
  TowerFactorList fl = factor_univariate_ext(normalize_primitive(w), tv, c.tw);
  Poly parts[3] = {deriv(c.Fh, c.x), deriv(c.Fh, c.y), deriv(c.Fh, c.z)};
  std::vector<ConjugateFamily> out;
  for (auto& [mf, e] : fl.factors) {
    (void)e;
    if (mf.deg(tv) < 1) continue;
    ConjugateFamily fam;
    fam.tvar = tv;
    fam.m = mf;
    fam.f1 = Poly(Q(1));
    fam.f2 = Poly::var(tv);
    fam.f3 = Poly();
    fam.location = Location::Infinity;
    bool sing = true;
    for (auto& p : parts)
      if (!vanishes_on_family(p, c, fam)) {
        sing = false;
        break;
      }
    if (!sing) continue;
    canonicalize_family(fam, c.tw);
    out.push_back(fam);
  }
  return out;
}

std::vector<ConjugateFamily> singular_families_affine(const PlaneCurve& c) {
  Poly cy = uv_coeff(c.F, c.y, c.d);
  if (cy.is_zero() || cy.deg(c.x) > 0 || is_zero_in_tower(cy, c.tw))
    throw NotRegularPosition("coefficient of y^deg is not a nonzero constant");
  if (c.d == 1) return {};
  Poly G = c.F, Gx = deriv(c.F, c.x), Gy = deriv(c.F, c.y);
  if (Gx.is_zero())
    throw NotRegularPosition("critical fibers are not single points");
  int tv = fresh_family_var(c);
  std::vector<ConjugateFamily> out;
  int dy = Gy.deg(c.y);
  std::vector<Poly> gc = uv_coeffs(Gy, c.y);
  // emit the family at x = t (m(t) = 0), y = num/den when G_y vanishes there
  auto emit = [&](const Poly& mt, const Poly& num, const Poly& den) {
    Tower etw = c.tw.with_ext(tv, mt);
    Poly W;
    std::vector<Poly> gct;
    for (auto& g : gc) gct.push_back(subst(g, c.x, Poly::var(tv)));
    for (int k = 0; k <= dy; ++k) W += gct[k] * num.pow(k) * den.pow(dy - k);
    if (!is_zero_in_tower(W, etw)) return;
    ConjugateFamily fam;
    fam.tvar = tv;
    fam.m = mt;
    fam.f1 = Poly::var(tv) * den;
    fam.f2 = num;
    fam.f3 = den;
    fam.location = Location::Affine;
    canonicalize_family(fam, c.tw);
    out.push_back(fam);
  };
  // critical x carrying a fiber gcd of multiplicity >= 2: locate the unique
  // point over the extension field (regular position demands uniqueness)
  auto emit_thick = [&](const Poly& thick) {
    for (auto& [p, e] : factor_univariate_ext(thick, c.x, c.tw).factors) {
      (void)e;
      if (p.deg(c.x) < 1) continue;
      Frac B;
      if (!thick_fiber_linear(G, Gx, c.x, c.y, p, tv, c.tw, &B))
        throw NotRegularPosition("critical fibers are not single points");
      emit(normalize_primitive(subst(p, c.x, Poly::var(tv))), B.num, B.den);
    }
  };
  if (Gx.deg(c.y) == 0) {
    Poly fx = Gx, den(Q(1));
    reduce_exts(fx, den, c.tw);
    if (fx.is_zero())
      throw NotRegularPosition("critical fibers are not single points");
    if (fx.deg(c.x) == 0) return {};  // no critical point
    emit_thick(fsquarefree_part(fx, c.x, c.tw));
    return out;
  }
  Poly S = critical_eliminant(G, Gx, c.x, c.y, c.tw);
  if (S.is_zero()) throw NotRegularPosition("curve has a repeated component");
  if (S.deg(c.x) <= 0) return {};
  Poly u, v;
  subresultant1(G, Gx, c.y, u, v);
  Poly ured = u, du(Q(1));
  reduce_exts(ured, du, c.tw);
  Poly thick = ured.is_zero() ? S : fgcd(S, ured, c.x, c.tw);
  Poly thin =
      thick.deg(c.x) > 0 ? field_divexact(S, thick, c.x, c.tw) : S;
  if (thick.deg(c.x) > 0) emit_thick(thick);
  if (thin.deg(c.x) > 0 && !ured.is_zero()) {
    // on the simple part of the critical locus y = B(x) = -v/u from the
    // first subresultant; keep the x where additionally G_y vanishes
    Frac B = fnorm(Frac(-v, u), c.tw);
    Poly W;
    for (int k = 0; k <= dy; ++k)
      W += gc[k] * B.num.pow(k) * B.den.pow(dy - k);
    Poly dW(Q(1));
    reduce_exts(W, dW, c.tw);
    Poly A = W.is_zero() ? thin : fgcd(thin, W, c.x, c.tw);
    if (A.deg(c.x) > 0) {
      for (auto& [mf, e] : factor_univariate_ext(A, c.x, c.tw).factors) {
        (void)e;
        if (mf.deg(c.x) < 1) continue;
        emit(subst(mf, c.x, Poly::var(tv)),
             subst(B.num, c.x, Poly::var(tv)),
             subst(B.den, c.x, Poly::var(tv)));
      }
    }
  }
  return out;
}

// chart for a family: (u, v) the affine directions, w the unit coordinate
static void family_chart(const PlaneCurve& c, const ConjugateFamily& fam,
                         int& u, int& v, int& w) {
  if (!fam.f3.is_zero()) {
    u = c.x; v = c.y; w = c.z;
  } else if (!fam.f1.is_zero()) {
    u = c.y; v = c.z; w = c.x;
  } else {
    u = c.x; v = c.z; w = c.y;
  }
}

static Poly partial(const Poly& p, int u, int i, int v, int j) {
  Poly r = p;
  for (int k = 0; k < i; ++k) r = deriv(r, u);
  for (int k = 0; k < j; ++k) r = deriv(r, v);
  return r;
}

int family_multiplicity(const PlaneCurve& c, ConjugateFamily& fam) {
  if (!vanishes_on_family(c.Fh, c, fam))
    throw FamilyNotOnCurve("defining polynomial does not vanish on family");
  int u, v, w;
  family_chart(c, fam, u, v, w);
  for (int r = 1; r <= c.d; ++r) {
    for (int i = 0; i <= r; ++i) {
      Poly D = partial(c.Fh, u, i, v, r - i);
      if (!vanishes_on_family(D, c, fam)) {
        fam.mult = r;
        fam.mult_witness = {i, r - i};
        return r;
      }
    }
  }
  throw FamilyNotOnCurve("no non-vanishing derivative up to the degree");
}

static Q binom(int n, int k) {
  Q r(1);
  for (int i = 1; i <= k; ++i) r = r * Q(n - k + i) / Q(i);
  return r;
}

// order-r chart partials evaluated at the family, reduced mod m;
// out[i] multiplies the i-th power of the line through u
static std::vector<Poly> tangent_coeffs(const PlaneCurve& c,
                                        const ConjugateFamily& fam, int r,
                                        int u, int v) {
  Tower ftw = family_tower(c.tw, fam);
  std::vector<Poly> a(r + 1), dens(r + 1, Poly(Q(1)));
  for (int i = 0; i <= r; ++i) {
    Poly D = partial(c.Fh, u, i, v, r - i);
    Poly val = subst(D, {{c.x, fam.f1}, {c.y, fam.f2}, {c.z, fam.f3}});
    reduce_exts(val, dens[i], ftw);
    a[i] = binom(r, i) * val;
  }
  // reduction denominators are base-field units but differ per coefficient;
  // rescale to a common one so ratios between coefficients stay exact
  Poly D(Q(1));
  for (int i = 0; i <= r; ++i)
    D = divexact(D * dens[i], gcd(D, dens[i]));
  for (int i = 0; i <= r; ++i) a[i] = a[i] * divexact(D, dens[i]);
  return a;
}

Poly tangent_polynomial(const PlaneCurve& c, const ConjugateFamily& fam) {
  assert(fam.mult >= 1);
  int r = fam.mult;
  int u, v, w;
  family_chart(c, fam, u, v, w);
  const Poly* f[3] = {&fam.f1, &fam.f2, &fam.f3};
  auto coord = [&](int var) -> const Poly& {
    return var == c.x ? *f[0] : var == c.y ? *f[1] : *f[2];
  };
  Poly lu = coord(w) * Poly::var(u) - coord(u) * Poly::var(w);
  Poly lv = coord(w) * Poly::var(v) - coord(v) * Poly::var(w);
  std::vector<Poly> a = tangent_coeffs(c, fam, r, u, v);
  Poly T;
  for (int i = 0; i <= r; ++i) T += a[i] * lu.pow(i) * lv.pow(r - i);
  Tower ftw = family_tower(c.tw, fam);
  Poly den(Q(1));
  reduce_exts(T, den, ftw);
  if (T.is_zero()) return T;
  return normalize_primitive(T);
}

Character family_character(const PlaneCurve& c, ConjugateFamily& fam) {
  if (fam.mult == 0) family_multiplicity(c, fam);
  int r = fam.mult;
  if (r == 1) return fam.character = Character::Ordinary;
  int u, v, w;
  family_chart(c, fam, u, v, w);
  Tower ftw = family_tower(c.tw, fam);
  std::vector<Poly> a = tangent_coeffs(c, fam, r, u, v);
  // the tangent form is sum a_i * U^i * V^(r-i) in independent line
  // coordinates U, V; squarefree iff its dehomogenization b(s) = sum a_i s^i
  // is squarefree over the residue field and V divides at most once
  int sv = var_id("_s");
  Poly b;
  int degb = -1;
  for (int i = 0; i <= r; ++i) {
    if (a[i].is_zero()) continue;
    b += a[i] * Poly::var(sv).pow(i);
    degb = i;
  }
  assert(degb >= 0);
  if (r - degb >= 2) return fam.character = Character::NonOrdinary;
  if (degb >= 2) {
    Poly g = fgcd(b, deriv(b, sv), sv, ftw);
    if (g.deg(sv) > 0) return fam.character = Character::NonOrdinary;
  }
  return fam.character = Character::Ordinary;
}

// ---- standard decomposition ----

static ConjugateFamily map_family_back(const LinearChange& L,
                                       const ConjugateFamily& fam,
                                       const Tower& tw) {
  ConjugateFamily out = fam;
  if (!L.is_identity()) {
    auto p = L.map_point(fam.f1, fam.f2, fam.f3);
    out.f1 = p[0];
    out.f2 = p[1];
    out.f3 = p[2];
    canonicalize_family(out, tw);
    out.location =
        out.f3.is_zero() ? Location::Infinity : Location::Affine;
  }
  return out;
}

StandardDecomposition standard_decomposition(const PlaneCurve& c) {
  auto [L, G] = regular_position_transform(c.F, c.x, c.y, c.tw);
  PlaneCurve cc = L.is_identity() ? c : make_curve(G, c.x, c.y, c.z, c.tw);
  StandardDecomposition sd;
  sd.L = L;
  std::vector<ConjugateFamily> fams = singular_families_affine(cc);
  std::vector<ConjugateFamily> inf = singular_families_infinity(cc);
  fams.insert(fams.end(), inf.begin(), inf.end());
  for (ConjugateFamily& fam : fams) {
    family_multiplicity(cc, fam);
    assert(fam.mult >= 2);
    family_character(cc, fam);
    ConjugateFamily back = map_family_back(L, fam, c.tw);
    (back.location == Location::Affine ? sd.affine : sd.infinity)
        .push_back(back);
  }
  return sd;
}

}  // namespace cal
