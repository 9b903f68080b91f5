#include "cal/param.hh"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

namespace cal {

// ---------------------------------------------------------------------------
// linear algebra over the tower field

// Gauss-Jordan nullspace basis; rows may be dependent or redundant
static std::vector<std::vector<Frac>> nullspace(std::vector<std::vector<Frac>> a,
                                                int ncols, const Tower& tw) {
  std::vector<int> pivots;
  size_t prow = 0;
  for (int col = 0; col < ncols && prow < a.size(); ++col) {
    size_t pr = prow;
    for (; pr < a.size(); ++pr) {
      a[pr][col] = fnorm(a[pr][col], tw);
      if (!a[pr][col].is_zero()) break;
    }
    if (pr == a.size()) continue;
    std::swap(a[prow], a[pr]);
    Frac inv = finv(a[prow][col], tw);
    for (int cc = col; cc < ncols; ++cc)
      a[prow][cc] = fnorm(fmul(a[prow][cc], inv, tw), tw);
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == prow) continue;
      Frac f = fnorm(a[r][col], tw);
      if (f.is_zero()) continue;
      for (int cc = col; cc < ncols; ++cc)
        a[r][cc] = fnorm(fsub(a[r][cc], fmul(f, a[prow][cc], tw), tw), tw);
    }
    pivots.push_back(col);
    ++prow;
  }
  std::vector<bool> isp(ncols, false);
  for (int c : pivots) isp[c] = true;
  std::vector<std::vector<Frac>> basis;
  for (int col = 0; col < ncols; ++col) {
    if (isp[col]) continue;
    std::vector<Frac> v(ncols, Frac(Q(0)));
    v[col] = Frac(Q(1));
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      v[pivots[pi]] = fneg(fnorm(a[pi][col], tw));
    basis.push_back(std::move(v));
  }
  return basis;
}

// clear denominators of a solution vector against a monomial list
static Poly combine(const std::vector<Poly>& monos, const std::vector<Frac>& v) {
  Poly D(Q(1));
  for (auto& f : v)
    if (!f.is_zero()) D = divexact(D * f.den, gcd(D, f.den));
  Poly out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out = out + v[i].num * divexact(D, v[i].den) * monos[i];
  return normalize_primitive(out);
}

// append one row per monomial in variables outside the field and outside the
// unknowns; W must be linear homogeneous in the unknowns
static void split_rows(const Poly& W, const std::map<int, int>& lampos,
                       const Tower& tw,
                       std::map<std::string, std::vector<Poly>>& rows) {
  int ncols = (int)lampos.size();
  // distinct conditions must never share a row, even with equal keys
  static long salt = 0;
  std::string pre = std::to_string(salt++) + "|";
  for (auto& [mo, c] : W.terms()) {
    int lam = -1;
    Poly coeff(c);
    std::vector<std::pair<int, int>> key;
    for (auto& [v, e] : mo.e) {
      auto it = lampos.find(v);
      if (it != lampos.end()) {
        assert(e == 1 && lam < 0);
        lam = it->second;
      } else if (tw.is_field_var(v)) {
        coeff = coeff * Poly::var(v, e);
      } else {
        key.push_back({v, e});
      }
    }
    assert(lam >= 0);
    std::string ks = pre;
    for (auto& [v, e] : key) ks += var_name(v) + "^" + std::to_string(e) + " ";
    auto& row = rows[ks];
    if (row.empty()) row.resize(ncols);
    row[lam] = row[lam] + coeff;
  }
}

static std::vector<std::vector<Frac>> to_matrix(
    const std::map<std::string, std::vector<Poly>>& rows, int ncols) {
  std::vector<std::vector<Frac>> m;
  for (auto& [k, r] : rows) {
    (void)k;
    std::vector<Frac> fr(ncols);
    for (int i = 0; i < ncols; ++i) fr[i] = Frac(r[i]);
    m.push_back(std::move(fr));
  }
  return m;
}

// ---------------------------------------------------------------------------
// adjoint linear system

static Poly dpow(Poly p, int v, int n) {
  for (int i = 0; i < n; ++i) p = deriv(p, v);
  return p;
}

static Poly zpow_shift(const Poly& p, int z, int drop) {
  auto cs = uv_coeffs(p, z);
  Poly out;
  for (int k = drop; k < (int)cs.size(); ++k) {
    Poly t = cs[k];
    if (k > drop) t = t * Poly::var(z, k - drop);
    out = out + t;
  }
  return out;
}

// transport an adjoint template through one quadratic transformation: the
// terms of z-degree below r-1 vanish modulo the multiplicity conditions
// already imposed at the blown-up family, so dropping them is exact on the
// solution space
static Poly step_transport(const Poly& N, const FieldChange& L, int r, int x,
                           int y, int z, const Tower& ftw) {
  Poly N1 = L.apply(N, x, y, z, ftw);
  std::map<int, Poly> q{{x, Poly::var(y) * Poly::var(z)},
                        {y, Poly::var(x) * Poly::var(z)},
                        {z, Poly::var(x) * Poly::var(y)}};
  return zpow_shift(subst(N1, q), z, r - 1);
}

// multiplicity >= r-1 at the family: all order-(r-2) partials vanish (lower
// orders follow from Euler's identity, the template being homogeneous)
static void family_conditions(const PlaneCurve& c, const ConjugateFamily& fam,
                              const Tower& node_tw, const Poly& N,
                              const std::map<int, int>& lampos,
                              std::map<std::string, std::vector<Poly>>& rows) {
  int r = fam.mult;
  if (r < 2) return;
  Tower ftw = family_tower(node_tw, fam);
  std::map<int, Poly> at{{c.x, fam.f1}, {c.y, fam.f2}, {c.z, fam.f3}};
  for (int i = 0; i + 2 <= r; ++i)
    for (int j = 0; i + j + 2 <= r; ++j) {
      int k = r - 2 - i - j;
      Poly W = subst(dpow(dpow(dpow(N, c.x, i), c.y, j), c.z, k), at);
      Poly den(Q(1));
      reduce_exts(W, den, ftw);
      if (W.is_zero()) continue;
      split_rows(W, lampos, c.tw, rows);
    }
}

static void walk_conditions(const PlaneCurve& c, const GraphNode& node,
                            const Poly& N, const std::map<int, int>& lampos,
                            std::map<std::string, std::vector<Poly>>& rows) {
  family_conditions(c, node.fam, node.tw, N, lampos, rows);
  if (!node.blowup || node.children.empty()) return;
  Tower ftw = family_tower(node.tw, node.fam);
  Poly N2 = step_transport(N, node.blowup->L, node.fam.mult, c.x, c.y, c.z, ftw);
  for (auto& ch : node.children) walk_conditions(c, ch, N2, lampos, rows);
}

static std::vector<std::array<int, 3>> degree_monomials(int e) {
  std::vector<std::array<int, 3>> out;
  for (int i = e; i >= 0; --i)
    for (int j = e - i; j >= 0; --j) out.push_back({i, j, e - i - j});
  return out;
}

AdjointSystem adjoint_system(const PlaneCurve& c, const NeighborGraph& g,
                             int degree) {
  auto exps = degree_monomials(degree);
  std::vector<Poly> monos;
  std::map<int, int> lampos;
  Poly H;
  for (size_t i = 0; i < exps.size(); ++i) {
    Poly m(Q(1));
    if (exps[i][0]) m = m * Poly::var(c.x, exps[i][0]);
    if (exps[i][1]) m = m * Poly::var(c.y, exps[i][1]);
    if (exps[i][2]) m = m * Poly::var(c.z, exps[i][2]);
    monos.push_back(m);
    int lv = var_id("_A" + std::to_string(i));
    lampos[lv] = (int)i;
    H = H + Poly::var(lv) * m;
  }
  std::map<std::string, std::vector<Poly>> rows;
  for (auto& root : g.roots) walk_conditions(c, root, H, lampos, rows);
  auto sol = nullspace(to_matrix(rows, (int)monos.size()), (int)monos.size(),
                       c.tw);
  AdjointSystem out;
  out.degree = degree;
  for (auto& v : sol) out.basis.push_back(combine(monos, v));
  return out;
}

// ---------------------------------------------------------------------------
// birational degree reduction

// value p / lc^s modulo the fiber polynomial; the common scaling by powers of
// the leading coefficient is tracked so rows can be cleared uniformly
struct ModVal {
  Poly p;
  int s = 0;
};

static void redmod(Poly& p, int& s, const Poly& my, int ov, const Poly& lcmy) {
  int dm = my.deg(ov);
  while (p.deg(ov) >= dm) {
    int k = p.deg(ov);
    Poly c = uv_coeff(p, ov, k);
    Poly shift = k > dm ? Poly::var(ov, k - dm) * my : my;
    p = p * lcmy - c * shift;
    ++s;
    if (p.is_zero()) return;
  }
}

static ModVal mulmod(const ModVal& a, const ModVal& b, const Poly& my, int ov,
                     const Poly& lcmy) {
  ModVal r{a.p * b.p, a.s + b.s};
  redmod(r.p, r.s, my, ov, lcmy);
  return r;
}

// affine image polynomial of the curve under the adjoint triple, found by
// interpolation from fiber points; empty when the degree-e solution space is
// not one-dimensional or the pullback fails to vanish on the curve
static Poly image_by_interpolation(const PlaneCurve& c,
                                   const std::array<Poly, 3>& phi, int e,
                                   int u, int v) {
  std::array<Poly, 3> f;
  for (int i = 0; i < 3; ++i) f[i] = subst(phi[i], c.z, Poly(Q(1)));
  int fx = c.F.deg(c.y) >= 1 ? c.x : c.y;
  int ov = fx == c.x ? c.y : c.x;
  std::vector<std::array<int, 2>> exps;  // (i,j) with i+j <= e
  for (int i = e; i >= 0; --i)
    for (int j = e - i; j >= 0; --j) exps.push_back({i, j});
  int ncols = (int)exps.size();
  std::map<int, int> lampos;
  for (int i = 0; i < ncols; ++i) lampos[var_id("_B" + std::to_string(i))] = i;
  std::map<std::string, std::vector<Poly>> rows;
  long points = 0;
  static const long sched[] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6};
  for (long x0 : sched) {
    Poly my = subst(c.F, fx, Poly(Q(x0)));
    Poly dmy(Q(1));
    reduce_exts(my, dmy, c.tw);
    if (my.deg(ov) < 1) continue;
    my = normalize_primitive(my);
    Poly lcmy = uv_lead(my, ov);
    // powers of the substituted adjoints modulo the fiber
    std::array<std::vector<ModVal>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      Poly fi = subst(f[i], fx, Poly(Q(x0)));
      Poly dfi(Q(1));
      reduce_exts(fi, dfi, c.tw);
      ModVal base{fi, 0};
      redmod(base.p, base.s, my, ov, lcmy);
      pw[i].push_back({Poly(Q(1)), 0});
      for (int k = 1; k <= e; ++k)
        pw[i].push_back(mulmod(pw[i].back(), base, my, ov, lcmy));
    }
    std::vector<ModVal> vals;
    int smax = 0;
    for (auto& ex : exps) {
      ModVal m = mulmod(mulmod(pw[0][ex[0]], pw[1][ex[1]], my, ov, lcmy),
                        pw[2][e - ex[0] - ex[1]], my, ov, lcmy);
      smax = std::max(smax, m.s);
      vals.push_back(std::move(m));
    }
    Poly W;
    for (int i = 0; i < ncols; ++i) {
      Poly cp = vals[i].p;
      for (int k = vals[i].s; k < smax; ++k) cp = cp * lcmy;
      W = W + Poly::var(var_id("_B" + std::to_string(i))) * cp;
    }
    if (!W.is_zero()) split_rows(W, lampos, c.tw, rows);
    points += my.deg(ov);
    if (points > (long)e * c.d) {
      auto sol = nullspace(to_matrix(rows, ncols), ncols, c.tw);
      if (sol.size() != 1) {
        if (points > (long)e * c.d + 2 * c.d) return Poly();
        continue;
      }
      std::vector<Poly> monos;
      for (auto& ex : exps) {
        Poly m(Q(1));
        if (ex[0]) m = m * Poly::var(u, ex[0]);
        if (ex[1]) m = m * Poly::var(v, ex[1]);
        monos.push_back(m);
      }
      Poly img = combine(monos, sol[0]);
      if (deg_in(img, {u, v}) != e) return Poly();
      // verify: the pullback of the image polynomial vanishes on the curve
      int w = var_id("_w");
      Poly gh = homogenize(img, u, v, w, e);
      Poly S = subst(gh, {{u, f[0]}, {v, f[1]}, {w, f[2]}});
      Poly ds(Q(1));
      reduce_exts(S, ds, c.tw);
      int mv = c.F.deg(c.y) >= 1 ? c.y : c.x;
      Poly quo, rem;
      pseudo_divmod(S, c.F, mv, quo, rem);
      if (!is_zero_in_tower(rem, c.tw)) return Poly();
      return img;
    }
  }
  return Poly();
}

static std::vector<std::array<Poly, 3>> triple_schedule(
    const std::vector<Poly>& b) {
  std::vector<Poly> cand = b;
  size_t k = b.size();
  for (size_t i = 0; i < k && cand.size() < 12; ++i)
    for (size_t j = i + 1; j < k && cand.size() < 12; ++j) {
      cand.push_back(b[i] + b[j]);
      cand.push_back(b[i] - b[j]);
      cand.push_back(b[i] + Poly(Q(2)) * b[j]);
    }
  std::vector<std::array<Poly, 3>> out;
  for (size_t i = 0; i < cand.size() && out.size() < 30; ++i)
    for (size_t j = i + 1; j < cand.size() && out.size() < 30; ++j)
      for (size_t l = j + 1; l < cand.size() && out.size() < 30; ++l)
        out.push_back({cand[i], cand[j], cand[l]});
  return out;
}

HHStep hilbert_hurwitz_step(const PlaneCurve& c, const AdjointSystem& adj) {
  if (c.d <= 2)
    throw std::invalid_argument("degree reduction needs degree > 2");
  int e = c.d - 2;
  assert(adj.degree == e);
  if (adj.basis.size() < 2)
    throw RetryExhausted("adjoint system has too few independent forms");
  int u = var_id("_u"), v = var_id("_v");
  for (auto& tri : triple_schedule(adj.basis)) {
    Poly img = image_by_interpolation(c, tri, e, u, v);
    if (img.is_zero()) continue;
    Poly M = subst(img, {{u, Poly::var(c.x)}, {v, Poly::var(c.y)}});
    HHStep st;
    st.phi = tri;
    st.image = make_curve(M, c.x, c.y, c.z, c.tw);
    if (st.image.d != e) continue;
    return st;
  }
  throw RetryExhausted("no birational adjoint triple in the schedule");
}

// ---------------------------------------------------------------------------
// parametrization of lines and conics

int param_deg(const RatParam& P) {
  int d = 0;
  for (const Poly* p : {&P.p1, &P.q1, &P.p2, &P.q2})
    d = std::max(d, p->deg(P.tvar));
  return d;
}

static void rp_reduce(RatParam& P) {
  for (auto [pp, qq] : {std::pair<Poly*, Poly*>{&P.p1, &P.q1},
                        std::pair<Poly*, Poly*>{&P.p2, &P.q2}}) {
    Poly dp(Q(1)), dq(Q(1));
    reduce_exts(*pp, dp, P.tw);
    reduce_exts(*qq, dq, P.tw);
    // cross-multiply the introduced denominators to keep the value
    *pp = *pp * dq;
    *qq = *qq * dp;
    if (pp->is_zero()) {
      *qq = Poly(Q(1));
      continue;
    }
    Poly g = fgcd(*pp, *qq, P.tvar, P.tw);
    if (g.deg(P.tvar) >= 1) {
      *pp = field_divexact(*pp, g, P.tvar, P.tw);
      *qq = field_divexact(*qq, g, P.tvar, P.tw);
    }
    Poly gc = gcd(*pp, *qq);
    if (!gc.is_constant()) {
      *pp = divexact(*pp, gc);
      *qq = divexact(*qq, gc);
    }
    // joint rational rescaling keeps the fraction's value
    Q cq = rational_content(*qq);
    *pp = Poly(Q(1) / cq) * *pp;
    *qq = Poly(Q(1) / cq) * *qq;
  }
}

RatParam parametrize_line(const PlaneCurve& c) {
  assert(c.d == 1);
  RatParam P;
  P.tvar = var_id("_t");
  P.tw = c.tw;
  Poly A = uv_coeff(c.F, c.x, 1);
  Poly B = uv_coeff(uv_coeff(c.F, c.x, 0), c.y, 1);
  Poly C = uv_coeff(uv_coeff(c.F, c.x, 0), c.y, 0);
  Poly t = Poly::var(P.tvar);
  if (!is_zero_in_tower(B, c.tw)) {
    P.p1 = t;
    P.q1 = Poly(Q(1));
    P.p2 = Poly(Q(0)) - (A * t + C);
    P.q2 = B;
  } else {
    P.p1 = Poly(Q(0)) - C;
    P.q1 = A;
    P.p2 = t;
    P.q2 = Poly(Q(1));
  }
  rp_reduce(P);
  properness_check(P);
  return P;
}

// projective point of the conic, over the curve's tower or one square root up
struct ConicPoint {
  std::array<Frac, 3> h;
  Tower tw;
};

// rational root of a univariate polynomial over the tower, if any
static bool linear_root(const Poly& q, int w, const Tower& tw, Frac* root) {
  if (q.deg(w) == 1) {
    *root = fnorm(Frac(Poly(Q(0)) - uv_coeff(q, w, 0), uv_coeff(q, w, 1)), tw);
    return true;
  }
  if (q.deg(w) < 1) return false;
  for (auto& [fac, mult] : factor_over_tower(q, tw).factors) {
    (void)mult;
    if (fac.deg(w) == 1) {
      *root =
          fnorm(Frac(Poly(Q(0)) - uv_coeff(fac, w, 0), uv_coeff(fac, w, 1)), tw);
      return true;
    }
  }
  return false;
}

static int dl_counter = 0;

static std::optional<ConicPoint> conic_point(const PlaneCurve& c) {
  const Tower& tw = c.tw;
  Frac r;
  // intersections with the axes and small shifted lines
  struct Probe {
    int fixv;
    long val;
  };
  std::vector<Probe> probes{{c.x, 0}, {c.y, 0}};
  for (long s : {1, -1, 2, -2}) {
    probes.push_back({c.x, s});
    probes.push_back({c.y, s});
  }
  // remember the first honest quadratic probe for the square-root fallback
  std::optional<Probe> quad;
  Poly quad_q;
  auto try_probe = [&](const Probe& pr, std::optional<ConicPoint>* hit) {
    int w = pr.fixv == c.x ? c.y : c.x;
    Poly q = subst(c.F, pr.fixv, Poly(Q(pr.val)));
    Poly dq(Q(1));
    reduce_exts(q, dq, tw);
    if (linear_root(q, w, tw, &r)) {
      ConicPoint p;
      p.tw = tw;
      p.h[pr.fixv == c.x ? 0 : 1] = Frac(Q(pr.val));
      p.h[pr.fixv == c.x ? 1 : 0] = r;
      p.h[2] = Frac(Q(1));
      *hit = p;
      return true;
    }
    if (q.deg(w) == 2 && !quad &&
        !is_zero_in_tower(uv_coeff(q, w, 2), tw)) {
      quad = pr;
      quad_q = q;
    }
    return false;
  };
  std::optional<ConicPoint> hit;
  if (try_probe(probes[0], &hit)) return hit;
  if (try_probe(probes[1], &hit)) return hit;
  // points at infinity
  {
    Poly bin = subst(c.Fh, c.z, Poly(Q(0)));
    Poly db(Q(1));
    reduce_exts(bin, db, tw);
    Poly b = subst(bin, c.y, Poly(Q(1)));
    if (is_zero_in_tower(uv_coeff(bin, c.y, 2), tw)) {
      ConicPoint p;
      p.tw = tw;
      p.h = {Frac(Q(0)), Frac(Q(1)), Frac(Q(0))};
      return p;
    }
    if (linear_root(b, c.x, tw, &r)) {
      ConicPoint p;
      p.tw = tw;
      p.h = {r, Frac(Q(1)), Frac(Q(0))};
      return p;
    }
  }
  for (size_t i = 2; i < probes.size(); ++i)
    if (try_probe(probes[i], &hit)) return hit;
  // no rational point: adjoin a square root of a probe discriminant
  if (!quad) return std::nullopt;
  int w = quad->fixv == c.x ? c.y : c.x;
  Frac c2(uv_coeff(quad_q, w, 2)), c1(uv_coeff(quad_q, w, 1)),
      c0(uv_coeff(quad_q, w, 0));
  Frac disc = fnorm(
      fsub(fmul(c1, c1, tw), fmul(Frac(Q(4)), fmul(c2, c0, tw), tw), tw), tw);
  int dl = var_id("_dl" + std::to_string(dl_counter++));
  Poly minp = disc.den * Poly::var(dl, 2) - disc.num;
  Tower tw2 = tw.with_ext(dl, normalize_primitive(minp));
  Frac root = fdiv(fadd(fneg(c1), Frac(Poly::var(dl)), tw2),
                   fmul(Frac(Q(2)), c2, tw2), tw2);
  ConicPoint p;
  p.tw = tw2;
  p.h[quad->fixv == c.x ? 0 : 1] = Frac(Q(quad->val));
  p.h[quad->fixv == c.x ? 1 : 0] = root;
  p.h[2] = Frac(Q(1));
  return p;
}

RatParam parametrize_conic(const PlaneCurve& c) {
  assert(c.d == 2);
  auto pt = conic_point(c);
  if (!pt) throw RetryExhausted("no conic point from probes or a square root");
  const Tower& tw = pt->tw;
  RatParam P;
  P.tvar = var_id("_t");
  P.tw = tw;
  Poly t = Poly::var(P.tvar);
  if (!fnorm(pt->h[2], tw).is_zero()) {
    // affine point: lines x = x0 + s, y = y0 + t s
    Frac x0 = fdiv(pt->h[0], pt->h[2], tw), y0 = fdiv(pt->h[1], pt->h[2], tw);
    Poly d = x0.den * y0.den;
    Poly n1 = x0.num * y0.den, n2 = y0.num * x0.den;
    int lm = var_id("_lm");
    Poly Ms = subst(c.Fh, {{c.x, n1 + d * Poly::var(lm)},
                           {c.y, n2 + d * t * Poly::var(lm)},
                           {c.z, d}});
    Poly dd(Q(1));
    reduce_exts(Ms, dd, tw);
    assert(is_zero_in_tower(uv_coeff(Ms, lm, 0), tw));
    Poly A = uv_coeff(Ms, lm, 2), B = uv_coeff(Ms, lm, 1);
    P.p1 = n1 * A - d * B;
    P.q1 = d * A;
    P.p2 = n2 * A - d * t * B;
    P.q2 = d * A;
  } else if (!fnorm(pt->h[0], tw).is_zero()) {
    // infinite point of slope a/cd: lines y = (a/cd) x + t
    Frac s = fdiv(pt->h[1], pt->h[0], tw);
    Poly a = s.num, cd = s.den;
    Poly Ms = subst(c.Fh, {{c.x, cd * Poly::var(c.x)},
                           {c.y, a * Poly::var(c.x) + cd * t},
                           {c.z, cd}});
    Poly dd(Q(1));
    reduce_exts(Ms, dd, tw);
    assert(is_zero_in_tower(uv_coeff(Ms, c.x, 2), tw));
    Poly U = uv_coeff(Ms, c.x, 1), V = uv_coeff(Ms, c.x, 0);
    P.p1 = Poly(Q(0)) - V;
    P.q1 = U;
    P.p2 = cd * t * U - a * V;
    P.q2 = cd * U;
  } else {
    // (0:1:0): vertical lines x = t
    Poly Ms = subst(c.F, c.x, t);
    Poly dd(Q(1));
    reduce_exts(Ms, dd, tw);
    assert(Ms.deg(c.y) == 1);
    P.p1 = t;
    P.q1 = Poly(Q(1));
    P.p2 = Poly(Q(0)) - uv_coeff(Ms, c.y, 0);
    P.q2 = uv_coeff(Ms, c.y, 1);
  }
  rp_reduce(P);
  properness_check(P);
  return P;
}

// ---------------------------------------------------------------------------
// pullback through one reduction step

// product of the irreducible factors that genuinely move with t and carry the
// fiber variable
static Poly moving_part(const Poly& g, int xv, int tv, const Tower& tw) {
  Poly out(Q(1));
  for (auto& [fac, mult] : factor_over_tower(g, tw).factors) {
    (void)mult;
    if (fac.deg(xv) >= 1 && fac.deg(tv) >= 1) out = out * fac;
  }
  return out;
}

RatParam pullback_param(const PlaneCurve& domain, const HHStep& step,
                        const RatParam& q) {
  const Tower& tw = q.tw;
  int t = q.tvar;
  std::array<Poly, 3> qs = {q.p1 * q.q2, q.p2 * q.q1, q.q1 * q.q2};
  std::array<Poly, 3> f;
  for (int i = 0; i < 3; ++i) f[i] = subst(step.phi[i], domain.z, Poly(Q(1)));
  std::vector<Poly> eqs;
  for (auto [a, b] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
    Poly E = f[a] * qs[b] - f[b] * qs[a];
    Poly de(Q(1));
    reduce_exts(E, de, tw);
    if (!E.is_zero()) eqs.push_back(normalize_primitive(E));
  }
  if (eqs.size() < 2)
    throw BasePointDegeneracy("the adjoint map degenerates on the image");
  auto solve_coord = [&](int keep, int elim) -> std::array<Poly, 2> {
    Poly A = resultant(domain.F, eqs[0], elim);
    Poly B = resultant(domain.F, eqs[1], elim);
    if (A.is_zero() || B.is_zero())
      throw BasePointDegeneracy("degenerate elimination in the pullback");
    Poly g = fgcd(A, B, keep, tw);
    g = fsquarefree_part(g, keep, tw);
    Poly mv = moving_part(g, keep, t, tw);
    if (mv.deg(keep) != 1)
      throw BasePointDegeneracy("the moving fiber is not a single point");
    return {Poly(Q(0)) - uv_coeff(mv, keep, 0), uv_coeff(mv, keep, 1)};
  };
  auto [p1, q1] = solve_coord(domain.x, domain.y);
  auto [p2, q2] = solve_coord(domain.y, domain.x);
  RatParam P;
  P.tvar = t;
  P.tw = tw;
  P.p1 = p1;
  P.q1 = q1;
  P.p2 = p2;
  P.q2 = q2;
  rp_reduce(P);
  Poly W = subst(domain.Fh,
                 {{domain.x, P.p1 * P.q2}, {domain.y, P.p2 * P.q1},
                  {domain.z, P.q1 * P.q2}});
  if (!is_zero_in_tower(W, tw))
    throw BasePointDegeneracy("pullback point is not on the curve");
  return P;
}

// ---------------------------------------------------------------------------
// properness, critical point, full pipeline

bool properness_check(RatParam& P) {
  int h = var_id("_h");
  int t = P.tvar;
  auto G = [&](const Poly& p, const Poly& q) {
    return subst(p, t, Poly::var(h)) * q - p * subst(q, t, Poly::var(h));
  };
  Poly G1 = G(P.p1, P.q1), G2 = G(P.p2, P.q2);
  Poly d1(Q(1)), d2(Q(1));
  reduce_exts(G1, d1, P.tw);
  reduce_exts(G2, d2, P.tw);
  Poly g;
  if (G1.is_zero() && G2.is_zero()) {
    P.proper = false;
    return false;
  }
  if (G1.is_zero())
    g = G2;
  else if (G2.is_zero())
    g = G1;
  else
    g = fgcd(G1, G2, t, P.tw);
  P.properness_gcd = normalize_primitive(g);
  P.proper = g.deg(t) == 1;
  return P.proper;
}

std::optional<std::array<Frac, 2>> critical_point(const RatParam& P) {
  int t = P.tvar;
  if (P.p1.deg(t) > P.q1.deg(t) || P.p2.deg(t) > P.q2.deg(t))
    return std::nullopt;
  Frac a1 = fnorm(Frac(uv_coeff(P.p1, t, P.q1.deg(t)), uv_lead(P.q1, t)), P.tw);
  Frac a2 = fnorm(Frac(uv_coeff(P.p2, t, P.q2.deg(t)), uv_lead(P.q2, t)), P.tw);
  return std::array<Frac, 2>{a1, a2};
}

RatParam parametrize(const PlaneCurve& c) {
  if (genus(c) != 0) throw NotGenusZero("the curve has positive genus");
  PlaneCurve cur = c;
  std::vector<PlaneCurve> domains;
  std::vector<HHStep> chain;
  while (cur.d > 2) {
    NeighborGraph g = neighbor_graph(cur);
    AdjointSystem adj = adjoint_system(cur, g, cur.d - 2);
    HHStep st = hilbert_hurwitz_step(cur, adj);
    domains.push_back(cur);
    chain.push_back(st);
    cur = st.image;
  }
  RatParam P = cur.d == 1 ? parametrize_line(cur) : parametrize_conic(cur);
  for (int i = (int)chain.size() - 1; i >= 0; --i)
    P = pullback_param(domains[i], chain[i], P);
  properness_check(P);
  assert(P.proper);
  assert(param_deg(P) == std::max(c.F.deg(c.x), c.F.deg(c.y)));
  return P;
}

}  // namespace cal
