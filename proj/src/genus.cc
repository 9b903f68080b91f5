#include "cal/genus.hh"

#include <cassert>
#include <climits>
#include <string>

namespace cal {

using FM = std::array<std::array<Frac, 3>, 3>;

// globally fresh variables for scratch minpolys and neighborhood parameters;
// never reused, so towers and point descriptions from different blowups
// cannot collide
static int fresh_var() {
  static int counter = 0;
  return var_id("_g" + std::to_string(counter++));
}

static Poly lcm_pp(const Poly& a, const Poly& b) {
  return divexact(a * b, gcd(a, b));
}

// ---- field-coefficient changes of coordinates ----

FieldChange FieldChange::make(const FM& mat, const Tower& tw) {
  FieldChange c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.m[i][j] = fnorm(mat[i][j], tw);
  // cyclic cofactors: inv[j][i] = cof(i,j) / det
  auto cof = [&](int i, int j) -> Frac {
    int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return fsub(fmul(c.m[i1][j1], c.m[i2][j2], tw),
                fmul(c.m[i1][j2], c.m[i2][j1], tw), tw);
  };
  Frac det;
  for (int j = 0; j < 3; ++j)
    det = fadd(det, fmul(c.m[0][j], cof(0, j), tw), tw);
  assert(!det.is_zero());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.inv[j][i] = fdiv(cof(i, j), det, tw);
  return c;
}

Poly FieldChange::apply(const Poly& g, int x, int y, int z,
                        const Tower& tw) const {
  // denominators are field units; clearing them scales the result by a unit
  Poly D(Q(1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D = lcm_pp(D, m[i][j].den);
  int v[3] = {x, y, z};
  std::map<int, Poly> sub;
  for (int i = 0; i < 3; ++i) {
    Poly row;
    for (int j = 0; j < 3; ++j)
      row += m[i][j].num * divexact(D, m[i][j].den) * Poly::var(v[j]);
    sub[v[i]] = row;
  }
  Poly r = subst(g, sub);
  Poly den(Q(1));
  reduce_exts(r, den, tw);
  return r.is_zero() ? r : normalize_primitive(r);
}

// rows of M applied to a point with polynomial coordinates; one common
// denominator keeps the projective scaling uniform
static std::array<Poly, 3> mat_point(const FM& M, const std::array<Poly, 3>& p) {
  Poly D(Q(1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D = lcm_pp(D, M[i][j].den);
  std::array<Poly, 3> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i] += M[i][j].num * divexact(D, M[i][j].den) * p[j];
  return r;
}

// ---- singular points that must stay off the fundamental triangle ----

// projective point with coordinates over the tower, optionally algebraic in a
// scratch variable with (possibly reducible, squarefree) minimal polynomial
struct OtherPoint {
  std::array<Poly, 3> c;
  int svar = -1;
  Poly minp;
};

// true when no conjugate of o has a zero coordinate after pulling back by L,
// i.e. o stays off the lines x=0, y=0, z=0 of the transformed frame
static bool off_triangle(const FieldChange& L, const OtherPoint& o,
                         const Tower& tw) {
  auto w = mat_point(L.inv, o.c);
  for (int i = 0; i < 3; ++i) {
    Poly n = w[i], d(Q(1));
    reduce_exts(n, d, tw);
    if (n.is_zero()) return false;
    if (o.svar >= 0 && n.has_var(o.svar)) {
      Poly g = fgcd(o.minp, n, o.svar, tw);
      if (g.deg(o.svar) > 0) return false;
    }
  }
  return true;
}

static OtherPoint rational_point(int a, int b, int c) {
  OtherPoint o;
  o.c = {Poly(Q(a)), Poly(Q(b)), Poly(Q(c))};
  return o;
}

// conjugates of the blowup center within its own family: roots of m(s)/(s-t)
static void add_conjugates(std::vector<OtherPoint>& others,
                           const ConjugateFamily& fam, const Tower& ftw) {
  if (fam.m.deg(fam.tvar) < 2) return;
  int s = fresh_var();
  Poly sv = Poly::var(s);
  OtherPoint o;
  o.svar = s;
  o.minp = field_divexact(subst(fam.m, fam.tvar, sv),
                          sv - Poly::var(fam.tvar), s, ftw);
  o.c = {subst(fam.f1, fam.tvar, sv), subst(fam.f2, fam.tvar, sv),
         subst(fam.f3, fam.tvar, sv)};
  others.push_back(o);
}

// ---- the quadratic transformation ----

// changes fixing (0:0:1), composed after the base change that moves the
// center there; ordered so simple shears are tried first
static const std::vector<std::array<int, 6>>& adjuster_table() {
  static const std::vector<std::array<int, 6>> table = [] {
    std::vector<std::array<int, 4>> blocks;
    blocks.push_back({1, 0, 0, 1});
    for (int c : {1, -1, 2, -2, 3, -3}) {
      blocks.push_back({1, c, 0, 1});
      blocks.push_back({1, 0, c, 1});
    }
    blocks.push_back({0, 1, 1, 0});
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c)
          for (int d = -2; d <= 2; ++d)
            if (a * d - b * c != 0) blocks.push_back({a, b, c, d});
    std::vector<std::array<int, 6>> t;
    for (auto [e, f] : std::initializer_list<std::array<int, 2>>{
             {0, 0}, {1, 1}, {1, -1}, {-1, 1}, {2, 1}, {1, 2}, {-2, 1}})
      for (auto& b : blocks) t.push_back({b[0], b[1], b[2], b[3], e, f});
    return t;
  }();
  return table;
}

static int strip_var(Poly& p, int v) {
  int k = 0;
  Poly q;
  while (!p.is_zero() && try_divexact(p, Poly::var(v), q)) {
    p = q;
    ++k;
  }
  return k;
}

// the center is at (0:0:1) with multiplicity r; require the tangent cone off
// the lines x=0, y=0 and the vertices (1:0:0), (0:1:0) off the curve
static bool frame_ok(const Poly& G1, int x, int y, int z, int r, int d,
                     const Tower& tw) {
  if (is_zero_in_tower(uv_coeff(G1, x, d), tw)) return false;
  if (is_zero_in_tower(uv_coeff(G1, y, d), tw)) return false;
  Poly Ga = subst(G1, z, Poly(Q(1)));
  int rmin = INT_MAX;
  for (auto& [mo, c] : Ga.terms()) {
    (void)c;
    int md = mo.deg(x) + mo.deg(y);
    if (md < rmin) rmin = md;
  }
  assert(rmin == r);  // linear changes preserve the multiplicity
  Poly Tr;
  for (auto& [mo, c] : Ga.terms())
    if (mo.deg(x) + mo.deg(y) == r) {
      Poly t(c);
      for (auto& [v, e] : mo.e) t = t * Poly::var(v, e);
      Tr += t;
    }
  Poly ax = uv_coeff(uv_coeff(Tr, x, r), y, 0);
  Poly ay = uv_coeff(uv_coeff(Tr, y, r), x, 0);
  if (is_zero_in_tower(ax, tw)) return false;
  if (is_zero_in_tower(ay, tw)) return false;
  return true;
}

// search the change table for a frame meeting all exclusion conditions, then
// apply the Cremona map (yz : xz : xy) and split off the monomial factor
static BlowupRecord blow_step(const Poly& H, int x, int y, int z,
                              const Tower& ftw, const std::array<Poly, 3>& p,
                              int r, const std::vector<OtherPoint>& others) {
  int d = deg_in(H, {x, y, z});
  auto nz = [&](const Poly& q) { return !is_zero_in_tower(q, ftw); };
  auto fr = [](int k) { return Frac(Q(k)); };
  FM B;
  if (nz(p[2]))
    B = {{{fr(1), fr(0), Frac(p[0])},
          {fr(0), fr(1), Frac(p[1])},
          {fr(0), fr(0), Frac(p[2])}}};
  else if (nz(p[1]))
    B = {{{fr(1), fr(0), Frac(p[0])},
          {fr(0), fr(0), Frac(p[1])},
          {fr(0), fr(1), fr(0)}}};
  else
    B = {{{fr(0), fr(0), Frac(p[0])},
          {fr(1), fr(0), fr(0)},
          {fr(0), fr(1), fr(0)}}};
  for (auto& t : adjuster_table()) {
    FM A = {{{fr(t[0]), fr(t[1]), fr(0)},
             {fr(t[2]), fr(t[3]), fr(0)},
             {fr(t[4]), fr(t[5]), fr(1)}}};
    FM M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Frac s;
        for (int k = 0; k < 3; ++k)
          s = fadd(s, fmul(B[i][k], A[k][j], ftw), ftw);
        M[i][j] = s;
      }
    FieldChange L = FieldChange::make(M, ftw);
    Poly G1 = L.apply(H, x, y, z, ftw);
    if (!frame_ok(G1, x, y, z, r, d, ftw)) continue;
    bool ok = true;
    for (auto& o : others)
      if (!off_triangle(L, o, ftw)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    BlowupRecord rec;
    rec.L = L;
    rec.G1 = G1;
    Poly GQ = subst(G1, {{x, Poly::var(y) * Poly::var(z)},
                         {y, Poly::var(x) * Poly::var(z)},
                         {z, Poly::var(x) * Poly::var(y)}});
    rec.n1 = strip_var(GQ, x);
    rec.n2 = strip_var(GQ, y);
    rec.n3 = strip_var(GQ, z);
    // with the vertices off the curve only z^r divides
    assert(rec.n1 == 0 && rec.n2 == 0 && rec.n3 == r);
    Poly den(Q(1));
    reduce_exts(GQ, den, ftw);
    rec.Gstar = normalize_primitive(GQ);
    assert(deg_in(rec.Gstar, {x, y, z}) == 2 * d - r);
    return rec;
  }
  throw ChangeSearchExhausted("no admissible blowup frame in the table");
}

static PlaneCurve curve_from_homog(const Poly& Hs, int x, int y, int z,
                                   const Tower& tw) {
  PlaneCurve c;
  c.tw = tw;
  c.x = x;
  c.y = y;
  c.z = z;
  c.Fh = Hs;
  c.d = deg_in(Hs, {x, y, z});
  c.F = subst(Hs, z, Poly(Q(1)));
  return c;
}

// neighborhood families {(t:1:0)}_m on z=0 away from the vertices; the frame
// conditions force x,y != 0 there, so the affine reading loses nothing
static std::vector<ConjugateFamily> first_neighborhood(const PlaneCurve& cs,
                                                       int tv) {
  Poly u = subst(cs.Fh, {{cs.z, Poly()}, {cs.x, Poly::var(tv)},
                         {cs.y, Poly(Q(1))}});
  Poly den(Q(1));
  reduce_exts(u, den, cs.tw);
  strip_var(u, tv);
  auto fl = factor_univariate_ext(u, tv, cs.tw);
  std::vector<ConjugateFamily> out;
  for (auto& [f, mult] : fl.factors) {
    (void)mult;
    if (f.deg(tv) < 1 || f == Poly::var(tv)) continue;
    ConjugateFamily fam;
    fam.tvar = tv;
    fam.m = normalize_primitive(f);
    fam.f1 = Poly::var(tv);
    fam.f2 = Poly(Q(1));
    fam.f3 = Poly();
    fam.location = Location::Infinity;
    canonicalize_family(fam, cs.tw);
    family_multiplicity(cs, fam);
    family_character(cs, fam);
    out.push_back(fam);
  }
  return out;
}

// one blowup of fam on C(H) over `base`; `others` must describe every other
// singular point of C(H) over the extended tower (conjugates of the center
// are added here)
static BlowupStep blow_once(const Poly& H, int x, int y, int z,
                            const Tower& base, const ConjugateFamily& fam,
                            std::vector<OtherPoint> others) {
  Tower ftw = family_tower(base, fam);
  add_conjugates(others, fam, ftw);
  BlowupStep st;
  st.tw = ftw;
  st.rec = blow_step(H, x, y, z, ftw, {fam.f1, fam.f2, fam.f3}, fam.mult,
                     others);
  st.transformed = curve_from_homog(st.rec.Gstar, x, y, z, ftw);
  st.neighborhood = first_neighborhood(st.transformed, fresh_var());
  return st;
}

static std::array<Poly, 3> cremona_point(const std::array<Poly, 3>& p) {
  return {p[1] * p[2], p[0] * p[2], p[0] * p[1]};
}

// recursive blowup of a non-ordinary node; fills the record, the singular
// children (recursed while non-ordinary) and the regular neighbors
static void expand_node(GraphNode& node, const Poly& H, int x, int y, int z,
                        const std::vector<OtherPoint>& others, int depth) {
  if (depth > 24)
    throw std::runtime_error("blowup recursion exceeded depth limit");
  BlowupStep st = blow_once(H, x, y, z, node.tw, node.fam, others);
  node.blowup = st.rec;
  for (auto& f1 : st.neighborhood) {
    if (f1.mult == 1) {
      node.regular_neighbors.push_back(f1);
      continue;
    }
    GraphNode ch;
    ch.fam = f1;
    ch.tw = st.tw;
    ch.points = node.points * f1.points();
    if (f1.character == Character::NonOrdinary) {
      // every other singular point of the transform: images of the previous
      // ones (off the triangle, so the map is defined on them), the three
      // fundamental vertices, and the sibling neighborhood singularities
      std::vector<OtherPoint> o2;
      std::vector<OtherPoint> parents = others;  // pre-conjugate list
      add_conjugates(parents, node.fam, st.tw);
      for (auto& o : parents) {
        OtherPoint n;
        n.c = cremona_point(mat_point(st.rec.L.inv, o.c));
        n.svar = o.svar;
        n.minp = o.minp;
        o2.push_back(n);
      }
      o2.push_back(rational_point(1, 0, 0));
      o2.push_back(rational_point(0, 1, 0));
      o2.push_back(rational_point(0, 0, 1));
      for (auto& g : st.neighborhood) {
        if (&g == &f1 || g.mult < 2) continue;
        int s = fresh_var();
        OtherPoint o;
        o.svar = s;
        o.minp = subst(g.m, g.tvar, Poly::var(s));
        o.c = {Poly::var(s), Poly(Q(1)), Poly()};
        o2.push_back(o);
      }
      expand_node(ch, st.rec.Gstar, x, y, z, o2, depth + 1);
    }
    node.children.push_back(std::move(ch));
  }
}

// ---- public interface ----

static bool same_family(const ConjugateFamily& a, const ConjugateFamily& b) {
  int s = var_id("_cmp");
  auto r = [&](const Poly& p, int tv) { return subst(p, tv, Poly::var(s)); };
  return r(a.m, a.tvar) == r(b.m, b.tvar) &&
         r(a.f1, a.tvar) == r(b.f1, b.tvar) &&
         r(a.f2, a.tvar) == r(b.f2, b.tvar) &&
         r(a.f3, a.tvar) == r(b.f3, b.tvar);
}

static OtherPoint family_as_point(const ConjugateFamily& f) {
  int s = fresh_var();
  OtherPoint o;
  o.svar = s;
  o.minp = subst(f.m, f.tvar, Poly::var(s));
  o.c = {subst(f.f1, f.tvar, Poly::var(s)), subst(f.f2, f.tvar, Poly::var(s)),
         subst(f.f3, f.tvar, Poly::var(s))};
  return o;
}

BlowupStep blowup_family(const PlaneCurve& c, const ConjugateFamily& fam0) {
  ConjugateFamily fam = fam0;
  if (fam.mult == 0) family_multiplicity(c, fam);
  if (fam.character == Character::Unknown) family_character(c, fam);
  if (fam.mult < 2 || fam.character == Character::Ordinary)
    throw OrdinaryFamily("family is ordinary; nothing to blow up");
  StandardDecomposition dec = standard_decomposition(c);
  std::vector<OtherPoint> others;
  for (auto& f : dec.all())
    if (!same_family(f, fam)) others.push_back(family_as_point(f));
  return blow_once(c.Fh, c.x, c.y, c.z, c.tw, fam, std::move(others));
}

NeighborGraph neighbor_graph(const PlaneCurve& c) {
  NeighborGraph g;
  g.dec = standard_decomposition(c);
  auto fams = g.dec.all();
  for (size_t i = 0; i < fams.size(); ++i) {
    GraphNode n;
    n.fam = fams[i];
    n.tw = c.tw;
    n.points = fams[i].points();
    if (fams[i].character == Character::NonOrdinary) {
      std::vector<OtherPoint> others;
      for (size_t j = 0; j < fams.size(); ++j)
        if (j != i) others.push_back(family_as_point(fams[j]));
      expand_node(n, c.Fh, c.x, c.y, c.z, others, 0);
    }
    g.roots.push_back(std::move(n));
  }
  return g;
}

static long node_sum(const GraphNode& n) {
  long s = n.points * (long)n.fam.mult * (n.fam.mult - 1);
  for (auto& ch : n.children) s += node_sum(ch);
  return s;
}

long NeighborGraph::mult_sum() const {
  long s = 0;
  for (auto& n : roots) s += node_sum(n);
  return s;
}

long genus(const PlaneCurve& c) {
  if (!absolutely_irreducible(c.F, c.x, c.y, c.tw))
    throw NotIrreducible("defining polynomial factors over the closure");
  NeighborGraph g = neighbor_graph(c);
  long s = g.mult_sum();
  assert(s % 2 == 0);
  return (long)(c.d - 1) * (c.d - 2) / 2 - s / 2;
}

}  // namespace cal
