#include "cal/omega.hh"

#include <algorithm>
#include <cassert>

#include "cal/factor.hh"

namespace cal {

namespace {

bool poly_in(const std::vector<Poly>& v, const Poly& p) {
  for (const Poly& q : v)
    if (q == p) return true;
  return false;
}

// stable display order: degree, then text
bool poly_less(const Poly& a, const Poly& b) {
  if (a.total_deg() != b.total_deg()) return a.total_deg() < b.total_deg();
  return a.str() < b.str();
}

bool set_in(const std::vector<OpenSet>& v, const OpenSet& s) {
  for (const OpenSet& q : v)
    if (q == s) return true;
  return false;
}

// resultant with the degenerate degree-0 cases spelled out
Poly resv(const Poly& f, const Poly& g, int v) {
  int df = f.deg(v), dg = g.deg(v);
  if (df <= 0 && dg <= 0) return Poly(Q(1));
  if (df <= 0) return f.pow(dg);
  if (dg <= 0) return g.pow(df);
  return resultant(f, g, v);
}

// remainder of p modulo m in t (up to a power of lc(m), which every caller
// separately requires nonzero)
Poly redmod(const Poly& p, const Poly& m, int t) {
  if (p.deg(t) < m.deg(t)) return p;
  return prem(p, m, t);
}

Poly norm_to_params(Poly f, const Tower& tw) {
  for (int i = (int)tw.exts.size() - 1; i >= 0; --i)
    if (f.has_var(tw.exts[i].var)) f = ext_norm(f, tw.exts[i]);
  return f;
}

// coefficients of H w.r.t. the non-field variables
std::vector<Poly> field_coeffs(const Poly& H, const Tower& tw) {
  std::map<Mono, Poly> by_free;
  for (const auto& [mono, c] : H.terms()) {
    Mono fm, km;
    for (const auto& [v, e] : mono.e)
      (tw.is_field_var(v) ? km : fm).e.push_back({v, e});
    by_free[fm] += Poly::term(c, km);
  }
  std::vector<Poly> out;
  for (auto& [k, p] : by_free)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

// product of the excluded factors lies in the radical of the ideal the union
// leaves generate (Rabinowitsch); caps keep the check cheap
bool radical_member(const Poly& prod, const std::vector<Poly>& gens) {
  if (gens.size() > 16) return false;
  long sz = prod.total_deg();
  for (const Poly& g : gens) sz += g.total_deg();
  if (sz > 120) return false;
  std::vector<int> vars = prod.vars();
  for (const Poly& g : gens)
    for (int v : g.vars())
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
  int w = var_id("_rad");
  std::vector<Poly> g2 = gens;
  g2.push_back(Poly::var(w) * prod - Poly(Q(1)));
  vars.push_back(w);
  Order ord{Order::GREVLEX, vars};
  Tower none;
  GBasis gb = groebner(g2, vars, ord, none);
  for (const auto& g : gb.gens)
    if (!g.is_zero() && g.lm().is_one()) return true;
  return false;
}

}  // namespace

bool OpenSet::operator==(const OpenSet& o) const {
  return kind == o.kind && factors == o.factors && parts == o.parts;
}

std::string OpenSet::str() const {
  if (is_full()) return "S";
  if (kind == Union) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i)
      s += (i ? " u (" : "(") + parts[i].str() + ")";
    return s;
  }
  std::string s = "S \\ V(";
  for (size_t i = 0; i < factors.size(); ++i)
    s += (i ? ")*(" : "(") + factors[i].str() + ")";
  s += ")";
  for (const OpenSet& p : parts) s += " n [" + p.str() + "]";
  return s;
}

OpenSet os_full() { return OpenSet{}; }

OpenSet os_leaf(const Poly& g) {
  assert(!g.is_zero());
  OpenSet s;
  if (g.is_constant()) return s;
  FactorList fl = factor_q(g);
  for (const auto& [f, e] : fl.factors) {
    Poly n = normalize_primitive(f);
    if (n.is_constant()) continue;
    if (!poly_in(s.factors, n)) s.factors.push_back(n);
  }
  std::sort(s.factors.begin(), s.factors.end(), poly_less);
  return s;
}

OpenSet os_intersect(const OpenSet& a, const OpenSet& b) {
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  OpenSet r;
  auto add = [&r](const OpenSet& s) {
    if (s.kind == OpenSet::Inter) {
      for (const Poly& f : s.factors)
        if (!poly_in(r.factors, f)) r.factors.push_back(f);
      for (const OpenSet& p : s.parts)
        if (!set_in(r.parts, p)) r.parts.push_back(p);
    } else if (!set_in(r.parts, s)) {
      r.parts.push_back(s);
    }
  };
  add(a);
  add(b);
  std::sort(r.factors.begin(), r.factors.end(), poly_less);
  return r;
}

OpenSet os_union(const OpenSet& a, const OpenSet& b) {
  if (a.is_full() || b.is_full()) return os_full();
  if (a == b) return a;
  OpenSet u;
  u.kind = OpenSet::Union;
  auto add = [&u](const OpenSet& s) {
    if (s.kind == OpenSet::Union) {
      for (const OpenSet& p : s.parts)
        if (!set_in(u.parts, p)) u.parts.push_back(p);
    } else if (!set_in(u.parts, s)) {
      u.parts.push_back(s);
    }
  };
  add(a);
  add(b);
  return u;
}

namespace {

// drop union branches contained in another branch: the branch with the
// superset of excluded factors is the smaller open set
void prune_branches(std::vector<OpenSet>& parts) {
  std::vector<char> drop(parts.size(), 0);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].is_pure()) continue;
    for (size_t j = 0; j < parts.size() && !drop[i]; ++j) {
      if (i == j || drop[j] || !parts[j].is_pure()) continue;
      bool sub = true;
      for (const Poly& f : parts[j].factors)
        if (!poly_in(parts[i].factors, f)) { sub = false; break; }
      if (sub) drop[i] = 1;
    }
  }
  std::vector<OpenSet> kept;
  for (size_t i = 0; i < parts.size(); ++i)
    if (!drop[i]) kept.push_back(parts[i]);
  parts = kept;
}

}  // namespace

OpenSet simplify(const OpenSet& s) {
  if (s.kind == OpenSet::Union) {
    OpenSet u;
    u.kind = OpenSet::Union;
    for (const OpenSet& p : s.parts) {
      OpenSet sp = simplify(p);
      if (sp.is_full()) return os_full();
      if (sp.kind == OpenSet::Union) {
        for (const OpenSet& q : sp.parts)
          if (!set_in(u.parts, q)) u.parts.push_back(q);
      } else if (!set_in(u.parts, sp)) {
        u.parts.push_back(sp);
      }
    }
    prune_branches(u.parts);
    if (u.parts.size() == 1) return u.parts[0];
    return u;
  }
  OpenSet r;
  r.factors = s.factors;
  std::vector<OpenSet> unions;
  for (const OpenSet& p : s.parts) {
    OpenSet sp = simplify(p);
    if (sp.is_full()) continue;
    if (sp.kind == OpenSet::Inter) {
      for (const Poly& f : sp.factors)
        if (!poly_in(r.factors, f)) r.factors.push_back(f);
      for (const OpenSet& q : sp.parts)
        if (!set_in(unions, q)) unions.push_back(q);
    } else if (!set_in(unions, sp)) {
      unions.push_back(sp);
    }
  }
  Poly prod(Q(1));
  for (const Poly& f : r.factors) prod = prod * f;
  for (const OpenSet& u : unions) {
    bool pure = true, absorbed = false;
    std::vector<Poly> gens;
    for (const OpenSet& b : u.parts) {
      if (!b.is_pure()) { pure = false; break; }
      // a branch already implied by the collected factors settles it
      bool sub = true;
      for (const Poly& f : b.factors)
        if (!poly_in(r.factors, f)) { sub = false; break; }
      if (sub) { absorbed = true; break; }
      Poly bp(Q(1));
      for (const Poly& f : b.factors) bp = bp * f;
      gens.push_back(bp);
    }
    if (!absorbed && pure && !r.factors.empty())
      absorbed = radical_member(prod, gens);
    if (!absorbed) r.parts.push_back(u);
  }
  std::sort(r.factors.begin(), r.factors.end(), poly_less);
  return r;
}

std::vector<Poly> excluded_factors(const OpenSet& s) {
  OpenSet r = simplify(s);
  assert(r.is_pure());
  return r.factors;
}

bool membership(const OpenSet& s, const std::map<int, Q>& a0) {
  if (s.kind == OpenSet::Inter) {
    for (const Poly& f : s.factors)
      if (eval_q(f, a0) == 0) return false;
    for (const OpenSet& p : s.parts)
      if (!membership(p, a0)) return false;
    return true;
  }
  for (const OpenSet& p : s.parts)
    if (membership(p, a0)) return true;
  return false;
}

bool subset_of(const OpenSet& a, const OpenSet& b) {
  if (b.is_full()) return true;
  if (a.kind == OpenSet::Union) {
    for (const OpenSet& p : a.parts)
      if (!subset_of(p, b)) return false;
    return !a.parts.empty();
  }
  if (!b.is_pure()) return false;  // undecided; callers simplify first
  for (const Poly& f : b.factors)
    if (!poly_in(a.factors, f)) return false;
  return true;
}

OpenSet omega_gamma(const Tower& tw) {
  OpenSet o = os_full();
  for (size_t i = 0; i < tw.exts.size(); ++i) {
    // nonvanishing leading coefficient keeps the monic minimal polynomial,
    // and hence the algebraic element, well-defined with the same degree
    Tower lower = tw;
    lower.exts.resize(i);
    o = os_intersect(
        o, omega_nonz(uv_lead(tw.exts[i].minpoly, tw.exts[i].var), lower));
  }
  return o;
}

OpenSet omega_def(const Poly& H, const Poly& den, const Tower& tw) {
  (void)H;
  for (int v : den.vars()) assert(tw.is_param(v));
  return os_intersect(omega_gamma(tw), os_leaf(den));
}

OpenSet omega_def(const Poly& H, const Tower& tw) {
  return omega_def(H, Poly(Q(1)), tw);
}

OpenSet omega_nonz(const Poly& H, const Poly& den, const Tower& tw) {
  OpenSet o = omega_def(H, den, tw);
  assert(!H.is_zero());
  std::vector<Poly> leaves;
  for (const Poly& C : field_coeffs(H, tw)) {
    Frac fc = fnorm(Frac(C, den), tw);
    if (fc.num.is_zero()) continue;  // vanishes identically in the tower
    Poly n = normalize_primitive(norm_to_params(fc.num, tw));
    if (n.is_constant()) return o;  // this coefficient never vanishes
    if (!poly_in(leaves, n)) leaves.push_back(n);
  }
  assert(!leaves.empty());  // H must be nonzero in the tower
  if (leaves.size() == 1) return os_intersect(o, os_leaf(leaves[0]));
  OpenSet u;
  u.kind = OpenSet::Union;
  for (const Poly& n : leaves) u.parts.push_back(os_leaf(n));
  return os_intersect(o, u);
}

OpenSet omega_nonz(const Poly& H, const Tower& tw) {
  return omega_nonz(H, Poly(Q(1)), tw);
}

OpenSet omega_gcd(const Poly& f1, const Poly& f2, int v, const Tower& tw) {
  assert(!f1.is_zero() && !f2.is_zero());
  Poly g, s1, s2;
  if (tw.exts.empty()) {
    g = gcd(f1, f2);
    s1 = divexact(f1, g);
    s2 = divexact(f2, g);
  } else {
    g = fgcd(f1, f2, v, tw);
    if (g.deg(v) <= 0) {
      g = Poly(Q(1));
      s1 = f1;
      s2 = f2;
    } else {
      s1 = field_divexact(f1, g, v, tw);
      s2 = field_divexact(f2, g, v, tw);
    }
  }
  Poly R = resv(s1, s2, v);
  assert(!is_zero_in_tower(R, tw));
  OpenSet o = omega_gamma(tw);
  o = os_intersect(o, omega_nonz(uv_lead(f1, v), tw));
  o = os_intersect(o, omega_nonz(uv_lead(f2, v), tw));
  o = os_intersect(o, omega_nonz(uv_lead(g, v), tw));
  o = os_intersect(o, omega_nonz(R, tw));
  return o;
}

OpenSet omega_gcd_many(const std::vector<Poly>& fs, int v, const Tower& tw) {
  assert(fs.size() >= 2);
  OpenSet base;
  if (fs.size() == 2) {
    base = omega_gcd(fs[0], fs[1], v, tw);
  } else {
    // pack the tail into one auxiliary-variable polynomial
    int Zv = var_id("_Z");
    Poly fZ = fs[1];
    for (size_t i = 2; i < fs.size(); ++i)
      fZ += fs[i] * Poly::var(Zv, (int)i - 1);
    base = omega_gcd(fs[0], fZ, v, tw);
  }
  Poly g = tw.exts.empty() ? gcd(fs) : fgcd_many(fs, v, tw);
  return os_intersect(base, omega_nonz(uv_lead(g, v), tw));
}

OpenSet omega_sqfree(const Poly& f, int v, const Tower& tw) {
  assert(f.deg(v) >= 1);
  Poly df = deriv(f, v);
  Poly g = tw.exts.empty() ? gcd(f, df) : fgcd(f, df, v, tw);
  if (g.deg(v) > 0) throw NotSquarefreeInput("input is not squarefree");
  OpenSet o = omega_gamma(tw);
  o = os_intersect(o, omega_nonz(resv(f, df, v), tw));
  o = os_intersect(o, omega_nonz(uv_lead(f, v), tw));
  return o;
}

OpenSet omega_curve(const PlaneCurve& c) {
  // nonvanishing leading form preserves the total degree
  return omega_nonz(subst(c.Fh, c.z, Poly()), c.tw);
}

OpenSet omega_family(const PlaneCurve& c, const ConjugateFamily& fam,
                     FamilyLevel level) {
  const Tower& tw = c.tw;
  int t = fam.tvar;
  std::vector<Poly> lst;
  for (const Poly* p : {&fam.f1, &fam.f2, &fam.f3})
    if (!p->is_zero()) lst.push_back(*p);
  lst.push_back(fam.m);
  OpenSet o = omega_gcd_many(lst, t, tw);
  o = os_intersect(o, omega_sqfree(fam.m, t, tw));
  Poly A(Q(1));
  for (const Poly& p : lst) A = A * uv_lead(p, t);
  o = os_intersect(o, omega_nonz(A, tw));
  o = os_intersect(o, omega_curve(c));
  if (level == FamilyLevel::Def) return simplify(o);

  int r = fam.mult;
  assert(r >= 1);
  Tower ftw = family_tower(tw, fam);
  std::map<int, Poly> at{{c.x, fam.f1}, {c.y, fam.f2}, {c.z, fam.f3}};
  Poly H;
  bool found = false;
  for (int i = r; i >= 0 && !found; --i)
    for (int j = r - i; j >= 0 && !found; --j) {
      Poly W = c.Fh;
      for (int q = 0; q < i; ++q) W = deriv(W, c.x);
      for (int q = 0; q < j; ++q) W = deriv(W, c.y);
      for (int q = 0; q < r - i - j; ++q) W = deriv(W, c.z);
      Poly Hc = redmod(subst(W, at), fam.m, t);
      if (!is_zero_in_tower(Hc, ftw)) {
        H = Hc;
        found = true;
      }
    }
  assert(found);  // the family has multiplicity exactly r
  o = os_intersect(o, omega_nonz(H, tw));
  o = os_intersect(o, omega_nonz(resv(H, fam.m, t), tw));
  if (level == FamilyLevel::Mult) return simplify(o);

  if (fam.character != Character::Ordinary)
    throw CharacterMismatch("ordinary-level set for a non-ordinary family");
  Poly T = tangent_polynomial(c, fam);
  static const int shear[][2] = {{0, 0}, {1, 0},  {0, 1}, {1, 1},  {-1, 0},
                                 {0, -1}, {2, 0}, {1, -1}, {-1, 1}, {2, 1},
                                 {1, 2},  {3, 1}, {-2, 1}, {5, 2},  {7, 3}};
  for (const auto& bd : shear) {
    // shear so no tangent is free of x and tangents stay distinct on (x,1,1)
    std::map<int, Poly> sh{
        {c.y, Poly::var(c.y) + Q(bd[0]) * Poly::var(c.x)},
        {c.z, Poly::var(c.z) + Q(bd[1]) * Poly::var(c.x)}};
    Poly Tp = subst(T, sh);
    Poly ctop = uv_coeff(subst(Tp, {{c.y, Poly()}, {c.z, Poly()}}), c.x, r);
    if (is_zero_in_tower(ctop, ftw)) continue;
    Poly T1 = subst(Tp, {{c.y, Poly(Q(1))}, {c.z, Poly(Q(1))}});
    if (T1.deg(c.x) < r) continue;
    Poly Axl = redmod(uv_lead(T1, c.x), fam.m, t);
    if (is_zero_in_tower(Axl, ftw)) continue;
    Poly D = redmod(resv(T1, deriv(T1, c.x), c.x), fam.m, t);
    if (is_zero_in_tower(D, ftw)) continue;
    o = os_intersect(o, omega_nonz(resv(Axl, fam.m, t), tw));
    o = os_intersect(o, omega_nonz(resv(D, fam.m, t), tw));
    o = os_intersect(o, omega_nonz(resv(redmod(ctop, fam.m, t), fam.m, t), tw));
    return simplify(o);
  }
  throw ChangeSearchExhausted("no shear separates the tangents");
}

OpenSet omega_sing_ord(const PlaneCurve& c) {
  StandardDecomposition dec = standard_decomposition(c);
  std::vector<ConjugateFamily> fams = dec.all();
  if (fams.empty()) return simplify(omega_curve(c));
  for (const ConjugateFamily& f : fams)
    if (f.character == Character::NonOrdinary)
      throw NonOrdinaryPresent("non-ordinary singularity present");
  OpenSet o = os_full();
  for (const ConjugateFamily& f : fams)
    o = os_intersect(o, omega_family(c, f, FamilyLevel::Ord));
  return simplify(o);
}

OpenSet omega_spgb(const GBasis& gb) {
  assert(gb.tracked);
  OpenSet o = omega_gamma(gb.tw);
  auto add = [&o](const GPoly& g) {
    for (const auto& [m, c] : g.t)
      if (!c.den.is_constant()) o = os_intersect(o, os_leaf(c.den));
  };
  for (const GPoly& g : gb.gens) add(g);
  for (const auto& row : gb.gb_of_input)
    for (const GPoly& g : row) add(g);
  for (const auto& row : gb.input_of_gb)
    for (const GPoly& g : row) add(g);
  return o;
}

OpenSet omega_spgb(const std::vector<Poly>& gens, const std::vector<int>& gvars,
                   const Order& ord, const Tower& tw) {
  return omega_spgb(groebner(gens, gvars, ord, tw, true));
}

namespace {

// cardinality control of the affine singular locus: the three Groebner bases
// of the singular ideal specialize, the eliminants stay squarefree of the
// same degree, and no elimination generator appears or disappears
OpenSet sing_affine(const PlaneCurve& c) {
  const Tower& tw = c.tw;
  Poly Fr = c.F;
  if (!regular_position_check(Fr, c.x, c.y, tw))
    Fr = regular_position_transform(Fr, c.x, c.y, tw).second;
  Poly Fx = deriv(Fr, c.x), Fy = deriv(Fr, c.y);
  std::vector<Poly> gens = {Fr, Fx, Fy};
  Order oyx{Order::LEX, {c.y, c.x}};
  Order oxy{Order::LEX, {c.x, c.y}};
  GBasis G1 = groebner(gens, {c.x, c.y}, oyx, tw, true);
  GBasis G2 = groebner(gens, {c.x, c.y}, oxy, tw, true);
  OpenSet o = os_intersect(omega_spgb(G1), omega_spgb(G2));
  std::vector<Poly> e1 = eliminate(G1, {c.x});
  std::vector<Poly> e2 = eliminate(G2, {c.y});
  Poly f = e1.empty() ? Poly(Q(1)) : e1[0];
  Poly g = e2.empty() ? Poly(Q(1)) : e2[0];
  for (const Poly& q : G1.polys())
    if (q.deg(c.y) > 0) o = os_intersect(o, omega_nonz(uv_lead(q, c.y), tw));
  for (const Poly& q : G2.polys())
    if (q.deg(c.x) > 0) o = os_intersect(o, omega_nonz(uv_lead(q, c.x), tw));
  Poly ftil(Q(1)), gtil(Q(1));
  if (f.deg(c.x) >= 1) {
    o = os_intersect(o, omega_nonz(uv_lead(f, c.x), tw));
    o = os_intersect(o, omega_gcd(f, deriv(f, c.x), c.x, tw));
    ftil = fsquarefree_part(f, c.x, tw);
    o = os_intersect(o, omega_sqfree(ftil, c.x, tw));
  }
  if (g.deg(c.y) >= 1) {
    o = os_intersect(o, omega_nonz(uv_lead(g, c.y), tw));
    o = os_intersect(o, omega_gcd(g, deriv(g, c.y), c.y, tw));
    gtil = fsquarefree_part(g, c.y, tw);
    o = os_intersect(o, omega_sqfree(gtil, c.y, tw));
  }
  std::vector<Poly> g3 = gens;
  if (ftil.deg(c.x) >= 1) g3.push_back(ftil);
  if (gtil.deg(c.y) >= 1) g3.push_back(gtil);
  GBasis G3 = groebner(g3, {c.x, c.y}, oyx, tw, true);
  o = os_intersect(o, omega_spgb(G3));
  std::vector<Poly> e3 = eliminate(G3, {c.x});
  if (!e3.empty() && e3[0].deg(c.x) >= 1)
    o = os_intersect(o, omega_sqfree(e3[0], c.x, tw));
  return o;
}

// cardinality control of the singular locus at infinity in the chart x = 1,
// plus a smoothness witness at (0:1:0) when it is not already singular
OpenSet sing_infinity(const PlaneCurve& c) {
  const Tower& tw = c.tw;
  int t = var_id("_t");
  Poly M = subst(c.Fh, c.x, Poly(Q(1)));
  auto line = [&](const Poly& p) {
    return subst(subst(p, c.z, Poly()), c.y, Poly::var(t));
  };
  Poly m0 = line(M), my = line(deriv(M, c.y)), mz = line(deriv(M, c.z));
  std::vector<Poly> lst;
  for (const Poly* p : {&m0, &my, &mz})
    if (!p->is_zero()) lst.push_back(*p);
  OpenSet o = os_full();
  Poly U(Q(1));
  if (lst.size() >= 2) {
    o = omega_gcd_many(lst, t, tw);
    U = tw.exts.empty() ? gcd(lst) : fgcd_many(lst, t, tw);
  }
  if (U.deg(t) >= 1) o = os_intersect(o, omega_gcd(U, deriv(U, t), t, tw));
  auto at010 = [&](const Poly& p) {
    return subst(p, {{c.x, Poly()}, {c.z, Poly()}, {c.y, Poly(Q(1))}});
  };
  Poly v = at010(c.Fh);
  Poly vd[3] = {at010(deriv(c.Fh, c.x)), at010(deriv(c.Fh, c.y)),
                at010(deriv(c.Fh, c.z))};
  bool sing = is_zero_in_tower(v, tw);
  for (const Poly& d : vd) sing = sing && is_zero_in_tower(d, tw);
  if (!sing)
    for (const Poly& d : vd)
      if (!is_zero_in_tower(d, tw)) {
        o = os_intersect(o, omega_nonz(d, tw));
        break;
      }
  return o;
}

}  // namespace

OpenSet omega_genus_ord(const PlaneCurve& c) {
  OpenSet o = omega_sing_ord(c);
  o = os_intersect(o, sing_affine(c));
  o = os_intersect(o, sing_infinity(c));
  return simplify(o);
}

namespace {

Frac det3(const std::array<std::array<Frac, 3>, 3>& m, const Tower& tw) {
  Frac d;
  int sgn[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                   {0, 2, 1, -1}, {1, 0, 2, -1}, {2, 1, 0, -1}};
  for (auto& p : sgn) {
    Frac term = fmul(fmul(m[0][p[0]], m[1][p[1]], tw), m[2][p[2]], tw);
    d = p[3] > 0 ? fadd(d, term, tw) : fsub(d, term, tw);
  }
  return fnorm(d, tw);
}

void blowup_conditions(const PlaneCurve& c, const GraphNode& n, OpenSet& o) {
  if (n.blowup) {
    const BlowupRecord& rec = *n.blowup;
    Tower btw = family_tower(n.tw, n.fam);
    o = os_intersect(o, omega_gamma(btw));
    for (const auto& row : rec.L.m)
      for (const Frac& e : row)
        if (!e.den.is_constant()) o = os_intersect(o, os_leaf(e.den));
    Frac dt = det3(rec.L.m, btw);
    assert(!dt.is_zero());
    o = os_intersect(o, omega_nonz(dt.num, btw));
    if (!dt.den.is_constant()) o = os_intersect(o, os_leaf(dt.den));
    // no coordinate line may divide the specialized transform
    for (int axis : {c.x, c.y, c.z}) {
      Poly rs = subst(rec.Gstar, axis, Poly());
      assert(!rs.is_zero());
      o = os_intersect(o, omega_nonz(rs, btw));
    }
  }
  for (const GraphNode& ch : n.children) blowup_conditions(c, ch, o);
}

bool has_blowup(const GraphNode& n) {
  if (n.blowup) return true;
  for (const GraphNode& ch : n.children)
    if (has_blowup(ch)) return true;
  return false;
}

void graph_family_conditions(const PlaneCurve& cur, const GraphNode& n,
                             OpenSet& o) {
  FamilyLevel lvl = n.fam.character == Character::Ordinary ? FamilyLevel::Ord
                                                           : FamilyLevel::Mult;
  o = os_intersect(o, omega_family(cur, n.fam, lvl));
  if (!n.blowup) return;
  Tower btw = family_tower(n.tw, n.fam);
  PlaneCurve tc =
      make_curve(subst(n.blowup->Gstar, cur.z, Poly(Q(1))), cur.x, cur.y,
                 cur.z, btw);
  for (const GraphNode& ch : n.children) graph_family_conditions(tc, ch, o);
  for (const ConjugateFamily& rf : n.regular_neighbors)
    o = os_intersect(o, omega_family(tc, rf, FamilyLevel::Mult));
}

}  // namespace

OpenSet omega_blowup(const PlaneCurve& c, const NeighborGraph& g) {
  OpenSet o = omega_curve(c);
  for (const GraphNode& r : g.roots) blowup_conditions(c, r, o);
  return simplify(o);
}

OpenSet omega_genus(const PlaneCurve& c) {
  NeighborGraph g = neighbor_graph(c);
  bool blown = false;
  for (const GraphNode& r : g.roots) blown = blown || has_blowup(r);
  if (!blown) return omega_genus_ord(c);
  OpenSet o = omega_blowup(c, g);
  o = os_intersect(o, sing_affine(c));
  o = os_intersect(o, sing_infinity(c));
  for (const GraphNode& r : g.roots) graph_family_conditions(c, r, o);
  return simplify(o);
}

OpenSet omega_proper(const RatParam& P, const PlaneCurve& c) {
  if (!P.proper) throw NotProper("parametrization lacks a properness certificate");
  const Tower& tw = P.tw;
  int t = P.tvar;
  OpenSet o = omega_curve(c);
  o = os_intersect(o, omega_gamma(tw));
  if (c.d == 1) {
    // polynomial parametrization of a line: at least one component must keep
    // a nonconstant linear part
    o = os_intersect(o, omega_nonz(P.q1, tw));
    o = os_intersect(o, omega_nonz(P.q2, tw));
    Poly l1 = uv_coeff(P.p1, t, 1), l2 = uv_coeff(P.p2, t, 1);
    assert(!l1.is_zero() || !l2.is_zero());
    if (l1.is_zero())
      o = os_intersect(o, omega_nonz(l2, tw));
    else if (l2.is_zero())
      o = os_intersect(o, omega_nonz(l1, tw));
    else
      o = os_intersect(o, os_union(omega_nonz(l1, tw), omega_nonz(l2, tw)));
    return simplify(o);
  }
  o = os_intersect(o, omega_nonz(P.q1, tw));
  o = os_intersect(o, omega_nonz(P.q2, tw));
  int h = var_id("_h");
  Poly G1 = subst(P.p1, t, Poly::var(h)) * P.q1 - P.p1 * subst(P.q1, t, Poly::var(h));
  Poly G2 = subst(P.p2, t, Poly::var(h)) * P.q2 - P.p2 * subst(P.q2, t, Poly::var(h));
  assert(!G1.is_zero() && !G2.is_zero());
  o = os_intersect(o, omega_gcd(G1, G2, t, tw));
  o = os_intersect(o, omega_gcd(P.p1, P.q1, t, tw));
  o = os_intersect(o, omega_gcd(P.p2, P.q2, t, tw));
  return simplify(o);
}

OpenSet omega_normal(const RatParam& P) {
  int t = P.tvar;
  if (P.p1.deg(t) > P.q1.deg(t) || P.p2.deg(t) > P.q2.deg(t)) return os_full();
  std::optional<std::array<Frac, 2>> cp = critical_point(P);
  assert(cp);
  Poly N1 = (*cp)[0].num * P.q1 - (*cp)[0].den * P.p1;
  Poly N2 = (*cp)[1].num * P.q2 - (*cp)[1].den * P.p2;
  if (N1.is_zero() || N2.is_zero()) return simplify(omega_gamma(P.tw));
  return simplify(
      os_intersect(omega_gamma(P.tw), omega_gcd(N1, N2, t, P.tw)));
}

}  // namespace cal
