#include "cal/strat.hh"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "cal/factor.hh"
#include "cal/genus.hh"

namespace cal {

namespace {

bool poly_in(const std::vector<Poly>& v, const Poly& p) {
  for (const Poly& q : v)
    if (q == p || q == -p) return true;
  return false;
}

bool var_in(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// coefficient polynomials of F grouped by the monomials in `cv`
std::vector<Poly> coeffs_wrt(const Poly& F, const std::vector<int>& cv) {
  std::map<Mono, Poly> by;
  for (const auto& [mono, c] : F.terms()) {
    Mono cm, rm;
    for (const auto& [v, e] : mono.e) (var_in(cv, v) ? cm : rm).e.push_back({v, e});
    by[cm] += Poly::term(c, rm);
  }
  std::vector<Poly> out;
  for (auto& [k, p] : by)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

// apply a parameter substitution to a polynomial; vars of `f` without an
// entry pass through unchanged
Frac apply_subst(const Poly& f, const std::map<int, Frac>& subst,
                 const Tower& tw) {
  Frac acc;
  for (const auto& [mono, c] : f.terms()) {
    Frac term{Poly(c)};
    for (const auto& [v, e] : mono.e) {
      auto it = subst.find(v);
      Frac base = it == subst.end() ? Frac(Poly::var(v)) : it->second;
      term = fmul(term, fpow(base, e, tw), tw);
    }
    acc = fadd(acc, term, tw);
  }
  return fnorm(acc, tw);
}

// substitute one variable inside every value of a fraction
Frac frac_subst_var(const Frac& a, int v, const Frac& val, const Tower& tw) {
  return fsubst(a, v, val, tw);
}

// compose: first `outer` (ambient -> values over outer tower), then `inner`
// (outer free parameter -> values over inner.tw)
std::map<int, Frac> compose_subst(const std::map<int, Frac>& outer,
                                  const ComponentDesc& inner) {
  std::map<int, Frac> r;
  for (const auto& [p, val] : outer) {
    Frac v = val;
    for (const auto& [q, w] : inner.subst)
      v = frac_subst_var(v, q, w, inner.tw);
    r[p] = fnorm(v, inner.tw);
  }
  for (const auto& [q, w] : inner.subst)
    if (!r.count(q)) r[q] = fnorm(w, inner.tw);
  return r;
}

Tower drop_param(const Tower& tw, int v) {
  Tower r = tw;
  r.params.erase(std::remove(r.params.begin(), r.params.end(), v),
                 r.params.end());
  return r;
}

int fresh_ext_var() {
  static int n = 0;
  return var_id("_g" + std::to_string(++n));
}

int fresh_component_var() {
  static int n = 0;
  return var_id("_l" + std::to_string(++n));
}

// does the parametrization satisfy the defining equation of the curve
bool param_on_curve(const PlaneCurve& c, const RatParam& P) {
  std::map<int, Poly> m;
  m[c.x] = P.p1 * P.q2;
  m[c.y] = P.p2 * P.q1;
  m[c.z] = P.q1 * P.q2;
  return is_zero_in_tower(subst(c.Fh, m), c.tw);
}

// count of auxiliary coordinates: extensions plus any parameter that is not
// an ambient parameter
int aux_count(const Tower& tw, const std::vector<int>& ambient) {
  int n = (int)tw.exts.size();
  for (int p : tw.params)
    if (!var_in(ambient, p)) ++n;
  return n;
}

ComponentDesc resolve_one(const Poly& p, const Tower& tw) {
  ComponentDesc c;
  c.gens = {p};
  c.tw = tw;
  c.dim = (int)tw.params.size() - 1;
  std::vector<int> vs;
  for (int v : p.vars())
    if (tw.is_param(v)) vs.push_back(v);
  if (vs.empty()) {
    c.resolved = false;
    c.note = "no parameter occurs in the generator";
    return c;
  }
  if (vs.size() == 1) {
    int v = vs[0];
    c.tw = drop_param(tw, v);
    if (p.deg(v) == 1) {
      Poly a = uv_coeff(p, v, 1), b = subst(p, v, Poly());
      c.subst[v] = fnorm(Frac(-b, a), c.tw);
      c.note = "rational root";
    } else {
      int g = fresh_ext_var();
      c.tw.exts.push_back(Ext{g, subst(p, v, Poly::var(g))});
      c.subst[v] = Frac(Poly::var(g));
      c.note = "algebraic root of degree " + std::to_string(p.deg(v));
    }
    c.free_vars = c.tw.params;
    return c;
  }
  // linear in one parameter: the component is the graph of the solved value
  int lin = -1;
  for (int v : vs)
    if (p.deg(v) == 1) {
      if (lin < 0) lin = v;
      if (uv_lead(p, v).is_constant()) { lin = v; break; }
    }
  if (lin >= 0) {
    Poly cl = uv_lead(p, lin);
    Poly r = subst(p, lin, Poly());
    c.tw = drop_param(tw, lin);
    c.subst[lin] = fnorm(Frac(-r, cl), c.tw);
    c.free_vars = c.tw.params;
    c.surjective = cl.is_constant();
    if (!c.surjective) {
      c.unreached.push_back({cl, r});
      c.note = "graph; misses the zero set of its denominator";
    } else {
      c.note = "graph";
    }
    return c;
  }
  // plane curve in two parameters: parametrize it if it has genus zero
  if (vs.size() == 2) {
    try {
      PlaneCurve pc =
          make_curve(p, vs[0], vs[1], var_id("_mu"), Tower{});
      if (genus(pc) == 0) {
        RatParam P = parametrize(pc);
        // rename the parametrization variable so it cannot collide with the
        // variable of a parametrization being restricted along this chain
        int L = fresh_component_var();
        Poly lv = Poly::var(L);
        c.tw = drop_param(drop_param(tw, vs[0]), vs[1]);
        c.tw.params.push_back(L);
        for (const Ext& e : P.tw.exts) c.tw.exts.push_back(e);
        c.subst[vs[0]] =
            fnorm(Frac(subst(P.p1, P.tvar, lv), subst(P.q1, P.tvar, lv)), c.tw);
        c.subst[vs[1]] =
            fnorm(Frac(subst(P.p2, P.tvar, lv), subst(P.q2, P.tvar, lv)), c.tw);
        c.free_vars = c.tw.params;
        auto cp = critical_point(P);
        if (cp) {
          c.surjective = false;
          // the one possibly missed point, when it is rational
          if ((*cp)[0].num.is_constant() && (*cp)[0].den.is_constant() &&
              (*cp)[1].num.is_constant() && (*cp)[1].den.is_constant()) {
            c.unreached.push_back(
                {(*cp)[0].den * Poly::var(vs[0]) - (*cp)[0].num,
                 (*cp)[1].den * Poly::var(vs[1]) - (*cp)[1].num});
          }
          c.note = "rational component curve; critical point re-queued";
        } else {
          c.note = "rational component curve";
        }
        return c;
      }
      c.resolved = false;
      c.note = "component curve has positive genus";
      return c;
    } catch (const std::exception& e) {
      c.resolved = false;
      c.note = std::string("component resolution failed: ") + e.what();
      return c;
    }
  }
  c.resolved = false;
  c.note = "not linear in any parameter and more than two parameters involved";
  return c;
}

}  // namespace

SigmaResult sigma(const PlaneCurve& c, const RatParam* given) {
  SigmaResult r;
  bool done = false;
  if (given) {
    RatParam P = *given;
    P.tw = c.tw;
    if (param_on_curve(c, P) && properness_check(P)) {
      // a proper parametrization certifies genus zero directly
      r.g = 0;
      r.param = P;
      r.sigma = omega_proper(P, c);
      done = true;
    }
  }
  if (!done) {
    r.g = genus(c);
    if (r.g == 0) {
      RatParam P = parametrize(c);
      r.param = P;
      r.sigma = omega_proper(P, c);
    } else {
      r.sigma = omega_genus(c);
    }
  }
  r.sigma = simplify(r.sigma);
  if (!r.sigma.is_pure()) {
    // keep only the factored part: a smaller open set is still certified
    OpenSet p;
    p.factors = r.sigma.factors;
    r.sigma = p;
  }
  return r;
}

std::vector<ComponentDesc> components(const OpenSet& s, const Tower& tw) {
  OpenSet p = simplify(s);
  std::vector<ComponentDesc> out;
  for (const Poly& f : p.factors) out.push_back(resolve_one(f, tw));
  return out;
}

Restriction restrict_curve(const PlaneCurve& c, const ComponentDesc& comp) {
  Restriction r;
  Frac fr = apply_subst(c.F, comp.subst, comp.tw);
  Poly F = fr.num;
  std::vector<int> cv{c.x, c.y};
  if (deg_in(F, cv) <= 0) {
    r.degenerate = true;
    r.curve.F = F;
    r.curve.tw = comp.tw;
    r.curve.x = c.x;
    r.curve.y = c.y;
    r.curve.z = c.z;
    return r;
  }
  Poly cont = gcd(coeffs_wrt(F, cv));
  if (!cont.is_constant()) F = divexact(F, cont);
  r.content = cont;
  r.curve = make_curve(F, c.x, c.y, c.z, comp.tw);
  return r;
}

namespace {

// restriction of a parametrization along a component substitution; null when
// a denominator collapses to zero
std::optional<RatParam> restrict_param(const RatParam& P,
                                       const std::map<int, Frac>& su,
                                       const Tower& tw) {
  auto ap = [&](const Poly& p) { return apply_subst(p, su, tw); };
  Frac a1 = ap(P.p1), b1 = ap(P.q1), a2 = ap(P.p2), b2 = ap(P.q2);
  RatParam r;
  r.tvar = P.tvar;
  r.tw = tw;
  r.p1 = a1.num * b1.den;
  r.q1 = a1.den * b1.num;
  r.p2 = a2.num * b2.den;
  r.q2 = a2.den * b2.num;
  if (r.q1.is_zero() || r.q2.is_zero()) return std::nullopt;
  auto reduce = [&](Poly& p, Poly& q) {
    if (p.is_zero()) return;
    if (tw.exts.empty()) {
      Poly g = gcd(p, q);
      if (!g.is_constant()) {
        p = divexact(p, g);
        q = divexact(q, g);
      }
    } else {
      Poly g = fgcd(p, q, P.tvar, tw);
      if (g.deg(P.tvar) >= 1) {
        p = field_divexact(p, g, P.tvar, tw);
        q = field_divexact(q, g, P.tvar, tw);
      }
    }
  };
  reduce(r.p1, r.q1);
  reduce(r.p2, r.q2);
  r.proper = false;
  return r;
}

struct Ctx {
  std::map<int, Frac> subst;
  Tower tw;
  std::vector<Poly> gens;
  std::vector<std::vector<Poly>> removed;
  std::optional<RatParam> param;
  int depth = 0;
  std::string where = "S";
};

// drop extension variables no longer referenced by the restricted data; this
// lets a chain whose values became rational continue as a direct point
void prune_unused_exts(Ctx& c, const Poly& F,
                       const std::vector<Poly>& extra = {}) {
  if (c.tw.exts.empty()) return;
  std::set<int> used;
  auto add = [&](const Poly& p) {
    for (int v : p.vars()) used.insert(v);
  };
  add(F);
  for (const Poly& p : extra) add(p);
  for (const auto& [v, f] : c.subst) {
    add(f.num);
    add(f.den);
  }
  for (const Poly& g : c.gens) add(g);
  for (const auto& id : c.removed)
    for (const Poly& p : id) add(p);
  if (c.param) {
    add(c.param->p1);
    add(c.param->q1);
    add(c.param->p2);
    add(c.param->q2);
  }
  for (int i = (int)c.tw.exts.size() - 1; i >= 0; --i) {
    if (used.count(c.tw.exts[i].var)) {
      add(c.tw.exts[i].minpoly);
      continue;
    }
    c.tw.exts.erase(c.tw.exts.begin() + i);
  }
  if (c.param) c.param->tw = c.tw;
}

std::string subst_key(const Stratum& s, const std::vector<int>& ambient) {
  std::ostringstream o;
  o << (int)s.tag << "|";
  // when every ambient parameter received a constant value the stratum is a
  // point: key it by its coordinates so the same point reached along two
  // different chains is recognized
  bool point = true;
  for (int v : ambient) {
    auto it = s.subst.find(v);
    if (it == s.subst.end() || !it->second.num.is_constant() ||
        !it->second.den.is_constant()) {
      point = false;
      break;
    }
  }
  if (point && !ambient.empty()) {
    o << "pt|";
    for (int v : ambient) {
      const Frac& f = s.subst.at(v);
      Q q = eval_q(f.num, {}) / eval_q(f.den, {});
      o << var_name(v) << "=" << q << ";";
    }
    return o.str();
  }
  for (const auto& [v, f] : s.subst)
    o << var_name(v) << "=" << f.num.str() << "/" << f.den.str() << ";";
  std::vector<std::string> g;
  for (const Poly& p : s.gens) g.push_back(p.str());
  std::sort(g.begin(), g.end());
  for (auto& x : g) o << x << ",";
  return o.str();
}

struct Work {
  const PlaneCurve* top;
  std::vector<int> ambient;
  bool recurse_factors;
  Stratification out;
  std::vector<std::string> seen;

  void emit(const Ctx& ctx, Stratum s) {
    s.subst = ctx.subst;
    s.tw = ctx.tw;
    s.gens = ctx.gens;
    for (const auto& r : ctx.removed) s.removed.push_back(r);
    std::string key = subst_key(s, ambient);
    for (const std::string& k : seen)
      if (k == key) {
        out.log.push_back("skip duplicate stratum at " + ctx.where);
        return;
      }
    seen.push_back(key);
    out.strata.push_back(std::move(s));
  }

  void rec(const Poly& F, Ctx ctx);
  void descend(const Poly& Fp, const Ctx& ctx, const ComponentDesc& comp,
               const Poly& gen);
  void chain(const Poly& Fp, const Ctx& ctx, std::vector<Poly> gens, Tag tag);
};

void Work::descend(const Poly& Fp, const Ctx& ctx, const ComponentDesc& comp,
                   const Poly& gen) {
  Ctx c2;
  c2.subst = compose_subst(ctx.subst, comp);
  c2.tw = comp.tw;
  c2.gens = ctx.gens;
  c2.gens.push_back(gen);
  c2.removed = ctx.removed;
  c2.depth = ctx.depth + 1;
  c2.where = ctx.where + " > V(" + gen.str() + ")";
  if (ctx.param) c2.param = restrict_param(*ctx.param, comp.subst, comp.tw);
  Frac fr = apply_subst(Fp, comp.subst, comp.tw);
  prune_unused_exts(c2, fr.num);
  if (aux_count(c2.tw, ambient) > 1 || c2.depth > (int)ambient.size() + 3) {
    Stratum s;
    s.tag = Tag::Unresolved;
    s.note = "resolution depth or auxiliary-coordinate limit reached";
    emit(c2, s);
    return;
  }
  rec(fr.num, c2);
}

// resolve an ideal by repeatedly factoring one generator and solving each
// irreducible factor, then restrict and recurse on every resulting piece
void Work::chain(const Poly& Fp, const Ctx& ctx, std::vector<Poly> gens,
                 Tag /*tag*/) {
  // drop zeros; a nonzero constant means the piece is empty
  std::vector<Poly> g;
  for (const Poly& p : gens) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return;
    g.push_back(normalize_primitive(p));
  }
  if (g.empty()) {
    Frac fr = apply_subst(Fp, std::map<int, Frac>{}, ctx.tw);
    rec(fr.num, ctx);
    return;
  }
  Poly head = g.front();
  g.erase(g.begin());
  FactorList fl = factor_q(head);
  for (const auto& [u, e] : fl.factors) {
    if (u.is_constant()) continue;
    ComponentDesc comp = resolve_one(u, ctx.tw);
    if (!comp.resolved) {
      Ctx cu = ctx;
      cu.gens.push_back(u);
      Stratum s;
      s.tag = Tag::Unresolved;
      s.note = comp.note;
      emit(cu, s);
      continue;
    }
    Ctx c2;
    c2.subst = compose_subst(ctx.subst, comp);
    c2.tw = comp.tw;
    c2.gens = ctx.gens;
    c2.gens.push_back(u);
    c2.removed = ctx.removed;
    c2.depth = ctx.depth + 1;
    c2.where = ctx.where + " > V(" + u.str() + ")";
    if (ctx.param) c2.param = restrict_param(*ctx.param, comp.subst, comp.tw);
    std::vector<Poly> rest;
    for (const Poly& q : g) rest.push_back(apply_subst(q, comp.subst, comp.tw).num);
    Frac fr = apply_subst(Fp, comp.subst, comp.tw);
    prune_unused_exts(c2, fr.num, rest);
    if (aux_count(c2.tw, ambient) > 1 ||
        c2.depth > (int)ambient.size() + 3) {
      Stratum s;
      s.tag = Tag::Unresolved;
      s.note = "resolution depth or auxiliary-coordinate limit reached";
      emit(c2, s);
      continue;
    }
    chain(fr.num, c2, rest, Tag::Unresolved);
    for (const auto& un : comp.unreached) {
      std::vector<Poly> ugens = g;
      for (const Poly& q : un) ugens.push_back(q);
      chain(Fp, ctx, ugens, Tag::Unresolved);
    }
  }
}

void Work::rec(const Poly& F, Ctx ctx) {
  const PlaneCurve& top = *this->top;
  std::vector<int> cv{top.x, top.y};
  if (F.is_zero() || deg_in(F, cv) <= 0) {
    Stratum s;
    s.tag = Tag::Degenerate;
    s.note = "restriction is constant at " + ctx.where;
    emit(ctx, s);
    return;
  }
  // parameter content: where it vanishes the whole polynomial vanishes
  Poly cont = gcd(coeffs_wrt(F, cv));
  Poly Fp = cont.is_constant() ? F : divexact(F, cont);
  std::vector<Poly> cont_factors;
  if (!cont.is_constant()) {
    FactorList cf = factor_q(cont);
    for (const auto& [u, e] : cf.factors) {
      bool ok = !u.is_constant();
      for (int v : u.vars()) ok = ok && ctx.tw.is_param(v);
      if (ok) cont_factors.push_back(u);
    }
  }
  for (size_t i = 0; i < cont_factors.size(); ++i) {
    Ctx cc = ctx;
    for (size_t j = 0; j < i; ++j) cc.removed.push_back({cont_factors[j]});
    // F == content * primitive part, so the curve degenerates on the content
    chain(Poly(Q(0)), cc, {cont_factors[i]}, Tag::Degenerate);
  }
  Ctx main = ctx;
  for (const Poly& u : cont_factors) main.removed.push_back({u});

  bool irr = false;
  try {
    irr = absolutely_irreducible(Fp, top.x, top.y, ctx.tw);
  } catch (const std::exception& e) {
    Stratum s;
    s.tag = Tag::Unresolved;
    s.note = std::string("irreducibility test failed: ") + e.what();
    emit(main, s);
    return;
  }
  if (!irr) {
    TowerFactorList fl = factor_over_tower(Fp, ctx.tw);
    if (!recurse_factors || fl.factors.size() <= 1) {
      Stratum s;
      s.tag = Tag::Reducible;
      for (const auto& [f, e] : fl.factors) s.factors.push_back(f);
      if (fl.factors.size() == 1)
        s.note = "splits over the algebraic closure of the parameter field";
      emit(main, s);
      return;
    }
    out.log.push_back("recursing into " + std::to_string(fl.factors.size()) +
                      " factors at " + ctx.where + "; carriers coincide");
    for (const auto& [f, e] : fl.factors) {
      Ctx cf = main;
      cf.where += " [factor " + f.str() + "]";
      rec(f, cf);
    }
    return;
  }

  PlaneCurve cur = make_curve(Fp, top.x, top.y, top.z, ctx.tw);
  SigmaResult sr;
  try {
    sr = sigma(cur, ctx.param ? &*ctx.param : nullptr);
  } catch (const std::exception& e) {
    Stratum s;
    s.tag = Tag::Unresolved;
    s.note = std::string("certificate-set computation failed: ") + e.what();
    emit(main, s);
    return;
  }
  Stratum s;
  if (sr.g == 0) {
    s.tag = Tag::Parametrized;
    s.param = sr.param;
  } else {
    s.tag = Tag::GenusPositive;
    s.genus = sr.g;
  }
  s.note = "dense certificate set at " + ctx.where;
  Ctx open = main;
  for (const Poly& p : sr.sigma.factors) open.removed.push_back({p});
  emit(open, s);
  out.log.push_back(ctx.where + ": genus " + std::to_string(sr.g) + ", " +
                    std::to_string(sr.sigma.factors.size()) +
                    " excluded component(s)");

  for (size_t i = 0; i < sr.sigma.factors.size(); ++i) {
    const Poly& p = sr.sigma.factors[i];
    Ctx cc = main;
    for (size_t j = 0; j < i; ++j) cc.removed.push_back({sr.sigma.factors[j]});
    ComponentDesc comp = resolve_one(p, ctx.tw);
    if (!comp.resolved) {
      Ctx cu = cc;
      cu.gens.push_back(p);
      Stratum u;
      u.tag = Tag::Unresolved;
      u.note = comp.note;
      emit(cu, u);
      continue;
    }
    descend(Fp, cc, comp, p);
    for (const auto& un : comp.unreached) chain(Fp, cc, un, Tag::Unresolved);
  }
}

}  // namespace

Stratification decompose(const PlaneCurve& c, bool recurse_factors) {
  Work w;
  w.top = &c;
  w.ambient = c.tw.params;
  w.recurse_factors = recurse_factors;
  Ctx root;
  root.tw = c.tw;
  w.rec(c.F, root);
  return std::move(w.out);
}

Stratification decompose(const PlaneCurve& c, const RatParam& given,
                         bool recurse_factors) {
  Work w;
  w.top = &c;
  w.ambient = c.tw.params;
  w.recurse_factors = recurse_factors;
  Ctx root;
  root.tw = c.tw;
  root.param = given;
  w.rec(c.F, root);
  return std::move(w.out);
}

namespace {

// substitute the ambient coordinates of a0 into p; the result involves only
// auxiliary variables (or is constant)
Poly eval_ambient(const Poly& p, const std::map<int, Q>& a0) {
  std::map<int, Poly> m;
  for (const auto& [v, q] : a0) m[v] = Poly(q);
  return subst(p, m);
}

}  // namespace

bool stratum_contains(const Stratum& s, const std::vector<int>& ambient,
                      const std::map<int, Q>& a0) {
  // auxiliary variables: tower parameters outside the ambient list, plus
  // extension variables
  std::vector<int> aux;
  for (int v : s.tw.params)
    if (!var_in(ambient, v)) aux.push_back(v);
  for (const Ext& e : s.tw.exts) aux.push_back(e.var);
  if (aux.size() > 1) return false;

  std::vector<Poly> eqs;      // must vanish (possibly after choosing aux)
  std::vector<Poly> dens;     // must not vanish
  for (const auto& [v, val] : s.subst) {
    // entries for intermediate chain variables record how the point was
    // reached; they constrain nothing in the ambient space
    if (!var_in(ambient, v)) continue;
    auto it = a0.find(v);
    if (it == a0.end()) return false;
    eqs.push_back(eval_ambient(val.num - val.den * Poly(it->second), a0));
    dens.push_back(eval_ambient(val.den, a0));
  }
  for (const Poly& g : s.gens) eqs.push_back(eval_ambient(g, a0));

  if (aux.empty()) {
    for (const Poly& e : eqs)
      if (!e.is_zero()) return false;
    for (const Poly& d : dens)
      if (d.is_zero()) return false;
    for (const auto& ideal : s.removed) {
      bool all0 = true;
      for (const Poly& r : ideal)
        if (!eval_ambient(r, a0).is_zero()) { all0 = false; break; }
      if (all0) return false;
    }
    return true;
  }

  int t = aux[0];
  // the witness value of the auxiliary coordinate is a common root of
  // the constraints; excluded loci and vanishing denominators strike roots
  std::vector<Poly> cons;
  for (const Ext& e : s.tw.exts) cons.push_back(eval_ambient(e.minpoly, a0));
  for (const Poly& e : eqs) {
    if (e.is_zero()) continue;
    if (e.is_constant()) return false;
    cons.push_back(e);
  }
  if (cons.empty()) return false;
  Poly g = cons[0];
  for (size_t i = 1; i < cons.size(); ++i) g = gcd(g, cons[i]);
  if (g.is_constant()) return false;
  g = squarefree_part(g, t);
  auto strike = [&](const Poly& cond) {
    // remove the roots of g where cond vanishes
    if (cond.is_zero()) { g = Poly(Q(1)); return; }
    Poly h = gcd(g, cond);
    if (!h.is_constant()) g = divexact(g, h);
  };
  for (const Poly& d : dens)
    if (!d.is_constant()) strike(d);
    else if (d.is_zero()) return false;
  for (const auto& ideal : s.removed) {
    Poly h = g;
    bool empty = false;
    for (const Poly& r : ideal) {
      Poly re = eval_ambient(r, a0);
      if (re.is_zero()) continue;
      if (re.is_constant()) { empty = true; break; }
      h = gcd(h, re);
      if (h.is_constant()) { empty = true; break; }
    }
    if (!empty && !h.is_constant()) g = divexact(g, h);
  }
  return !g.is_constant() && g.deg(t) >= 1;
}

int containing_stratum(const Stratification& st, const std::vector<int>& ambient,
                       const std::map<int, Q>& a0) {
  for (size_t i = 0; i < st.strata.size(); ++i)
    if (stratum_contains(st.strata[i], ambient, a0)) return (int)i;
  return -1;
}

ClassifyReport classify_specialization(const PlaneCurve& c,
                                       const std::map<int, Q>& a0,
                                       const Stratification* st) {
  ClassifyReport r;
  std::map<int, Poly> m;
  for (const auto& [v, q] : a0) m[v] = Poly(q);
  Poly F0 = subst(c.F, m);
  std::vector<int> cv{c.x, c.y};
  if (F0.is_zero() || deg_in(F0, cv) <= 0) {
    r.tag = Tag::Degenerate;
  } else {
    FactorList fl = factor_q(F0);
    std::vector<Poly> facs;
    for (const auto& [f, e] : fl.factors)
      if (deg_in(f, cv) > 0)
        for (int i = 0; i < e; ++i) facs.push_back(f);
    Tower none;
    if (facs.size() > 1 ||
        (facs.size() == 1 &&
         !absolutely_irreducible(facs[0], c.x, c.y, none))) {
      r.tag = Tag::Reducible;
      r.factors = facs;
      if (facs.size() == 1)
        r.note = "irreducible over the rationals; splits over the closure";
    } else {
      PlaneCurve sc = make_curve(facs[0], c.x, c.y, c.z, none);
      r.genus = genus(sc);
      if (r.genus == 0) {
        r.tag = Tag::Parametrized;
        r.param = parametrize(sc);
      } else {
        r.tag = Tag::GenusPositive;
      }
    }
  }
  if (st) r.stratum = containing_stratum(*st, c.tw.params, a0);
  return r;
}

}  // namespace cal
