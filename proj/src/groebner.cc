#include "cal/groebner.hh"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace cal {

namespace {

// split a monomial into its basis-variable part and its field-variable part
void split_mono(const Mono& m, const std::vector<int>& gvars, Mono& gpart, Mono& cpart) {
  gpart.e.clear();
  cpart.e.clear();
  for (auto& [v, k] : m.e) {
    if (std::find(gvars.begin(), gvars.end(), v) != gvars.end())
      gpart.e.push_back({v, k});
    else
      cpart.e.push_back({v, k});
  }
}

struct Ctx {
  const std::vector<int>* gvars;
  const Order* ord;
  const Tower* tw;
};

void gp_sort(GPoly& g, const Ctx& cx) {
  std::sort(g.t.begin(), g.t.end(), [&](auto& a, auto& b) {
    return mono_cmp(a.first, b.first, *cx.ord) > 0;
  });
}

void gp_normalize(GPoly& g, const Ctx& cx) {
  // combine equal monomials, drop zeros, sort descending
  std::map<Mono, Frac> acc;
  for (auto& [m, c] : g.t) {
    auto it = acc.find(m);
    if (it == acc.end())
      acc.emplace(m, fnorm(c, *cx.tw));
    else
      it->second = fadd(it->second, c, *cx.tw);
  }
  g.t.clear();
  for (auto& [m, c] : acc)
    if (!c.is_zero()) g.t.push_back({m, c});
  gp_sort(g, cx);
}

GPoly gp_add(const GPoly& a, const GPoly& b, const Ctx& cx) {
  GPoly r;
  r.t = a.t;
  for (auto& t : b.t) r.t.push_back(t);
  gp_normalize(r, cx);
  return r;
}

// r = a - (c * m) * b
GPoly gp_submul(const GPoly& a, const Frac& c, const Mono& m, const GPoly& b,
                const Ctx& cx) {
  GPoly r;
  r.t = a.t;
  for (auto& [bm, bc] : b.t) r.t.push_back({bm * m, fneg(fmul(c, bc, *cx.tw))});
  gp_normalize(r, cx);
  return r;
}

GPoly gp_scale(const GPoly& a, const Frac& c, const Ctx& cx) {
  GPoly r;
  for (auto& [m, co] : a.t) {
    Frac nc = fmul(co, c, *cx.tw);
    if (!nc.is_zero()) r.t.push_back({m, nc});
  }
  return r;
}

GPoly gp_make_monic(const GPoly& a, const Ctx& cx) {
  if (a.is_zero()) return a;
  return gp_scale(a, finv(a.lc(), *cx.tw), cx);
}

// full reduction of p by basis; records quotients if asked
GPoly gp_reduce(GPoly p, const std::vector<GPoly>& basis, const Ctx& cx,
                std::vector<GPoly>* quo) {
  if (quo) quo->assign(basis.size(), GPoly{});
  GPoly out;
  while (!p.is_zero()) {
    bool reduced = false;
    const Mono& lmp = p.lm();
    for (size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].is_zero()) continue;
      if (basis[i].lm().divides(lmp)) {
        Mono q = lmp / basis[i].lm();
        Frac c = fdiv(p.lc(), basis[i].lc(), *cx.tw);
        p = gp_submul(p, c, q, basis[i], cx);
        if (quo) {
          GPoly& qi = (*quo)[i];
          qi.t.push_back({q, c});
          gp_normalize(qi, cx);
        }
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.t.push_back(p.t.front());
      p.t.erase(p.t.begin());
    }
  }
  gp_normalize(out, cx);
  return out;
}

int sugar_of(const GPoly& g) {
  int s = 0;
  for (auto& [m, c] : g.t) s = std::max(s, m.deg());
  return s;
}

}  // namespace

GPoly to_gpoly(const Poly& p, const std::vector<int>& gvars, const Order& ord,
               const Tower& tw) {
  Ctx cx{&gvars, &ord, &tw};
  std::map<Mono, Poly> acc;  // gpart -> coefficient polynomial
  for (auto& [m, c] : p.terms()) {
    Mono gp, cp;
    split_mono(m, gvars, gp, cp);
    acc[gp] += Poly::term(c, cp);
  }
  GPoly r;
  for (auto& [m, c] : acc) {
    Frac f = fnorm(Frac(c), tw);
    if (!f.is_zero()) r.t.push_back({m, f});
  }
  gp_sort(r, cx);
  return r;
}

Poly from_gpoly(const GPoly& g) {
  // clear all denominators (they are field elements), return primitive Poly
  Poly den(Q(1));
  for (auto& [m, c] : g.t) den = divexact(den * c.den, gcd(den, c.den));
  Poly r;
  for (auto& [m, c] : g.t) r += Poly::term(Q(1), m) * c.num * divexact(den, c.den);
  return normalize_primitive(r);
}

Frac gpoly_coeff_lcd(const GPoly& g) {
  Poly den(Q(1));
  for (auto& [m, c] : g.t) den = divexact(den * c.den, gcd(den, c.den));
  return Frac(Poly(Q(1)), den);
}

std::vector<Poly> GBasis::polys() const {
  std::vector<Poly> r;
  for (auto& g : gens) r.push_back(from_gpoly(g));
  return r;
}

GBasis groebner(const std::vector<Poly>& gens_in, const std::vector<int>& gvars,
                const Order& ord, const Tower& tw, bool track) {
  GBasis out;
  out.ord = ord;
  out.gvars = gvars;
  out.tw = tw;
  out.tracked = track;
  Ctx cx{&out.gvars, &out.ord, &out.tw};

  struct Row {
    GPoly g;
    std::vector<GPoly> cof;  // w.r.t. inputs
    int sugar = 0;
  };
  std::vector<Row> B;
  size_t nin = gens_in.size();
  for (size_t i = 0; i < nin; ++i) {
    GPoly g = to_gpoly(gens_in[i], gvars, ord, tw);
    if (g.is_zero()) continue;
    Row r;
    r.sugar = sugar_of(g);
    Frac inv = finv(g.lc(), tw);
    r.g = gp_scale(g, inv, cx);
    if (track) {
      r.cof.assign(nin, GPoly{});
      r.cof[i].t.push_back({Mono{}, inv});
    }
    B.push_back(std::move(r));
  }

  struct Pair {
    size_t i, j;
    Mono lcm;
    int sugar;
  };
  auto make_pair = [&](size_t i, size_t j) {
    Pair p{i, j, mono_lcm(B[i].g.lm(), B[j].g.lm()), 0};
    int si = B[i].sugar + (p.lcm / B[i].g.lm()).deg();
    int sj = B[j].sugar + (p.lcm / B[j].g.lm()).deg();
    p.sugar = std::max(si, sj);
    return p;
  };
  std::deque<Pair> pairs;
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = i + 1; j < B.size(); ++j) pairs.push_back(make_pair(i, j));

  int guard = 0;
  while (!pairs.empty()) {
    if (++guard > 20000) throw std::runtime_error("groebner: pair limit exceeded");
    // sugar strategy: smallest (sugar, lcm-degree) first
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k) {
      if (pairs[k].sugar < pairs[best].sugar ||
          (pairs[k].sugar == pairs[best].sugar &&
           pairs[k].lcm.deg() < pairs[best].lcm.deg()))
        best = k;
    }
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + best);
    if (coprime(B[pr.i].g.lm(), B[pr.j].g.lm())) continue;  // product criterion
    // s-polynomial of two monic elements
    Mono mi = pr.lcm / B[pr.i].g.lm();
    Mono mj = pr.lcm / B[pr.j].g.lm();
    GPoly s;
    {
      GPoly a;
      for (auto& [m, c] : B[pr.i].g.t) a.t.push_back({m * mi, c});
      s = gp_submul(a, Frac(Q(1)), mj, B[pr.j].g, cx);
    }
    std::vector<GPoly> quo;
    std::vector<GPoly> current;
    for (auto& r : B) current.push_back(r.g);
    GPoly nf = gp_reduce(s, current, cx, track ? &quo : nullptr);
    if (nf.is_zero()) continue;
    Row nr;
    nr.sugar = std::max(pr.sugar, sugar_of(nf));
    Frac inv = finv(nf.lc(), tw);
    nr.g = gp_scale(nf, inv, cx);
    if (track) {
      // cof(new) = inv * (cof_i*mi - cof_j*mj - sum quo_k*cof_k)
      nr.cof.assign(nin, GPoly{});
      for (size_t t = 0; t < nin; ++t) {
        GPoly acc;
        for (auto& [m, c] : B[pr.i].cof[t].t) acc.t.push_back({m * mi, c});
        GPoly bj;
        for (auto& [m, c] : B[pr.j].cof[t].t) bj.t.push_back({m * mj, c});
        acc = gp_submul(acc, Frac(Q(1)), Mono{}, bj, cx);
        for (size_t k = 0; k < B.size(); ++k) {
          if (quo[k].is_zero() || B[k].cof[t].is_zero()) continue;
          for (auto& [qm, qc] : quo[k].t)
            acc = gp_submul(acc, qc, qm, B[k].cof[t], cx);
        }
        nr.cof[t] = gp_scale(acc, inv, cx);
      }
    }
    size_t ni = B.size();
    B.push_back(std::move(nr));
    for (size_t i = 0; i < ni; ++i) pairs.push_back(make_pair(i, ni));
  }

  // minimalize: drop elements whose lm is divisible by another's
  std::vector<bool> keep(B.size(), true);
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = 0; j < B.size(); ++j) {
      if (i == j || !keep[i] || !keep[j]) continue;
      if (B[j].g.lm().divides(B[i].g.lm()) &&
          !(B[i].g.lm() == B[j].g.lm() && j > i))
        keep[i] = false;
    }
  std::vector<Row> M;
  for (size_t i = 0; i < B.size(); ++i)
    if (keep[i]) M.push_back(B[i]);

  // autoreduce tails
  for (size_t i = 0; i < M.size(); ++i) {
    std::vector<GPoly> others;
    for (size_t j = 0; j < M.size(); ++j)
      others.push_back(j == i ? GPoly{} : M[j].g);
    std::vector<GPoly> quo;
    GPoly nf = gp_reduce(M[i].g, others, cx, track ? &quo : nullptr);
    if (track) {
      std::vector<GPoly> nc(nin);
      for (size_t t = 0; t < nin; ++t) {
        GPoly acc = M[i].cof[t];
        for (size_t k = 0; k < M.size(); ++k) {
          if (k == i || quo[k].is_zero() || M[k].cof[t].is_zero()) continue;
          for (auto& [qm, qc] : quo[k].t)
            acc = gp_submul(acc, qc, qm, M[k].cof[t], cx);
        }
        nc[t] = acc;
      }
      M[i].cof = nc;
    }
    M[i].g = nf;  // still monic: lm untouched by tail reduction
  }

  // deterministic order: ascending leading monomial
  std::sort(M.begin(), M.end(), [&](const Row& a, const Row& b) {
    return mono_cmp(a.g.lm(), b.g.lm(), ord) < 0;
  });
  for (auto& r : M) {
    out.gens.push_back(r.g);
    if (track) out.gb_of_input.push_back(r.cof);
  }
  if (track) {
    // express inputs in terms of the basis
    for (size_t i = 0; i < nin; ++i) {
      GPoly g = to_gpoly(gens_in[i], gvars, ord, tw);
      std::vector<GPoly> quo;
      GPoly nf = gp_reduce(g, out.gens, cx, &quo);
      if (!nf.is_zero())
        throw std::runtime_error("groebner: input fails to reduce to zero");
      out.input_of_gb.push_back(quo);
    }
  }
  return out;
}

GPoly gb_reduce(const GPoly& p, const GBasis& gb, std::vector<GPoly>* quotients) {
  Ctx cx{&gb.gvars, &gb.ord, &gb.tw};
  return gp_reduce(p, gb.gens, cx, quotients);
}

bool in_ideal(const Poly& p, const GBasis& gb) {
  GPoly g = to_gpoly(p, gb.gvars, gb.ord, gb.tw);
  return gb_reduce(g, gb).is_zero();
}

std::vector<Poly> eliminate(const GBasis& gb, const std::vector<int>& keep_vars) {
  std::vector<Poly> out;
  for (auto& g : gb.gens) {
    bool ok = true;
    for (auto& [m, c] : g.t)
      for (auto& [v, k] : m.e)
        if (std::find(keep_vars.begin(), keep_vars.end(), v) == keep_vars.end())
          ok = false;
    if (ok) out.push_back(from_gpoly(g));
  }
  return out;
}

bool is_zero_dimensional(const GBasis& gb) {
  for (int v : gb.gvars) {
    bool found = false;
    for (auto& g : gb.gens) {
      const Mono& m = g.lm();
      if (m.e.size() == 1 && m.e[0].first == v) found = true;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Poly> zero_dim_radical(const std::vector<Poly>& gens,
                                   const std::vector<int>& gvars, const Tower& tw) {
  std::vector<Poly> cur = gens;
  for (int round = 0; round < 8; ++round) {
    bool changed = false;
    for (int v : gvars) {
      // eliminate all other basis variables: lex with v last
      std::vector<int> ovars;
      for (int w : gvars)
        if (w != v) ovars.push_back(w);
      std::vector<int> lexvars = ovars;
      lexvars.push_back(v);
      GBasis gb = groebner(cur, gvars, Order{Order::LEX, lexvars}, tw);
      std::vector<Poly> uni = eliminate(gb, {v});
      if (uni.empty())
        throw std::runtime_error("zero_dim_radical: ideal not zero-dimensional");
      Poly m = uni[0];
      for (size_t i = 1; i < uni.size(); ++i) m = fgcd(m, uni[i], v, tw);
      Poly sf = fsquarefree_part(m, v, tw);
      if (sf.deg(v) != m.deg(v)) {
        cur.push_back(normalize_primitive(sf));
        changed = true;
      }
    }
    if (!changed) return cur;
  }
  throw std::runtime_error("zero_dim_radical: did not stabilize");
}

std::optional<ShapeBasis> shape_basis(const std::vector<Poly>& gens, int x, int y,
                                      const Tower& tw) {
  std::vector<int> gvars{x, y};
  GBasis gb = groebner(gens, gvars, Order{Order::LEX, {y, x}}, tw);
  Poly A;
  Frac B;
  bool haveA = false, haveB = false;
  if (gb.gens.size() != 2) return std::nullopt;
  for (auto& g : gb.gens) {
    const Mono& m = g.lm();
    if (m.deg(y) == 0) {
      A = from_gpoly(g);
      haveA = true;
    } else if (m.deg(y) == 1 && m.deg(x) == 0) {
      // g = y + tail(x), so B = -tail; collect over a common denominator
      Poly den(Q(1));
      for (size_t i = 1; i < g.t.size(); ++i)
        den = divexact(den * g.t[i].second.den, gcd(den, g.t[i].second.den));
      Poly num;
      for (size_t i = 1; i < g.t.size(); ++i)
        num += Poly::term(Q(1), g.t[i].first) * g.t[i].second.num *
               divexact(den, g.t[i].second.den);
      B = fnorm(Frac(-num, den), tw);
      haveB = true;
    } else {
      return std::nullopt;
    }
  }
  if (!haveA || !haveB) return std::nullopt;
  return ShapeBasis{A, B};
}

}  // namespace cal
