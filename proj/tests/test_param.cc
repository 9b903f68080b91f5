#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cal/param.hh"

using namespace cal;

static Poly V(const char* n) { return Poly::var(n); }

static PlaneCurve mk(const Poly& F) {
  Tower tw;
  return make_curve(F, var_id("x"), var_id("y"), var_id("z"), tw);
}

static PlaneCurve mkp(const Poly& F, std::vector<const char*> params) {
  Tower tw;
  for (auto* p : params) tw.params.push_back(var_id(p));
  return make_curve(F, var_id("x"), var_id("y"), var_id("z"), tw);
}

// F(P(t)) == 0 as an identity over the parametrization's tower
static bool on_curve(const PlaneCurve& c, const RatParam& P) {
  Poly W = subst(c.Fh, {{c.x, P.p1 * P.q2},
                        {c.y, P.p2 * P.q1},
                        {c.z, P.q1 * P.q2}});
  return is_zero_in_tower(W, P.tw);
}

TEST_CASE("line parametrization") {
  Poly X = V("x"), Y = V("y");
  PlaneCurve c = mkp(V("a1") * X + Y + Poly(Q(1)), {"a1"});
  RatParam P = parametrize_line(c);
  CHECK(on_curve(c, P));
  CHECK(param_deg(P) == 1);
  CHECK(P.proper);
  CHECK(P.tw.exts.empty());
  // vertical line x = 2
  PlaneCurve v = mk(X - Poly(Q(2)));
  RatParam Pv = parametrize_line(v);
  CHECK(on_curve(v, Pv));
  CHECK(Pv.proper);
}

TEST_CASE("conic parametrization from a rational point") {
  Poly X = V("x"), Y = V("y");
  PlaneCurve circ = mk(X.pow(2) + Y.pow(2) - Poly(Q(1)));
  RatParam P = parametrize_conic(circ);
  CHECK(on_curve(circ, P));
  CHECK(P.proper);
  CHECK(param_deg(P) == 2);
  CHECK(P.tw.exts.empty());
  PlaneCurve par = mk(Y - X.pow(2));
  RatParam Pp = parametrize_conic(par);
  CHECK(on_curve(par, Pp));
  CHECK(Pp.proper);
  CHECK(param_deg(Pp) == 2);
  // polynomial parametrization reaches every affine point
  CHECK(!critical_point(Pp).has_value());
  // hyperbola: point at infinity route
  PlaneCurve hyp = mk(X * Y - Poly(Q(1)));
  RatParam Ph = parametrize_conic(hyp);
  CHECK(on_curve(hyp, Ph));
  CHECK(Ph.proper);
}

TEST_CASE("conic needing a square root of a parameter") {
  Poly X = V("x"), Y = V("y");
  Poly F = V("a1") * X.pow(2) + V("a2") * Y.pow(2) - Poly(Q(1));
  PlaneCurve c = mkp(F, {"a1", "a2"});
  RatParam P = parametrize_conic(c);
  REQUIRE(P.tw.exts.size() == 1);
  CHECK(P.tw.exts[0].minpoly.deg(P.tw.exts[0].var) == 2);
  CHECK(on_curve(c, P));
  CHECK(P.proper);
  CHECK(param_deg(P) == 2);
}

TEST_CASE("critical point") {
  // stereographic circle parametrization misses (-1, 0)
  RatParam P;
  P.tvar = var_id("_t");
  Poly t = Poly::var(P.tvar);
  P.p1 = Poly(Q(1)) - t.pow(2);
  P.q1 = Poly(Q(1)) + t.pow(2);
  P.p2 = Poly(Q(2)) * t;
  P.q2 = Poly(Q(1)) + t.pow(2);
  auto cp = critical_point(P);
  REQUIRE(cp.has_value());
  CHECK((*cp)[0] == fnorm(Frac(Q(-1)), P.tw));
  CHECK((*cp)[1] == fnorm(Frac(Q(0)), P.tw));
}

TEST_CASE("properness certificates") {
  int tv = var_id("_t");
  Poly t = Poly::var(tv);
  RatParam good;
  good.tvar = tv;
  good.p1 = t;
  good.q1 = Poly(Q(1));
  good.p2 = t.pow(2);
  good.q2 = Poly(Q(1));
  CHECK(properness_check(good));
  CHECK(good.properness_gcd.deg(tv) == 1);
  RatParam bad;
  bad.tvar = tv;
  bad.p1 = t.pow(2);
  bad.q1 = Poly(Q(1));
  bad.p2 = t.pow(4);
  bad.q2 = Poly(Q(1));
  CHECK(!properness_check(bad));
  CHECK(bad.properness_gcd.deg(tv) == 2);
}

TEST_CASE("adjoint systems") {
  Poly X = V("x"), Y = V("y");
  // smooth conic: no conditions, only the constant form
  PlaneCurve conic = mk(X.pow(2) + Y.pow(2) - Poly(Q(1)));
  AdjointSystem a0 = adjoint_system(conic, neighbor_graph(conic), 0);
  CHECK(a0.basis.size() == 1);
  // nodal cubic, node at the origin: lines through the node
  PlaneCurve nod = mk(Y.pow(2) - X.pow(3) - X.pow(2));
  AdjointSystem a1 = adjoint_system(nod, neighbor_graph(nod), 1);
  REQUIRE(a1.basis.size() == 2);
  for (auto& b : a1.basis) {
    CHECK(deg_in(b, {nod.x, nod.y, nod.z}) == 1);
    CHECK(uv_coeff(uv_coeff(b, nod.x, 0), nod.y, 0).is_zero());
  }
  // trifolium: ordinary triple point at the origin, conics doubling there
  Poly tri = (X.pow(2) + Y.pow(2)).pow(2) - X.pow(3) + Poly(Q(3)) * X * Y.pow(2);
  PlaneCurve tc = mk(tri);
  AdjointSystem a2 = adjoint_system(tc, neighbor_graph(tc), 2);
  CHECK(a2.basis.size() == 3);
  for (auto& b : a2.basis) {
    // multiplicity 2 at (0:0:1): no z^2, xz, yz terms
    Poly bz = subst(b, {{tc.x, Poly(Q(0))}, {tc.y, Poly(Q(0))}});
    CHECK(bz.is_zero());
    CHECK(uv_coeff(uv_coeff(uv_coeff(b, tc.x, 1), tc.y, 0), tc.z, 1).is_zero());
    CHECK(uv_coeff(uv_coeff(uv_coeff(b, tc.x, 0), tc.y, 1), tc.z, 1).is_zero());
  }
}

TEST_CASE("degree reduction step") {
  Poly X = V("x"), Y = V("y");
  PlaneCurve nod = mk(Y.pow(2) - X.pow(3) - X.pow(2));
  AdjointSystem adj = adjoint_system(nod, neighbor_graph(nod), 1);
  HHStep st = hilbert_hurwitz_step(nod, adj);
  CHECK(st.image.d == 1);
  PlaneCurve conic = mk(X.pow(2) + Y.pow(2) - Poly(Q(1)));
  AdjointSystem a0 = adjoint_system(conic, neighbor_graph(conic), 0);
  CHECK_THROWS_AS(hilbert_hurwitz_step(conic, a0), std::invalid_argument);
}

TEST_CASE("nodal cubic parametrization") {
  Poly X = V("x"), Y = V("y");
  PlaneCurve c = mk(Y.pow(2) - X.pow(3) - X.pow(2));
  RatParam P = parametrize(c);
  CHECK(on_curve(c, P));
  CHECK(P.proper);
  CHECK(param_deg(P) == 3);
  CHECK(P.tw.exts.empty());  // odd degree never needs the extension
}

TEST_CASE("cuspidal cubic with a parameter") {
  // x^3 + y^3 + a1 x^2; reference proper parametrization:
  // (-t^3 a1/(t^3+1), -t^2 a1/(t^3+1))
  Poly X = V("x"), Y = V("y"), A = V("a1");
  PlaneCurve c = mkp(X.pow(3) + Y.pow(3) + A * X.pow(2), {"a1"});
  RatParam P = parametrize(c);
  CHECK(on_curve(c, P));
  CHECK(P.proper);
  CHECK(param_deg(P) == 3);
  CHECK(P.tw.exts.empty());
  // the reference satisfies the same certificates, so the two agree up to a
  // fractional-linear change of t
  RatParam R;
  R.tvar = var_id("_t");
  Poly t = Poly::var(R.tvar);
  R.tw = c.tw;
  R.p1 = Poly(Q(0)) - t.pow(3) * A;
  R.q1 = t.pow(3) + Poly(Q(1));
  R.p2 = Poly(Q(0)) - t.pow(2) * A;
  R.q2 = t.pow(3) + Poly(Q(1));
  CHECK(on_curve(c, R));
  CHECK(properness_check(R));
}

TEST_CASE("quintic with a ramphoid cusp") {
  Poly X = V("x"), Y = V("y");
  PlaneCurve c = mk(Y.pow(2) - X.pow(5));
  RatParam P = parametrize(c);
  CHECK(on_curve(c, P));
  CHECK(P.proper);
  CHECK(param_deg(P) == 5);
  CHECK(P.tw.exts.empty());
}

TEST_CASE("positive genus rejected") {
  Poly X = V("x"), Y = V("y");
  CHECK_THROWS_AS(parametrize(mk(Y.pow(2) - X.pow(3) + X)), NotGenusZero);
}

TEST_CASE("sextic with delta ten") {
  // specialization of a parametric sextic; reference parametrization
  // (t^5, t^6 - t^2)
  Poly X = V("x"), Y = V("y");
  Poly F = X.pow(6) - Poly(Q(5)) * X.pow(4) * Y - Y.pow(5) +
           Poly(Q(5)) * X.pow(2) * Y.pow(2) - X.pow(2);
  PlaneCurve c = mk(F);
  RatParam R;  // the reference, checked directly
  R.tvar = var_id("_t");
  Poly t = Poly::var(R.tvar);
  R.p1 = t.pow(5);
  R.q1 = Poly(Q(1));
  R.p2 = t.pow(6) - t.pow(2);
  R.q2 = Poly(Q(1));
  CHECK(on_curve(c, R));
  CHECK(properness_check(R));
  RatParam P = parametrize(c);
  CHECK(on_curve(c, P));
  CHECK(P.proper);
  CHECK(param_deg(P) == 6);
}

TEST_CASE("degree chain on genus-zero curves") {
  Poly X = V("x"), Y = V("y");
  // degrees 3..6, mixing node, cusp and deeper singularities
  std::vector<Poly> curves = {
      Y.pow(2) - X.pow(3) - X.pow(2),                       // 3: node
      Y.pow(2) - X.pow(3),                                  // 3: cusp
      (X.pow(2) + Y.pow(2)).pow(2) - X.pow(3) + Poly(Q(3)) * X * Y.pow(2),
      Y.pow(2) - X.pow(5),                                  // 5: higher cusp
  };
  for (auto& F : curves) {
    PlaneCurve c = mk(F);
    PlaneCurve cur = c;
    int steps = 0;
    while (cur.d > 2) {
      AdjointSystem adj = adjoint_system(cur, neighbor_graph(cur), cur.d - 2);
      HHStep st = hilbert_hurwitz_step(cur, adj);
      CHECK(st.image.d == cur.d - 2);
      cur = st.image;
      ++steps;
    }
    CHECK(steps == (c.d - (c.d % 2 == 0 ? 2 : 1)) / 2);
    RatParam P = parametrize(c);
    CHECK(on_curve(c, P));
    CHECK(P.proper);
    CHECK(param_deg(P) == std::max(F.deg(c.x), F.deg(c.y)));
    if (c.d % 2 == 1) CHECK(P.tw.exts.empty());
  }
}
