#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cal/factor.hh"

using namespace cal;

static Poly V(const char* n) { return Poly::var(n); }

// check that a factor list multiplies back to p and has the expected count
static void check_complete(const FactorList& fl, const Poly& p, int nfactors) {
  CHECK((int)fl.factors.size() == nfactors);
  CHECK(fl.expand() == p);
}

TEST_CASE("univariate over Q: small products") {
  Poly x = V("x");
  Poly p = (x - Poly(1)) * (x + Poly(2)) * (x * x + Poly(1));
  auto fl = factor_q(p);
  check_complete(fl, p, 3);
  for (auto& [f, m] : fl.factors) CHECK(m == 1);
}

TEST_CASE("univariate over Q: multiplicities and content") {
  Poly x = V("x");
  Poly p = Q(6) * (x - Poly(1)).pow(3) * (2 * x + Poly(3)).pow(2);
  auto fl = factor_q(p);
  CHECK(fl.expand() == p);
  CHECK(fl.factors.size() == 2);
  std::vector<int> mults;
  for (auto& [f, m] : fl.factors) mults.push_back(m);
  std::sort(mults.begin(), mults.end());
  CHECK(mults == std::vector<int>{2, 3});
}

TEST_CASE("univariate over Q: irreducibles stay whole") {
  Poly x = V("x");
  // x^4 + 1 is irreducible over Q though it splits mod every prime
  auto fl = factor_q(x.pow(4) + Poly(1));
  check_complete(fl, x.pow(4) + Poly(1), 1);
  // swinnerton-dyer-like: minimal polynomial of sqrt2+sqrt3
  Poly sd = x.pow(4) - 10 * x * x + Poly(1);
  check_complete(factor_q(sd), sd, 1);
}

TEST_CASE("univariate over Q: rational roots and big coefficients") {
  Poly x = V("x");
  Poly p = (3 * x - Poly(2)) * (5 * x + Poly(7)) * (x.pow(3) - x + Poly(1));
  check_complete(factor_q(p), p, 3);
  Poly q = (x.pow(2) - 2 * x + Poly(3)).pow(2) * (x + Poly(12345));
  auto fl = factor_q(q);
  CHECK(fl.expand() == q);
  CHECK(fl.factors.size() == 2);
}

TEST_CASE("bivariate factorization") {
  Poly x = V("x"), y = V("y");
  Poly p = (x + y) * (x - y) * (x * x + y + Poly(1));
  check_complete(factor_q(p), p, 3);
  Poly q = (x * y + Poly(1)) * (x + y * y - Poly(2));
  check_complete(factor_q(q), q, 2);
}

TEST_CASE("bivariate with nontrivial leading coefficient") {
  Poly x = V("x"), y = V("y");
  Poly p = (y * x + Poly(1)) * ((y + Poly(1)) * x * x + y);
  check_complete(factor_q(p), p, 2);
}

TEST_CASE("trivariate factorization") {
  Poly x = V("x"), y = V("y"), z = V("z");
  Poly p = (x + y + z) * (x * y + z * z + Poly(1)) * (x - Poly(2));
  check_complete(factor_q(p), p, 3);
}

TEST_CASE("multivariate irreducible") {
  Poly x = V("x"), y = V("y");
  Poly p = x * x * y + y * y + x + Poly(1);
  check_complete(factor_q(p), p, 1);
}

TEST_CASE("paper-style parameter polynomial splits off parameter factors") {
  // over Q(a1,a2) the factor a1*a2 is a unit
  Tower tw;
  tw.params = {var_id("a1"), var_id("a2")};
  Poly a1 = V("a1"), a2 = V("a2"), x = V("x");
  Poly p = a1 * a2 * (x - a1) * (x * x + a2);
  auto tf = factor_over_tower(p, tw);
  CHECK(tf.factors.size() == 2);
  for (auto& [f, m] : tf.factors) CHECK(m == 1);
  CHECK(tf.unit_poly == a1 * a2);
}

TEST_CASE("squarefree decomposition") {
  Poly x = V("x"), y = V("y");
  Poly p = (x + y).pow(2) * (x - Poly(1)).pow(3);
  auto sq = squarefree_decompose(p, var_id("x"));
  Poly re(Q(1));
  for (auto& [f, m] : sq) re *= f.pow(m);
  CHECK((re == p || re == -p));
}

TEST_CASE("factorization over quadratic extension (norm descent)") {
  // gm^2 = 2: x^2 - 2 = (x-gm)(x+gm)
  Tower tw;
  Poly gm = V("gm"), x = V("x");
  tw.exts.push_back({var_id("gm"), gm * gm - Poly(2)});
  auto tf = factor_over_tower(x * x - Poly(2), tw);
  CHECK(tf.factors.size() == 2);
  for (auto& [f, m] : tf.factors) {
    CHECK(f.deg(var_id("x")) == 1);
    CHECK(m == 1);
  }
  // x^2 + 1 stays irreducible over Q(sqrt 2)
  auto tf2 = factor_over_tower(x * x + Poly(1), tw);
  CHECK(tf2.factors.size() == 1);
}

TEST_CASE("factorization over parametric extension") {
  // gm^2 = a over Q(a): x^2 - a splits, x^2 - a*x + 1 does not
  Tower tw;
  tw.params = {var_id("a")};
  Poly gm = V("gm"), x = V("x"), a = V("a");
  tw.exts.push_back({var_id("gm"), gm * gm - a});
  auto tf = factor_over_tower(x * x - a, tw);
  CHECK(tf.factors.size() == 2);
  auto tf2 = factor_over_tower(x * x - a * x + Poly(1), tw);
  CHECK(tf2.factors.size() == 1);
}

TEST_CASE("absolute irreducibility") {
  Tower tw;
  tw.params = {var_id("a")};
  Poly x = V("x"), y = V("y"), a = V("a");
  int xv = var_id("x"), yv = var_id("y");
  // x^2 + y^2 - 1 is absolutely irreducible
  CHECK(absolutely_irreducible(x * x + y * y - Poly(1), xv, yv, tw));
  // x^2 - a*y^2 factors over Q(a)(sqrt a)
  CHECK(!absolutely_irreducible(x * x - a * y * y, xv, yv, tw));
  // x^2+y^2 = (x+iy)(x-iy) over C
  CHECK(!absolutely_irreducible(x * x + y * y, xv, yv, tw));
  // nodal cubic is absolutely irreducible
  CHECK(absolutely_irreducible(y * y - x * x * (x + Poly(1)), xv, yv, tw));
}

TEST_CASE("degree limit guard") {
  Poly x = V("x"), y = V("y");
  Poly p = (x + y).pow(30) + Poly(1);
  CHECK_THROWS_AS((void)factor_q(p), DegreeLimit);
  {
    DegreeLimitGuard g(64);
    CHECK_NOTHROW((void)factor_q((x + y).pow(2) * (x - y) + Poly(0)));
  }
}
