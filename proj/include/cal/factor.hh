// Exact factorization over Q, over Q(a1..an), and over algebraic extensions.
#pragma once

#include <stdexcept>

#include "cal/tower.hh"

namespace cal {

struct FactorList {
  Q unit{1};
  std::vector<std::pair<Poly, int>> factors;  // (irreducible primitive, mult)

  Poly expand() const;
};

// squarefree decomposition w.r.t. x over Q (Yun); content w.r.t. x is kept as
// a single factor of multiplicity 1 (callers recurse if they care)
std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& p, int x);

// complete irreducible factorization in Q[all vars of p]
FactorList factor_q(const Poly& p);

// factorization of p over the field Q(params)(exts)[free vars]: parameter-only
// and extension-only factors are units and get dropped into `unit_poly`
struct TowerFactorList {
  Poly unit_poly{Q(1)};                        // field-unit content (params/exts)
  std::vector<std::pair<Poly, int>> factors;   // primitive, ext-reduced
};
TowerFactorList factor_over_tower(const Poly& p, const Tower& tw);

// irreducible factors (with multiplicity) of a univariate-in-x polynomial over
// the tower field, via norms w.r.t. the top extension (recursing down)
TowerFactorList factor_univariate_ext(const Poly& p, int x, const Tower& tw);

// true if f (a polynomial in exactly the free vars x,y over the tower field)
// remains irreducible over the algebraic closure of the parameter field
bool absolutely_irreducible(const Poly& f, int x, int y, const Tower& tw);

// raised when internal degree limits are exceeded
struct DegreeLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// global cap on the total degree of multivariate factorization inputs
int factor_degree_limit();
void set_factor_degree_limit(int v);

// RAII: temporarily raise the factorization degree cap
struct DegreeLimitGuard {
  int saved;
  explicit DegreeLimitGuard(int v) : saved(factor_degree_limit()) {
    set_factor_degree_limit(v);
  }
  ~DegreeLimitGuard() { set_factor_degree_limit(saved); }
};

}  // namespace cal
