// Groebner bases over tower fields.  Basis polynomials live in the "basis
// variables"; every other variable (parameters, extension variables) belongs
// to the coefficient field.
#pragma once

#include <optional>

#include "cal/tower.hh"

namespace cal {

// polynomial in the basis variables with field-element coefficients,
// kept sorted descending under a fixed order
struct GPoly {
  std::vector<std::pair<Mono, Frac>> t;

  bool is_zero() const { return t.empty(); }
  const Mono& lm() const { return t.front().first; }
  const Frac& lc() const { return t.front().second; }
};

struct GBasis {
  std::vector<GPoly> gens;  // reduced, monic
  Order ord;
  std::vector<int> gvars;
  Tower tw;
  // cofactor tracking (optional): gens[i] = sum_j gb_of_input[i][j]*input[j]
  bool tracked = false;
  std::vector<std::vector<GPoly>> gb_of_input;
  std::vector<std::vector<GPoly>> input_of_gb;  // input[i] = sum_j M[i][j]*gens[j]

  std::vector<Poly> polys() const;  // cleared to Poly form (primitive)
};

GPoly to_gpoly(const Poly& p, const std::vector<int>& gvars, const Order& ord,
               const Tower& tw);
Poly from_gpoly(const GPoly& g);        // clears denominators, primitive
Frac gpoly_coeff_lcd(const GPoly& g);   // least common denominator as Frac(1,D)

GBasis groebner(const std::vector<Poly>& gens, const std::vector<int>& gvars,
                const Order& ord, const Tower& tw, bool track = false);

// normal form of p modulo the basis; if quotients is non-null it receives one
// GPoly per basis element with p = sum quotients[i]*gens[i] + nf
GPoly gb_reduce(const GPoly& p, const GBasis& gb,
                std::vector<GPoly>* quotients = nullptr);
bool in_ideal(const Poly& p, const GBasis& gb);

// generators of the elimination ideal: members whose monomials only involve
// keep_vars (gb must be lex with the eliminated variables ranked highest)
std::vector<Poly> eliminate(const GBasis& gb, const std::vector<int>& keep_vars);

bool is_zero_dimensional(const GBasis& gb);

// radical of a zero-dimensional ideal (Seidenberg: adjoin squarefree parts of
// the univariate eliminants); returns generators
std::vector<Poly> zero_dim_radical(const std::vector<Poly>& gens,
                                   const std::vector<int>& gvars, const Tower& tw);

// shape basis {A(x), y - B(x)} of a zero-dimensional radical ideal in (x, y);
// nullopt if the ideal is not in shape position w.r.t. this variable choice
struct ShapeBasis {
  Poly A;  // univariate in x, squarefree
  Frac B;  // y = B(x) on the variety; num in x, den a field element
};
std::optional<ShapeBasis> shape_basis(const std::vector<Poly>& gens, int x, int y,
                                      const Tower& tw);

}  // namespace cal
