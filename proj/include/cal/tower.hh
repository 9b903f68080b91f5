// Field towers Q -> Q(a1..an) -> algebraic extensions, and fractions over
// them.  Extension variables carry a minimal polynomial that is monic over the
// field; we store it with cleared denominators, so its leading coefficient in
// the extension variable is a polynomial in the parameters (and lower
// extension variables) only.
#pragma once

#include "cal/poly.hh"

namespace cal {

struct Ext {
  int var = -1;
  Poly minpoly;  // in `var` plus params / earlier ext vars; deg(var) >= 1
};

struct Tower {
  std::vector<int> params;  // transcendental parameters
  std::vector<Ext> exts;    // ordered: each minpoly uses only earlier exts

  bool is_param(int v) const;
  int ext_index(int v) const;  // -1 if not an extension variable
  bool is_ext(int v) const { return ext_index(v) >= 0; }
  // a "free" variable (x, y, t, ...) is anything not param and not ext
  bool is_field_var(int v) const { return is_param(v) || is_ext(v); }

  Tower with_ext(int var, const Poly& minpoly) const;
  Tower without_top_ext() const;
};

// fraction num/den of polynomials; canonical after fnorm: extension variables
// reduced below their minpoly degrees in num, den free of extension variables,
// gcd(num, den) trivial, den primitive with positive leading sign
struct Frac {
  Poly num;
  Poly den{Q(1)};

  Frac() = default;
  Frac(const Poly& n) : num(n) {}
  Frac(const Poly& n, const Poly& d) : num(n), den(d) {}
  Frac(const Q& c) : num(Poly(c)) {}
  bool is_zero() const { return num.is_zero(); }
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

// reduce every extension variable's exponents below its minpoly degree;
// introduces a parameter-only denominator (returned multiplied into den)
void reduce_exts(Poly& num, Poly& den, const Tower& tw);

Frac fnorm(const Frac& f, const Tower& tw);  // full canonicalization
Frac fadd(const Frac& a, const Frac& b, const Tower& tw);
Frac fsub(const Frac& a, const Frac& b, const Tower& tw);
Frac fmul(const Frac& a, const Frac& b, const Tower& tw);
Frac fdiv(const Frac& a, const Frac& b, const Tower& tw);
Frac finv(const Frac& a, const Tower& tw);
Frac fneg(const Frac& a);
Frac fpow(const Frac& a, int n, const Tower& tw);
Frac fsubst(const Frac& f, int var, const Frac& value, const Tower& tw);

// 1/d for d a nonzero element of the tower field (extension vars allowed);
// result has extension-free denominator
Frac inv_algebraic(const Poly& d, const Tower& tw);

// gcd of A, B as univariate polynomials in x over the tower field (other free
// variables become part of the field transcendentally -- caller beware).
// Result: monic-normalized then denominator-cleared, ext-reduced, primitive.
Poly fgcd(const Poly& A, const Poly& B, int x, const Tower& tw);
Poly fgcd_many(const std::vector<Poly>& ps, int x, const Tower& tw);

// squarefree part over the field: p / fgcd(p, dp/dx)
Poly fsquarefree_part(const Poly& p, int x, const Tower& tw);

// exact division of p by g as polynomials in x over the tower field; result is
// denominator-cleared and primitive (defined up to a field unit)
Poly field_divexact(const Poly& p, const Poly& g, int x, const Tower& tw);

// resultant of ext-reduced polys in x over the tower field (ring resultant
// followed by ext reduction; requires reduced leading coefficients nonzero)
Frac fresultant(const Poly& f, const Poly& g, int x, const Tower& tw);

// norm of f w.r.t. the top extension (var gamma, minpoly m): replace gamma by
// a fresh variable s and take res_s(f|_{gamma->s}, m|_{gamma->s})
Poly ext_norm(const Poly& f, const Ext& ext);

// true if the reduced representative of p is zero in the tower
bool is_zero_in_tower(const Poly& p, const Tower& tw);

}  // namespace cal
