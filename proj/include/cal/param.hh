// Rational parametrization of genus-zero curves: adjoint linear systems cut
// by the singular divisor of the neighboring graph, birational degree
// reduction by adjoint triples down to a line or conic, stereographic
// parametrization of the base case, and pullback through the map chain.
#pragma once

#include "cal/genus.hh"

namespace cal {

// basis of homogeneous forms of the given degree whose multiplicity at every
// r-fold family of the graph (including infinitely-near ones) is >= r-1
struct AdjointSystem {
  int degree = 0;
  std::vector<Poly> basis;  // forms in x,y,z over the curve's tower
};

AdjointSystem adjoint_system(const PlaneCurve& c, const NeighborGraph& g,
                             int degree);

// map t -> (p1/q1, p2/q2); components reduced over the tower, which may
// extend the curve's tower by one square root adjoined for a conic point
struct RatParam {
  int tvar = -1;
  Poly p1, q1, p2, q2;
  Tower tw;
  bool proper = false;
  Poly properness_gcd;  // gcd(G1,G2) in (h,t) once properness was checked
};

// degree in the parametrization variable
int param_deg(const RatParam& P);

// one degree-reduction step: the triple phi maps the domain curve
// birationally onto `image` of degree exactly deg-2
struct HHStep {
  std::array<Poly, 3> phi;  // homogeneous adjoint forms in x,y,z
  PlaneCurve image;
};

struct RetryExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotGenusZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BasePointDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// choose an adjoint triple from a deterministic schedule; the image degree
// dropping to exactly deg-2 certifies birationality
HHStep hilbert_hurwitz_step(const PlaneCurve& c, const AdjointSystem& adj);

RatParam parametrize_line(const PlaneCurve& c);
RatParam parametrize_conic(const PlaneCurve& c);

// full pipeline: reduce to a line or conic, parametrize, pull back; the
// result is proper with deg_t = max(deg_x F, deg_y F)
RatParam parametrize(const PlaneCurve& c);

// parametrization of the step's domain curve from one of its image:
// the unique moving point of {phi1 q2 - phi2 q1, phi1 q3 - phi3 q1} on M
RatParam pullback_param(const PlaneCurve& domain, const HHStep& step,
                        const RatParam& q);

// generic-fiber criterion: deg_t gcd(G1,G2) = 1 where
// G_i = p_i(h) q_i(t) - p_i(t) q_i(h); stores the certificate on P
bool properness_check(RatParam& P);

// the one affine point a proper parametrization may miss: the t->infinity
// limit, defined when neither numerator degree exceeds its denominator's
std::optional<std::array<Frac, 2>> critical_point(const RatParam& P);

}  // namespace cal
