// Zariski-open subsets of parameter space certifying that specialization
// preserves gcd structure, squarefreeness, the singular locus, the genus, and
// the properness of a rational parametrization.  A set is an explicit
// expression tree over hypersurface complements in the parameters, with exact
// membership tests.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cal/genus.hh"
#include "cal/param.hh"

namespace cal {

// Open subset of parameter space.  An Inter node is the intersection of the
// complements of V(f) for its factors with all its parts; a Union node is the
// union of its parts.  Factors are irreducible over Q, parameter-only,
// primitive, deduplicated; the full space is an empty Inter node.
struct OpenSet {
  enum Kind { Inter, Union };
  Kind kind = Inter;
  std::vector<Poly> factors;   // Inter only: each factor must stay nonzero
  std::vector<OpenSet> parts;

  bool is_full() const {
    return kind == Inter && factors.empty() && parts.empty();
  }
  bool is_pure() const { return kind == Inter && parts.empty(); }
  bool operator==(const OpenSet& o) const;
  std::string str() const;
};

OpenSet os_full();
OpenSet os_leaf(const Poly& g);  // complement of V(g); g must be nonzero
OpenSet os_intersect(const OpenSet& a, const OpenSet& b);
OpenSet os_union(const OpenSet& a, const OpenSet& b);

// Absorb union parts that are implied by the intersection factors (a union of
// leaf complements equals the complement of the common zeros of its leaves;
// it is implied when the factor product lies in the radical of that ideal).
OpenSet simplify(const OpenSet& s);

// flattened factor list of a pure intersection (simplify first)
std::vector<Poly> excluded_factors(const OpenSet& s);

// exact membership of a rational parameter point
bool membership(const OpenSet& s, const std::map<int, Q>& a0);

// containment decided on factored leaf lists; requires b pure (or full)
bool subset_of(const OpenSet& a, const OpenSet& b);

struct NotSquarefreeInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CharacterMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonOrdinaryPresent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotProper : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// parameters where every extension's minimal polynomial keeps its degree, so
// the algebraic elements of the tower stay well-defined
OpenSet omega_gamma(const Tower& tw);

// definedness / nonvanishing of H (free variables = the non-field variables),
// given with an optional parameter-only denominator; nonvanishing excludes
// the common zeros of the coefficient norm numerators
OpenSet omega_def(const Poly& H, const Tower& tw);
OpenSet omega_def(const Poly& H, const Poly& den, const Tower& tw);
OpenSet omega_nonz(const Poly& H, const Tower& tw);
OpenSet omega_nonz(const Poly& H, const Poly& den, const Tower& tw);

// specialization commutes with gcd in v (equal gcd degree) inside the set
OpenSet omega_gcd(const Poly& f1, const Poly& f2, int v, const Tower& tw);
OpenSet omega_gcd_many(const std::vector<Poly>& fs, int v, const Tower& tw);

// specialization preserves squarefreeness and degree of f in v
OpenSet omega_sqfree(const Poly& f, int v, const Tower& tw);

// specialization preserves the total degree of the defining polynomial
OpenSet omega_curve(const PlaneCurve& c);

enum class FamilyLevel { Def, Mult, Ord };

// specialization keeps a conjugate family of singular points well-defined /
// of the same multiplicity / of the same ordinary character
OpenSet omega_family(const PlaneCurve& c, const ConjugateFamily& fam,
                     FamilyLevel level);

// intersection of the ordinary-level sets over the whole singular locus
OpenSet omega_sing_ord(const PlaneCurve& c);

// specialized basis stays a Groebner basis of the specialized ideal: all
// denominators in the reduced basis and in both cofactor matrices stay
// nonzero (basis must be computed with cofactor tracking)
OpenSet omega_spgb(const GBasis& gb);
OpenSet omega_spgb(const std::vector<Poly>& gens, const std::vector<int>& gvars,
                   const Order& ord, const Tower& tw);

// genus preservation for a curve with ordinary-only singular locus: family
// sets plus cardinality control of the singular locus via Groebner bases
OpenSet omega_genus_ord(const PlaneCurve& c);

// blowup chain specializes birationally: matrix entries defined, determinant
// product nonzero, and no coordinate line divides a transformed polynomial
OpenSet omega_blowup(const PlaneCurve& c, const NeighborGraph& g);

// genus preservation in general (ordinary case delegates to omega_genus_ord)
OpenSet omega_genus(const PlaneCurve& c);

// specialized parametrization stays proper and parametrizes the specialized
// curve; P must carry a properness certificate
OpenSet omega_proper(const RatParam& P, const PlaneCurve& c);

// specialized parametrization stays surjective (P assumed normal)
OpenSet omega_normal(const RatParam& P);

}  // namespace cal
