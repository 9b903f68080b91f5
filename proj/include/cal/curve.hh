// Plane curves over tower fields: regular position, conjugate families of
// singular points, and the standard decomposition of the singular locus with
// multiplicities and ordinary / non-ordinary character.
#pragma once

#include <array>
#include <stdexcept>

#include "cal/factor.hh"
#include "cal/groebner.hh"

namespace cal {

// invertible 3x3 rational change of projective coordinates; a curve G is
// transformed to G(M*(x,y,z)), so a point p of the transformed curve maps to
// M*p on the original one
struct LinearChange {
  std::array<std::array<Q, 3>, 3> m;
  std::array<std::array<Q, 3>, 3> inv;

  static LinearChange identity();
  static LinearChange make(const std::array<std::array<Q, 3>, 3>& mat);
  bool is_identity() const;
  // substitute x,y,z -> rows of m applied to (x,y,z)
  Poly apply(const Poly& g, int x, int y, int z) const;
  // image M*(p1,p2,p3) of a point with polynomial coordinates
  std::array<Poly, 3> map_point(const Poly& p1, const Poly& p2,
                                const Poly& p3) const;
};

enum class Character { Ordinary, NonOrdinary, Unknown };
enum class Location { Affine, Infinity };

// finite Galois-stable set of projective points {(f1(s):f2(s):f3(s)) :
// m(s)=0}, s the family variable; coordinates reduced modulo m, jointly
// primitive, gcd(f1,f2,f3,m)=1, m squarefree (irreducible for the families a
// decomposition emits)
struct ConjugateFamily {
  int tvar = -1;
  Poly m;
  Poly f1, f2, f3;
  Location location = Location::Affine;
  int mult = 0;  // 0 while unknown
  Character character = Character::Unknown;
  // index (i,j) of the first non-vanishing order-`mult` derivative in the
  // chart used (lexicographic on (i,j), i the first chart variable)
  std::array<int, 2> mult_witness{-1, -1};

  int points() const { return m.deg(tvar); }  // number of conjugate points
};

struct PlaneCurve {
  Poly F;   // affine defining polynomial in x,y over tw
  Tower tw;
  int x = -1, y = -1, z = -1;
  Poly Fh;  // homogenization of F w.r.t. z
  int d = 0;  // degree in the curve variables
};

// degree of p in the listed variables only (parameters do not count)
int deg_in(const Poly& p, const std::vector<int>& vars);

PlaneCurve make_curve(const Poly& F, int x, int y, int z, const Tower& tw);

struct StandardDecomposition {
  LinearChange L;  // change taking the curve to regular position
  std::vector<ConjugateFamily> affine;    // in the original coordinates
  std::vector<ConjugateFamily> infinity;  // idem

  std::vector<ConjugateFamily> all() const;
};

struct NotRegularPosition : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FamilyNotOnCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ChangeSearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// tower extended by the family variable (always treated as algebraic, even
// when deg m = 1)
Tower family_tower(const Tower& tw, const ConjugateFamily& fam);

// g(f1,f2,f3) == 0 in the extension by m?  g is a polynomial in x,y,z.
bool vanishes_on_family(const Poly& g, const PlaneCurve& c,
                        const ConjugateFamily& fam);

// reduce coordinates mod m, scale by a deterministic pivot, clear the common
// denominator, make jointly primitive with a fixed sign
void canonicalize_family(ConjugateFamily& fam, const Tower& tw);

// Both regular-position conditions: (1) the coefficient of y^deg in F is a
// nonzero field element; (2) the radical of <F, F_x> admits a shape basis
// {A(x), y - B(x)} (distinct critical points have distinct x and one branch).
bool regular_position_check(const Poly& F, int x, int y, const Tower& tw);

// deterministic search over a fixed table of affine rational changes until
// the check passes; returns the change and the transformed affine polynomial
std::pair<LinearChange, Poly> regular_position_transform(const Poly& F, int x,
                                                         int y,
                                                         const Tower& tw);

// families {(1:s:0)}_m at infinity whose three first partials vanish
// (curve must be in regular position, so x does not divide F^h(x,y,0))
std::vector<ConjugateFamily> singular_families_infinity(const PlaneCurve& c);

// affine singular families {(s:B(s):1)}_m from the shape basis of
// radical<F, F_x, F_y>, one per irreducible factor of A
std::vector<ConjugateFamily> singular_families_affine(const PlaneCurve& c);

// least r with a non-vanishing order-r partial modulo m; stores r and the
// witness index on fam; throws FamilyNotOnCurve when F^h does not vanish
int family_multiplicity(const PlaneCurve& c, ConjugateFamily& fam);

// homogeneous degree-r tangent form at the family, reduced mod m, primitive
Poly tangent_polynomial(const PlaneCurve& c, const ConjugateFamily& fam);

// ordinary iff the tangent form, as a binary form along the chart lines, is
// squarefree over the residue field of m
Character family_character(const PlaneCurve& c, ConjugateFamily& fam);

// regular-position change + both family lists mapped back, with multiplicity
// and character attached
StandardDecomposition standard_decomposition(const PlaneCurve& c);

}  // namespace cal
