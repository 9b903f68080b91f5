// Genus of an absolutely irreducible plane curve: quadratic (Cremona)
// transformations blow up each non-ordinary conjugate family of singular
// points; the neighboring singular families live on towers extended by one
// algebraic variable per level, and the genus formula sums #(F) mult (mult-1)
// over the whole graph.
#pragma once

#include <optional>

#include "cal/curve.hh"

namespace cal {

// 3x3 invertible change with entries in the tower field (the blowup centers
// are algebraic over the base, so rational entries do not suffice)
struct FieldChange {
  std::array<std::array<Frac, 3>, 3> m;
  std::array<std::array<Frac, 3>, 3> inv;

  static FieldChange make(const std::array<std::array<Frac, 3>, 3>& mat,
                          const Tower& tw);
  // substitute x,y,z -> rows of m applied to (x,y,z); denominators are field
  // units and get cleared, so the result is a polynomial representative
  Poly apply(const Poly& g, int x, int y, int z, const Tower& tw) const;
};

// one quadratic transformation: G^h(L) = G1, then G1(yz, xz, xy) divided by
// the maximal monomial x^n1 y^n2 z^n3 leaves the transform Gstar
struct BlowupRecord {
  FieldChange L;
  Poly G1;
  Poly Gstar;
  int n1 = 0, n2 = 0, n3 = 0;
};

// node of the neighboring graph; `tw` is the tower the family's minimal
// polynomial lives over (the family variable extends it by one level), and
// `points` is the absolute number of conjugates, i.e. the product of the
// minimal-polynomial degrees along the chain from the root
struct GraphNode {
  ConjugateFamily fam;
  Tower tw;
  long points = 1;
  std::optional<BlowupRecord> blowup;            // set when fam was blown up
  std::vector<GraphNode> children;               // singular neighbors
  std::vector<ConjugateFamily> regular_neighbors;  // mult 1; not in the sum
};

struct NeighborGraph {
  StandardDecomposition dec;
  std::vector<GraphNode> roots;  // one per decomposition family

  // sum of points * mult * (mult - 1) over every node (twice the delta sum)
  long mult_sum() const;
};

struct OrdinaryFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotIrreducible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// one blowup step, for inspection and certificates
struct BlowupStep {
  BlowupRecord rec;
  PlaneCurve transformed;  // the curve of Gstar over `tw`
  Tower tw;                // base tower extended by the family variable
  std::vector<ConjugateFamily> neighborhood;  // on z = 0, mult and character
                                              // attached; mult-1 entries are
                                              // the regular neighbors
};
BlowupStep blowup_family(const PlaneCurve& c, const ConjugateFamily& fam);

NeighborGraph neighbor_graph(const PlaneCurve& c);

// geometric genus via (d-1)(d-2)/2 - mult_sum/2; throws NotIrreducible when
// the defining polynomial factors over the algebraic closure
long genus(const PlaneCurve& c);

}  // namespace cal
