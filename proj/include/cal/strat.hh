// Stratification of the parameter space: compute the dense certificate set of
// a curve, decompose its closed complement into irreducible components,
// restrict the curve to each component's function field, recurse, and emit a
// disjoint cover of parameter space where each stratum carries a certified
// claim (degenerate, reducible, fixed positive genus, or a parametrization
// valid at every point).  Individual specializations are classified exactly.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cal/omega.hh"
#include "cal/param.hh"

namespace cal {

// Irreducible component of a closed parameter subset, resolved into a
// substitution: every ambient parameter maps to a value over `tw` (identity
// entries omitted).  `tw`'s parameters are the surviving free parameters plus
// at most one fresh rational coordinate; algebraic coordinates appear as
// extensions.  When the resolving map misses part of the component, the
// unreached sublocus is recorded as ideals for re-queuing.
struct ComponentDesc {
  std::vector<Poly> gens;                  // ideal of the component's closure
  int dim = 0;
  std::map<int, Frac> subst;               // solved parameter -> value over tw
  Tower tw;
  std::vector<int> free_vars;              // parameters of tw
  bool surjective = true;
  bool resolved = true;                    // false: honest fallback
  std::vector<std::vector<Poly>> unreached;
  std::string note;
};

enum class Tag { Degenerate, Reducible, GenusPositive, Parametrized, Unresolved };

// One piece of the cover.  The carrier is V(gens) composed with the
// substitution, minus V(ideal) for every entry of `removed`; all polynomials
// live over `tw`, whose variables are ambient parameters plus at most one
// auxiliary coordinate (a rational parameter or an algebraic extension).
struct Stratum {
  Tag tag = Tag::Unresolved;
  std::map<int, Frac> subst;               // ambient parameter -> value
  Tower tw;
  std::vector<Poly> gens;
  std::vector<std::vector<Poly>> removed;
  long genus = -1;                         // GenusPositive payload
  std::vector<Poly> factors;               // Reducible payload
  std::optional<RatParam> param;           // Parametrized payload
  std::string note;                        // provenance
};

struct Stratification {
  std::vector<Stratum> strata;
  std::vector<std::string> log;
};

struct SigmaResult {
  long g = -1;
  OpenSet sigma;                           // pure intersection
  std::optional<RatParam> param;           // present when g == 0
};

// genus of the curve and the dense open set on which the genus claim (or the
// parametrization, when the genus is zero) specializes; a known proper
// parametrization may be supplied to skip the genus computation
SigmaResult sigma(const PlaneCurve& c, const RatParam* given = nullptr);

// irreducible components of the complement of a pure open set, one per
// excluded factor, each resolved against the tower's parameters
std::vector<ComponentDesc> components(const OpenSet& s, const Tower& tw);

// the curve with the component's substitution applied, over the component's
// tower; `content` collects parameter-only content of the restricted
// polynomial (its zero set inside the component is degenerate)
struct Restriction {
  PlaneCurve curve;
  Poly content{Q(1)};
  bool degenerate = false;                 // restricted polynomial is constant
};
Restriction restrict_curve(const PlaneCurve& c, const ComponentDesc& comp);

// full recursive stratification; with recurse_factors the analysis continues
// on each factor of a reducible restriction instead of stopping
Stratification decompose(const PlaneCurve& c, bool recurse_factors = false);

// same, starting from a known parametrization of the generic curve; the
// parametrization is restricted along every component chain and reused
// wherever it stays on the curve and proper
Stratification decompose(const PlaneCurve& c, const RatParam& given,
                         bool recurse_factors = false);

// exact membership of a rational parameter point in a stratum's carrier
bool stratum_contains(const Stratum& s, const std::vector<int>& ambient,
                      const std::map<int, Q>& a0);

// index of the unique containing stratum, or -1
int containing_stratum(const Stratification& st, const std::vector<int>& ambient,
                       const std::map<int, Q>& a0);

struct ClassifyReport {
  Tag tag = Tag::Degenerate;
  long genus = -1;
  std::vector<Poly> factors;               // over Q; note marks further
                                           // splitting over the closure
  std::optional<RatParam> param;
  int stratum = -1;                        // index when a Stratification given
  std::string note;
};

// independent exact analysis of one specialization, plus the containing
// stratum of a cached stratification when provided
ClassifyReport classify_specialization(const PlaneCurve& c,
                                       const std::map<int, Q>& a0,
                                       const Stratification* st = nullptr);

}  // namespace cal
