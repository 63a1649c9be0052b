#pragma once

#include <cstdint>
#include <vector>

#include "excrat/monodromy.hpp"

namespace excrat {

// One multiplicity class of a fiber: `point_count` geometric points, each of
// ramification index `multiplicity`. Finite points are the roots of the monic
// squarefree `support`; the slot covering the point at infinity carries a
// constant support instead.
struct FiberPart {
  unsigned multiplicity;
  std::uint64_t point_count;
  Polynomial support;
  bool contains_infinity;
};

struct Fiber {
  ProjectivePoint target;
  std::vector<FiberPart> parts;  // ascending multiplicity, infinity slot last

  std::uint64_t total_weight() const;  // sum of multiplicity * point_count
  bool ramified() const;               // any multiplicity >= 2
  // index of the point at infinity inside this fiber, 0 when absent
  unsigned infinity_multiplicity() const;
};

// exact fiber of f over a point of the target line, covering every geometric
// preimage; the multiplicity weights always add up to deg f
Fiber fiber_profile(const RationalFunction& f, const ProjectivePoint& target);

struct BranchLocusResult {
  std::vector<ProjectivePoint> points;  // over the comparison field, ascending
  FieldPtr comparison_field;
  // true when every root of the derivative numerator provably maps into
  // `points`, so no branch point hides in an unprobed extension
  bool certified_complete;
};

// Branch points of f found by locating critical points over each probe field
// plus an exact test at infinity. Reported points are certified ramified; the
// completeness flag is a divisibility certificate independent of the probes.
BranchLocusResult branch_locus(const RationalFunction& f, const std::vector<FieldPtr>& probes);

struct QuotientMapReport {
  Fiber over_zero;
  Fiber over_infinity;
  bool base_splits;            // split-part factor is squarefree and prime to X^r - X
  bool layer_identity;         // (X^{r^2} - X) - (X^r - X) == (X^r - X)^r
  bool critical_in_quadratic;  // critical points all lie on the quadratic line
};

// ramification shape of the invariant map t of a scene
QuotientMapReport quotient_map_report(const GaloisScene& S);

// Orders of the ramification filtration subgroups at the marked places: entry
// i counts the stabilizer elements rho with v(pi∘rho - pi) >= i + 1 for the
// local uniformizer pi, descending until the trivial group.
std::vector<std::uint64_t> filtration_at_infinity(const MonodromyScene& S);
std::vector<std::uint64_t> filtration_at_quadratic_point(const MonodromyScene& S);

// 2|G| - 2 == (r+1) sum(inf_i - 1) + (r^2 - r) sum(quad_i - 1)
bool rh_identity(std::uint64_t order_G, std::uint64_t r,
                 const std::vector<std::uint64_t>& filtration_inf,
                 const std::vector<std::uint64_t>& filtration_quad);

struct PermutationCheck {
  std::uint64_t n;        // extension degree over the coefficient field
  std::uint64_t points;   // size of the projective line acted on
  bool bijection;
  std::uint64_t max_hit;  // largest fiber size seen
};

// does f permute the projective line over the degree-n extension?
PermutationCheck permutation_check(const RationalFunction& f, unsigned n);

}  // namespace excrat
