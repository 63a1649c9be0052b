#pragma once

#include <cstdint>
#include <vector>

#include "excrat/polyrat.hpp"

namespace excrat {

// Parameters for one member of the family. r = p^{2k} is the square power
// behind the exceptional map, q = p^l the coefficient field size, and
// Q = p^{lcm(2k, l)} the compositum where the covering scene lives. The
// admissibility condition ord_2(l) <= ord_2(k) is what makes the Frobenius
// layer count d = lcm(2k, l)/l even.
struct FamilyParams {
  std::uint64_t p;
  unsigned k;
  unsigned l;
  std::uint64_t r;  // p^{2k}
  std::uint64_t q;  // p^l
  unsigned d;       // lcm(2k, l)/l
  FieldPtr Fq;
  FieldPtr Fr;
  FieldPtr FQ;
  FieldElement a;  // nonsquare in F_q

  static FamilyParams create(std::uint64_t p, unsigned k, unsigned l);
  static FamilyParams create(std::uint64_t p, unsigned k, unsigned l, const FieldElement& a);
};

// Dickson polynomial of the second kind with parameter a: the degree-n
// polynomial with E_n(y + a/y) = (y^{n+1} - (a/y)^{n+1}) / (y - a/y).
// Coefficients come from Lucas-reduced binomials.
Polynomial dickson_second(const FieldPtr& field, std::uint64_t n, const FieldElement& a);
// same polynomial by the three-term recurrence E_{j+1} = X E_j - a E_{j-1};
// independent of the closed form, used to cross-examine it
Polynomial dickson_second_by_recurrence(const FieldPtr& field, std::uint64_t n,
                                        const FieldElement& a);
// cleared functional equation: X^n E_n((X^2+a)/X) * (X^2 - a) = X^{2n+2} - a^{n+1}
bool check_dickson_functional_equation(const Polynomial& e_n, const FieldElement& a);

// f = E_r(X, a)^{(r+1)/2} / (X^2 - 4a)^{(r^2-r)/4} over F_q, degree (r^2+r)/2
RationalFunction build_family_map(const FamilyParams& P);

// The covering data over F_Q that exhibits f's monodromy:
//   vprime = sqrt(a) (u^{r-1} + 1) / u^{(r-1)/2}
//   t      = (u^{r^2} - u)^{(r+1)/2} / (u^r - u)^{(r^2+1)/2}
//   tprime = sqrt(a)^r t
// with f(vprime) = tprime.
struct GaloisScene {
  FamilyParams params;
  RationalFunction f_base;  // over F_q
  RationalFunction f_lift;  // coefficients embedded into F_Q
  RationalFunction vprime;
  RationalFunction t;
  RationalFunction tprime;
  FieldElement sqrt_a;      // canonical square root of a inside F_Q
  EmbeddingMap embed_r_to_Q;
};

GaloisScene build_scene(const FamilyParams& P);

// f(vprime) == tprime
bool check_semiconjugacy(const GaloisScene& S);
// t(u + c) == t for the image of every c in F_r; O(r deg^2)
bool check_shift_invariance(const GaloisScene& S);
// same check restricted to `count` shifts drawn without replacement
bool check_shift_invariance_subset(const GaloisScene& S, unsigned count, std::uint64_t seed);
// t(bu) == t for every square b in F_r^*
bool check_scale_invariance(const GaloisScene& S);
// t(1/u) == t
bool check_inversion_invariance(const GaloisScene& S);
// coefficient q-power Frobenius combined with u -> zeta0 u, zeta0 the least
// nonsquare of F_r, fixes both vprime and tprime
bool check_sigma_twist(const GaloisScene& S);

// nonvanishing derivative numerator
bool separability_check(const RationalFunction& f);

// r = 9 only: f = outer(inner) with degrees 15 and 3 over F_{q^2},
//   outer = (X^3 + aX + ab)^5 / X^6, inner = (X^3 + ab) / (X^2 + bX + a), b = sqrt(a)
struct Decomposition {
  RationalFunction outer;
  RationalFunction inner;
  RationalFunction composite;
};
Decomposition decompose_r9(const FamilyParams& P);

}  // namespace excrat
