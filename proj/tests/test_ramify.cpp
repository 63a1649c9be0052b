#include "excrat/ramify.hpp"

#include "doctest.h"

using namespace excrat;

namespace {

const FamilyParams& params9() {
  static FamilyParams P = FamilyParams::create(3, 1, 1);
  return P;
}

const FamilyParams& params25() {
  static FamilyParams P = FamilyParams::create(5, 1, 1);
  return P;
}

const RationalFunction& f9() {
  static RationalFunction f = build_family_map(params9());
  return f;
}

const RationalFunction& f25() {
  static RationalFunction f = build_family_map(params25());
  return f;
}

}  // namespace

TEST_CASE("fiber profile: multiplicities, supports, degree conservation") {
  auto F5 = Field::make(5, 1);
  const auto X = Polynomial::identity(F5);
  const auto f = RationalFunction(X * X * (X - Polynomial::one(F5)), Polynomial::one(F5));

  const auto over0 = fiber_profile(f, ProjectivePoint::finite(F5->zero()));
  REQUIRE(over0.parts.size() == 2);  // sorted by multiplicity
  CHECK(over0.parts[0].multiplicity == 1);
  CHECK(over0.parts[0].support == X - Polynomial::one(F5));
  CHECK(over0.parts[1].multiplicity == 2);
  CHECK(over0.parts[1].support == X);
  CHECK(over0.total_weight() == 3);
  CHECK(over0.ramified());
  CHECK(over0.infinity_multiplicity() == 0);

  const auto overinf = fiber_profile(f, ProjectivePoint::at_infinity(F5));
  REQUIRE(overinf.parts.size() == 1);
  CHECK(overinf.parts[0].contains_infinity);
  CHECK(overinf.parts[0].multiplicity == 3);
  CHECK(overinf.infinity_multiplicity() == 3);

  // a target off the branch locus: a single squarefree slice of full weight
  const auto generic = fiber_profile(f, ProjectivePoint::finite(F5->one()));
  REQUIRE(generic.parts.size() == 1);
  CHECK(generic.parts[0].multiplicity == 1);
  CHECK(generic.parts[0].point_count == 3);
  CHECK_FALSE(generic.ramified());

  CHECK_THROWS_AS(fiber_profile(RationalFunction(Polynomial::one(F5), Polynomial::one(F5)),
                                ProjectivePoint::finite(F5->zero())),
                  std::invalid_argument);
  CHECK_THROWS_AS(fiber_profile(f, ProjectivePoint::finite(Field::make(3, 1)->zero())),
                  std::invalid_argument);
}

TEST_CASE("family map fibers over 0 and infinity match the advertised shape") {
  const auto& P = params9();
  const auto over0 = fiber_profile(f9(), ProjectivePoint::finite(P.Fq->zero()));
  REQUIRE(over0.parts.size() == 1);
  CHECK(over0.parts[0].multiplicity == 5);  // (r+1)/2
  CHECK(over0.parts[0].point_count == 9);   // r points
  CHECK(over0.parts[0].support == dickson_second(P.Fq, 9, P.a));
  CHECK(over0.infinity_multiplicity() == 0);
  CHECK(over0.total_weight() == 45);

  const auto overinf = fiber_profile(f9(), ProjectivePoint::at_infinity(P.Fq));
  REQUIRE(overinf.parts.size() == 2);
  const auto X = Polynomial::identity(P.Fq);
  const auto four_a = P.Fq->from_int(4) * P.a;
  CHECK(overinf.parts[0].multiplicity == 18);  // (r^2-r)/4
  CHECK(overinf.parts[0].point_count == 2);
  CHECK(overinf.parts[0].support == X * X - Polynomial::constant(four_a));
  CHECK(overinf.parts[1].contains_infinity);
  CHECK(overinf.parts[1].multiplicity == 9);  // e = r, wild
  CHECK(overinf.total_weight() == 45);

  // a target outside the branch locus is everywhere unramified
  const auto generic = fiber_profile(f9(), ProjectivePoint::finite(P.Fq->one()));
  CHECK_FALSE(generic.ramified());
  CHECK(generic.total_weight() == 45);
}

TEST_CASE("family map fibers at r = 25") {
  const auto& P = params25();
  const auto over0 = fiber_profile(f25(), ProjectivePoint::finite(P.Fq->zero()));
  REQUIRE(over0.parts.size() == 1);
  CHECK(over0.parts[0].multiplicity == 13);
  CHECK(over0.parts[0].point_count == 25);

  const auto overinf = fiber_profile(f25(), ProjectivePoint::at_infinity(P.Fq));
  REQUIRE(overinf.parts.size() == 2);
  CHECK(overinf.parts[0].multiplicity == 150);
  CHECK(overinf.parts[0].point_count == 2);
  CHECK(overinf.parts[1].contains_infinity);
  CHECK(overinf.parts[1].multiplicity == 25);
  CHECK(overinf.total_weight() == 325);
}

TEST_CASE("branch locus of the family maps is exactly {0, infinity}, certified") {
  for (const auto* P : {&params9(), &params25()}) {
    const auto f = build_family_map(*P);
    const auto bl = branch_locus(f, {P->Fq, P->Fr, Field::make(P->p, 4 * P->k)});
    REQUIRE(bl.points.size() == 2);
    CHECK_FALSE(bl.points[0].is_infinity());
    CHECK(bl.points[0].value().index() == 0);
    CHECK(bl.points[1].is_infinity());
    CHECK(bl.certified_complete);
    CHECK(bl.comparison_field->order() == P->r * P->r);
  }
}

TEST_CASE("branch locus: probe coverage decides the certificate") {
  auto F5 = Field::make(5, 1);
  const auto X = Polynomial::identity(F5);
  const auto f = RationalFunction(X * X * X - X, Polynomial::one(F5));

  // critical points sit in F_25, so the prime-field probe alone finds nothing
  const auto narrow = branch_locus(f, {F5});
  REQUIRE(narrow.points.size() == 1);
  CHECK(narrow.points[0].is_infinity());
  CHECK_FALSE(narrow.certified_complete);

  const auto wide = branch_locus(f, {F5, Field::make(5, 2)});
  REQUIRE(wide.points.size() == 3);
  CHECK(wide.certified_complete);
  CHECK(wide.points[2].is_infinity());
  CHECK(wide.points[0].value() == -wide.points[1].value());

  // the pure cube over F_7 branches over 0 and infinity only
  auto F7 = Field::make(7, 1);
  const auto cube = RationalFunction(Polynomial::monomial(F7, 3), Polynomial::one(F7));
  const auto bl = branch_locus(cube, {F7});
  REQUIRE(bl.points.size() == 2);
  CHECK(bl.points[0].value().index() == 0);
  CHECK(bl.points[1].is_infinity());
  CHECK(bl.certified_complete);

  // an inseparable map has no meaningful locus
  auto F3 = Field::make(3, 1);
  CHECK_THROWS_AS(
      branch_locus(RationalFunction(Polynomial::monomial(F3, 3), Polynomial::one(F3)), {F3}),
      std::invalid_argument);
  CHECK_THROWS_AS(branch_locus(f, {F7}), std::invalid_argument);  // wrong characteristic
}

TEST_CASE("quotient map report: fibers, split factor, layer identity, critical points") {
  const auto S = build_scene(params9());
  const auto rep = quotient_map_report(S);

  REQUIRE(rep.over_zero.parts.size() == 1);
  CHECK(rep.over_zero.parts[0].multiplicity == 5);    // (r+1)/2
  CHECK(rep.over_zero.parts[0].point_count == 72);    // r^2 - r quadratic points
  CHECK(rep.over_zero.total_weight() == 360);

  REQUIRE(rep.over_infinity.parts.size() == 2);
  CHECK(rep.over_infinity.parts[0].multiplicity == 36);  // (r^2-r)/2
  CHECK(rep.over_infinity.parts[0].point_count == 9);    // the base line minus infinity
  CHECK(rep.over_infinity.parts[1].contains_infinity);
  CHECK(rep.over_infinity.parts[1].multiplicity == 36);
  CHECK(rep.over_infinity.total_weight() == 360);

  CHECK(rep.base_splits);
  CHECK(rep.layer_identity);
  CHECK(rep.critical_in_quadratic);
}

TEST_CASE("quotient map report at r = 25") {
  const auto S = build_scene(params25());
  const auto rep = quotient_map_report(S);
  REQUIRE(rep.over_zero.parts.size() == 1);
  CHECK(rep.over_zero.parts[0].multiplicity == 13);
  CHECK(rep.over_zero.parts[0].point_count == 600);
  REQUIRE(rep.over_infinity.parts.size() == 2);
  CHECK(rep.over_infinity.parts[0].multiplicity == 300);
  CHECK(rep.over_infinity.parts[0].point_count == 25);
  CHECK(rep.over_infinity.parts[1].multiplicity == 300);
  CHECK(rep.base_splits);
  CHECK(rep.layer_identity);
  CHECK(rep.critical_in_quadratic);
}

TEST_CASE("ramification filtrations at both marked places") {
  const auto M9 = build_monodromy(params9());
  const auto inf9 = filtration_at_infinity(M9);
  const auto quad9 = filtration_at_quadratic_point(M9);
  CHECK(inf9 == std::vector<std::uint64_t>{36, 9, 1});
  CHECK(quad9 == std::vector<std::uint64_t>{5, 1});

  const auto M25 = build_monodromy(params25());
  const auto inf25 = filtration_at_infinity(M25);
  const auto quad25 = filtration_at_quadratic_point(M25);
  CHECK(inf25 == std::vector<std::uint64_t>{300, 25, 1});
  CHECK(quad25 == std::vector<std::uint64_t>{13, 1});

  // the wild level is the full p-part of the inertia order; the quadratic
  // place is tame outright
  CHECK(inf9[1] == 9);
  CHECK(inf9[0] % inf9[1] == 0);
  CHECK(inf9[0] / inf9[1] == 4);  // (r-1)/2, prime to p
  CHECK(quad9[0] % 3 != 0);
  CHECK(quad25[0] % 5 != 0);

  CHECK(rh_identity(360, 9, inf9, quad9));
  CHECK(rh_identity(7800, 25, inf25, quad25));
}

TEST_CASE("translation valuation at infinity is exactly 2") {
  auto F9 = Field::make(3, 2);
  const auto X = Polynomial::identity(F9);
  // for rho: u -> u + 1, compare 1/rho(u) with 1/u
  const auto w = RationalFunction(Polynomial::constant(-F9->one()),
                                  X * (X + Polynomial::one(F9)));
  CHECK(valuation_at_infinity(w) == 2);
}

TEST_CASE("riemann-hurwitz identity rejects perturbed filtrations") {
  const std::vector<std::uint64_t> inf{36, 9, 1}, quad{5, 1};
  CHECK(rh_identity(360, 9, inf, quad));
  CHECK_FALSE(rh_identity(360, 9, {36, 9, 3}, quad));  // phantom second level
  CHECK(rh_identity(360, 9, {36, 9}, quad));           // trivial tail carries no weight
  CHECK_FALSE(rh_identity(360, 9, inf, {5, 3}));
  CHECK_FALSE(rh_identity(356, 9, inf, quad));
  CHECK_FALSE(rh_identity(7800, 25, {300, 25, 1}, {13, 3}));
}

TEST_CASE("permutation check: bijective exactly on odd-degree extensions") {
  struct Expect {
    unsigned n;
    std::uint64_t points;
    bool bijection;
    std::uint64_t max_hit;
  };
  const Expect exp9[] = {{1, 4, true, 1},  {2, 10, false, 5},  {3, 28, true, 1},
                         {4, 82, false, 9}, {5, 244, true, 1}, {6, 730, false, 45}};
  for (const auto& e : exp9) {
    const auto c = permutation_check(f9(), e.n);
    CHECK(c.n == e.n);
    CHECK(c.points == e.points);
    CHECK(c.bijection == e.bijection);
    CHECK(c.max_hit == e.max_hit);
  }
  const Expect exp25[] = {{1, 6, true, 1}, {2, 26, false, 13}, {3, 126, true, 1},
                          {4, 626, false, 25}};
  for (const auto& e : exp25) {
    const auto c = permutation_check(f25(), e.n);
    CHECK(c.points == e.points);
    CHECK(c.bijection == e.bijection);
    CHECK(c.max_hit == e.max_hit);
  }
  CHECK_THROWS_AS(permutation_check(f9(), 0), std::invalid_argument);
}
