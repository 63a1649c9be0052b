// Acceptance gate: ten fixed criteria, one line each, exit 0 only if all hold.
// Budgets are wall-clock bounds; exceeding one fails the criterion.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "excrat/ramify.hpp"

using namespace excrat;

namespace {

int g_failures = 0;

void criterion(int number, const char* label, double budget_seconds,
               const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string(" exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    ok = false;
    note += " over budget";
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(3);
  line << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << label << " (" << secs
       << "s";
  if (budget_seconds > 0) line << " of " << budget_seconds << "s";
  line << ")" << note;
  std::cout << line.str() << "\n";
  if (!ok) ++g_failures;
}

FamilyParams params_for(std::uint64_t p) { return FamilyParams::create(p, 1, 1); }

}  // namespace

int main() {
  criterion(1, "construction degrees at r = 9 and r = 25", 1.0, [] {
    const FieldPtr F3 = Field::make(3, 1);
    const FieldPtr F5 = Field::make(5, 1);
    const auto P9 = FamilyParams::create(3, 1, 1, F3->from_int(2));
    const auto P25 = FamilyParams::create(5, 1, 1, F5->from_int(2));
    return build_family_map(P9).degree() == 45 && build_family_map(P25).degree() == 325;
  });

  criterion(2, "permutation of the odd-degree extension lines", 10.0, [] {
    const RationalFunction f9 = build_family_map(params_for(3));
    const RationalFunction f25 = build_family_map(params_for(5));
    const struct {
      const RationalFunction* f;
      unsigned n;
      std::uint64_t points;
    } want[] = {{&f9, 1, 4}, {&f9, 3, 28}, {&f9, 5, 244}, {&f25, 1, 6}, {&f25, 3, 126}};
    for (const auto& w : want) {
      const PermutationCheck pc = permutation_check(*w.f, w.n);
      if (!(pc.bijection && pc.points == w.points && pc.max_hit == 1)) return false;
    }
    return true;
  });

  criterion(3, "functional equation across every nonsquare parameter", 5.0, [] {
    for (const std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}}) {
      const FieldPtr F = Field::make(p, 1);
      for (std::uint64_t i = 1; i < p; ++i) {
        const FieldElement cand = F->element(i);
        if (is_square(cand)) continue;
        if (!check_dickson_functional_equation(dickson_second(F, p * p, cand), cand))
          return false;
      }
    }
    return true;
  });

  criterion(4, "semiconjugacy, exact and mutation-sensitive", 30.0, [] {
    for (const std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}}) {
      const GaloisScene S = build_scene(params_for(p));
      if (!check_semiconjugacy(S)) return false;
      const RationalFunction mutated(S.f_lift.num() + Polynomial::one(S.f_lift.field()),
                                     S.f_lift.den());
      if (rf_compose(mutated, S.vprime) == S.tprime) return false;
    }
    return true;
  });

  criterion(5, "r = 9 decomposition into degree 15 and 3 pieces", 0, [] {
    const FamilyParams P = params_for(3);
    const Decomposition D = decompose_r9(P);
    const RationalFunction f = build_family_map(P);
    const EmbeddingMap emb = EmbeddingMap::find(P.Fq, D.composite.field());
    return D.outer.degree() == 15 && D.inner.degree() == 3 && D.composite.degree() == 45 &&
           D.composite == map_into(f, emb);
  });

  criterion(6, "monodromy group orders and orbit counts", 60.0, [] {
    const struct {
      std::uint64_t p, G, H, A, J, index;
    } want[] = {{3, 360, 8, 720, 16, 45}, {5, 7800, 24, 15600, 48, 325}};
    for (const auto& w : want) {
      const MonodromySummary s = summarize_monodromy(build_monodromy(params_for(w.p)));
      if (!(s.order_G == w.G && s.order_H == w.H && s.order_A == w.A && s.order_J == w.J &&
            s.index == w.index && s.transitive_A && s.transitive_G && s.common_orbits == 1 &&
            s.core_order == 1 && s.cyclic_quotient_order == 2))
        return false;
    }
    return true;
  });

  criterion(7, "primitivity pattern of the two actions", 0, [] {
    const MonodromySummary s9 = summarize_monodromy(build_monodromy(params_for(3)));
    const MonodromySummary s25 = summarize_monodromy(build_monodromy(params_for(5)));
    return !s9.prim_G_on_GH.primitive && s9.prim_G_on_GH.block_count == 15 &&
           s9.prim_G_on_GH.block_size == 3 && s9.prim_A_on_AJ.primitive &&
           s25.prim_G_on_GH.primitive && s25.prim_A_on_AJ.primitive;
  });

  criterion(8, "fiber shapes, branch locus, generic squarefreeness", 0, [] {
    for (const std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}}) {
      const FamilyParams P = params_for(p);
      const RationalFunction f = build_family_map(P);
      const std::uint64_t r = P.r;

      const Fiber over0 = fiber_profile(f, ProjectivePoint::finite(P.Fq->zero()));
      if (!(over0.parts.size() == 1 && over0.parts[0].multiplicity == (r + 1) / 2 &&
            over0.parts[0].point_count == r && over0.infinity_multiplicity() == 0))
        return false;

      const Fiber overinf = fiber_profile(f, ProjectivePoint::at_infinity(P.Fq));
      std::uint64_t doubled = 0;
      for (const auto& part : overinf.parts) {
        if (part.contains_infinity) continue;
        if (part.multiplicity != (r * r - r) / 4) return false;
        doubled += part.point_count;
      }
      if (doubled != 2 || overinf.infinity_multiplicity() != r) return false;

      const BranchLocusResult locus = branch_locus(f, {P.Fq, P.Fr});
      if (!(locus.points.size() == 2 && !locus.points[0].is_infinity() &&
            locus.points[0].value().is_zero() && locus.points[1].is_infinity() &&
            locus.certified_complete))
        return false;

      const FieldPtr Fbig = Field::make(p, 4);
      const RationalFunction fb = map_into(f, EmbeddingMap::find(P.Fq, Fbig));
      std::mt19937_64 rng(0);
      std::uniform_int_distribution<std::uint64_t> pick(1, Fbig->order() - 1);
      std::set<std::uint64_t> used;
      while (used.size() < 10) {
        const std::uint64_t idx = pick(rng);
        if (!used.insert(idx).second) continue;
        if (fiber_profile(fb, ProjectivePoint::finite(Fbig->element(idx))).ramified())
          return false;
      }
    }
    return true;
  });

  criterion(9, "filtration orders and ramification bookkeeping", 0, [] {
    const struct {
      std::uint64_t p, r, G, mass;
    } want[] = {{3, 9, 360, 718}, {5, 25, 7800, 15598}};
    for (const auto& w : want) {
      const MonodromyScene M = build_monodromy(params_for(w.p));
      const auto fi = filtration_at_infinity(M);
      const auto fq = filtration_at_quadratic_point(M);
      if (fi != std::vector<std::uint64_t>{(w.r * w.r - w.r) / 2, w.r, 1}) return false;
      if (fq != std::vector<std::uint64_t>{(w.r + 1) / 2, 1}) return false;
      if (2 * w.G - 2 != w.mass || !rh_identity(w.G, w.r, fi, fq)) return false;
    }
    // a translation meets the second filtration level and no further:
    // in the chart s = 1/u it moves s by order exactly 2
    const FieldPtr F9 = Field::make(3, 2);
    const Polynomial X = Polynomial::identity(F9);
    const RationalFunction w(-Polynomial::one(F9), X * (X + Polynomial::one(F9)));
    return valuation_at_infinity(w) == 2;
  });

  criterion(10, "closed form against the recurrence up to degree 200", 0, [] {
    for (const std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}}) {
      const FieldPtr F = Field::make(p, 1);
      const FieldElement a = F->from_int(2);
      for (std::uint64_t n = 0; n <= 200; ++n)
        if (dickson_second(F, n, a) != dickson_second_by_recurrence(F, n, a)) return false;
    }
    return true;
  });

  if (g_failures == 0) {
    std::cout << "ACCEPTANCE: PASS (10/10)\n";
    return 0;
  }
  std::cout << "ACCEPTANCE: FAIL (" << (10 - g_failures) << "/10)\n";
  return 1;
}
