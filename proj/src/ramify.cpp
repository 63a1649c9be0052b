#include "excrat/ramify.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>

namespace excrat {

namespace {

using u64 = std::uint64_t;

Polynomial poly_pow(const Polynomial& b, u64 e) {
  Polynomial acc = Polynomial::one(b.field());
  Polynomial sq = b;
  while (e) {
    if (e & 1) acc = acc * sq;
    e >>= 1;
    if (e) sq = sq * sq;
  }
  return acc;
}

// moebius map u -> (m0 u + m1)/(m2 u + m3) with entries already embedded
RationalFunction moebius_rf(const std::array<FieldElement, 4>& m) {
  const Polynomial num = Polynomial::from_elements({m[1], m[0]});
  const Polynomial den = Polynomial::from_elements({m[3], m[2]});
  return RationalFunction(num, den);
}

std::array<FieldElement, 4> embedded_entries(const SemilinearContext& ctx,
                                             const SemilinearElement& e, const EmbeddingMap& emb) {
  const auto& F = ctx.field();
  return {emb(FieldElement(F, e.m[0])), emb(FieldElement(F, e.m[1])),
          emb(FieldElement(F, e.m[2])), emb(FieldElement(F, e.m[3]))};
}

// orders |G_0| >= |G_1| >= ... >= 1 from the nonidentity depths
std::vector<u64> orders_from_depths(const std::vector<unsigned>& depths) {
  std::vector<u64> orders;
  for (unsigned level = 0;; ++level) {
    u64 count = 1;  // the identity sits in every level
    for (unsigned dep : depths)
      if (dep >= level) ++count;
    orders.push_back(count);
    if (count == 1) break;
  }
  return orders;
}

}  // namespace

std::uint64_t Fiber::total_weight() const {
  u64 w = 0;
  for (const auto& part : parts) w += part.multiplicity * part.point_count;
  return w;
}

bool Fiber::ramified() const {
  for (const auto& part : parts)
    if (part.multiplicity >= 2) return true;
  return false;
}

unsigned Fiber::infinity_multiplicity() const {
  for (const auto& part : parts)
    if (part.contains_infinity) return part.multiplicity;
  return 0;
}

Fiber fiber_profile(const RationalFunction& f, const ProjectivePoint& target) {
  if (f.field() != target.field())
    throw std::invalid_argument("fiber_profile: fields differ");
  if (f.degree() < 1) throw std::invalid_argument("fiber_profile: constant function");
  const Polynomial finite_locus =
      target.is_infinity() ? f.den() : f.num() - f.den() * target.value();
  Fiber out{target, {}};
  if (!finite_locus.is_constant()) {
    for (const auto& [g, m] : squarefree_decomposition(finite_locus))
      out.parts.push_back(FiberPart{m, static_cast<u64>(g.degree()), g, false});
  }
  const auto gap = f.degree() - finite_locus.degree();
  if (gap > 0)
    out.parts.push_back(
        FiberPart{static_cast<unsigned>(gap), 1, Polynomial::one(f.field()), true});
  if (out.total_weight() != static_cast<u64>(f.degree()))
    throw std::logic_error("fiber_profile: weights do not add up to the degree");
  return out;
}

BranchLocusResult branch_locus(const RationalFunction& f, const std::vector<FieldPtr>& probes) {
  const FieldPtr base = f.field();
  const Polynomial W = rf_derivative_numerator(f);
  if (W.is_zero()) throw std::invalid_argument("branch_locus: inseparable function");

  unsigned L = base->extension_degree();
  for (const auto& E : probes) {
    if (E->characteristic() != base->characteristic())
      throw std::invalid_argument("branch_locus: probe in the wrong characteristic");
    L = static_cast<unsigned>(std::lcm<u64>(L, E->extension_degree()));
  }
  const FieldPtr cmp = Field::make(base->characteristic(), L);
  const auto base_to_cmp = EmbeddingMap::find(base, cmp);
  const RationalFunction f_cmp = map_into(f, base_to_cmp);

  std::set<u64> finite_points;  // indices in the comparison field
  bool has_infinity = false;
  auto record = [&](const ProjectivePoint& v, const EmbeddingMap& into_cmp) {
    if (v.is_infinity())
      has_infinity = true;
    else
      finite_points.insert(into_cmp.map_index(v.value().index()));
  };

  for (const auto& E : probes) {
    const auto base_to_E = EmbeddingMap::find(base, E);
    const auto E_to_cmp = EmbeddingMap::find(E, cmp);
    const RationalFunction fE = map_into(f, base_to_E);
    const Polynomial WE = map_into(W, base_to_E);
    for (const auto& x : roots_of(squarefree_part(WE)))
      record(rf_evaluate(fE, ProjectivePoint::finite(x)), E_to_cmp);
  }

  // the point at infinity is handled exactly, probes or not
  const auto inf_target = rf_evaluate(f, ProjectivePoint::at_infinity(base));
  if (fiber_profile(f, inf_target).infinity_multiplicity() >= 2)
    record(inf_target, base_to_cmp);

  BranchLocusResult out{{}, cmp, false};
  for (const u64 idx : finite_points)
    out.points.push_back(ProjectivePoint::finite(FieldElement(cmp, idx)));
  if (has_infinity) out.points.push_back(ProjectivePoint::at_infinity(cmp));

  // each reported point must carry genuine ramification
  for (const auto& pt : out.points) {
    if (!fiber_profile(f_cmp, pt).ramified())
      throw std::logic_error("branch_locus: unramified candidate survived");
  }

  // completeness: every root of W lies in a fiber over a reported point
  Polynomial covered = has_infinity ? f_cmp.den() : Polynomial::one(cmp);
  for (const u64 idx : finite_points)
    covered = covered * (f_cmp.num() - f_cmp.den() * FieldElement(cmp, idx));
  out.certified_complete = roots_contained_in(map_into(W, base_to_cmp), squarefree_part(covered));
  return out;
}

QuotientMapReport quotient_map_report(const GaloisScene& S) {
  const FieldPtr F = S.t.field();
  const u64 r = S.params.r;
  const Polynomial X = Polynomial::identity(F);
  const Polynomial big = Polynomial::monomial(F, r * r) - X;
  const Polynomial small = Polynomial::monomial(F, r) - X;

  QuotientMapReport out{fiber_profile(S.t, ProjectivePoint::finite(F->zero())),
                        fiber_profile(S.t, ProjectivePoint::at_infinity(F)), false, false, false};

  const auto [split, rem] = poly_divmod(big, small);
  out.base_splits = rem.is_zero() && poly_gcd(split, small).degree() == 0 &&
                    squarefree_part(S.t.num()) == split;
  out.layer_identity = big - small == poly_pow(small, r);
  out.critical_in_quadratic = roots_contained_in(rf_derivative_numerator(S.t), big);
  return out;
}

std::vector<std::uint64_t> filtration_at_infinity(const MonodromyScene& S) {
  const auto& ctx = *S.ctx;
  const FieldPtr F = ctx.field();
  const auto stab = stabilizer_of_infinity(S.G);
  const auto id = ctx.identity();
  std::vector<unsigned> depths;
  for (std::size_t i = 0; i < stab.size(); ++i) {
    const auto e = stab.element(i);
    if (e == id) continue;
    // for rho: u -> (m0 u + m1)/m3, compare 1/rho(u) against the uniformizer 1/u
    const FieldElement m0(F, e.m[0]), m1(F, e.m[1]), m3(F, e.m[3]);
    const Polynomial num = Polynomial::from_elements({-m1, m3 - m0});
    const Polynomial den =
        Polynomial::identity(F) * Polynomial::from_elements({m1, m0});
    const int v = valuation_at_infinity(RationalFunction(num, den));
    assert(v >= 1);
    depths.push_back(static_cast<unsigned>(v - 1));
  }
  return orders_from_depths(depths);
}

std::vector<std::uint64_t> filtration_at_quadratic_point(const MonodromyScene& S) {
  const auto& ctx = *S.ctx;
  const FieldPtr F = ctx.field();
  const FieldPtr F2 = Field::make(F->characteristic(), 2 * F->extension_degree());
  const auto emb = EmbeddingMap::find(F, F2);

  // least point of the quadratic line outside the base line
  u64 ai = 0;
  while (F2->frob_i(ai, F->extension_degree()) == ai) ++ai;
  const FieldElement alpha(F2, ai);

  const auto stab = stabilizer_of_extension_point(S.G, emb, alpha);
  const auto id = ctx.identity();
  const Polynomial X = Polynomial::identity(F2);
  std::vector<unsigned> depths;
  for (std::size_t i = 0; i < stab.size(); ++i) {
    const auto e = stab.element(i);
    if (e == id) continue;
    const auto m = embedded_entries(ctx, e, emb);
    const auto rho = moebius_rf(m);
    // rho fixes alpha; depth of agreement with the identity map there
    const RationalFunction w(rho.num() - X * rho.den(), rho.den());
    const int v = valuation_at(w, alpha);
    assert(v >= 1);
    depths.push_back(static_cast<unsigned>(v - 1));
  }
  return orders_from_depths(depths);
}

bool rh_identity(std::uint64_t order_G, std::uint64_t r,
                 const std::vector<std::uint64_t>& filtration_inf,
                 const std::vector<std::uint64_t>& filtration_quad) {
  u64 inf_sum = 0, quad_sum = 0;
  for (const u64 o : filtration_inf) inf_sum += o - 1;
  for (const u64 o : filtration_quad) quad_sum += o - 1;
  return 2 * order_G - 2 == (r + 1) * inf_sum + (r * r - r) * quad_sum;
}

PermutationCheck permutation_check(const RationalFunction& f, unsigned n) {
  if (n == 0) throw std::invalid_argument("permutation_check: extension degree must be positive");
  const FieldPtr base = f.field();
  const FieldPtr ext = Field::make(base->characteristic(), base->extension_degree() * n);
  const RationalFunction fE = map_into(f, EmbeddingMap::find(base, ext));

  const u64 order = ext->order();
  std::vector<u64> hits(order + 1, 0);
  auto slot = [&](const ProjectivePoint& v) -> u64 {
    return v.is_infinity() ? order : v.value().index();
  };
  for (u64 x = 0; x < order; ++x)
    ++hits[slot(rf_evaluate(fE, ProjectivePoint::finite(FieldElement(ext, x))))];
  ++hits[slot(rf_evaluate(fE, ProjectivePoint::at_infinity(ext)))];

  PermutationCheck out{n, order + 1, true, 0};
  for (const u64 h : hits) {
    out.max_hit = std::max(out.max_hit, h);
    if (h != 1) out.bijection = false;
  }
  return out;
}

}  // namespace excrat
