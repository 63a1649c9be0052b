#include "excrat/family.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>
#include <stdexcept>

namespace excrat {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

unsigned ord2(unsigned v) {
  unsigned o = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++o;
  }
  return o;
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// C(a, b) mod p for digits a, b < p
u64 digit_binom(u64 a, u64 b, u64 p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  u64 num = 1, den = 1;
  for (u64 j = 1; j <= b; ++j) {
    num = mulmod(num, (a - b + j) % p, p);
    den = mulmod(den, j % p, p);
  }
  return mulmod(num, powmod(den, p - 2, p), p);
}

// Lucas: C(n, k) mod p is the digitwise product of binomials
u64 lucas_binom(u64 n, u64 k, u64 p) {
  u64 r = 1;
  while (n || k) {
    r = mulmod(r, digit_binom(n % p, k % p, p), p);
    if (!r) return 0;
    n /= p;
    k /= p;
  }
  return r;
}

// dense construction needs (r^2 + r)/2 coefficients to stay addressable
void require_desk_scale(u64 r) {
  if (r > 65536) throw std::length_error("family: dense polynomial degree overflow at this r");
}

}  // namespace

FamilyParams FamilyParams::create(u64 p, unsigned k, unsigned l) {
  FieldPtr Fq = Field::make(p, l);
  return create(p, k, l, least_nonsquare(Fq));
}

FamilyParams FamilyParams::create(u64 p, unsigned k, unsigned l, const FieldElement& a) {
  if (k < 1) throw std::invalid_argument("family: k must be at least 1");
  if (l < 1) throw std::invalid_argument("family: l must be at least 1");
  if (ord2(l) > ord2(k))
    throw std::invalid_argument("family: admissibility requires ord_2(l) <= ord_2(k)");
  FieldPtr Fq = Field::make(p, l);
  FieldPtr Fr = Field::make(p, 2 * k);
  unsigned lc = std::lcm(2 * k, l);
  FieldPtr FQ = Field::make(p, lc);
  if (a.field() != Fq) throw std::invalid_argument("family: parameter a must lie in F_q");
  if (a.is_zero() || is_square(a))
    throw std::invalid_argument("family: parameter a must be a nonsquare in F_q");
  unsigned d = lc / l;
  assert(d % 2 == 0);  // consequence of the admissibility condition
  return FamilyParams{p, k, l, Fr->order(), Fq->order(), d, Fq, Fr, FQ, a};
}

Polynomial dickson_second(const FieldPtr& field, u64 n, const FieldElement& a) {
  if (a.field() != field) throw std::invalid_argument("dickson: parameter not in the field");
  const u64 p = field->characteristic();
  std::vector<u64> c(n + 1, 0);
  FieldElement pw = field->one();  // (-a)^i
  for (u64 i = 0; 2 * i <= n; ++i) {
    u64 binom = lucas_binom(n - i, i, p);
    if (binom) c[n - 2 * i] = field->mul_i(binom, pw.index());
    pw = pw * (-a);
  }
  return Polynomial(field, std::move(c));
}

Polynomial dickson_second_by_recurrence(const FieldPtr& field, u64 n, const FieldElement& a) {
  if (a.field() != field) throw std::invalid_argument("dickson: parameter not in the field");
  Polynomial prev = Polynomial::one(field);
  if (n == 0) return prev;
  Polynomial cur = Polynomial::identity(field);
  Polynomial X = cur;
  Polynomial ac = Polynomial::constant(a);
  for (u64 j = 1; j < n; ++j) {
    Polynomial next = X * cur - ac * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

bool check_dickson_functional_equation(const Polynomial& e_n, const FieldElement& a) {
  const FieldPtr& F = e_n.field();
  if (a.field() != F || a.is_zero()) throw std::invalid_argument("dickson: bad parameter");
  const u64 n = static_cast<u64>(e_n.degree());
  Polynomial X = Polynomial::identity(F);
  RationalFunction inner(X * X + Polynomial::constant(a), X);
  RationalFunction comp = rf_compose(e_n, inner);
  if (comp.den() != Polynomial::monomial(F, n)) return false;
  Polynomial lhs = comp.num() * (X * X - Polynomial::constant(a));
  Polynomial rhs = Polynomial::monomial(F, 2 * n + 2) - Polynomial::constant(a.pow(n + 1));
  return lhs == rhs;
}

RationalFunction build_family_map(const FamilyParams& P) {
  require_desk_scale(P.r);
  const FieldPtr& F = P.Fq;
  const u64 r = P.r;
  Polynomial E = dickson_second(F, r, P.a);
  Polynomial X = Polynomial::identity(F);
  Polynomial num = E.pow((r + 1) / 2);
  Polynomial den = (X * X - Polynomial::constant(P.a * F->from_int(4))).pow(r * (r - 1) / 4);
  RationalFunction f(std::move(num), std::move(den));
  assert(f.degree() == static_cast<std::int64_t>(r * (r + 1) / 2));
  return f;
}

GaloisScene build_scene(const FamilyParams& P) {
  require_desk_scale(P.r);
  RationalFunction f_base = build_family_map(P);
  EmbeddingMap e_qQ = EmbeddingMap::find(P.Fq, P.FQ);
  EmbeddingMap e_rQ = EmbeddingMap::find(P.Fr, P.FQ);
  RationalFunction f_lift = map_into(f_base, e_qQ);
  FieldElement sqrt_a = sqrt_in(P.a, P.FQ);
  const FieldPtr& FQ = P.FQ;
  const u64 r = P.r;

  Polynomial vnum = (Polynomial::monomial(FQ, r - 1) + Polynomial::one(FQ)) *
                    Polynomial::constant(sqrt_a);
  Polynomial vden = Polynomial::monomial(FQ, (r - 1) / 2);
  RationalFunction vprime = RationalFunction::reduced(std::move(vnum), std::move(vden));

  Polynomial X = Polynomial::identity(FQ);
  Polynomial tnum = (Polynomial::monomial(FQ, r * r) - X).pow((r + 1) / 2);
  Polynomial tden = (Polynomial::monomial(FQ, r) - X).pow((r * r + 1) / 2);
  RationalFunction t(std::move(tnum), std::move(tden));
  assert(t.degree() == static_cast<std::int64_t>(r * (r * r - 1) / 2));

  RationalFunction tprime = rf_scale(t, sqrt_a.pow(static_cast<std::int64_t>(r)));
  return GaloisScene{P,
                     std::move(f_base),
                     std::move(f_lift),
                     std::move(vprime),
                     std::move(t),
                     std::move(tprime),
                     sqrt_a,
                     std::move(e_rQ)};
}

bool check_semiconjugacy(const GaloisScene& S) {
  return rf_compose(S.f_lift, S.vprime) == S.tprime;
}

bool check_shift_invariance(const GaloisScene& S) {
  const FieldPtr& FQ = S.params.FQ;
  for (u64 c = 0; c < S.params.r; ++c) {
    FieldElement cc(FQ, S.embed_r_to_Q.map_index(c));
    if (rf_shift_arg(S.t, cc) != S.t) return false;
  }
  return true;
}

bool check_shift_invariance_subset(const GaloisScene& S, unsigned count, u64 seed) {
  const u64 r = S.params.r;
  if (count >= r - 1) return check_shift_invariance(S);
  std::vector<u64> pool(r - 1);
  for (u64 i = 0; i < r - 1; ++i) pool[i] = i + 1;
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  const FieldPtr& FQ = S.params.FQ;
  for (unsigned i = 0; i < count; ++i) {
    FieldElement cc(FQ, S.embed_r_to_Q.map_index(pool[i]));
    if (rf_shift_arg(S.t, cc) != S.t) return false;
  }
  return true;
}

bool check_scale_invariance(const GaloisScene& S) {
  const FieldPtr& Fr = S.params.Fr;
  const FieldPtr& FQ = S.params.FQ;
  std::vector<bool> seen(S.params.r, false);
  for (u64 y = 1; y < S.params.r; ++y) {
    u64 sq = Fr->mul_i(y, y);
    if (seen[sq]) continue;
    seen[sq] = true;
    FieldElement b(FQ, S.embed_r_to_Q.map_index(sq));
    if (rf_scale_arg(S.t, b) != S.t) return false;
  }
  return true;
}

bool check_inversion_invariance(const GaloisScene& S) {
  const FieldPtr& FQ = S.params.FQ;
  return substitute_moebius(S.t, FQ->zero(), FQ->one(), FQ->one(), FQ->zero()) == S.t;
}

namespace {

RationalFunction sigma_image(const RationalFunction& f, unsigned l, const FieldElement& zeta0) {
  RationalFunction tw = RationalFunction::reduced(frobenius_coeffs(f.num(), l),
                                                  frobenius_coeffs(f.den(), l));
  return rf_scale_arg(tw, zeta0);
}

}  // namespace

bool check_sigma_twist(const GaloisScene& S) {
  FieldElement zeta0(S.params.FQ,
                     S.embed_r_to_Q.map_index(least_nonsquare(S.params.Fr).index()));
  return sigma_image(S.vprime, S.params.l, zeta0) == S.vprime &&
         sigma_image(S.tprime, S.params.l, zeta0) == S.tprime;
}

bool separability_check(const RationalFunction& f) {
  return !rf_derivative_numerator(f).is_zero();
}

Decomposition decompose_r9(const FamilyParams& P) {
  if (P.r != 9) throw std::invalid_argument("decompose: closed form is specific to r = 9");
  FieldPtr Fq2 = Field::make(P.p, 2 * P.l);
  EmbeddingMap emb = EmbeddingMap::find(P.Fq, Fq2);
  FieldElement a = emb(P.a);
  FieldElement b = sqrt_in(P.a, Fq2);
  Polynomial X = Polynomial::identity(Fq2);
  Polynomial X2 = X * X;
  Polynomial X3 = X2 * X;

  Polynomial outer_core = X3 + X * Polynomial::constant(a) + Polynomial::constant(a * b);
  RationalFunction outer = RationalFunction::reduced(outer_core.pow(5), X3 * X3);
  RationalFunction inner(X3 + Polynomial::constant(a * b),
                         X2 + X * Polynomial::constant(b) + Polynomial::constant(a));
  RationalFunction composite = rf_compose(outer, inner);
  return Decomposition{std::move(outer), std::move(inner), std::move(composite)};
}

}  // namespace excrat
