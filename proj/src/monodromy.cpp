#include "excrat/monodromy.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace excrat {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// index of a multiplicative generator of F_r^*
u64 multiplicative_generator(const Field& F) {
  const u64 n = F.order();
  auto fs = prime_factors(n - 1);
  for (u64 x = 2; x < n; ++x) {
    bool ok = true;
    for (u64 q : fs) {
      if (F.pow_i(x, (n - 1) / q) == 1) { ok = false; break; }
    }
    if (ok) return x;
  }
  throw std::logic_error("multiplicative_generator: none found");
}

}  // namespace

SemilinearContext::SemilinearContext(FieldPtr Fr, unsigned l, unsigned d)
    : Fr_(std::move(Fr)), l_(l), d_(d) {
  const u64 n = Fr_->order();
  if (d_ == 0) throw std::invalid_argument("semilinear: layer count must be positive");
  // the packed key must fit: d * n^4 <= 2^64
  if (n > 65536 || (d_ > (~u64{0}) / (n * n) / (n * n)))
    throw std::length_error("semilinear: field too large for packed keys");
  frob_.resize(d_);
  for (unsigned i = 0; i < d_; ++i) {
    frob_[i].resize(n);
    for (u64 x = 0; x < n; ++x) frob_[i][x] = Fr_->frob_i(x, l_ * i);
  }
}

ContextPtr SemilinearContext::make(FieldPtr Fr, unsigned l, unsigned d) {
  return ContextPtr(new SemilinearContext(std::move(Fr), l, d));
}

ContextPtr SemilinearContext::make(const FamilyParams& P) {
  return make(P.Fr, P.l, P.d);
}

SemilinearElement SemilinearContext::canon(const std::array<u64, 4>& m, unsigned frob) const {
  unsigned lead = 0;
  while (lead < 4 && m[lead] == 0) ++lead;
  if (lead == 4) throw std::invalid_argument("semilinear: zero matrix");
  SemilinearElement e{m, frob % d_};
  if (m[lead] != 1) {
    const u64 s = Fr_->inv_i(m[lead]);
    for (auto& v : e.m) v = Fr_->mul_i(v, s);
  }
  if (det_index(e) == 0) throw std::invalid_argument("semilinear: singular matrix");
  return e;
}

SemilinearElement SemilinearContext::identity() const {
  return SemilinearElement{{1, 0, 0, 1}, 0};
}

std::uint64_t SemilinearContext::det_index(const SemilinearElement& a) const {
  return Fr_->sub_i(Fr_->mul_i(a.m[0], a.m[3]), Fr_->mul_i(a.m[1], a.m[2]));
}

SemilinearElement SemilinearContext::compose(const SemilinearElement& a,
                                             const SemilinearElement& b) const {
  const auto& t = frob_[a.frob];
  const u64 b0 = t[b.m[0]], b1 = t[b.m[1]], b2 = t[b.m[2]], b3 = t[b.m[3]];
  std::array<u64, 4> m{
      Fr_->add_i(Fr_->mul_i(a.m[0], b0), Fr_->mul_i(a.m[1], b2)),
      Fr_->add_i(Fr_->mul_i(a.m[0], b1), Fr_->mul_i(a.m[1], b3)),
      Fr_->add_i(Fr_->mul_i(a.m[2], b0), Fr_->mul_i(a.m[3], b2)),
      Fr_->add_i(Fr_->mul_i(a.m[2], b1), Fr_->mul_i(a.m[3], b3))};
  return canon(m, a.frob + b.frob);
}

SemilinearElement SemilinearContext::inverse(const SemilinearElement& a) const {
  const unsigned j = (d_ - a.frob) % d_;
  const auto& t = frob_[j];
  std::array<u64, 4> adj{t[a.m[3]], t[Fr_->neg_i(a.m[1])], t[Fr_->neg_i(a.m[2])], t[a.m[0]]};
  return canon(adj, j);
}

std::uint64_t SemilinearContext::pack(const SemilinearElement& a) const {
  const u64 n = Fr_->order();
  u64 key = a.frob;
  for (const u64 v : a.m) key = key * n + v;
  return key;
}

SemilinearElement SemilinearContext::unpack(u64 key) const {
  const u64 n = Fr_->order();
  SemilinearElement e{};
  for (int i = 3; i >= 0; --i) {
    e.m[static_cast<unsigned>(i)] = key % n;
    key /= n;
  }
  e.frob = static_cast<unsigned>(key);
  return e;
}

std::uint64_t SemilinearContext::apply(const SemilinearElement& a, u64 point) const {
  const u64 inf = Fr_->order();
  if (point == inf) {
    if (a.m[2] == 0) return inf;
    return Fr_->div_i(a.m[0], a.m[2]);
  }
  const u64 y = frob_[a.frob][point];
  const u64 num = Fr_->add_i(Fr_->mul_i(a.m[0], y), a.m[1]);
  const u64 den = Fr_->add_i(Fr_->mul_i(a.m[2], y), a.m[3]);
  if (den == 0) return inf;
  return Fr_->div_i(num, den);
}

GroupSet::GroupSet(ContextPtr ctx, std::vector<u64> keys) : ctx_(std::move(ctx)), keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  if (std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end())
    throw std::invalid_argument("group set: duplicate element");
}

GroupSet GroupSet::from_elements(ContextPtr ctx, const std::vector<SemilinearElement>& elems) {
  std::vector<u64> keys;
  keys.reserve(elems.size());
  for (const auto& e : elems) keys.push_back(ctx->pack(e));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return GroupSet(std::move(ctx), std::move(keys));
}

GroupSet GroupSet::generate(ContextPtr ctx, const std::vector<SemilinearElement>& gens) {
  std::unordered_set<u64> seen;
  std::queue<SemilinearElement> work;
  const auto id = ctx->identity();
  seen.insert(ctx->pack(id));
  work.push(id);
  while (!work.empty()) {
    const auto x = work.front();
    work.pop();
    for (const auto& g : gens) {
      const auto y = ctx->compose(x, g);
      if (seen.insert(ctx->pack(y)).second) work.push(y);
    }
  }
  return GroupSet(std::move(ctx), std::vector<u64>(seen.begin(), seen.end()));
}

bool GroupSet::contains_key(u64 key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

bool GroupSet::subset_of(const GroupSet& other) const {
  return std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
}

bool GroupSet::closed_under_product() const {
  for (const u64 ka : keys_) {
    const auto a = ctx_->unpack(ka);
    for (const u64 kb : keys_) {
      if (!contains(ctx_->compose(a, ctx_->unpack(kb)))) return false;
    }
  }
  return true;
}

std::vector<SemilinearElement> psl2_generators(const ContextPtr& ctx) {
  const auto& F = *ctx->field();
  const u64 gen = multiplicative_generator(F);
  const u64 zeta1 = F.mul_i(gen, gen);
  return {ctx->canon({1, 1, 0, 1}, 0),
          ctx->canon({zeta1, 0, 0, 1}, 0),
          ctx->canon({0, F.neg_i(1), 1, 0}, 0)};
}

GroupSet build_psl2(const ContextPtr& ctx) {
  const auto& F = *ctx->field();
  const u64 n = F.order();
  std::vector<u64> keys;
  keys.reserve(n * (n * n - 1) / 2);
  auto push_if_special = [&](const std::array<u64, 4>& m) {
    const u64 det = F.sub_i(F.mul_i(m[0], m[3]), F.mul_i(m[1], m[2]));
    if (det == 0 || !F.is_square_i(det)) return;
    keys.push_back(ctx->pack(SemilinearElement{m, 0}));
  };
  for (u64 c = 0; c < n; ++c)
    for (u64 d = 0; d < n; ++d)
      for (u64 e = 0; e < n; ++e) push_if_special({1, c, d, e});
  for (u64 d = 0; d < n; ++d)
    for (u64 e = 0; e < n; ++e) push_if_special({0, 1, d, e});
  GroupSet out(ctx, std::move(keys));
  if (out.size() != n * (n * n - 1) / 2)
    throw std::logic_error("psl2: enumeration count mismatch");
  if (GroupSet::generate(ctx, psl2_generators(ctx)) != out)
    throw std::logic_error("psl2: generated closure disagrees with enumeration");
  return out;
}

GroupSet build_pair_stabilizer(const ContextPtr& ctx) {
  const auto& F = *ctx->field();
  const u64 n = F.order();
  std::vector<SemilinearElement> elems;
  for (u64 z = 1; z < n; ++z) {
    if (!F.is_square_i(z)) continue;
    elems.push_back(ctx->canon({z, 0, 0, 1}, 0));
    elems.push_back(ctx->canon({0, z, 1, 0}, 0));
  }
  auto out = GroupSet::from_elements(ctx, elems);
  if (out.size() != n - 1) throw std::logic_error("pair stabilizer: order mismatch");
  return out;
}

SemilinearElement twisting_frobenius(const ContextPtr& ctx) {
  const u64 z0 = least_nonsquare(ctx->field()).index();
  return ctx->canon({z0, 0, 0, 1}, 1);
}

GroupSet build_semilinear_group(const ContextPtr& ctx, const GroupSet& G) {
  const auto sigma = twisting_frobenius(ctx);
  const unsigned d = ctx->layer_count();
  std::vector<u64> keys;
  keys.reserve(G.size() * d);
  std::vector<SemilinearElement> layer;
  layer.reserve(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) layer.push_back(G.element(i));
  for (const auto& e : layer) keys.push_back(ctx->pack(e));
  for (unsigned i = 1; i < d; ++i) {
    for (auto& e : layer) {
      e = ctx->compose(sigma, e);
      keys.push_back(ctx->pack(e));
    }
  }
  GroupSet out(ctx, std::move(keys));
  if (out.size() != G.size() * d) throw std::logic_error("semilinear group: layer collision");

  // sigma^d must fall back into G, so the layers exhaust the closure
  auto pw = sigma;
  for (unsigned i = 1; i < d; ++i) pw = ctx->compose(sigma, pw);
  if (!G.contains(pw)) throw std::logic_error("semilinear group: sigma^d escapes the base");
  auto gens = psl2_generators(ctx);
  gens.push_back(sigma);
  if (GroupSet::generate(ctx, gens) != out)
    throw std::logic_error("semilinear group: generated closure disagrees with layers");
  return out;
}

GroupSet build_extended_pair_stabilizer(const ContextPtr& ctx, const GroupSet& H) {
  std::vector<SemilinearElement> gens;
  gens.reserve(H.size() + 1);
  for (std::size_t i = 0; i < H.size(); ++i) gens.push_back(H.element(i));
  gens.push_back(twisting_frobenius(ctx));
  auto out = GroupSet::generate(ctx, gens);
  if (out.size() != H.size() * ctx->layer_count())
    throw std::logic_error("extended pair stabilizer: order mismatch");
  if (!out.closed_under_product())
    throw std::logic_error("extended pair stabilizer: not closed");
  return out;
}

CosetSpace coset_space(const GroupSet& parent, const GroupSet& sub) {
  if (!sub.subset_of(parent)) throw std::invalid_argument("coset space: subgroup not contained");
  if (parent.size() % sub.size() != 0)
    throw std::invalid_argument("coset space: order does not divide");
  const auto& ctx = *parent.context();
  CosetSpace space;
  space.keys = parent.keys();
  space.coset_id.assign(space.keys.size(), ~u32{0});
  std::vector<SemilinearElement> subs;
  subs.reserve(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) subs.push_back(sub.element(i));
  for (std::size_t i = 0; i < space.keys.size(); ++i) {
    if (space.coset_id[i] != ~u32{0}) continue;
    const auto id = static_cast<u32>(space.rep_keys.size());
    space.rep_keys.push_back(space.keys[i]);
    const auto x = ctx.unpack(space.keys[i]);
    for (const auto& s : subs) {
      const u64 key = ctx.pack(ctx.compose(x, s));
      const auto it = std::lower_bound(space.keys.begin(), space.keys.end(), key);
      if (it == space.keys.end() || *it != key)
        throw std::logic_error("coset space: product left the parent set");
      auto& slot = space.coset_id[static_cast<std::size_t>(it - space.keys.begin())];
      if (slot != ~u32{0} && slot != id)
        throw std::logic_error("coset space: overlapping cosets");
      slot = id;
    }
  }
  if (space.count() != parent.size() / sub.size())
    throw std::logic_error("coset space: count mismatch");
  return space;
}

std::uint32_t coset_of(const CosetSpace& space, const SemilinearContext& ctx,
                       const SemilinearElement& e) {
  const u64 key = ctx.pack(e);
  const auto it = std::lower_bound(space.keys.begin(), space.keys.end(), key);
  if (it == space.keys.end() || *it != key)
    throw std::invalid_argument("coset_of: element outside the parent group");
  return space.coset_id[static_cast<std::size_t>(it - space.keys.begin())];
}

std::vector<std::vector<u32>> orbit_partition(const CosetSpace& space, const GroupSet& movers) {
  const auto& ctx = *movers.context();
  std::vector<SemilinearElement> ms;
  ms.reserve(movers.size());
  for (std::size_t i = 0; i < movers.size(); ++i) ms.push_back(movers.element(i));
  const std::size_t n = space.count();
  std::vector<char> visited(n, 0);
  std::vector<std::vector<u32>> blocks;
  for (u32 w = 0; w < n; ++w) {
    if (visited[w]) continue;
    const auto rep = ctx.unpack(space.rep_keys[w]);
    std::vector<u32> block;
    for (const auto& s : ms) {
      const u32 img = coset_of(space, ctx, ctx.compose(s, rep));
      if (!visited[img]) {
        visited[img] = 1;
        block.push_back(img);
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

unsigned common_block_count(const std::vector<std::vector<u32>>& a,
                            const std::vector<std::vector<u32>>& b) {
  std::set<std::vector<u32>> sa(a.begin(), a.end());
  unsigned out = 0;
  for (const auto& blk : b) out += sa.count(blk) ? 1u : 0u;
  return out;
}

PrimitivityReport primitivity(const CosetSpace& space, const ContextPtr& ctx,
                              const std::vector<SemilinearElement>& gens) {
  const std::size_t n = space.count();
  // one permutation table per generator
  std::vector<std::vector<u32>> perms(gens.size(), std::vector<u32>(n));
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (u32 w = 0; w < n; ++w)
      perms[gi][w] = coset_of(space, *ctx, ctx->compose(gens[gi], ctx->unpack(space.rep_keys[w])));

  std::vector<u32> uf(n);
  std::vector<u32> sz(n);
  auto find = [&](u32 x) {
    while (uf[x] != x) { uf[x] = uf[uf[x]]; x = uf[x]; }
    return x;
  };
  std::size_t best = n;
  for (u32 w = 1; w < n; ++w) {
    for (u32 i = 0; i < n; ++i) { uf[i] = i; sz[i] = 1; }
    std::vector<std::pair<u32, u32>> work{{0, w}};
    auto unite = [&](u32 a, u32 b) {
      a = find(a); b = find(b);
      if (a == b) return;
      if (sz[a] < sz[b]) std::swap(a, b);
      uf[b] = a;
      sz[a] += sz[b];
      work.emplace_back(a, b);
    };
    unite(0, w);
    for (std::size_t k = 0; k < work.size(); ++k) {
      const auto [a, b] = work[k];
      for (const auto& perm : perms) unite(perm[a], perm[b]);
    }
    best = std::min<std::size_t>(best, sz[find(0)]);
    if (best == 2) break;  // no smaller nontrivial block can exist
  }
  if (best == n) return PrimitivityReport{true, 1, n};
  return PrimitivityReport{false, n / best, best};
}

std::uint64_t core_order(const CosetSpace& space, const GroupSet& sub) {
  const auto& ctx = *sub.context();
  u64 fixed = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const auto s = sub.element(i);
    bool all = true;
    for (u32 w = 0; w < space.count(); ++w) {
      if (coset_of(space, ctx, ctx.compose(s, ctx.unpack(space.rep_keys[w]))) != w) {
        all = false;
        break;
      }
    }
    if (all) ++fixed;
  }
  return fixed;
}

MonodromyScene build_monodromy(const FamilyParams& P) {
  auto ctx = SemilinearContext::make(P);
  auto G = build_psl2(ctx);
  auto H = build_pair_stabilizer(ctx);
  if (!H.subset_of(G)) throw std::logic_error("monodromy: pair stabilizer escapes psl2");
  auto A = build_semilinear_group(ctx, G);
  auto J = build_extended_pair_stabilizer(ctx, H);
  if (!J.subset_of(A)) throw std::logic_error("monodromy: extended stabilizer escapes");
  auto GmodH = coset_space(G, H);
  auto AmodJ = coset_space(A, J);
  return MonodromyScene{ctx,      std::move(G),     std::move(H),
                        std::move(A), std::move(J), twisting_frobenius(ctx),
                        std::move(GmodH), std::move(AmodJ)};
}

MonodromySummary summarize_monodromy(const MonodromyScene& S) {
  MonodromySummary out{};
  out.order_G = S.G.size();
  out.order_H = S.H.size();
  out.order_A = S.A.size();
  out.order_J = S.J.size();
  out.index = S.AmodJ.count();
  if (S.GmodH.count() != out.index)
    throw std::logic_error("monodromy summary: coset space sizes disagree");
  out.transitive_A = orbit_partition(S.AmodJ, S.A).size() == 1;
  out.transitive_G = orbit_partition(S.AmodJ, S.G).size() == 1;
  const auto ph = orbit_partition(S.AmodJ, S.H);
  const auto pj = orbit_partition(S.AmodJ, S.J);
  out.common_orbits = common_block_count(ph, pj);
  auto gens = psl2_generators(S.ctx);
  out.prim_G_on_GH = primitivity(S.GmodH, S.ctx, gens);
  gens.push_back(S.sigma);
  out.prim_A_on_AJ = primitivity(S.AmodJ, S.ctx, gens);
  out.core_order = core_order(S.AmodJ, S.J);
  auto pw = S.sigma;
  unsigned j = 1;
  while (!S.G.contains(pw)) {
    pw = S.ctx->compose(S.sigma, pw);
    ++j;
  }
  out.cyclic_quotient_order = j;
  return out;
}

AuditReport group_audit(const MonodromyScene& S, unsigned samples, std::uint64_t seed) {
  const auto& ctx = *S.ctx;
  AuditReport out{};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, S.A.size() - 1);
  out.conjugation_stable = true;
  for (unsigned s = 0; s < samples && out.conjugation_stable; ++s) {
    const auto g = S.A.element(pick(rng));
    const auto gi = ctx.inverse(g);
    for (std::size_t i = 0; i < S.G.size(); ++i) {
      if (!S.G.contains(ctx.compose(ctx.compose(g, S.G.element(i)), gi))) {
        out.conjugation_stable = false;
        break;
      }
    }
  }
  out.layer_product_match = S.A.size() == S.G.size() * ctx.layer_count() &&
                            S.A.size() == S.AmodJ.count() * S.J.size();
  auto pw = S.sigma;
  unsigned j = 1;
  while (!S.G.contains(pw)) {
    pw = ctx.compose(S.sigma, pw);
    ++j;
  }
  out.cyclic_quotient_order = j;
  out.inverses_ok = true;
  const auto id = ctx.identity();
  for (std::size_t i = 0; i < S.A.size(); ++i) {
    const auto e = S.A.element(i);
    if (!(ctx.compose(e, ctx.inverse(e)) == id)) {
      out.inverses_ok = false;
      break;
    }
  }
  return out;
}

GroupSet stabilizer_of_infinity(const GroupSet& G) {
  const auto& ctx = *G.context();
  std::vector<u64> keys;
  for (const u64 key : G.keys()) {
    if (ctx.unpack(key).m[2] == 0) keys.push_back(key);
  }
  return GroupSet(G.context(), std::move(keys));
}

GroupSet stabilizer_of_extension_point(const GroupSet& G, const EmbeddingMap& emb,
                                       const FieldElement& alpha) {
  const auto& ctx = *G.context();
  if (emb.source() != ctx.field() || emb.target() != alpha.field())
    throw std::invalid_argument("stabilizer: embedding does not match");
  std::vector<u64> keys;
  for (const u64 key : G.keys()) {
    const auto e = ctx.unpack(key);
    if (e.frob != 0) throw std::invalid_argument("stabilizer: expected frobenius-free group");
    const auto m0 = emb(FieldElement(ctx.field(), e.m[0]));
    const auto m1 = emb(FieldElement(ctx.field(), e.m[1]));
    const auto m2 = emb(FieldElement(ctx.field(), e.m[2]));
    const auto m3 = emb(FieldElement(ctx.field(), e.m[3]));
    const auto den = m2 * alpha + m3;
    if (den.index() == 0) continue;  // image is the point at infinity
    if ((m0 * alpha + m1) * den.inverse() == alpha) keys.push_back(key);
  }
  return GroupSet(G.context(), std::move(keys));
}

}  // namespace excrat
