#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "excrat/family.hpp"

namespace excrat {

// A projective semilinear transformation of the line over F_r: a pair (M, i)
// of an invertible 2x2 matrix up to scalars and a power of the q-Frobenius,
// acting on points by x -> M(x^{q^i}). Matrices are canonicalized so the
// first nonzero entry in row-major order is 1. Composition follows
//   (M1, i1)(M2, i2) = (M1 phi^{i1}(M2), i1 + i2 mod d)
// with phi the entrywise q-power and d the order of the q-Frobenius on F_r.
struct SemilinearElement {
  std::array<std::uint64_t, 4> m;  // row-major element indices in F_r
  unsigned frob;

  friend bool operator==(const SemilinearElement& a, const SemilinearElement& b) {
    return a.m == b.m && a.frob == b.frob;
  }
  friend bool operator!=(const SemilinearElement& a, const SemilinearElement& b) {
    return !(a == b);
  }
};

class SemilinearContext;
using ContextPtr = std::shared_ptr<const SemilinearContext>;

class SemilinearContext : public std::enable_shared_from_this<SemilinearContext> {
public:
  // l: q = p^l; d: order of the q-power map on F_r (frobenius layer count)
  static ContextPtr make(FieldPtr Fr, unsigned l, unsigned d);
  static ContextPtr make(const FamilyParams& P);

  const FieldPtr& field() const { return Fr_; }
  unsigned layer_count() const { return d_; }
  std::uint64_t r() const { return Fr_->order(); }
  // x^{q^i} via a per-layer table
  std::uint64_t frobenius_index(std::uint64_t x, unsigned i) const {
    return frob_[i % d_][x];
  }

  SemilinearElement canon(const std::array<std::uint64_t, 4>& m, unsigned frob) const;
  SemilinearElement identity() const;
  SemilinearElement compose(const SemilinearElement& a, const SemilinearElement& b) const;
  SemilinearElement inverse(const SemilinearElement& a) const;
  std::uint64_t det_index(const SemilinearElement& a) const;

  // bijective total-order key: frobenius layer first, then entries
  std::uint64_t pack(const SemilinearElement& a) const;
  SemilinearElement unpack(std::uint64_t key) const;

  // points of P^1(F_r): 0..r-1 finite, index r is infinity
  std::uint64_t apply(const SemilinearElement& a, std::uint64_t point) const;

private:
  SemilinearContext(FieldPtr Fr, unsigned l, unsigned d);
  FieldPtr Fr_;
  unsigned l_;
  unsigned d_;
  std::vector<std::vector<std::uint64_t>> frob_;  // frob_[i][x] = x^{q^i}
};

// An explicit finite set of semilinear elements held as sorted packed keys.
// Used for groups and cosets; equality of sets is vector equality.
class GroupSet {
public:
  GroupSet(ContextPtr ctx, std::vector<std::uint64_t> keys);
  static GroupSet from_elements(ContextPtr ctx, const std::vector<SemilinearElement>& elems);
  // BFS closure of the generated subgroup
  static GroupSet generate(ContextPtr ctx, const std::vector<SemilinearElement>& gens);

  std::size_t size() const { return keys_.size(); }
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  const ContextPtr& context() const { return ctx_; }
  bool contains_key(std::uint64_t key) const;
  bool contains(const SemilinearElement& e) const { return contains_key(ctx_->pack(e)); }
  SemilinearElement element(std::size_t idx) const { return ctx_->unpack(keys_[idx]); }
  bool subset_of(const GroupSet& other) const;
  // exhaustive |S|^2 product closure
  bool closed_under_product() const;

  friend bool operator==(const GroupSet& a, const GroupSet& b) {
    return a.ctx_ == b.ctx_ && a.keys_ == b.keys_;
  }
  friend bool operator!=(const GroupSet& a, const GroupSet& b) { return !(a == b); }

private:
  ContextPtr ctx_;
  std::vector<std::uint64_t> keys_;
};

// standard generators: translation, square scaling, inversion
std::vector<SemilinearElement> psl2_generators(const ContextPtr& ctx);
// all matrices with determinant in the square class, frobenius layer 0;
// the enumeration is certified against the BFS closure of the generators
GroupSet build_psl2(const ContextPtr& ctx);
// setwise stabilizer of {0, infinity}: u -> zu and u -> z/u for square z
GroupSet build_pair_stabilizer(const ContextPtr& ctx);
// sigma = (diag(zeta0, 1), one q-power), zeta0 the least nonsquare of F_r
SemilinearElement twisting_frobenius(const ContextPtr& ctx);
// A = union of sigma^i G over i < d, certified against the BFS closure
GroupSet build_semilinear_group(const ContextPtr& ctx, const GroupSet& G);
// J = <sigma, H>, certified closed by the exhaustive product check
GroupSet build_extended_pair_stabilizer(const ContextPtr& ctx, const GroupSet& H);

// Left cosets x * Sub inside Parent, labeled by ascending scan; the
// representative of each coset is its least element.
struct CosetSpace {
  std::vector<std::uint64_t> keys;       // parent, ascending
  std::vector<std::uint32_t> coset_id;   // parallel to keys
  std::vector<std::uint64_t> rep_keys;   // coset id -> least element
  std::size_t count() const { return rep_keys.size(); }
};

CosetSpace coset_space(const GroupSet& parent, const GroupSet& sub);
std::uint32_t coset_of(const CosetSpace& space, const SemilinearContext& ctx,
                       const SemilinearElement& e);

// orbit partition of the cosets under left translation by every element of
// `movers`; blocks are sorted internally and ordered by least member
std::vector<std::vector<std::uint32_t>> orbit_partition(const CosetSpace& space,
                                                        const GroupSet& movers);
// number of blocks the two partitions share as sets
unsigned common_block_count(const std::vector<std::vector<std::uint32_t>>& a,
                            const std::vector<std::vector<std::uint32_t>>& b);

struct PrimitivityReport {
  bool primitive;
  std::size_t block_count;  // of a minimal nontrivial system when imprimitive
  std::size_t block_size;
};
// block-closure search over all seed pairs (base, w)
PrimitivityReport primitivity(const CosetSpace& space, const ContextPtr& ctx,
                              const std::vector<SemilinearElement>& gens);

// elements of sub fixing every coset
std::uint64_t core_order(const CosetSpace& space, const GroupSet& sub);

struct MonodromyScene {
  ContextPtr ctx;
  GroupSet G;  // geometric group, PSL_2(r)
  GroupSet H;  // pair stabilizer inside G
  GroupSet A;  // G extended by the twisted Frobenius
  GroupSet J;  // extension of H by the same twist
  SemilinearElement sigma;
  CosetSpace GmodH;
  CosetSpace AmodJ;
};

MonodromyScene build_monodromy(const FamilyParams& P);

struct MonodromySummary {
  std::uint64_t order_G, order_H, order_A, order_J;
  std::uint64_t index;  // cosets of J in A
  bool transitive_A, transitive_G;
  unsigned common_orbits;  // orbit blocks shared by H and J on A/J
  PrimitivityReport prim_G_on_GH, prim_A_on_AJ;
  std::uint64_t core_order;
  unsigned cyclic_quotient_order;  // least j >= 1 with sigma^j in G
};

MonodromySummary summarize_monodromy(const MonodromyScene& S);

struct AuditReport {
  bool conjugation_stable;   // g G g^{-1} == G for sampled g in A
  bool layer_product_match;  // |A| = d |G| and |A| = index |J|
  unsigned cyclic_quotient_order;
  bool inverses_ok;          // e e^{-1} = identity across A
};

AuditReport group_audit(const MonodromyScene& S, unsigned samples, std::uint64_t seed);

// subgroup of G fixing the point at infinity (upper triangular classes)
GroupSet stabilizer_of_infinity(const GroupSet& G);
// subgroup of G fixing a point of an extension line, entries embedded there
GroupSet stabilizer_of_extension_point(const GroupSet& G, const EmbeddingMap& emb,
                                       const FieldElement& alpha);

}  // namespace excrat
