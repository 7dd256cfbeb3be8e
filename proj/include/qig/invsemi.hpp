#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qig/bits.hpp"
#include "qig/order.hpp"
#include "qig/report.hpp"
#include "qig/topology.hpp"

namespace qig {

/// Injective partial point map on a finite universe; -1 marks "undefined".
struct PartialMap {
  int universe = 0;
  std::vector<int> img;

  static PartialMap empty(int n) { return {n, std::vector<int>(n, -1)}; }
  static PartialMap identity(int n);
  bool defined(int x) const { return img[x] >= 0; }
  Bits domain() const;
  Bits image() const;
  bool injective() const;
  /// apply *this, then g
  PartialMap then(const PartialMap& g) const;
  PartialMap inverse() const;
  bool operator==(const PartialMap&) const = default;
  bool operator<(const PartialMap& o) const { return img < o.img; }
  std::string graph_string(const std::vector<std::string>& ids) const;
};

/// Finite inverse semigroup: multiplication table plus involution.
/// Convention everywhere: mult(s, t) means "apply s, then t", so
/// mult(s, inv(s)) is the idempotent of the domain of s.
struct InvSemigroup {
  std::vector<std::string> ids;
  std::vector<std::uint16_t> mul;  // n*n
  std::vector<std::uint16_t> inv;

  int n() const { return int(ids.size()); }
  int mult(int a, int b) const { return mul[std::size_t(a) * n() + b]; }
  int invof(int a) const { return inv[a]; }
  bool idem(int a) const { return mult(a, a) == a; }
  int dom_idem(int a) const { return mult(a, invof(a)); }  // s s^-1
  int ran_idem(int a) const { return mult(invof(a), a); }  // s^-1 s
};

/// Associativity, s s^-1 s = s, involution laws, commuting idempotents,
/// and the derived antihomomorphism law (st)^-1 = t^-1 s^-1.
Report validate_invsemigroup(const InvSemigroup& S);

/// s <= t iff s = f t for some idempotent f.
bool natural_leq(const InvSemigroup& S, int s, int t);

/// The natural order on all of S as a poset.
Poset natural_order(const InvSemigroup& S);

/// E(S) with the natural order. element_of[i] maps E-poset index -> S index.
/// The meet of two idempotents is their product.
Poset idempotent_poset(const InvSemigroup& S, std::vector<int>* element_of);

struct CompatWitness {
  int s = -1, t = -1;
  int st_inv = -1;    // s t^-1
  int sinv_t = -1;    // s^-1 t
  bool st_inv_idem = false;
  bool sinv_t_idem = false;
  bool compatible() const { return st_inv_idem && sinv_t_idem; }
};
CompatWitness compatible(const InvSemigroup& S, int s, int t);

/// Least upper bound of a pairwise-compatible subset in the natural order.
/// Throws CheckError("NotPairwiseCompatible") when the precondition fails.
std::optional<int> compatible_join(const InvSemigroup& S, const Bits& X);

struct CompleteResult {
  bool complete = true;
  Bits witness;       // a minimal pairwise-compatible subset without a join
  bool exhaustive = true;  // false when the binary-join criterion was used
};
/// Exhaustive subset scan up to caps.max_subsets; above the cap the
/// equivalent zero-plus-binary-joins criterion is used.
CompleteResult is_complete(const InvSemigroup& S, const Caps& caps = {});

/// All homeomorphisms between open subspaces of X, composed left-to-right.
InvSemigroup pseudogroup_of_space(const Space& X, std::vector<PartialMap>* elements = nullptr);

struct VPResult {
  std::vector<PartialMap> rep;  // universe: the elements of S
  Report verification;          // injectivity + homomorphism + involution
};
/// Right-translation representation s -> (x -> x s) on S s^-1.
/// Throws CheckError("RepresentationFailure") when verification fails.
VPResult vagner_preston(const InvSemigroup& S);

/// Per existing compatible join in S, whether the representation maps it to
/// the join (graph union) of the images. Informational.
struct JoinPreservationReport {
  int joins_checked = 0;
  int joins_preserved = 0;
  std::string first_failure;  // empty when all preserved
};
JoinPreservationReport vp_join_preservation(const InvSemigroup& S, const VPResult& vp,
                                            const Caps& caps = {});

struct PseudogroupCheck {
  bool ok = true;
  std::string reason;
};
/// E(S) under the natural order must be a sup-lattice satisfying the frame law.
PseudogroupCheck is_abstract_pseudogroup(const InvSemigroup& S, Frame* E_out = nullptr,
                                         std::vector<int>* element_of = nullptr);

/// Isomorphism search (bijection preserving mult and involution).
std::optional<std::vector<int>> semigroup_iso(const InvSemigroup& A, const InvSemigroup& B,
                                              std::string* why = nullptr);

/// Symmetric inverse monoid I_n: all partial injections on n points.
InvSemigroup symmetric_inverse_monoid(int npoints, std::vector<PartialMap>* elements = nullptr);

/// Canonical inverse semigroup on a set of partial maps (must be closed under
/// composition and inverse); elements are sorted canonically.
InvSemigroup semigroup_from_partial_maps(std::vector<PartialMap> elems,
                                         const std::vector<std::string>& universe_ids,
                                         std::vector<PartialMap>* sorted_out = nullptr);

}  // namespace qig
