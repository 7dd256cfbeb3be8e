#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qig/report.hpp"
#include "qig/topology.hpp"

namespace qig {

/// Finite topological groupoid. The composite m(x, y) means "x then y" and is
/// defined exactly when r(x) = d(y); it is stored as an explicit partial table
/// so that deliberately broken fixtures can be represented.
struct Groupoid {
  Space units;   // G0
  Space arrows;  // G1
  std::vector<int> d;    // arrow -> unit
  std::vector<int> r;    // arrow -> unit
  std::vector<int> u;    // unit -> arrow
  std::vector<int> inv;  // arrow -> arrow
  std::vector<int> m;    // arrows x arrows -> arrow, -1 undefined

  int n_arrows() const { return arrows.points(); }
  int n_units() const { return units.points(); }
  int mult(int x, int y) const { return m[std::size_t(x) * n_arrows() + y]; }
  void set_mult(int x, int y, int xy) { m[std::size_t(x) * n_arrows() + y] = xy; }
  bool composable(int x, int y) const { return r[x] == d[y]; }

  /// The composable-pair set with its subspace-of-product topology.
  PairSubspace composable_pairs() const;
};

/// Every groupoid axiom with witnesses, including continuity of the five
/// structure maps (m from the composable-pair subspace).
Report validate_groupoid(const Groupoid& G);

/// Openness / local-homeomorphism status of one structure map.
struct StructMapStatus {
  std::string name;
  bool open = false;
  bool local_homeo = false;
};

struct GroupoidClass {
  bool open = false;   // d is an open map
  bool etale = false;  // d is a local homeomorphism
  std::vector<StructMapStatus> maps;  // d, r, m, u, i
  /// Structure maps disagreeing with d's classification, e.g. "u" when d is
  /// open but u is not. Recorded, not asserted.
  std::vector<std::string> open_divergence;
  std::vector<std::string> etale_divergence;
  bool unit_image_open = false;  // u(G0) open in G1
};

GroupoidClass classify_groupoid(const Groupoid& G);

struct GroupoidIso {
  std::vector<int> arrow_map;
  std::vector<int> unit_map;
};

struct IsoResult {
  std::optional<GroupoidIso> iso;
  std::string reason;  // discriminating invariant or "search exhausted"
};

/// Backtracking search for an isomorphism (homeomorphic on both levels,
/// commuting with d, r, m, u, i). Throws SizeCapExceeded beyond caps.max_arrows.
IsoResult groupoid_isomorphic(const Groupoid& G, const Groupoid& H, const Caps& caps = {});

/// Checks that a given candidate is a genuine isomorphism.
bool verify_groupoid_iso(const Groupoid& G, const Groupoid& H, const GroupoidIso& iso);

// Canonical families ---------------------------------------------------------

/// Pair groupoid on n discrete points: arrows (i,j), m((i,j),(j,k)) = (i,k).
Groupoid pair_groupoid(int n);
/// Cyclic group of order n as a one-unit groupoid, discrete topology.
Groupoid cyclic_group_groupoid(int n);
/// Like cyclic_group_groupoid but with the indiscrete topology on arrows.
Groupoid cyclic_group_indiscrete(int n);
/// G1 = G0 = X, all structure maps identities.
Groupoid unit_groupoid(const Space& X);
/// Z/n acting on k discrete points by rotation (requires k | n):
/// arrows (x, g), d = x, r = (x+g) mod k.
Groupoid action_groupoid(int n, int k);

}  // namespace qig
