#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qig/bits.hpp"
#include "qig/report.hpp"

namespace qig {

/// Finite point-set space with an explicit family of open sets.
struct Space {
  std::vector<std::string> ids;  // point ids, sorted ascending
  std::vector<Bits> opens;       // canonical order, deduplicated
  std::vector<Bits> min_open;    // smallest open around each point (after finalize)

  int points() const { return int(ids.size()); }
  int n_opens() const { return int(opens.size()); }

  /// Sort/dedupe opens and compute minimal neighborhoods. Call after building.
  void finalize();

  bool is_open(const Bits& s) const { return open_index(s) >= 0; }
  int open_index(const Bits& s) const;  // -1 when not open

  std::string point_set(const Bits& s) const { return set_to_string(s, ids); }
};

/// Topology axioms: empty and full member, binary unions, binary intersections.
Report validate_space(const Space& X);

Space discrete_space(std::vector<std::string> ids);
Space indiscrete_space(std::vector<std::string> ids);
/// Two points "a","b" with opens {},{a},{a,b}.
Space sierpinski_space();

/// A point map between spaces, classified by map_classify.
struct SpaceMap {
  Space source;
  Space target;
  std::vector<int> map;
};

struct MapFlags {
  bool continuous = false;
  bool open = false;
  bool local_homeo = false;
};

Bits map_image(const std::vector<int>& f, const Bits& s, int target_points);
Bits map_preimage(const std::vector<int>& f, const Bits& s, int source_points);

/// Continuity, openness, and the local-homeomorphism property of f : X -> Y.
/// X and Y must be finalized valid spaces.
MapFlags classify_map(const Space& X, const Space& Y, const std::vector<int>& f);

/// Subspace on the given point subset, with points reindexed in id order.
/// sub_to_full maps new point indices to indices in X.
Space subspace(const Space& X, const Bits& pts, std::vector<int>* sub_to_full = nullptr);

/// Whether a bijection between equally-sized spaces is a homeomorphism.
bool is_homeomorphism(const Space& X, const Space& Y, const std::vector<int>& f);

/// Exhaustive homeomorphism search; returns a point bijection or nullopt.
std::optional<std::vector<int>> find_homeomorphism(const Space& X, const Space& Y);

/// A finite subset C of X x Y carrying the subspace topology of the product.
/// The topology is never materialized; relative opens are tested through the
/// basic neighborhoods C n (min_open(x) x min_open(y)).
struct PairSubspace {
  const Space* X = nullptr;
  const Space* Y = nullptr;
  std::vector<std::pair<int, int>> pts;  // sorted
  std::vector<Bits> basic;               // basic[k]: minimal relative open around pts[k]

  void build();  // fills basic from X->min_open, Y->min_open
  int index_of(int x, int y) const;
  bool rel_open(const Bits& T) const;
  std::string pair_name(int k) const;
};

/// Classification of g : C -> Z where C is a pair subspace.
MapFlags classify_from_pairs(const PairSubspace& C, const Space& Z, const std::vector<int>& g);

/// All unions of the given family (plus the empty union). Does not close
/// under intersection; feed the result to validate_space to test basis
/// validity.
std::vector<Bits> close_under_union(const std::vector<Bits>& family, int npoints);

}  // namespace qig
