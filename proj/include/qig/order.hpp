#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qig/bits.hpp"
#include "qig/report.hpp"
#include "qig/topology.hpp"

namespace qig {

/// Finite poset given by its full order relation.
struct Poset {
  std::vector<std::string> ids;
  std::vector<Bits> up;    // up[i] = { j : i <= j }
  std::vector<Bits> down;  // down[i] = { j : j <= i }

  int n() const { return int(ids.size()); }
  bool leq(int a, int b) const { return up[a].test(b); }

  /// Build from an arbitrary relation; axioms are NOT assumed (see validate_poset).
  static Poset from_pairs(std::vector<std::string> ids, const std::vector<std::pair<int, int>>& leq);
};

/// Reflexivity, antisymmetry, transitivity — each violation with a witness.
Report validate_poset(const Poset& p);

/// Complete lattice: a validated poset where every subset has a join.
struct Lattice {
  Poset po;
  int bottom = -1;
  int top = -1;
  std::vector<std::uint16_t> jn;  // n*n join table
  std::vector<std::uint16_t> mt;  // n*n meet table

  int n() const { return po.n(); }
  int join(int a, int b) const { return jn[std::size_t(a) * n() + b]; }
  int meet(int a, int b) const { return mt[std::size_t(a) * n() + b]; }
  int join_of(const Bits& s) const;  // empty set -> bottom
  int meet_of(const Bits& s) const;  // empty set -> top
  const std::string& id(int a) const { return po.ids[a]; }
};

/// Builds join/meet tables. The report lists every subset-shaped failure
/// (missing bottom, pair without a least upper bound) that disqualifies the
/// poset as a sup-lattice; the lattice is only usable when the report is clean.
std::pair<Lattice, Report> make_lattice(Poset p);

/// Binary meet-over-join distributivity; in a finite lattice this is
/// equivalent to the law for arbitrary joins. Witness is (x, {a, b}).
struct FrameLawResult {
  bool ok = true;
  int x = -1, a = -1, b = -1;
};
FrameLawResult frame_law(const Lattice& L);

struct Frame {
  Lattice lat;
};

/// Validates the frame law; the report also carries lattice-level failures.
std::pair<Frame, Report> make_frame(Poset p);

/// Nonbottom elements m with m <= a v b implying m <= a or m <= b.
/// These correspond exactly to the lattice's points (frame maps to 2).
std::vector<int> join_primes(const Lattice& L);

/// A point of a frame, stored as the filter of elements sent to 1.
struct FramePoint {
  int prime;    // the least element of the filter
  Bits filter;  // { a : prime <= a }
};

/// All points in canonical order (ascending prime index).
std::vector<FramePoint> frame_points(const Frame& A);

/// Spectrum: one point per join-prime, opens U_a = { p : p(a) = 1 }.
/// Point ids are the ids of the corresponding primes. el_open, when given,
/// receives for each frame element the point set of U_a.
Space spectrum(const Frame& A, std::vector<Bits>* el_open = nullptr);

struct SpatialResult {
  bool ok = true;
  int a = -1, b = -1;  // witnesses U_a = U_b with a != b
};
SpatialResult is_spatial(const Frame& A);

/// The opens of a space ordered by inclusion. Element ids render the open sets.
/// open_of_element, when given, maps frame element index -> open index in X.
Frame topology_to_frame(const Space& X, std::vector<int>* open_of_element = nullptr);

/// Whether h : A -> B preserves all joins, binary meets, and the top.
Report check_frame_hom(const Frame& A, const Frame& B, const std::vector<int>& h);

struct SoberResult {
  bool ok = true;
  std::string reason;
};
/// x -> (U -> [x in U]) must be a homeomorphism onto spectrum(topology_to_frame(X)).
SoberResult is_sober(const Space& X);

/// Order isomorphism search between lattices (preserves joins/meets since it
/// preserves the order both ways). Returns element bijection or nullopt.
std::optional<std::vector<int>> lattice_iso(const Lattice& A, const Lattice& B, std::string* why);

}  // namespace qig
