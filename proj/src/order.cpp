#include "qig/order.hpp"

#include <algorithm>
#include <map>

#include "qig/kernels.hpp"

namespace qig {

Poset Poset::from_pairs(std::vector<std::string> ids_,
                        const std::vector<std::pair<int, int>>& leq) {
  Poset p;
  p.ids = std::move(ids_);
  int n = p.n();
  p.up.assign(n, Bits(n));
  p.down.assign(n, Bits(n));
  for (auto [a, b] : leq) {
    p.up[a].set(b);
    p.down[b].set(a);
  }
  return p;
}

Report validate_poset(const Poset& p) {
  Report rep;
  const int n = p.n();
  for (int i = 0; i < n; ++i)
    if (!p.leq(i, i)) rep.add("poset.reflexivity", p.ids[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && p.leq(i, j) && p.leq(j, i))
        rep.add("poset.antisymmetry", "(" + p.ids[i] + "," + p.ids[j] + ")");
  auto bad = kernels::first_bad_triple(n, [&](int i, int j, int k) {
    return p.leq(i, j) && p.leq(j, k) && !p.leq(i, k);
  });
  if (bad)
    rep.add("poset.transitivity",
            "(" + p.ids[(*bad)[0]] + "," + p.ids[(*bad)[1]] + "," + p.ids[(*bad)[2]] + ")");
  return rep;
}

int Lattice::join_of(const Bits& s) const {
  int acc = bottom;
  for (int i = s.first(); i >= 0; i = s.next(i)) acc = join(acc, i);
  return acc;
}

int Lattice::meet_of(const Bits& s) const {
  int acc = top;
  for (int i = s.first(); i >= 0; i = s.next(i)) acc = meet(acc, i);
  return acc;
}

namespace {

// Least element of the upper-bound set `ub`, or -1. The least element, when
// present, has the largest up-set among members of ub.
int least_of(const Poset& p, const Bits& ub) {
  int best = -1, best_size = -1;
  for (int i = ub.first(); i >= 0; i = ub.next(i)) {
    int c = p.up[i].count();
    if (c > best_size) {
      best_size = c;
      best = i;
    }
  }
  if (best >= 0 && ub.subset_of(p.up[best])) return best;
  // ties on up-set size can hide the true least; fall back to a scan
  for (int i = ub.first(); i >= 0; i = ub.next(i))
    if (ub.subset_of(p.up[i])) return i;
  return -1;
}

int greatest_of(const Poset& p, const Bits& lb) {
  for (int i = lb.first(); i >= 0; i = lb.next(i))
    if (lb.subset_of(p.down[i])) return i;
  return -1;
}

}  // namespace

std::pair<Lattice, Report> make_lattice(Poset p) {
  Lattice L;
  Report rep;
  const int n = p.n();
  rep.merge(validate_poset(p));
  if (!rep.ok()) {
    L.po = std::move(p);
    return {std::move(L), std::move(rep)};
  }
  Bits everything = Bits::all(n);
  L.bottom = least_of(p, everything);
  L.top = greatest_of(p, everything);
  if (n == 0 || L.bottom < 0) {
    rep.add("suplattice.empty-join", "no bottom element (join of {} is missing)");
    L.po = std::move(p);
    return {std::move(L), std::move(rep)};
  }
  if (L.top < 0) rep.add("suplattice.empty-meet", "no top element");
  L.jn.assign(std::size_t(n) * n, 0);
  L.mt.assign(std::size_t(n) * n, 0);
  std::vector<std::pair<int, int>> missing;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      int j = least_of(p, p.up[a] & p.up[b]);
      int m = greatest_of(p, p.down[a] & p.down[b]);
      if (j < 0) missing.push_back({a, b});
      L.jn[std::size_t(a) * n + b] = L.jn[std::size_t(b) * n + a] = std::uint16_t(std::max(j, 0));
      if (m < 0 && L.top >= 0 && j >= 0)
        rep.add("suplattice.meet", "{" + p.ids[a] + "," + p.ids[b] + "} has no greatest lower bound");
      L.mt[std::size_t(a) * n + b] = L.mt[std::size_t(b) * n + a] = std::uint16_t(std::max(m, 0));
    }
  for (auto [a, b] : missing)
    rep.add("suplattice.join", "{" + p.ids[a] + "," + p.ids[b] + "} has no least upper bound");
  L.po = std::move(p);
  return {std::move(L), std::move(rep)};
}

FrameLawResult frame_law(const Lattice& L) {
  const int n = L.n();
  auto bad = kernels::first_bad_triple(n, [&](int x, int a, int b) {
    return L.meet(x, L.join(a, b)) != L.join(L.meet(x, a), L.meet(x, b));
  });
  FrameLawResult r;
  if (bad) {
    r.ok = false;
    r.x = (*bad)[0];
    r.a = (*bad)[1];
    r.b = (*bad)[2];
  }
  return r;
}

std::pair<Frame, Report> make_frame(Poset p) {
  auto [L, rep] = make_lattice(std::move(p));
  Frame F;
  F.lat = std::move(L);
  if (rep.ok()) {
    auto fl = frame_law(F.lat);
    if (!fl.ok)
      rep.add("frame.distributivity", F.lat.id(fl.x) + " ^ (" + F.lat.id(fl.a) + " v " +
                                          F.lat.id(fl.b) + ")");
  }
  return {std::move(F), std::move(rep)};
}

std::vector<int> join_primes(const Lattice& L) {
  const int n = L.n();
  std::vector<char> prime(n, 0);
  kernels::fill_table(n, [&](std::int64_t m) {
    if (int(m) == L.bottom) return;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (L.po.leq(int(m), L.join(a, b)) && !L.po.leq(int(m), a) && !L.po.leq(int(m), b))
          return;
    prime[m] = 1;
  });
  std::vector<int> out;
  for (int m = 0; m < n; ++m)
    if (prime[m]) out.push_back(m);
  return out;
}

std::vector<FramePoint> frame_points(const Frame& A) {
  std::vector<FramePoint> pts;
  for (int m : join_primes(A.lat)) pts.push_back({m, A.lat.po.up[m]});
  return pts;
}

Space spectrum(const Frame& A, std::vector<Bits>* el_open) {
  auto pts = frame_points(A);
  const int np = int(pts.size());
  Space X;
  for (const auto& p : pts) X.ids.push_back(A.lat.id(p.prime));
  // ids of distinct primes are distinct; sort points by id for canonical order
  std::vector<int> order(np);
  for (int i = 0; i < np; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return X.ids[a] < X.ids[b]; });
  std::vector<std::string> sorted_ids(np);
  std::vector<int> pos(np);  // original point index -> sorted position
  for (int k = 0; k < np; ++k) {
    sorted_ids[k] = X.ids[order[k]];
    pos[order[k]] = k;
  }
  X.ids = std::move(sorted_ids);
  std::vector<Bits> ua(A.lat.n(), Bits(np));
  for (int a = 0; a < A.lat.n(); ++a)
    for (int i = 0; i < np; ++i)
      if (pts[i].filter.test(a)) ua[a].set(pos[i]);
  X.opens = ua;
  X.finalize();
  if (el_open) *el_open = std::move(ua);
  return X;
}

SpatialResult is_spatial(const Frame& A) {
  std::vector<Bits> ua;
  spectrum(A, &ua);
  SpatialResult r;
  auto bad = kernels::first_bad_pair(A.lat.n(), [&](int a, int b) {
    return a < b && ua[a] == ua[b];
  });
  if (bad) {
    r.ok = false;
    r.a = (*bad)[0];
    r.b = (*bad)[1];
  }
  return r;
}

Frame topology_to_frame(const Space& X, std::vector<int>* open_of_element) {
  // element ids render the open sets; opens are already canonically sorted
  std::vector<std::string> ids;
  for (const auto& o : X.opens) ids.push_back(X.point_set(o));
  const int n = int(ids.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ids[a] < ids[b]; });
  std::vector<std::string> sorted_ids(n);
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) {
    sorted_ids[k] = ids[order[k]];
    pos[order[k]] = k;
  }
  Poset p;
  p.ids = sorted_ids;
  p.up.assign(n, Bits(n));
  p.down.assign(n, Bits(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (X.opens[a].subset_of(X.opens[b])) {
        p.up[pos[a]].set(pos[b]);
        p.down[pos[b]].set(pos[a]);
      }
  auto [F, rep] = make_frame(std::move(p));
  // opens of a valid space always form a frame; surface violations loudly
  if (!rep.ok()) throw CheckError("NotAFrame", "opens of the space: " + rep.items[0].law);
  if (open_of_element) {
    open_of_element->assign(n, -1);
    for (int a = 0; a < n; ++a) (*open_of_element)[pos[a]] = a;
  }
  return std::move(F);
}

Report check_frame_hom(const Frame& A, const Frame& B, const std::vector<int>& h) {
  Report rep;
  const Lattice& LA = A.lat;
  const Lattice& LB = B.lat;
  if (h[LA.bottom] != LB.bottom) rep.add("framehom.empty-join", "h(bottom) != bottom");
  if (h[LA.top] != LB.top) rep.add("framehom.top", "h(top) != top");
  auto bad = kernels::first_bad_pair(LA.n(), [&](int a, int b) {
    return h[LA.join(a, b)] != LB.join(h[a], h[b]) || h[LA.meet(a, b)] != LB.meet(h[a], h[b]);
  });
  if (bad)
    rep.add("framehom.binary", "(" + LA.id((*bad)[0]) + "," + LA.id((*bad)[1]) + ")");
  return rep;
}

SoberResult is_sober(const Space& X) {
  SoberResult r;
  std::vector<int> open_of_el;
  Frame F = topology_to_frame(X, &open_of_el);
  std::vector<Bits> ua;
  Space sp = spectrum(F, &ua);
  if (sp.points() != X.points()) {
    r.ok = false;
    r.reason = "point counts differ: " + std::to_string(X.points()) + " vs " +
               std::to_string(sp.points());
    return r;
  }
  // canonical map: x -> the point whose filter is { U : x in U }
  std::vector<int> c(X.points(), -1);
  auto pts = frame_points(F);
  for (int x = 0; x < X.points(); ++x) {
    Bits filt(F.lat.n());
    for (int e = 0; e < F.lat.n(); ++e)
      if (X.opens[open_of_el[e]].test(x)) filt.set(e);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].filter == filt) {
        // locate the point's position in the spectrum space (sorted by id)
        auto it = std::lower_bound(sp.ids.begin(), sp.ids.end(), F.lat.id(pts[i].prime));
        c[x] = int(it - sp.ids.begin());
        break;
      }
    if (c[x] < 0) {
      r.ok = false;
      r.reason = "canonical image of " + X.ids[x] + " is not a frame point";
      return r;
    }
  }
  Bits seen(sp.points());
  for (int x = 0; x < X.points(); ++x) {
    if (seen.test(c[x])) {
      r.ok = false;
      r.reason = "canonical map not injective at " + X.ids[x];
      return r;
    }
    seen.set(c[x]);
  }
  if (!is_homeomorphism(X, sp, c)) {
    r.ok = false;
    r.reason = "canonical bijection is not a homeomorphism";
    return r;
  }
  return r;
}

namespace {

bool lattice_iso_backtrack(const Lattice& A, const Lattice& B, std::vector<int>& f,
                           std::vector<bool>& used, int a) {
  const int n = A.n();
  if (a == n) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (f[A.join(x, y)] != B.join(f[x], f[y])) return false;
    return true;
  }
  for (int b = 0; b < n; ++b) {
    if (used[b]) continue;
    if (A.po.up[a].count() != B.po.up[b].count() ||
        A.po.down[a].count() != B.po.down[b].count())
      continue;
    bool consistent = true;
    for (int x = 0; x < a && consistent; ++x) {
      if (A.po.leq(x, a) != B.po.leq(f[x], b)) consistent = false;
      if (A.po.leq(a, x) != B.po.leq(b, f[x])) consistent = false;
    }
    if (!consistent) continue;
    f[a] = b;
    used[b] = true;
    if (lattice_iso_backtrack(A, B, f, used, a + 1)) return true;
    used[b] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> lattice_iso(const Lattice& A, const Lattice& B, std::string* why) {
  if (A.n() != B.n()) {
    if (why) *why = "element counts differ: " + std::to_string(A.n()) + " vs " + std::to_string(B.n());
    return std::nullopt;
  }
  std::vector<int> f(A.n(), -1);
  std::vector<bool> used(B.n(), false);
  if (lattice_iso_backtrack(A, B, f, used, 0)) return f;
  if (why) *why = "no order isomorphism (search exhausted)";
  return std::nullopt;
}

}  // namespace qig
