#include "qig/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qig {

PairSubspace Groupoid::composable_pairs() const {
  PairSubspace C;
  C.X = &arrows;
  C.Y = &arrows;
  for (int x = 0; x < n_arrows(); ++x)
    for (int y = 0; y < n_arrows(); ++y)
      if (composable(x, y)) C.pts.push_back({x, y});
  C.build();
  return C;
}

Report validate_groupoid(const Groupoid& G) {
  Report rep;
  const int na = G.n_arrows(), nu = G.n_units();
  auto A = [&](int x) { return G.arrows.ids[x]; };
  auto U = [&](int a) { return G.units.ids[a]; };

  // multiplication defined exactly on composable pairs
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) {
      bool defined = G.mult(x, y) >= 0;
      if (defined != G.composable(x, y))
        rep.add(defined ? "groupoid.mult-outside-composable" : "groupoid.mult-missing",
                "(" + A(x) + "," + A(y) + ")");
    }
  if (!rep.ok()) return rep;

  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) {
      if (!G.composable(x, y)) continue;
      int xy = G.mult(x, y);
      if (G.d[xy] != G.d[x] || G.r[xy] != G.r[y])
        rep.add("groupoid.mult-endpoints", "(" + A(x) + "," + A(y) + ")");
    }
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y)
      for (int z = 0; z < na; ++z) {
        if (!G.composable(x, y) || !G.composable(y, z)) continue;
        int xy = G.mult(x, y), yz = G.mult(y, z);
        if (G.mult(xy, z) != G.mult(x, yz))
          rep.add("groupoid.associativity", "(" + A(x) + "," + A(y) + "," + A(z) + ")");
      }
  for (int a = 0; a < nu; ++a) {
    int e = G.u[a];
    if (G.d[e] != a || G.r[e] != a) rep.add("groupoid.unit-endpoints", U(a));
  }
  for (int x = 0; x < na; ++x) {
    if (G.mult(G.u[G.d[x]], x) != x) rep.add("groupoid.left-unit", A(x));
    if (G.mult(x, G.u[G.r[x]]) != x) rep.add("groupoid.right-unit", A(x));
    if (G.d[G.inv[x]] != G.r[x] || G.r[G.inv[x]] != G.d[x])
      rep.add("groupoid.inverse-endpoints", A(x));
    else {
      if (G.mult(x, G.inv[x]) != G.u[G.d[x]]) rep.add("groupoid.right-inverse", A(x));
      if (G.mult(G.inv[x], x) != G.u[G.r[x]]) rep.add("groupoid.left-inverse", A(x));
    }
    if (G.inv[G.inv[x]] != x) rep.add("groupoid.involution", A(x));
  }

  // continuity of the structure maps
  if (!classify_map(G.arrows, G.units, G.d).continuous) rep.add("groupoid.d-continuous", "d");
  if (!classify_map(G.arrows, G.units, G.r).continuous) rep.add("groupoid.r-continuous", "r");
  if (!classify_map(G.units, G.arrows, G.u).continuous) rep.add("groupoid.u-continuous", "u");
  if (!classify_map(G.arrows, G.arrows, G.inv).continuous) rep.add("groupoid.i-continuous", "i");
  PairSubspace C = G.composable_pairs();
  std::vector<int> mv(C.pts.size());
  for (std::size_t k = 0; k < C.pts.size(); ++k) mv[k] = G.mult(C.pts[k].first, C.pts[k].second);
  if (!classify_from_pairs(C, G.arrows, mv).continuous) rep.add("groupoid.m-continuous", "m");
  return rep;
}

GroupoidClass classify_groupoid(const Groupoid& G) {
  GroupoidClass c;
  auto fd = classify_map(G.arrows, G.units, G.d);
  auto fr = classify_map(G.arrows, G.units, G.r);
  auto fu = classify_map(G.units, G.arrows, G.u);
  auto fi = classify_map(G.arrows, G.arrows, G.inv);
  PairSubspace C = G.composable_pairs();
  std::vector<int> mv(C.pts.size());
  for (std::size_t k = 0; k < C.pts.size(); ++k) mv[k] = G.mult(C.pts[k].first, C.pts[k].second);
  auto fm = classify_from_pairs(C, G.arrows, mv);
  c.open = fd.open;
  c.etale = fd.local_homeo;
  c.maps = {{"d", fd.open, fd.local_homeo},
            {"r", fr.open, fr.local_homeo},
            {"m", fm.open, fm.local_homeo},
            {"u", fu.open, fu.local_homeo},
            {"i", fi.open, fi.local_homeo}};
  for (const auto& s : c.maps) {
    if (s.open != c.open) c.open_divergence.push_back(s.name);
    if (s.local_homeo != c.etale) c.etale_divergence.push_back(s.name);
  }
  Bits uimg(G.n_arrows());
  for (int a = 0; a < G.n_units(); ++a) uimg.set(G.u[a]);
  c.unit_image_open = G.arrows.is_open(uimg);
  return c;
}

// --- isomorphism search ------------------------------------------------------

namespace {

struct ArrowKey {
  int d_out, r_in;         // fiber sizes at the endpoints
  int min_open;            // size of the minimal open neighborhood
  bool is_unit_arrow;
  bool self_inverse;
  bool loop;
  auto operator<=>(const ArrowKey&) const = default;
};

std::vector<ArrowKey> arrow_keys(const Groupoid& G) {
  const int na = G.n_arrows();
  std::vector<int> dsz(G.n_units(), 0), rsz(G.n_units(), 0);
  for (int x = 0; x < na; ++x) {
    ++dsz[G.d[x]];
    ++rsz[G.r[x]];
  }
  Bits uimg(na);
  for (int a = 0; a < G.n_units(); ++a) uimg.set(G.u[a]);
  std::vector<ArrowKey> keys(na);
  for (int x = 0; x < na; ++x)
    keys[x] = {dsz[G.d[x]], rsz[G.r[x]], G.arrows.min_open[x].count(), uimg.test(x),
               G.inv[x] == x, G.d[x] == G.r[x]};
  return keys;
}

int component_count(const Groupoid& G) {
  // connected components of units linked by arrows
  std::vector<int> parent(G.n_units());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](auto&& self, int a) -> int {
    return parent[a] == a ? a : parent[a] = self(self, parent[a]);
  };
  for (int x = 0; x < G.n_arrows(); ++x) {
    int a = find(find, G.d[x]), b = find(find, G.r[x]);
    parent[a] = b;
  }
  int c = 0;
  for (int a = 0; a < G.n_units(); ++a)
    if (find(find, a) == a) ++c;
  return c;
}

struct IsoSearch {
  const Groupoid& G;
  const Groupoid& H;
  std::vector<ArrowKey> kg, kh;
  std::vector<int> amap;  // arrow map G -> H
  std::vector<int> umap;  // unit map G -> H
  std::vector<bool> aused, uused;

  bool unit_assign(int a, int b) {
    if (umap[a] == b) return true;
    if (umap[a] >= 0 || uused[b]) return false;
    umap[a] = b;
    uused[b] = true;
    return true;
  }

  bool backtrack(int x) {
    const int na = G.n_arrows();
    if (x == na) return finish();
    for (int y = 0; y < na; ++y) {
      if (aused[y] || kg[x] != kh[y]) continue;
      // save unit-assignment state
      auto saved_umap = umap;
      auto saved_uused = uused;
      bool ok = unit_assign(G.d[x], H.d[y]) && unit_assign(G.r[x], H.r[y]);
      // inversion must commute
      if (ok && amap[G.inv[x]] >= 0 && amap[G.inv[x]] != H.inv[y]) ok = false;
      // products with already-assigned arrows must commute
      for (int z = 0; z < x && ok; ++z) {
        if (amap[z] < 0) continue;
        if (G.composable(x, z)) {
          int p = G.mult(x, z);
          if (!H.composable(y, amap[z])) ok = false;
          else if (amap[p] >= 0 && amap[p] != H.mult(y, amap[z])) ok = false;
        } else if (H.composable(y, amap[z])) ok = false;
        if (!ok) break;
        if (G.composable(z, x)) {
          int p = G.mult(z, x);
          if (!H.composable(amap[z], y)) ok = false;
          else if (amap[p] >= 0 && amap[p] != H.mult(amap[z], y)) ok = false;
        } else if (H.composable(amap[z], y)) ok = false;
      }
      if (G.composable(x, x)) {
        if (!H.composable(y, y)) ok = false;
        else if (ok && amap[G.mult(x, x)] >= 0 && amap[G.mult(x, x)] != H.mult(y, y)) ok = false;
      } else if (H.composable(y, y)) {
        ok = false;
      }
      if (ok) {
        amap[x] = y;
        aused[y] = true;
        if (backtrack(x + 1)) return true;
        amap[x] = -1;
        aused[y] = false;
      }
      umap = saved_umap;
      uused = saved_uused;
    }
    return false;
  }

  bool finish() {
    // units not touched by any arrow still need an image; match by u-arrow
    for (int a = 0; a < G.n_units(); ++a) {
      if (umap[a] >= 0) continue;
      // the unit arrow u(a) has been mapped (every arrow is mapped)
      int b = H.d[amap[G.u[a]]];
      if (uused[b]) return false;
      umap[a] = b;
      uused[b] = true;
    }
    GroupoidIso iso{amap, umap};
    return verify_groupoid_iso(G, H, iso);
  }
};

}  // namespace

bool verify_groupoid_iso(const Groupoid& G, const Groupoid& H, const GroupoidIso& iso) {
  const int na = G.n_arrows(), nu = G.n_units();
  if (H.n_arrows() != na || H.n_units() != nu) return false;
  // bijectivity
  {
    Bits sa(na), su(nu);
    for (int x = 0; x < na; ++x) {
      if (iso.arrow_map[x] < 0 || sa.test(iso.arrow_map[x])) return false;
      sa.set(iso.arrow_map[x]);
    }
    for (int a = 0; a < nu; ++a) {
      if (iso.unit_map[a] < 0 || su.test(iso.unit_map[a])) return false;
      su.set(iso.unit_map[a]);
    }
  }
  for (int x = 0; x < na; ++x) {
    if (iso.unit_map[G.d[x]] != H.d[iso.arrow_map[x]]) return false;
    if (iso.unit_map[G.r[x]] != H.r[iso.arrow_map[x]]) return false;
    if (iso.arrow_map[G.inv[x]] != H.inv[iso.arrow_map[x]]) return false;
  }
  for (int a = 0; a < nu; ++a)
    if (iso.arrow_map[G.u[a]] != H.u[iso.unit_map[a]]) return false;
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) {
      bool cg = G.composable(x, y), ch = H.composable(iso.arrow_map[x], iso.arrow_map[y]);
      if (cg != ch) return false;
      if (cg && iso.arrow_map[G.mult(x, y)] != H.mult(iso.arrow_map[x], iso.arrow_map[y]))
        return false;
    }
  if (!is_homeomorphism(G.arrows, H.arrows, iso.arrow_map)) return false;
  if (!is_homeomorphism(G.units, H.units, iso.unit_map)) return false;
  return true;
}

static IsoResult groupoidal_invariant_mismatch(const Groupoid& G, const Groupoid& H) {
  IsoResult res;
  if (G.n_arrows() != H.n_arrows())
    res.reason = "arrow counts differ: " + std::to_string(G.n_arrows()) + " vs " +
                 std::to_string(H.n_arrows());
  else if (G.n_units() != H.n_units())
    res.reason = "unit counts differ: " + std::to_string(G.n_units()) + " vs " +
                 std::to_string(H.n_units());
  else if (G.arrows.n_opens() != H.arrows.n_opens())
    res.reason = "arrow-space open counts differ";
  else if (G.units.n_opens() != H.units.n_opens())
    res.reason = "unit-space open counts differ";
  else if (component_count(G) != component_count(H))
    res.reason = "connected-component counts differ: " + std::to_string(component_count(G)) +
                 " vs " + std::to_string(component_count(H));
  return res;
}

IsoResult groupoid_isomorphic(const Groupoid& G, const Groupoid& H, const Caps& caps) {
  if (G.n_arrows() > caps.max_arrows || H.n_arrows() > caps.max_arrows)
    throw cap_error("isomorphism search beyond --max-arrows=" + std::to_string(caps.max_arrows));
  IsoResult res = groupoidal_invariant_mismatch(G, H);
  if (!res.reason.empty()) return res;
  {
    auto kg = arrow_keys(G), kh = arrow_keys(H);
    auto sg = kg, sh = kh;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) {
      res.reason = "arrow invariants differ (degree / neighborhood / loop profile)";
      return res;
    }
    IsoSearch search{G,
                     H,
                     std::move(kg),
                     std::move(kh),
                     std::vector<int>(G.n_arrows(), -1),
                     std::vector<int>(G.n_units(), -1),
                     std::vector<bool>(G.n_arrows(), false),
                     std::vector<bool>(G.n_units(), false)};
    if (search.backtrack(0)) {
      res.iso = GroupoidIso{search.amap, search.umap};
      return res;
    }
  }
  res.reason = "no isomorphism (search exhausted)";
  return res;
}

// --- canonical families ------------------------------------------------------

namespace {

std::vector<std::string> numbered_ids(int n) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

}  // namespace

Groupoid pair_groupoid(int n) {
  Groupoid G;
  std::vector<std::string> uids = numbered_ids(n);
  std::sort(uids.begin(), uids.end());
  G.units = discrete_space(uids);
  auto uidx = [&](int i) {
    return int(std::lower_bound(G.units.ids.begin(), G.units.ids.end(), std::to_string(i + 1)) -
               G.units.ids.begin());
  };
  std::vector<std::string> aids;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      aids.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  G.arrows = discrete_space(aids);
  auto aidx = [&](int i, int j) {
    std::string id = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    return int(std::lower_bound(G.arrows.ids.begin(), G.arrows.ids.end(), id) -
               G.arrows.ids.begin());
  };
  const int na = n * n;
  G.d.resize(na);
  G.r.resize(na);
  G.inv.resize(na);
  G.u.resize(n);
  G.m.assign(std::size_t(na) * na, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int x = aidx(i, j);
      G.d[x] = uidx(i);
      G.r[x] = uidx(j);
      G.inv[x] = aidx(j, i);
      if (i == j) G.u[uidx(i)] = x;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) G.set_mult(aidx(i, j), aidx(j, k), aidx(i, k));
  return G;
}

Groupoid cyclic_group_groupoid(int n) {
  Groupoid G;
  G.units = discrete_space({"e"});
  std::vector<std::string> aids;
  for (int i = 0; i < n; ++i) aids.push_back("r" + std::to_string(i));
  G.arrows = discrete_space(aids);
  G.d.assign(n, 0);
  G.r.assign(n, 0);
  G.u = {0};
  G.inv.resize(n);
  G.m.assign(std::size_t(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    G.inv[i] = (n - i) % n;
    for (int j = 0; j < n; ++j) G.set_mult(i, j, (i + j) % n);
  }
  return G;
}

Groupoid cyclic_group_indiscrete(int n) {
  Groupoid G = cyclic_group_groupoid(n);
  std::vector<std::string> aids = G.arrows.ids;
  G.arrows = indiscrete_space(aids);
  return G;
}

Groupoid unit_groupoid(const Space& X) {
  Groupoid G;
  G.units = X;
  G.arrows = X;
  const int n = X.points();
  G.d.resize(n);
  G.r.resize(n);
  G.u.resize(n);
  G.inv.resize(n);
  G.m.assign(std::size_t(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    G.d[i] = G.r[i] = G.u[i] = G.inv[i] = i;
    G.set_mult(i, i, i);
  }
  return G;
}

Groupoid action_groupoid(int n, int k) {
  if (k <= 0 || n <= 0 || n % k != 0)
    throw InputError("InvalidParams", "action groupoid needs k | n, got n=" + std::to_string(n) +
                                          " k=" + std::to_string(k));
  Groupoid G;
  G.units = discrete_space(numbered_ids(k));
  auto uidx = [&](int x) {
    return int(std::lower_bound(G.units.ids.begin(), G.units.ids.end(), std::to_string(x + 1)) -
               G.units.ids.begin());
  };
  std::vector<std::string> aids;
  for (int x = 0; x < k; ++x)
    for (int g = 0; g < n; ++g)
      aids.push_back("(" + std::to_string(x + 1) + ";r" + std::to_string(g) + ")");
  G.arrows = discrete_space(aids);
  auto aidx = [&](int x, int g) {
    std::string id = "(" + std::to_string(x + 1) + ";r" + std::to_string(g) + ")";
    return int(std::lower_bound(G.arrows.ids.begin(), G.arrows.ids.end(), id) -
               G.arrows.ids.begin());
  };
  const int na = n * k;
  G.d.resize(na);
  G.r.resize(na);
  G.inv.resize(na);
  G.u.resize(k);
  G.m.assign(std::size_t(na) * na, -1);
  for (int x = 0; x < k; ++x)
    for (int g = 0; g < n; ++g) {
      int a = aidx(x, g);
      G.d[a] = uidx(x);
      G.r[a] = uidx((x + g) % k);
      G.inv[a] = aidx((x + g) % k, (n - g) % n);
      if (g == 0) G.u[uidx(x)] = a;
    }
  for (int x = 0; x < k; ++x)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        G.set_mult(aidx(x, g), aidx((x + g) % k, h), aidx(x, (g + h) % n));
  return G;
}

}  // namespace qig
