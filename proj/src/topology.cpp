#include "qig/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace qig {

void Space::finalize() {
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  min_open.assign(points(), Bits::all(points()));
  for (int p = 0; p < points(); ++p)
    for (const auto& o : opens)
      if (o.test(p)) min_open[p] &= o;
}

int Space::open_index(const Bits& s) const {
  auto it = std::lower_bound(opens.begin(), opens.end(), s);
  if (it != opens.end() && *it == s) return int(it - opens.begin());
  return -1;
}

Report validate_space(const Space& X) {
  Report rep;
  const int n = X.points();
  if (!X.is_open(Bits::none(n))) rep.add("topology.empty-member", "the empty set is not open");
  if (!X.is_open(Bits::all(n))) rep.add("topology.full-member", "the full point set is not open");
  for (std::size_t a = 0; a < X.opens.size(); ++a)
    for (std::size_t b = a + 1; b < X.opens.size(); ++b) {
      if (!X.is_open(X.opens[a] | X.opens[b]))
        rep.add("topology.union", X.point_set(X.opens[a]) + " u " + X.point_set(X.opens[b]));
      if (!X.is_open(X.opens[a] & X.opens[b]))
        rep.add("topology.intersection", X.point_set(X.opens[a]) + " n " + X.point_set(X.opens[b]));
    }
  return rep;
}

Space discrete_space(std::vector<std::string> ids) {
  Space X;
  std::sort(ids.begin(), ids.end());
  X.ids = std::move(ids);
  int n = X.points();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Bits b(n);
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1) b.set(i);
    X.opens.push_back(b);
  }
  X.finalize();
  return X;
}

Space indiscrete_space(std::vector<std::string> ids) {
  Space X;
  std::sort(ids.begin(), ids.end());
  X.ids = std::move(ids);
  X.opens = {Bits::none(X.points()), Bits::all(X.points())};
  X.finalize();
  return X;
}

Space sierpinski_space() {
  Space X;
  X.ids = {"a", "b"};
  X.opens = {Bits::none(2), Bits::of(2, {0}), Bits::all(2)};
  X.finalize();
  return X;
}

Bits map_image(const std::vector<int>& f, const Bits& s, int target_points) {
  Bits r(target_points);
  for (int i = s.first(); i >= 0; i = s.next(i)) r.set(f[i]);
  return r;
}

Bits map_preimage(const std::vector<int>& f, const Bits& s, int source_points) {
  Bits r(source_points);
  for (int i = 0; i < source_points; ++i)
    if (s.test(f[i])) r.set(i);
  return r;
}

MapFlags classify_map(const Space& X, const Space& Y, const std::vector<int>& f) {
  MapFlags fl;
  fl.continuous = true;
  for (const auto& w : Y.opens)
    if (!X.is_open(map_preimage(f, w, X.points()))) {
      fl.continuous = false;
      break;
    }
  fl.open = true;
  for (const auto& u : X.opens)
    if (!Y.is_open(map_image(f, u, Y.points()))) {
      fl.open = false;
      break;
    }
  // Local homeomorphism: the minimal open neighborhood is the only candidate
  // that needs checking; any witness neighborhood restricts to it.
  fl.local_homeo = fl.continuous;
  for (int p = 0; p < X.points() && fl.local_homeo; ++p) {
    const Bits& u = X.min_open[p];
    Bits img(Y.points());
    bool injective = true;
    for (int q = u.first(); q >= 0; q = u.next(q)) {
      if (img.test(f[q])) {
        injective = false;
        break;
      }
      img.set(f[q]);
    }
    if (!injective || !Y.is_open(img)) {
      fl.local_homeo = false;
      break;
    }
    // inverse continuity: opens inside u must have open images
    for (const auto& v : X.opens) {
      if (!v.subset_of(u)) continue;
      if (!Y.is_open(map_image(f, v, Y.points()))) {
        fl.local_homeo = false;
        break;
      }
    }
  }
  return fl;
}

Space subspace(const Space& X, const Bits& pts, std::vector<int>* sub_to_full) {
  Space S;
  std::vector<int> back;
  for (int i = pts.first(); i >= 0; i = pts.next(i)) {
    S.ids.push_back(X.ids[i]);
    back.push_back(i);
  }
  // X.ids sorted ascending implies S.ids sorted too
  int n = int(back.size());
  for (const auto& o : X.opens) {
    Bits b(n);
    for (int k = 0; k < n; ++k)
      if (o.test(back[k])) b.set(k);
    S.opens.push_back(b);
  }
  S.finalize();
  if (sub_to_full) *sub_to_full = back;
  return S;
}

bool is_homeomorphism(const Space& X, const Space& Y, const std::vector<int>& f) {
  if (X.points() != Y.points() || X.n_opens() != Y.n_opens()) return false;
  Bits seen(Y.points());
  for (int i = 0; i < X.points(); ++i) {
    if (seen.test(f[i])) return false;
    seen.set(f[i]);
  }
  for (const auto& u : X.opens)
    if (!Y.is_open(map_image(f, u, Y.points()))) return false;
  // bijection mapping opens into opens with equal counts is onto the opens
  return true;
}

namespace {

bool homeo_backtrack(const Space& X, const Space& Y, std::vector<int>& f, std::vector<bool>& used,
                     int p) {
  if (p == X.points()) return is_homeomorphism(X, Y, f);
  for (int q = 0; q < Y.points(); ++q) {
    if (used[q]) continue;
    if (X.min_open[p].count() != Y.min_open[q].count()) continue;
    f[p] = q;
    used[q] = true;
    if (homeo_backtrack(X, Y, f, used, p + 1)) return true;
    used[q] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_homeomorphism(const Space& X, const Space& Y) {
  if (X.points() != Y.points() || X.n_opens() != Y.n_opens()) return std::nullopt;
  std::vector<int> f(X.points(), -1);
  std::vector<bool> used(Y.points(), false);
  if (homeo_backtrack(X, Y, f, used, 0)) return f;
  return std::nullopt;
}

void PairSubspace::build() {
  std::sort(pts.begin(), pts.end());
  int n = int(pts.size());
  basic.assign(n, Bits(n));
  for (int k = 0; k < n; ++k) {
    const Bits& mx = X->min_open[pts[k].first];
    const Bits& my = Y->min_open[pts[k].second];
    for (int l = 0; l < n; ++l)
      if (mx.test(pts[l].first) && my.test(pts[l].second)) basic[k].set(l);
  }
}

int PairSubspace::index_of(int x, int y) const {
  auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, y));
  if (it != pts.end() && *it == std::make_pair(x, y)) return int(it - pts.begin());
  return -1;
}

bool PairSubspace::rel_open(const Bits& T) const {
  for (int k = T.first(); k >= 0; k = T.next(k))
    if (!basic[k].subset_of(T)) return false;
  return true;
}

std::string PairSubspace::pair_name(int k) const {
  return "(" + X->ids[pts[k].first] + "," + Y->ids[pts[k].second] + ")";
}

MapFlags classify_from_pairs(const PairSubspace& C, const Space& Z, const std::vector<int>& g) {
  MapFlags fl;
  const int n = int(C.pts.size());
  fl.continuous = true;
  for (const auto& w : Z.opens) {
    Bits pre(n);
    for (int k = 0; k < n; ++k)
      if (w.test(g[k])) pre.set(k);
    if (!C.rel_open(pre)) {
      fl.continuous = false;
      break;
    }
  }
  // images of basic relative opens generate all relative-open images
  fl.open = true;
  for (int k = 0; k < n; ++k) {
    Bits img(Z.points());
    for (int l = C.basic[k].first(); l >= 0; l = C.basic[k].next(l)) img.set(g[l]);
    if (!Z.is_open(img)) {
      fl.open = false;
      break;
    }
  }
  fl.local_homeo = fl.continuous;
  for (int k = 0; k < n && fl.local_homeo; ++k) {
    const Bits& b = C.basic[k];
    Bits img(Z.points());
    bool injective = true;
    for (int l = b.first(); l >= 0; l = b.next(l)) {
      if (img.test(g[l])) {
        injective = false;
        break;
      }
      img.set(g[l]);
    }
    if (!injective || !Z.is_open(img)) {
      fl.local_homeo = false;
      break;
    }
    for (int j = 0; j < n; ++j) {
      if (!C.basic[j].subset_of(b)) continue;
      Bits im(Z.points());
      for (int l = C.basic[j].first(); l >= 0; l = C.basic[j].next(l)) im.set(g[l]);
      if (!Z.is_open(im)) {
        fl.local_homeo = false;
        break;
      }
    }
  }
  return fl;
}

std::vector<Bits> close_under_union(const std::vector<Bits>& family, int npoints) {
  std::vector<Bits> out = {Bits::none(npoints)};
  for (const auto& b : family) out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Bits> add;
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = a + 1; b < out.size(); ++b) {
        Bits u = out[a] | out[b];
        if (!std::binary_search(out.begin(), out.end(), u)) add.push_back(u);
      }
    if (!add.empty()) {
      grew = true;
      out.insert(out.end(), add.begin(), add.end());
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  return out;
}

}  // namespace qig
