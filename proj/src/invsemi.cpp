#include "qig/invsemi.hpp"

#include <algorithm>
#include <map>

#include "qig/kernels.hpp"

namespace qig {

PartialMap PartialMap::identity(int n) {
  PartialMap m{n, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) m.img[i] = i;
  return m;
}

Bits PartialMap::domain() const {
  Bits b(universe);
  for (int i = 0; i < universe; ++i)
    if (img[i] >= 0) b.set(i);
  return b;
}

Bits PartialMap::image() const {
  Bits b(universe);
  for (int i = 0; i < universe; ++i)
    if (img[i] >= 0) b.set(img[i]);
  return b;
}

bool PartialMap::injective() const {
  Bits seen(universe);
  for (int i = 0; i < universe; ++i) {
    if (img[i] < 0) continue;
    if (seen.test(img[i])) return false;
    seen.set(img[i]);
  }
  return true;
}

PartialMap PartialMap::then(const PartialMap& g) const {
  PartialMap r = empty(universe);
  for (int i = 0; i < universe; ++i)
    if (img[i] >= 0 && g.img[img[i]] >= 0) r.img[i] = g.img[img[i]];
  return r;
}

PartialMap PartialMap::inverse() const {
  PartialMap r = empty(universe);
  for (int i = 0; i < universe; ++i)
    if (img[i] >= 0) r.img[img[i]] = i;
  return r;
}

std::string PartialMap::graph_string(const std::vector<std::string>& ids) const {
  std::string s = "{";
  bool fst = true;
  for (int i = 0; i < universe; ++i) {
    if (img[i] < 0) continue;
    if (!fst) s += ",";
    s += ids[i] + ">" + ids[img[i]];
    fst = false;
  }
  return s + "}";
}

Report validate_invsemigroup(const InvSemigroup& S) {
  Report rep;
  const int n = S.n();
  auto name = [&](int i) { return S.ids[i]; };
  auto bad = kernels::first_bad_triple(n, [&](int a, int b, int c) {
    return S.mult(S.mult(a, b), c) != S.mult(a, S.mult(b, c));
  });
  if (bad)
    rep.add("invsemigroup.associativity",
            "(" + name((*bad)[0]) + "," + name((*bad)[1]) + "," + name((*bad)[2]) + ")");
  for (int s = 0; s < n; ++s) {
    if (S.mult(S.mult(s, S.invof(s)), s) != s) rep.add("invsemigroup.regularity", name(s));
    if (S.invof(S.invof(s)) != s) rep.add("invsemigroup.involution", name(s));
  }
  for (int e = 0; e < n; ++e)
    for (int f = e + 1; f < n; ++f)
      if (S.idem(e) && S.idem(f) && S.mult(e, f) != S.mult(f, e))
        rep.add("invsemigroup.idempotents-commute", "(" + name(e) + "," + name(f) + ")");
  if (rep.ok()) {
    // derived law; a violation here signals an inconsistent table
    auto bad2 = kernels::first_bad_pair(n, [&](int s, int t) {
      return S.invof(S.mult(s, t)) != S.mult(S.invof(t), S.invof(s));
    });
    if (bad2)
      rep.add("invsemigroup.antihomomorphism", "(" + name((*bad2)[0]) + "," + name((*bad2)[1]) + ")");
  }
  return rep;
}

bool natural_leq(const InvSemigroup& S, int s, int t) {
  for (int f = 0; f < S.n(); ++f)
    if (S.idem(f) && S.mult(f, t) == s) return true;
  return false;
}

Poset natural_order(const InvSemigroup& S) {
  const int n = S.n();
  Poset p;
  p.ids = S.ids;
  p.up.assign(n, Bits(n));
  p.down.assign(n, Bits(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (natural_leq(S, s, t)) {
        p.up[s].set(t);
        p.down[t].set(s);
      }
  return p;
}

Poset idempotent_poset(const InvSemigroup& S, std::vector<int>* element_of) {
  std::vector<int> idx;
  for (int e = 0; e < S.n(); ++e)
    if (S.idem(e)) idx.push_back(e);
  const int m = int(idx.size());
  Poset p;
  p.up.assign(m, Bits(m));
  p.down.assign(m, Bits(m));
  for (int i = 0; i < m; ++i) p.ids.push_back(S.ids[idx[i]]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (S.mult(idx[i], idx[j]) == idx[i]) {
        p.up[i].set(j);
        p.down[j].set(i);
      }
  if (element_of) *element_of = idx;
  return p;
}

CompatWitness compatible(const InvSemigroup& S, int s, int t) {
  CompatWitness w;
  w.s = s;
  w.t = t;
  w.st_inv = S.mult(s, S.invof(t));
  w.sinv_t = S.mult(S.invof(s), t);
  w.st_inv_idem = S.idem(w.st_inv);
  w.sinv_t_idem = S.idem(w.sinv_t);
  return w;
}

namespace {

// Upper bounds of X in the natural order, as a set; `nat` caches the order.
int least_upper_bound(const InvSemigroup& S, const Poset& nat, const Bits& X) {
  Bits ub = Bits::all(S.n());
  for (int i = X.first(); i >= 0; i = X.next(i)) ub &= nat.up[i];
  for (int u = ub.first(); u >= 0; u = ub.next(u))
    if (ub.subset_of(nat.up[u])) return u;
  return -1;
}

}  // namespace

std::optional<int> compatible_join(const InvSemigroup& S, const Bits& X) {
  for (int i = X.first(); i >= 0; i = X.next(i))
    for (int j = X.next(i); j >= 0; j = X.next(j))
      if (!compatible(S, i, j).compatible())
        throw CheckError("NotPairwiseCompatible",
                         "(" + S.ids[i] + "," + S.ids[j] + ") are not compatible");
  Poset nat = natural_order(S);
  int j = least_upper_bound(S, nat, X);
  if (j < 0) return std::nullopt;
  return j;
}

CompleteResult is_complete(const InvSemigroup& S, const Caps& caps) {
  const int n = S.n();
  Poset nat = natural_order(S);
  std::vector<Bits> compat(n, Bits(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (compatible(S, i, j).compatible()) compat[i].set(j);
  CompleteResult res;
  if (n < 63 && (std::uint64_t{1} << n) <= caps.max_subsets) {
    auto failing = kernels::filter_masks(std::uint64_t{1} << n, [&](std::uint64_t m) {
      Bits X(n);
      for (int i = 0; i < n; ++i)
        if ((m >> i) & 1) X.set(i);
      for (int i = X.first(); i >= 0; i = X.next(i))
        if (!X.subset_of(compat[i])) return false;  // not pairwise compatible
      return least_upper_bound(S, nat, X) < 0;
    });
    if (!failing.empty()) {
      res.complete = false;
      std::uint64_t best = failing[0];
      for (auto m : failing)
        if (__builtin_popcountll(m) < __builtin_popcountll(best)) best = m;
      Bits w(n);
      for (int i = 0; i < n; ++i)
        if ((best >> i) & 1) w.set(i);
      res.witness = w;
    }
    return res;
  }
  // Above the cap: a finite inverse semigroup is complete iff it has a zero
  // and every compatible pair has a join (joins of larger compatible sets
  // fold through binary joins). Tests check agreement with the exhaustive
  // scan on every corpus instance below the cap.
  res.exhaustive = false;
  if (least_upper_bound(S, nat, Bits(n)) < 0) {
    res.complete = false;
    res.witness = Bits(n);
    return res;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!compat[i].test(j)) continue;
      if (least_upper_bound(S, nat, Bits::of(n, {i, j})) < 0) {
        res.complete = false;
        res.witness = Bits::of(n, {i, j});
        return res;
      }
    }
  return res;
}

InvSemigroup semigroup_from_partial_maps(std::vector<PartialMap> elems,
                                         const std::vector<std::string>& universe_ids,
                                         std::vector<PartialMap>* sorted_out) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i].img] = int(i);
  InvSemigroup S;
  const int n = int(elems.size());
  for (const auto& e : elems) S.ids.push_back(e.graph_string(universe_ids));
  S.mul.assign(std::size_t(n) * n, 0);
  S.inv.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    auto invit = index.find(elems[a].inverse().img);
    if (invit == index.end())
      throw CheckError("NotClosed", "inverse of " + S.ids[a] + " missing from the collection");
    S.inv[a] = std::uint16_t(invit->second);
    for (int b = 0; b < n; ++b) {
      auto it = index.find(elems[a].then(elems[b]).img);
      if (it == index.end())
        throw CheckError("NotClosed", "product " + S.ids[a] + " * " + S.ids[b] +
                                          " missing from the collection");
      S.mul[std::size_t(a) * n + b] = std::uint16_t(it->second);
    }
  }
  if (sorted_out) *sorted_out = std::move(elems);
  return S;
}

InvSemigroup symmetric_inverse_monoid(int npoints, std::vector<PartialMap>* elements) {
  std::vector<std::string> uids;
  for (int i = 1; i <= npoints; ++i) uids.push_back(std::to_string(i));
  // enumerate all partial injections
  std::vector<PartialMap> elems;
  PartialMap cur = PartialMap::empty(npoints);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == npoints) {
      elems.push_back(cur);
      return;
    }
    cur.img[x] = -1;
    self(self, x + 1);
    for (int y = 0; y < npoints; ++y) {
      bool taken = false;
      for (int z = 0; z < x; ++z)
        if (cur.img[z] == y) taken = true;
      if (taken) continue;
      cur.img[x] = y;
      self(self, x + 1);
      cur.img[x] = -1;
    }
  };
  rec(rec, 0);
  return semigroup_from_partial_maps(std::move(elems), uids, elements);
}

InvSemigroup pseudogroup_of_space(const Space& X, std::vector<PartialMap>* elements) {
  const int n = X.points();
  std::vector<PartialMap> elems;
  for (const auto& U : X.opens) {
    std::vector<int> upts = U.members();
    std::vector<int> sub_to_full_u;
    Space SU = subspace(X, U, &sub_to_full_u);
    for (const auto& V : X.opens) {
      if (U.count() != V.count()) continue;
      std::vector<int> sub_to_full_v;
      Space SV = subspace(X, V, &sub_to_full_v);
      // all bijections U -> V, kept when they are homeomorphisms of subspaces
      std::vector<int> perm(upts.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
      do {
        if (is_homeomorphism(SU, SV, perm)) {
          PartialMap m = PartialMap::empty(n);
          for (std::size_t i = 0; i < perm.size(); ++i)
            m.img[sub_to_full_u[i]] = sub_to_full_v[perm[i]];
          elems.push_back(m);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return semigroup_from_partial_maps(std::move(elems), X.ids, elements);
}

VPResult vagner_preston(const InvSemigroup& S) {
  const int n = S.n();
  VPResult res;
  for (int s = 0; s < n; ++s) {
    PartialMap th = PartialMap::empty(n);
    // domain S s^-1, action x -> x s
    Bits dom(n);
    for (int y = 0; y < n; ++y) dom.set(S.mult(y, S.invof(s)));
    for (int x = dom.first(); x >= 0; x = dom.next(x)) th.img[x] = S.mult(x, s);
    res.rep.push_back(th);
  }
  Report& rep = res.verification;
  for (int s = 0; s < n; ++s) {
    if (!res.rep[s].injective()) rep.add("vp.element-injective", S.ids[s]);
    for (int t = s + 1; t < n; ++t)
      if (res.rep[s] == res.rep[t]) rep.add("vp.global-injective", S.ids[s] + "=" + S.ids[t]);
  }
  for (int s = 0; s < n; ++s) {
    if (res.rep[S.invof(s)] != res.rep[s].inverse()) rep.add("vp.involution", S.ids[s]);
    for (int t = 0; t < n; ++t)
      if (res.rep[s].then(res.rep[t]) != res.rep[S.mult(s, t)])
        rep.add("vp.homomorphism", "(" + S.ids[s] + "," + S.ids[t] + ")");
  }
  if (!rep.ok())
    throw CheckError("RepresentationFailure", rep.items[0].law + " at " + rep.items[0].witness);
  return res;
}

JoinPreservationReport vp_join_preservation(const InvSemigroup& S, const VPResult& vp,
                                            const Caps& caps) {
  JoinPreservationReport out;
  const int n = S.n();
  if (n >= 63 || (std::uint64_t{1} << n) > caps.max_subsets) return out;
  Poset nat = natural_order(S);
  std::vector<Bits> compat(n, Bits(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (compatible(S, i, j).compatible()) compat[i].set(j);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (__builtin_popcountll(m) < 2) continue;
    Bits X(n);
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1) X.set(i);
    bool pc = true;
    for (int i = X.first(); pc && i >= 0; i = X.next(i)) pc = X.subset_of(compat[i]);
    if (!pc) continue;
    int j = least_upper_bound(S, nat, X);
    if (j < 0) continue;
    ++out.joins_checked;
    // union of the graphs of the images vs the image of the join
    PartialMap un = PartialMap::empty(n);
    bool graphs_compatible = true;
    for (int i = X.first(); i >= 0 && graphs_compatible; i = X.next(i))
      for (int x = 0; x < n; ++x) {
        int y = vp.rep[i].img[x];
        if (y < 0) continue;
        if (un.img[x] >= 0 && un.img[x] != y) graphs_compatible = false;
        un.img[x] = y;
      }
    if (graphs_compatible && un.injective() && un == vp.rep[j])
      ++out.joins_preserved;
    else if (out.first_failure.empty())
      out.first_failure = set_to_string(X, S.ids);
  }
  return out;
}

PseudogroupCheck is_abstract_pseudogroup(const InvSemigroup& S, Frame* E_out,
                                         std::vector<int>* element_of) {
  PseudogroupCheck chk;
  Poset ep = idempotent_poset(S, element_of);
  auto [F, rep] = make_frame(std::move(ep));
  if (!rep.ok()) {
    chk.ok = false;
    chk.reason = rep.items[0].law + ": " + rep.items[0].witness;
    return chk;
  }
  if (E_out) *E_out = std::move(F);
  return chk;
}

// --- isomorphism search ------------------------------------------------------

namespace {

std::vector<std::uint64_t> refine_colors(const InvSemigroup& S) {
  const int n = S.n();
  std::vector<std::uint64_t> col(n);
  for (int s = 0; s < n; ++s)
    col[s] = (std::uint64_t(S.idem(s)) << 1) | std::uint64_t(S.invof(s) == s);
  for (int round = 0; round < n; ++round) {
    std::vector<std::uint64_t> next(n);
    for (int s = 0; s < n; ++s) {
      std::uint64_t h = col[s] * 1099511628211ull + 0x9e3779b97f4a7c15ull;
      h ^= col[S.invof(s)] + (h << 6);
      std::vector<std::uint64_t> sig;
      for (int t = 0; t < n; ++t)
        sig.push_back(col[t] * 3 + col[S.mult(s, t)] * 5 + col[S.mult(t, s)] * 7);
      std::sort(sig.begin(), sig.end());
      for (auto v : sig) h = h * 1099511628211ull + v;
      next[s] = h;
    }
    if (next == col) break;
    col = next;
  }
  return col;
}

bool sg_iso_backtrack(const InvSemigroup& A, const InvSemigroup& B,
                      const std::vector<std::uint64_t>& ca, const std::vector<std::uint64_t>& cb,
                      std::vector<int>& f, std::vector<bool>& used, int a) {
  const int n = A.n();
  if (a == n) return true;
  for (int b = 0; b < n; ++b) {
    if (used[b] || ca[a] != cb[b]) continue;
    bool ok = true;
    for (int x = 0; x <= a && ok; ++x) {
      if (f[x] < 0) continue;
      int ab1 = A.mult(x, a), ab2 = A.mult(a, x);
      if (f[ab1] >= 0 && B.mult(f[x], b) != f[ab1]) ok = false;
      if (ok && f[ab2] >= 0 && B.mult(b, f[x]) != f[ab2]) ok = false;
    }
    if (ok && f[A.invof(a)] >= 0 && f[A.invof(a)] != int(B.inv[b])) ok = false;
    if (!ok) continue;
    f[a] = b;
    used[b] = true;
    if (sg_iso_backtrack(A, B, ca, cb, f, used, a + 1)) return true;
    f[a] = -1;
    used[b] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> semigroup_iso(const InvSemigroup& A, const InvSemigroup& B,
                                              std::string* why) {
  if (A.n() != B.n()) {
    if (why)
      *why = "element counts differ: " + std::to_string(A.n()) + " vs " + std::to_string(B.n());
    return std::nullopt;
  }
  const int n = A.n();
  auto ca = refine_colors(A), cb = refine_colors(B);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      if (why) *why = "element invariants differ (multiplication-table color classes)";
      return std::nullopt;
    }
  }
  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  if (!sg_iso_backtrack(A, B, ca, cb, f, used, 0)) {
    if (why) *why = "no isomorphism (search exhausted)";
    return std::nullopt;
  }
  // re-verify the witness in full
  for (int s = 0; s < n; ++s) {
    if (f[A.invof(s)] != int(B.inv[f[s]])) {
      if (why) *why = "internal: witness failed involution re-check";
      return std::nullopt;
    }
    for (int t = 0; t < n; ++t)
      if (f[A.mult(s, t)] != B.mult(f[s], f[t])) {
        if (why) *why = "internal: witness failed multiplication re-check";
        return std::nullopt;
      }
  }
  return f;
}

}  // namespace qig
