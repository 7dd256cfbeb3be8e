#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qig::kernels {

/// Runtime switch between the OpenMP kernels and the serial reference path.
/// Both produce identical output; tests assert the agreement.
struct Config {
  bool parallel = true;
};

inline Config& config() {
  static Config c;
  return c;
}

// ---------------------------------------------------------------------------
// Mask filtering: collect all m in [0, limit) with keep(m), ascending.
// ---------------------------------------------------------------------------

template <class Pred>
std::vector<std::uint64_t> filter_masks_serial(std::uint64_t limit, Pred&& keep) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < limit; ++m)
    if (keep(m)) out.push_back(m);
  return out;
}

template <class Pred>
std::vector<std::uint64_t> filter_masks_parallel(std::uint64_t limit, Pred&& keep) {
#ifdef _OPENMP
  int nt = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> part(nt);
#pragma omp parallel num_threads(nt)
  {
    int t = omp_get_thread_num();
    std::uint64_t lo = limit * t / nt, hi = limit * (t + 1) / nt;
    auto& mine = part[t];
    for (std::uint64_t m = lo; m < hi; ++m)
      if (keep(m)) mine.push_back(m);
  }
  std::vector<std::uint64_t> out;
  for (auto& p : part) out.insert(out.end(), p.begin(), p.end());
  return out;
#else
  return filter_masks_serial(limit, keep);
#endif
}

template <class Pred>
std::vector<std::uint64_t> filter_masks(std::uint64_t limit, Pred&& keep) {
  if (config().parallel) return filter_masks_parallel(limit, keep);
  return filter_masks_serial(limit, keep);
}

// ---------------------------------------------------------------------------
// Law checking over index triples: lexicographically least (i,j,k) in
// [0,n)^3 with bad(i,j,k), if any. Used for associativity/distributivity.
// ---------------------------------------------------------------------------

inline std::optional<std::array<int, 3>> decode_triple(std::uint64_t enc, int n) {
  if (enc == ~std::uint64_t{0}) return std::nullopt;
  int k = int(enc % n);
  enc /= n;
  int j = int(enc % n);
  int i = int(enc / n);
  return std::array<int, 3>{i, j, k};
}

template <class Pred>
std::optional<std::array<int, 3>> first_bad_triple_serial(int n, Pred&& bad) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (bad(i, j, k)) return std::array<int, 3>{i, j, k};
  return std::nullopt;
}

template <class Pred>
std::optional<std::array<int, 3>> first_bad_triple_parallel(int n, Pred&& bad) {
#ifdef _OPENMP
  std::uint64_t best = ~std::uint64_t{0};
#pragma omp parallel for schedule(static) reduction(min : best)
  for (int i = 0; i < n; ++i) {
    std::uint64_t local = ~std::uint64_t{0};
    for (int j = 0; j < n && local == ~std::uint64_t{0}; ++j)
      for (int k = 0; k < n; ++k)
        if (bad(i, j, k)) {
          local = (std::uint64_t(i) * n + j) * n + k;
          break;
        }
    if (local < best) best = local;
  }
  return decode_triple(best, n);
#else
  return first_bad_triple_serial(n, bad);
#endif
}

template <class Pred>
std::optional<std::array<int, 3>> first_bad_triple(int n, Pred&& bad) {
  if (config().parallel) return first_bad_triple_parallel(n, bad);
  return first_bad_triple_serial(n, bad);
}

// ---------------------------------------------------------------------------
// Least bad pair (i,j) in [0,n)^2.
// ---------------------------------------------------------------------------

template <class Pred>
std::optional<std::array<int, 2>> first_bad_pair_serial(int n, Pred&& bad) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (bad(i, j)) return std::array<int, 2>{i, j};
  return std::nullopt;
}

template <class Pred>
std::optional<std::array<int, 2>> first_bad_pair_parallel(int n, Pred&& bad) {
#ifdef _OPENMP
  std::uint64_t best = ~std::uint64_t{0};
#pragma omp parallel for schedule(static) reduction(min : best)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (bad(i, j)) {
        std::uint64_t enc = std::uint64_t(i) * n + j;
        if (enc < best) best = enc;
        break;
      }
  if (best == ~std::uint64_t{0}) return std::nullopt;
  return std::array<int, 2>{int(best / n), int(best % n)};
#else
  return first_bad_pair_serial(n, bad);
#endif
}

template <class Pred>
std::optional<std::array<int, 2>> first_bad_pair(int n, Pred&& bad) {
  if (config().parallel) return first_bad_pair_parallel(n, bad);
  return first_bad_pair_serial(n, bad);
}

// ---------------------------------------------------------------------------
// Independent table fill: out[i] = fn(i) for i in [0,n).
// ---------------------------------------------------------------------------

template <class Fn>
void fill_table(std::int64_t n, Fn&& fn) {
  if (config().parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
#endif
  }
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace qig::kernels
