#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qig {

/// Subset of a fixed finite universe [0, n), packed into 64-bit words.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bits none(int n) { return Bits(n); }

  static Bits all(int n) {
    Bits b(n);
    for (int i = 0; i < n; ++i) b.set(i);
    return b;
  }

  static Bits single(int n, int i) {
    Bits b(n);
    b.set(i);
    return b;
  }

  static Bits of(int n, std::initializer_list<int> xs) {
    Bits b(n);
    for (int i : xs) b.set(i);
    return b;
  }

  int universe() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  Bits operator|(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] |= o.w_[k];
    return r;
  }

  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }

  /// Set difference: elements of *this not in o.
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= ~o.w_[k];
    return r;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }

  bool operator==(const Bits& o) const = default;

  /// Canonical total order: numeric value with bit i weighted 2^i.
  bool operator<(const Bits& o) const {
    for (std::size_t k = w_.size(); k-- > 0;)
      if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
  }

  int first() const { return next(-1); }

  /// First member strictly greater than i, or -1.
  int next(int i) const {
    for (int j = i + 1; j < n_; ++j) {
      std::uint64_t w = w_[j >> 6] >> (j & 63);
      if (w == 0) {
        j |= 63;  // skip the rest of the word
        continue;
      }
      return j + __builtin_ctzll(w);
    }
    return -1;
  }

  std::vector<int> members() const {
    std::vector<int> m;
    for (int i = first(); i >= 0; i = next(i)) m.push_back(i);
    return m;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// "{a,c}" rendering with member names drawn from ids.
inline std::string set_to_string(const Bits& b, const std::vector<std::string>& ids) {
  std::string s = "{";
  bool fst = true;
  for (int i = b.first(); i >= 0; i = b.next(i)) {
    if (!fst) s += ",";
    s += ids[i];
    fst = false;
  }
  return s + "}";
}

}  // namespace qig
