#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace capkit {

/* Fixed 256-bit point set; AG(5,3) needs 243 bits.  Bits at or above the
 * universe size of the owning space must stay zero, which every operation
 * here preserves except complement-style ops, which therefore take the
 * universe mask explicitly. */
struct Mask {
  std::array<std::uint64_t, 4> w{};

  static Mask with_bit(int i) {
    Mask m;
    m.set(i);
    return m;
  }

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

  int count() const {
    return std::popcount(w[0]) + std::popcount(w[1]) + std::popcount(w[2]) +
           std::popcount(w[3]);
  }
  bool empty() const { return !(w[0] | w[1] | w[2] | w[3]); }

  Mask& operator&=(const Mask& o) {
    for (int k = 0; k < 4; ++k) w[k] &= o.w[k];
    return *this;
  }
  Mask& operator|=(const Mask& o) {
    for (int k = 0; k < 4; ++k) w[k] |= o.w[k];
    return *this;
  }
  Mask& operator^=(const Mask& o) {
    for (int k = 0; k < 4; ++k) w[k] ^= o.w[k];
    return *this;
  }
  friend Mask operator&(Mask a, const Mask& b) { return a &= b; }
  friend Mask operator|(Mask a, const Mask& b) { return a |= b; }
  friend Mask operator^(Mask a, const Mask& b) { return a ^= b; }

  // a \ b, no universe needed
  static Mask andnot(const Mask& a, const Mask& b) {
    Mask r;
    for (int k = 0; k < 4; ++k) r.w[k] = a.w[k] & ~b.w[k];
    return r;
  }

  bool operator==(const Mask&) const = default;

  bool subset_of(const Mask& o) const { return andnot(*this, o).empty(); }
  bool intersects(const Mask& o) const { return !(*this & o).empty(); }

  // lowest set bit index, -1 if empty
  int lowest() const {
    for (int k = 0; k < 4; ++k)
      if (w[k]) return k * 64 + std::countr_zero(w[k]);
    return -1;
  }

  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < 4; ++k) {
      std::uint64_t v = w[k];
      while (v) {
        f(k * 64 + std::countr_zero(v));
        v &= v - 1;
      }
    }
  }

  std::vector<int> to_points() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int p) { out.push_back(p); });
    return out;
  }

  // numeric order on the 256-bit value, used only for deterministic sorting
  friend bool operator<(const Mask& a, const Mask& b) {
    for (int k = 3; k >= 0; --k)
      if (a.w[k] != b.w[k]) return a.w[k] < b.w[k];
    return false;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int k = 0; k < 4; ++k) {
      std::uint64_t x = w[k] + 0xbf58476d1ce4e5b9ull * (k + 1);
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ull;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebull;
      x ^= x >> 31;
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct MaskHash {
  std::size_t operator()(const Mask& m) const { return m.hash(); }
};

/* First-point order: the set owning the smallest index at which the two
 * masks differ comes first.  Canonical forms are minima in this order, so
 * a canonical representative packs its points at the smallest indices. */
inline int cmp_first_point(const Mask& a, const Mask& b) {
  for (int k = 0; k < 4; ++k) {
    std::uint64_t x = a.w[k] ^ b.w[k];
    if (x) {
      int bit = std::countr_zero(x);
      return ((a.w[k] >> bit) & 1u) ? -1 : 1;
    }
  }
  return 0;
}

/* first-point order restricted to indices below limit */
inline int cmp_first_point_below(const Mask& a, const Mask& b, int limit) {
  for (int k = 0; k < 4; ++k) {
    int base = k * 64;
    if (base >= limit) return 0;
    std::uint64_t x = a.w[k] ^ b.w[k];
    if (limit - base < 64) x &= (std::uint64_t{1} << (limit - base)) - 1;
    if (x) {
      int bit = std::countr_zero(x);
      return ((a.w[k] >> bit) & 1u) ? -1 : 1;
    }
  }
  return 0;
}

}  // namespace capkit
