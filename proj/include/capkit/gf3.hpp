#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "capkit/error.hpp"
#include "capkit/mask.hpp"

namespace capkit {

/* Points of AG(n,3) are indexed 0..3^n-1 in little-endian base 3: the i-th
 * coordinate of point p is the i-th base-3 digit of p, so index =
 * sum coords[i]*3^i.  Coordinate value 2 plays the role of -1. */

inline constexpr int kMaxDim = 5;      // masks and cap operations
inline constexpr int kMaxGeomDim = 6;  // line / direction enumeration only

constexpr int pow3(int n) {
  int r = 1;
  while (n-- > 0) r *= 3;
  return r;
}

using Pt = int;

inline int pt_digit(Pt p, int i) {
  while (i-- > 0) p /= 3;
  return p % 3;
}

Pt pt_of_coords(int n, const int* c);
void pt_coords(int n, Pt p, int* out);

Pt pt_add(int n, Pt a, Pt b);
Pt pt_neg(int n, Pt a);

/* Third point of the line through distinct a and b.  Over GF(3) this equals
 * -(a+b), which is simultaneously the midpoint of the segment ab; the two
 * notions coincide and the library treats them as one operation. */
Pt third_point(int n, Pt a, Pt b);

struct Line {
  std::uint16_t a, b, c;  // sorted ascending
  bool operator==(const Line&) const = default;
};

/* A direction is a nonzero covector normalized so its first nonzero entry
 * is 1; the (3^n-1)/2 directions each split the space into three parallel
 * hyperplanes {x : w.x = t}, t = 0,1,2. */
struct Covector {
  int n = 0;
  std::array<std::uint8_t, 6> d{};

  int index() const {
    int r = 0;
    for (int i = n - 1; i >= 0; --i) r = r * 3 + d[i];
    return r;
  }
  int eval(Pt p) const {
    int s = 0;
    for (int i = 0; i < n; ++i) {
      s += d[i] * (p % 3);
      p /= 3;
    }
    return s % 3;
  }
  bool operator==(const Covector&) const = default;
};

// ascending by base-3 index; only normalized covectors
std::vector<Covector> enumerate_directions(int n);
std::vector<Line> enumerate_lines(int n);

std::uint64_t gl_order(int n);
std::uint64_t agl_order(int n);

/* Cached tables for one dimension, shared by the hot paths.  third(p,p)
 * yields p and is never a line; callers that care must reject p = q. */
struct Space {
  int n = 0, N = 1;
  std::vector<std::uint8_t> add_tab;    // N*N
  std::vector<std::uint8_t> third_tab;  // N*N, -(p+q)
  std::vector<std::uint8_t> neg_tab;    // N
  std::vector<Line> lines;

  struct Dir {
    Covector cov;
    std::array<Mask, 3> layer;  // layer[t] = {p : cov.p = t}
  };
  std::vector<Dir> dirs;
  Mask all;

  int add(int p, int q) const { return add_tab[p * N + q]; }
  int third(int p, int q) const { return third_tab[p * N + q]; }
  int neg(int p) const { return neg_tab[p]; }
  const std::uint8_t* third_row(int p) const { return &third_tab[p * N]; }
};

// n in 0..kMaxDim; lazily built, never freed
const Space& space(int n);

}  // namespace capkit
