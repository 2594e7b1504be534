#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "capkit/gf3.hpp"

namespace capkit {

// row-major n x n matrix over GF(3)
struct Mat {
  int n = 0;
  std::array<std::uint8_t, 36> e{};

  static Mat identity(int n);
  int at(int r, int c) const { return e[r * 6 + c]; }
  void put(int r, int c, int v) { e[r * 6 + c] = static_cast<std::uint8_t>(v % 3); }

  // column c as a point index (vectors and points share the encoding)
  Pt col(int c) const;
  static Mat from_cols(int n, const Pt* cols);

  bool operator==(const Mat&) const = default;
};

int det(const Mat& m);
Mat mul(const Mat& a, const Mat& b);
Mat inverse(const Mat& m);  // throws Error on singular input
Pt mat_apply(const Mat& m, Pt p);

/* x -> A.x + t, with A invertible (checked at construction). */
struct AffineMap {
  Mat a;
  std::array<std::uint8_t, 6> t{};
  int n = 0;

  AffineMap() = default;
  AffineMap(const Mat& m, Pt trans);

  static AffineMap identity(int n);
  static AffineMap translation(int n, Pt trans);

  Pt trans_pt() const;
  Pt apply(Pt p) const;
  AffineMap inverse() const;
  std::vector<std::uint8_t> perm_table() const;

  bool operator==(const AffineMap&) const = default;
};

// f after g: (f*g)(x) = f(g(x))
AffineMap compose(const AffineMap& f, const AffineMap& g);

// deterministic total order for sorting and dedup
bool affine_less(const AffineMap& x, const AffineMap& y);

/* Streams every invertible n x n matrix as its tuple of columns (images of
 * the basis vectors, as point indices), choosing column j outside the span
 * of columns 0..j-1.  Visit order is deterministic. */
void for_each_invertible(int n, const std::function<void(const std::array<Pt, 6>&)>& fn);

// small generating set of GL(n,3) (transvection, basis cycle, determinant rep)
std::vector<Mat> gl_generators(int n);
// gl_generators lifted to AGL(n,3) together with the basis translations
std::vector<AffineMap> agl_generators(int n);

}  // namespace capkit
