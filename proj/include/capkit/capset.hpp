#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "capkit/affine.hpp"
#include "capkit/gf3.hpp"
#include "capkit/mask.hpp"

/* Cap predicates and per-direction statistics.  A cap is a point set with no
 * three points on a common line.  All sets are masks over space(n). */
namespace capkit {

/* union of third points over all pairs of s */
Mask excluded_points(int n, const Mask& s);

bool is_cap(int n, const Mask& s);

/* points outside s whose addition keeps s a cap */
Mask addable_points(int n, const Mask& s);

inline bool is_complete(int n, const Mask& s) {
  return addable_points(n, s).empty();
}

/* number of pairs {a,b} in s whose third point is p */
int midpoint_multiplicity(int n, const Mask& s, Pt p);

/* per-layer counts of s for direction d, indexed by field value 0,1,2 */
std::array<int, 3> dir_counts(int n, int d, const Mask& s);

/* the same counts sorted descending */
std::array<int, 3> sorted_triple(int n, int d, const Mask& s);

/* multiset of sorted triples over all directions */
std::map<std::array<int, 3>, int, std::greater<std::array<int, 3>>> spectrum(
    int n, const Mask& s);

/* stable one-line form "a.b.c:k a.b.c:k ..." in descending triple order */
std::string spectrum_digest(int n, const Mask& s);

Mask apply_perm(const std::vector<std::uint8_t>& tab, const Mask& s);
Mask apply_map(const AffineMap& f, const Mask& s);

/* 3x3 table of point counts for an ordered direction pair.  Columns run
 * left to right through first-direction values -1,0,+1 and rows top to
 * bottom through second-direction values +1,0,-1. */
using Grid = std::array<std::array<int, 3>, 3>;
Grid point_count_grid(int n, const Mask& s, int d1, int d2);

struct PatternFlags {
  bool row_perms = true;
  bool col_perms = true;
  bool transpose = true;
};

/* pattern cells: exact count, or -1 as a wildcard */
bool grid_matches(const Grid& g, const Grid& pattern, PatternFlags flags = {});

/* reflection through a center point: p -> 2c - p */
Pt point_reflect(int n, Pt center, Pt p);
Mask point_reflect_set(int n, Pt center, const Mask& s);

/* all centers whose reflection carries a onto b */
std::vector<Pt> reflection_centers(int n, const Mask& a, const Mask& b);

/* position of a covector (by its digit encoding) in space(n).dirs */
int dir_index_of(int n, int covector_code);

/* direction reading the last coordinate */
inline int standard_dir(int n) { return dir_index_of(n, pow3(n - 1)); }

/* Layers are affine hyperplanes; each carries a standard frame that drops
 * the leading coordinate of the direction covector.  restrict_layer maps
 * s ∩ layer(d,t) into space(n-1); embed_layer is its inverse. */
Mask restrict_layer(int n, int d, int t, const Mask& s);
Mask embed_layer(int n, int d, int t, const Mask& low);

}  // namespace capkit
