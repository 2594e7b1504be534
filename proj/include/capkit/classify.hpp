#pragma once

#include <map>
#include <vector>

#include "capkit/canonical.hpp"
#include "capkit/capset.hpp"

/* Exhaustive classification of caps up to affine equivalence. */
namespace capkit {

struct CapClass {
  Mask rep;  /* canonical form */
  int size = 0;
  long long sym_order = 0;
  bool complete = false;
};

/* largest cap size per dimension */
int max_cap_size(int n);

/* every class of every size, by point-by-point growth; exhaustive for n<=3 */
std::map<int, std::vector<CapClass>> classify_all_small(int n);

/* classes reachable by adding one point to the given same-size classes */
std::vector<CapClass> extend_classes(int n, const std::vector<CapClass>& from);

/* full affine orbit of a set, as explicit masks */
std::vector<Mask> affine_orbit(int n, const Mask& s);

/* the orbit reduced to one representative per translation class */
std::vector<Mask> affine_orbit_mod_translation(int n, const Mask& s);

/* number of caps of exactly the given size, by direct backtracking */
long long count_caps_of_size(int n, int size);

/* Classes of dim-4 caps of a given total size (>= 13) found through their
 * top standard-direction layer triple: the first layer is anchored to a
 * class representative, the second ranges over translation-reduced orbits,
 * the third over all caps inside the points left uncovered by cross lines.
 * A find is kept only when (a,b,c) is the maximum sorted triple over all
 * directions, so each class is produced by exactly one triple. */
std::vector<CapClass> layer_method_dim4(int total);

/* sizes 18, 19, 20 in dim 4: the 18s by layers, larger by extension */
std::map<int, std::vector<CapClass>> classify_dim4_large();

/* deterministic class order: first-point order of representatives */
void sort_classes(std::vector<CapClass>& v);

}  // namespace capkit
