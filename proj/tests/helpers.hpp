#pragma once

#include <random>

#include "capkit/capset.hpp"

/* shared test utilities */
namespace testutil {

/* greedy random cap: grow until complete or size cap reached */
inline capkit::Mask random_cap(int n, std::mt19937& rng, int max_size = 1000) {
  capkit::Mask s;
  while ((int)s.count() < max_size) {
    auto options = capkit::addable_points(n, s).to_points();
    if (options.empty()) break;
    s.set(options[rng() % options.size()]);
  }
  return s;
}

inline capkit::Mask mask_of(std::initializer_list<int> pts) {
  capkit::Mask m;
  for (int p : pts) m.set(p);
  return m;
}

inline capkit::AffineMap random_affine(int n, std::mt19937& rng) {
  using namespace capkit;
  const Space& sp = space(n);
  for (;;) {
    Mat m;
    m.n = n;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m.put(r, c, rng() % 3);
    if (det(m) == 0) continue;
    return AffineMap(m, (Pt)(rng() % sp.N));
  }
}

}  // namespace testutil
