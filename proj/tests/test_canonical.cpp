#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "capkit/canonical.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace capkit;
using testutil::mask_of;

static const Mask kSquare = mask_of({0, 1, 3, 4});

/* exhaustive greedy sweep until a complete cap of the wanted size appears */
static Mask find_complete_cap(int n, int want, std::uint32_t seed) {
  std::mt19937 rng(seed);
  for (int tries = 0; tries < 20000; ++tries) {
    Mask s = testutil::random_cap(n, rng);
    if ((int)s.count() == want) return s;
  }
  FAIL("no complete cap of requested size found");
  return {};
}

TEST_CASE("canonical form of the square is itself") {
  CanonicalResult r = canonical_form(2, kSquare);
  CHECK(r.form == kSquare);
  CHECK(r.sym_order == 8);
  CHECK(apply_map(r.to_form, kSquare) == r.form);
}

TEST_CASE("small stabilizer orders in dims 1 and 2") {
  CHECK(canonical_form(1, mask_of({1})).sym_order == 2);
  CHECK(canonical_form(1, mask_of({0, 2})).sym_order == 2);
  CHECK(canonical_form(2, mask_of({4})).sym_order == 48);
  CHECK(canonical_form(2, mask_of({2, 7})).sym_order == 12);
  CHECK(canonical_form(2, mask_of({1, 5, 7})).sym_order == 6);
  /* {1,5,6} is a full line; there are 12 lines forming one orbit */
  CHECK(canonical_form(2, mask_of({1, 5, 6})).sym_order == 432 / 12);
  /* empty set is stabilized by everything */
  CHECK(canonical_form(2, Mask{}).sym_order == agl_order(2));
  CHECK(canonical_mask(2, Mask{}).empty());
}

TEST_CASE("all triangles share one canonical form") {
  const Space& sp = space(2);
  Mask ref;
  bool first = true;
  int triangles = 0;
  for (Pt a = 0; a < 9; ++a)
    for (Pt b = a + 1; b < 9; ++b)
      for (Pt c = b + 1; c < 9; ++c) {
        if (sp.third(a, b) == c) continue;
        Mask t = mask_of({a, b, c});
        ++triangles;
        Mask cf = canonical_mask(2, t);
        if (first) {
          ref = cf;
          first = false;
          CHECK(cf == mask_of({0, 1, 3}));
        }
        CHECK(cf == ref);
      }
  CHECK(triangles == 72);
}

TEST_CASE("complete nine point cap in dim 3 has stabilizer order 144") {
  Mask nine = find_complete_cap(3, 9, 5);
  CHECK(is_complete(3, nine));
  CanonicalResult r = canonical_form(3, nine);
  CHECK(r.sym_order == 144);
  SymmetryGroup g = symmetry_group(3, nine);
  CHECK(g.order == 144);
  CHECK(g.generators_complete);
  CHECK(g.transitive_on_points());
  for (const AffineMap& m : g.generators) CHECK(apply_map(m, nine) == nine);
}

TEST_CASE("canonical form is constant on orbits") {
  std::mt19937 rng(99);
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      Mask s = testutil::random_cap(n, rng);
      Mask cf = canonical_mask(n, s);
      CHECK(is_cap(n, cf));
      CHECK(cf.count() == s.count());
      CHECK(cmp_first_point(cf, s) <= 0);
      for (int m = 0; m < 6; ++m) {
        AffineMap f = testutil::random_affine(n, rng);
        CHECK(canonical_mask(n, apply_map(f, s)) == cf);
      }
    }
  }
}

TEST_CASE("symmetry generators stabilize and regenerate") {
  std::mt19937 rng(123);
  for (int rep = 0; rep < 6; ++rep) {
    Mask s = testutil::random_cap(3, rng);
    SymmetryGroup g = symmetry_group(3, s);
    CHECK(g.order >= 1);
    if (!g.generators_complete) continue;
    long long pts = 0;
    for (auto& orb : g.orbits) pts += (long long)orb.size();
    CHECK(pts == (long long)s.count());
    for (const AffineMap& m : g.generators) CHECK(apply_map(m, s) == s);
  }
}

TEST_CASE("isomorphism witnesses") {
  std::mt19937 rng(321);
  for (int n = 2; n <= 4; ++n) {
    Mask s = testutil::random_cap(n, rng);
    AffineMap f = testutil::random_affine(n, rng);
    Mask img = apply_map(f, s);
    CHECK(are_isomorphic(n, s, img));
    auto w = isomorphism(n, s, img);
    REQUIRE(w.has_value());
    CHECK(apply_map(*w, s) == img);
  }
  /* a square and a triangle are not equivalent */
  CHECK(!are_isomorphic(2, kSquare, mask_of({0, 1, 3})));
  CHECK(!isomorphism(2, kSquare, mask_of({0, 1, 3})).has_value());
}

TEST_CASE("translate canonical is a translation orbit key") {
  std::mt19937 rng(77);
  const Space& sp = space(3);
  for (int rep = 0; rep < 10; ++rep) {
    Mask s = testutil::random_cap(3, rng);
    Mask key = translate_canonical(3, s);
    CHECK(cmp_first_point(key, s) <= 0);
    for (Pt t = 0; t < sp.N; ++t) {
      Mask shifted;
      s.for_each([&](Pt p) { shifted.set(sp.add(p, t)); });
      CHECK(translate_canonical(3, shifted) == key);
    }
  }
}

TEST_CASE("canonical search budget guard") {
  Mask nine = find_complete_cap(3, 9, 5);
  CHECK_THROWS_AS(canonical_form(3, nine, 10), Error);
}
