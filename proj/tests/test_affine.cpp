#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "capkit/affine.hpp"
#include "capkit/gf3.hpp"
#include "doctest.h"

using namespace capkit;

TEST_CASE("determinant and inverse over small matrices") {
  for (int n = 1; n <= 3; ++n) {
    Mat id = Mat::identity(n);
    CHECK(det(id) == 1);
    CHECK(det(mul(id, id)) == 1);
  }
  Mat m;
  m.n = 2;
  m.put(0, 0, 1);
  m.put(0, 1, 2);
  m.put(1, 0, 1);
  m.put(1, 1, 1);
  CHECK(det(m) == (1 * 1 - 2 * 1 % 3 + 3) % 3);
  Mat mi = inverse(m);
  CHECK(det(mi) != 0);
  Mat prod = mul(m, mi);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(prod.at(r, c) == (r == c ? 1 : 0));
  Mat sing;
  sing.n = 2;
  sing.put(0, 0, 1);
  sing.put(1, 0, 2);
  CHECK(det(sing) == 0);
  CHECK_THROWS_AS(inverse(sing), Error);
}

TEST_CASE("column extraction matches from_cols") {
  Pt cols[3] = {5, 11, 17};
  Mat m = Mat::from_cols(3, cols);
  for (int c = 0; c < 3; ++c) CHECK(m.col(c) == cols[c]);
}

TEST_CASE("for_each_invertible streams each invertible matrix once") {
  for (int n = 1; n <= 3; ++n) {
    long long count = 0;
    std::set<std::array<Pt, 6>> seen;
    for_each_invertible(n, [&](const std::array<Pt, 6>& cols) {
      ++count;
      Mat m = Mat::from_cols(n, cols.data());
      CHECK(det(m) != 0);
      CHECK(seen.insert(cols).second);
    });
    CHECK(count == gl_order(n));
  }
}

TEST_CASE("affine maps permute points and compose correctly") {
  const Space& sp = space(3);
  Mat m;
  m.n = 3;
  m.put(0, 1, 1);
  m.put(1, 2, 1);
  m.put(2, 0, 1);
  AffineMap f(m, 7);
  AffineMap g = AffineMap::translation(3, 13);

  auto tab = f.perm_table();
  std::set<int> image;
  for (Pt p = 0; p < sp.N; ++p) {
    CHECK(tab[p] == f.apply(p));
    image.insert(tab[p]);
  }
  CHECK((int)image.size() == sp.N);

  AffineMap fg = compose(f, g);
  AffineMap gf = compose(g, f);
  for (Pt p = 0; p < sp.N; ++p) {
    CHECK(fg.apply(p) == f.apply(g.apply(p)));
    CHECK(gf.apply(p) == g.apply(f.apply(p)));
  }

  AffineMap fi = f.inverse();
  for (Pt p = 0; p < sp.N; ++p) CHECK(fi.apply(f.apply(p)) == p);
  CHECK(f.apply(0) == f.trans_pt());
}

TEST_CASE("affine maps preserve lines") {
  const Space& sp = space(3);
  Mat m;
  m.n = 3;
  m.put(0, 0, 2);
  m.put(0, 2, 1);
  m.put(1, 1, 1);
  m.put(2, 1, 1);
  m.put(2, 2, 2);
  AffineMap f(m, 19);
  for (const Line& ln : sp.lines) {
    Pt a = f.apply(ln.a), b = f.apply(ln.b);
    CHECK(f.apply(ln.c) == sp.third(a, b));
  }
}

namespace {

/* closure of generators acting on point permutations */
long long closure_size(int n, const std::vector<AffineMap>& gens) {
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::vector<std::uint8_t>> queue;
  std::vector<std::uint8_t> idtab(pow3(n));
  for (int p = 0; p < pow3(n); ++p) idtab[p] = static_cast<std::uint8_t>(p);
  seen.insert(idtab);
  queue.push_back(idtab);
  std::vector<std::vector<std::uint8_t>> gtabs;
  for (const auto& g : gens) gtabs.push_back(g.perm_table());
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    for (const auto& gt : gtabs) {
      std::vector<std::uint8_t> nxt(cur.size());
      for (size_t p = 0; p < cur.size(); ++p) nxt[p] = gt[cur[p]];
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  return (long long)seen.size();
}

}  // namespace

TEST_CASE("generator closures reach the full groups") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<AffineMap> lin;
    for (const Mat& m : gl_generators(n)) lin.emplace_back(m, 0);
    CHECK(closure_size(n, lin) == gl_order(n));
    CHECK(closure_size(n, agl_generators(n)) == agl_order(n));
  }
}

TEST_CASE("mask first point comparison prefers early points") {
  Mask a, b;
  a.set(3);
  a.set(10);
  b.set(3);
  b.set(11);
  CHECK(cmp_first_point(a, b) < 0);
  CHECK(cmp_first_point(b, a) > 0);
  CHECK(cmp_first_point(a, a) == 0);
  Mask c, d;
  c.set(0);
  d.set(1);
  d.set(2);
  CHECK(cmp_first_point(c, d) < 0);  // 0 beats {1,2}
  Mask hi, lo;
  hi.set(200);
  lo.set(70);
  CHECK(cmp_first_point(lo, hi) < 0);
  CHECK((hi | lo).count() == 2);
  CHECK(Mask::andnot(hi | lo, lo).test(200));
  CHECK(!Mask::andnot(hi | lo, lo).test(70));
}
