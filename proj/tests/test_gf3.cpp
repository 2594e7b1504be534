#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "capkit/gf3.hpp"
#include "doctest.h"

using namespace capkit;

TEST_CASE("point coordinate round trip") {
  for (int n = 1; n <= kMaxDim; ++n) {
    for (Pt p = 0; p < pow3(n); ++p) {
      int d[6];
      pt_coords(n, p, d);
      CHECK(pt_of_coords(n, d) == p);
      for (int i = 0; i < n; ++i) CHECK(pt_digit(p, i) == d[i]);
    }
  }
}

TEST_CASE("addition and negation are digitwise mod 3") {
  const Space& sp = space(3);
  CHECK(sp.add(0, 5) == 5);
  /* (1,1,0) + (2,2,1) = (0,0,1) */
  CHECK(sp.add(4, 17) == 9);
  for (Pt p = 0; p < sp.N; ++p) {
    CHECK(sp.add(p, sp.neg(p)) == 0);
    CHECK(sp.add(p, 0) == p);
  }
}

TEST_CASE("third point closes a line and is the midpoint") {
  for (int n = 1; n <= 4; ++n) {
    const Space& sp = space(n);
    for (Pt a = 0; a < sp.N; ++a)
      for (Pt b = a + 1; b < sp.N; ++b) {
        Pt c = sp.third(a, b);
        CHECK(c != a);
        CHECK(c != b);
        CHECK(sp.third(a, c) == b);
        CHECK(sp.third(b, c) == a);
        /* sum of the three points vanishes */
        CHECK(sp.add(sp.add(a, b), c) == 0);
        /* c + c = a + b: c is the midpoint of {a,b} */
        CHECK(sp.add(c, c) == sp.add(a, b));
      }
  }
}

TEST_CASE("degenerate segment is rejected") {
  CHECK_THROWS_AS(third_point(2, 4, 4), Error);
}

TEST_CASE("direction counts (3^n-1)/2") {
  CHECK(enumerate_directions(1).size() == 1);
  CHECK(enumerate_directions(2).size() == 4);
  CHECK(enumerate_directions(3).size() == 13);
  CHECK(enumerate_directions(4).size() == 40);
  CHECK(enumerate_directions(5).size() == 121);
}

TEST_CASE("directions are normalized covectors with distinct kernels") {
  for (int n = 1; n <= kMaxDim; ++n) {
    auto dirs = enumerate_directions(n);
    std::set<int> seen;
    for (const Covector& cv : dirs) {
      int lead = 0;
      for (int i = n - 1; i >= 0; --i)
        if (cv.d[i]) lead = cv.d[i];
      CHECK(lead == 1);  // highest nonzero coefficient is 1
      CHECK(seen.insert(cv.index()).second);
    }
  }
}

TEST_CASE("direction layers partition the space into three cosets") {
  for (int n = 1; n <= kMaxDim; ++n) {
    const Space& sp = space(n);
    for (const auto& dir : sp.dirs) {
      int total = 0;
      for (int t = 0; t < 3; ++t) {
        CHECK(dir.layer[t].count() == sp.N / 3);
        total += dir.layer[t].count();
      }
      CHECK(total == sp.N);
      Mask all = dir.layer[0] | dir.layer[1] | dir.layer[2];
      CHECK(all.count() == sp.N);
      for (Pt p = 0; p < sp.N; ++p) CHECK(dir.layer[dir.cov.eval(p)].test(p));
    }
  }
}

TEST_CASE("line counts 3^n(3^n-1)/6") {
  CHECK(enumerate_lines(1).size() == 1);
  CHECK(enumerate_lines(2).size() == 12);
  CHECK(enumerate_lines(3).size() == 117);
  CHECK(enumerate_lines(4).size() == 1080);
  CHECK(enumerate_lines(5).size() == 9801);
  for (int n = 1; n <= kMaxDim; ++n) {
    long long N = pow3(n);
    CHECK((long long)enumerate_lines(n).size() == N * (N - 1) / 6);
  }
}

TEST_CASE("every line agrees with the third-point table") {
  for (int n = 1; n <= kMaxDim; ++n) {
    const Space& sp = space(n);
    std::set<std::array<int, 3>> seen;
    for (const Line& ln : sp.lines) {
      CHECK(ln.a < ln.b);
      CHECK(ln.b < ln.c);
      CHECK(sp.third(ln.a, ln.b) == ln.c);
      CHECK(seen.insert({ln.a, ln.b, ln.c}).second);
    }
  }
}

TEST_CASE("group orders") {
  CHECK(gl_order(1) == 2);
  CHECK(gl_order(2) == 48);
  CHECK(gl_order(3) == 11232);
  CHECK(gl_order(4) == 24261120);
  CHECK(agl_order(3) == 303264);
  CHECK(agl_order(2) == 9 * 48);
}

TEST_CASE("third rows cover the space") {
  const Space& sp = space(4);
  for (Pt p = 0; p < sp.N; ++p) {
    const std::uint8_t* row = sp.third_row(p);
    for (Pt q = 0; q < sp.N; ++q) {
      if (q == p) continue;
      CHECK(row[q] == sp.third(p, q));
    }
  }
}
