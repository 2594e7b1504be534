#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "capkit/capset.hpp"
#include "capkit/diagram.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace capkit;

/* the four reference lines */
static const DiagramLine kLine17{2, 9, -260};     /* dim 4, size 17 */
static const DiagramLine kLine46{10, 133, -29190}; /* dim 5, size 46 */
static const DiagramLine kLine45{1, 13, -2730};   /* dim 5, size 45 */
static const DiagramLine kLine41{8, 95, -16588};  /* dim 5, size 41 */

TEST_CASE("rational arithmetic") {
  CHECK(Rat(6, -4) == Rat(-3, 2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(3, 4) * Rat(2, 3)) == Rat(1, 2));
  CHECK((Rat(1) - Rat(9, 10)).str() == "1/10");
  CHECK(Rat(-9, 10) < Rat(0));
  CHECK(Rat(5).str() == "5");
  CHECK(Rat(-212, 8) == Rat(-53, 2));
  CHECK_THROWS_AS(Rat(1, 0), Error);
}

TEST_CASE("diagram points hit the caption anchors exactly") {
  auto on = [](const Triple& t, const DiagramLine& l) {
    return diagram_point(t, l).d == Rat(0);
  };
  /* size-17 line: four anchors */
  CHECK(diagram_point({9, 6, 2}).x == 52);
  CHECK(diagram_point({9, 6, 2}).y == 104);
  CHECK(on({9, 6, 2}, kLine17));
  CHECK(on({8, 6, 3}, kLine17));
  CHECK(on({7, 6, 4}, kLine17));
  CHECK(on({6, 6, 5}, kLine17));
  CHECK(diagram_point({8, 6, 3}).x == 46);
  CHECK(diagram_point({8, 6, 3}).y == 77);
  CHECK(diagram_point({7, 6, 4}).x == 42);
  CHECK(diagram_point({7, 6, 4}).y == 59);
  CHECK(diagram_point({6, 6, 5}).x == 40);
  CHECK(diagram_point({6, 6, 5}).y == 50);
  /* size-46 line */
  CHECK(diagram_point({19, 18, 9}).x == 360);
  CHECK(diagram_point({19, 18, 9}).y == 1869);
  CHECK(on({19, 18, 9}, kLine46));
  CHECK(on({16, 15, 15}, kLine46));
  /* size-45 line */
  CHECK(diagram_point({18, 18, 9}).x == 342);
  CHECK(diagram_point({18, 18, 9}).y == 1716);
  CHECK(on({18, 18, 9}, kLine45));
  CHECK(on({15, 15, 15}, kLine45));
  /* size-41 line */
  CHECK(diagram_point({16, 16, 9}).x == 276);
  CHECK(diagram_point({16, 16, 9}).y == 1204);
  CHECK(on({16, 16, 9}, kLine41));
  CHECK(on({14, 14, 13}, kLine41));
  CHECK(diagram_point({14, 14, 13}).x == 260);
  CHECK(diagram_point({14, 14, 13}).y == 1014);
  /* degenerate */
  CHECK(diagram_point({0, 0, 0}).x == 0);
  CHECK(diagram_point({0, 0, 0}).y == 0);
}

TEST_CASE("line through two diagram points") {
  DiagramLine l = line_through({16, 16, 9}, {14, 14, 13});
  CHECK(l.alpha == 8);
  CHECK(l.beta == 95);
  CHECK(l.gamma == -16588);
  DiagramLine l45 = line_through({18, 18, 9}, {15, 15, 15});
  CHECK(l45.alpha == 1);
  CHECK(l45.beta == 13);
  CHECK(l45.gamma == -2730);
}

TEST_CASE("centroids") {
  auto [x45, y45] = centroid(5, 45);
  CHECK(x45 == Rat(39600, 121));
  CHECK(y45 == Rat(184470, 121));
  CHECK(kLine45.signed_distance(x45, y45) == Rat(0));

  auto [x17, y17] = centroid(4, 17);
  CHECK(x17 == Rat(221, 5));
  CHECK(y17 == Rat(68));
  CHECK(kLine17.signed_distance(x17, y17) == Rat(-9, 10));
  CHECK_THROWS_AS(centroid(1, 2), Error);
}

TEST_CASE("pair and triple identities reproduce the centroid") {
  std::mt19937 rng(2024);
  for (int n = 2; n <= 5; ++n) {
    long long dn = direction_count(n);
    for (int rep = 0; rep < 10; ++rep) {
      Mask s = testutil::random_cap(n, rng);
      int size = s.count();
      long long sx = 0, sy = 0;
      for (int d = 0; d < (int)space(n).dirs.size(); ++d) {
        auto c = dir_counts(n, d, s);
        sx += choose2(c[0]) + choose2(c[1]) + choose2(c[2]);
        sy += choose3(c[0]) + choose3(c[1]) + choose3(c[2]);
      }
      CHECK(sx == choose2(size) * (pow3(n - 1) - 1) / 2);
      CHECK(sy == choose3(size) * (pow3(n - 2) - 1) / 2);
      auto [cx, cy] = centroid(n, size);
      CHECK(Rat(sx, dn) == cx);
      CHECK(Rat(sy, dn) == cy);
    }
  }
}

TEST_CASE("allowed triple enumeration") {
  DiagramSpec s0 = make_spec(5, 0);
  REQUIRE(s0.allowed.size() == 1);
  CHECK(s0.allowed[0] == Triple{0, 0, 0});

  DiagramSpec s45 = make_spec(5, 45);
  CHECK(s45.allowed.size() == 27);
  CHECK(s45.allowed.front() == Triple{20, 20, 5});
  CHECK(s45.allowed.back() == Triple{15, 15, 15});
  for (const Triple& t : s45.allowed) {
    CHECK(t[0] + t[1] + t[2] == 45);
    CHECK(t[0] >= t[1]);
    CHECK(t[1] >= t[2]);
    CHECK(t[0] <= 20);
  }

  DiagramSpec f = make_spec(5, 45, {{5, 20, 20}});
  CHECK(f.allowed.size() == 26);
  CHECK(f.allowed.front() == Triple{20, 19, 6});
}

TEST_CASE("line infeasibility certificates") {
  /* no 46-cap in dim 5 */
  DiagramSpec s46 = make_spec(
      5, 46, {{20, 20, 6}, {20, 19, 7}, {19, 19, 8}, {20, 18, 8}}, kLine46);
  LineCertificate c46 = infeasible_by_line(s46);
  CHECK(c46.infeasible);
  CHECK(c46.centroid_d.sign() < 0);
  CHECK(c46.min_allowed_d.sign() >= 0);
  CHECK(c46.text().substr(0, 10) == "INFEASIBLE");

  /* no 17-cap 4-flat without the five special direction counts */
  DiagramSpec s17 = make_spec(
      4, 17, {{9, 8, 0}, {9, 7, 1}, {8, 8, 1}, {8, 7, 2}, {7, 7, 3}}, kLine17);
  CHECK(infeasible_by_line(s17).infeasible);

  /* size 45: the centroid lies on the line, so no separation */
  DiagramSpec s45 = make_spec(
      5, 45,
      {{20, 20, 5}, {20, 19, 6}, {19, 19, 7}, {20, 18, 7}, {19, 18, 8}},
      kLine45);
  LineCertificate c45 = infeasible_by_line(s45);
  CHECK(!c45.infeasible);
  CHECK(c45.centroid_d == Rat(0));
  CHECK(c45.min_allowed_d == Rat(0));
}

TEST_CASE("size 45 distribution is unique") {
  /* restricted to the two on-line triples */
  DiagramSpec two;
  two.n = 5;
  two.s = 45;
  two.line = kLine45;
  two.allowed = {{18, 18, 9}, {15, 15, 15}};
  auto sols = solve_distribution(two);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0][0] == 55);
  CHECK(sols[0][1] == 66);

  /* the full spec with the five forbidden triples gives the same support */
  DiagramSpec s45 = make_spec(
      5, 45,
      {{20, 20, 5}, {20, 19, 6}, {19, 19, 7}, {20, 18, 7}, {19, 18, 8}});
  auto all = solve_distribution(s45);
  REQUIRE(all.size() == 1);
  for (std::size_t i = 0; i < s45.allowed.size(); ++i) {
    long long want = s45.allowed[i] == Triple{18, 18, 9}   ? 55
                     : s45.allowed[i] == Triple{15, 15, 15} ? 66
                                                            : 0;
    CHECK(all[0][i] == want);
  }

  CHECK_THROWS_AS(solve_distribution(s45, 10), Error);

  DiagramSpec s0 = make_spec(5, 0);
  auto z = solve_distribution(s0);
  REQUIRE(z.size() == 1);
  CHECK(z[0][0] == direction_count(5));
}

TEST_CASE("size 41 forced directions") {
  DiagramSpec s41 = make_spec(
      5, 41, {{20, 19, 2}, {20, 18, 3}, {19, 19, 3}, {19, 18, 4}}, kLine41);
  /* any true distribution has total signed distance -53/2 < 0, so some
   * below-line triple is used; every below-line triple is in the forced set */
  CHECK(total_signed_distance(s41) == Rat(-53, 2));
  auto below = below_line_triples(s41);
  CHECK(!below.empty());
  auto forced = [](const Triple& t) {
    if (t == Triple{20, 20, 1} || t == Triple{18, 18, 5}) return true;
    return 20 >= t[0] && t[0] >= 17 && 17 >= t[1] && t[1] >= 16 && 16 >= t[2];
  };
  bool saw2020 = false, saw1818 = false;
  for (const Triple& t : below) {
    CHECK(forced(t));
    saw2020 |= t == Triple{20, 20, 1};
    saw1818 |= t == Triple{18, 18, 5};
  }
  CHECK(saw2020);
  CHECK(saw1818);
}

TEST_CASE("renderers") {
  DiagramSpec s17 = make_spec(4, 17, {}, kLine17);
  std::ostringstream tsv;
  render_tsv(s17, tsv);
  CHECK(tsv.str().find("a\tb\tc\tx\ty\td\n") == 0);
  CHECK(tsv.str().find("9\t6\t2\t52\t104\t0\n") != std::string::npos);

  DiagramSpec s46 = make_spec(
      5, 46, {{20, 20, 6}, {20, 19, 7}, {19, 19, 8}, {20, 18, 8}}, kLine46);
  std::ostringstream tsv46;
  render_tsv(s46, tsv46);
  std::istringstream lines(tsv46.str());
  std::string row;
  std::getline(lines, row); /* header */
  while (std::getline(lines, row)) CHECK(row.find("-") == std::string::npos);

  std::ostringstream svg;
  render_svg(s46, svg);
  CHECK(svg.str().find("<svg") == 0);
  CHECK(svg.str().find("<line") != std::string::npos);
  CHECK(svg.str().find("<path") != std::string::npos);
  CHECK(svg.str().find("</svg>") != std::string::npos);
}
