#include "capkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "capkit/classify.hpp"
#include "capkit/config.hpp"
#include "capkit/error.hpp"
#include "capkit/scan.hpp"

namespace capkit {
namespace {

/* ---------- small formatting helpers ---------- */

std::string pts_str(const Mask& m) {
  std::string s;
  m.for_each([&](int p) {
    if (!s.empty()) s += ',';
    s += std::to_string(p);
  });
  return s.empty() ? "-" : s;
}

std::string triple_str(const std::array<int, 3>& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
         std::to_string(t[2]) + "}";
}

/* ---------- named dim-3 shapes ---------- */

Pt mkpt(int a, int b, int c) {
  auto f = [](int v) { return v < 0 ? v + 3 : v; };
  return f(a) + 3 * f(b) + 9 * f(c);
}

Mask mkset(std::initializer_list<std::array<int, 3>> pts) {
  Mask m;
  for (auto& p : pts) m.set(mkpt(p[0], p[1], p[2]));
  return m;
}

/* canonical forms of the shape vocabulary; explicit coordinates except for
 * the saddled cube, which is pinned as the one complete 8-cap class that is
 * not the cube */
struct Shapes {
  Mask cube, cube_c;               /* raw cube and canonical form */
  Mask cube_point, cube_long, cube_face, cube_edge; /* canonical */
  Mask pyramid, tetra_centre;      /* canonical */
  Mask tetra_centre_raw;           /* explicit, centre at the origin */
  Mask nine, antiprism, saddled;   /* canonical */
};

const Shapes& shapes() {
  static const Shapes sh = [] {
    Shapes s;
    s.cube = mkset({{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
                    {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}});
    s.cube_c = canonical_mask(3, s.cube);
    auto minus = [&](std::initializer_list<std::array<int, 3>> del) {
      return canonical_mask(3, Mask::andnot(s.cube, mkset(del)));
    };
    s.cube_point = minus({{1, 1, 1}});
    s.cube_long = minus({{1, 1, 1}, {-1, -1, -1}});
    s.cube_face = minus({{1, 1, 1}, {1, -1, -1}});
    s.cube_edge = minus({{1, 1, 1}, {1, 1, -1}});
    s.pyramid = canonical_mask(
        3, mkset({{1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}, {0, 0, 1}}));
    s.tetra_centre_raw = mkset(
        {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}, {0, 0, 0}});
    s.tetra_centre = canonical_mask(3, s.tetra_centre_raw);
    auto cls = classify_all_small(3);
    s.nine = cls.at(9).at(0).rep;
    Mask rm = s.nine;
    rm.reset(s.nine.lowest());
    s.antiprism = canonical_mask(3, rm);
    for (auto& c : cls.at(8))
      if (c.complete && !(c.rep == s.cube_c)) s.saddled = c.rep;
    require(!s.saddled.empty(), "shape table: no saddled cube class");
    return s;
  }();
  return sh;
}

/* ---------- flats of an ordered direction pair ---------- */

/* coordinate change sending covector d1 to the top digit and d2 to the next;
 * flats(i,j) then fall out of two standard-layer restrictions */
std::array<std::array<Mask, 3>, 3> pair_flats(int n, const Mask& s, int d1,
                                              int d2) {
  const Space& sp = space(n);
  Mat m;
  m.n = n;
  for (int c = 0; c < n; ++c) {
    m.put(n - 1, c, sp.dirs[d1].cov.d[c]);
    m.put(n - 2, c, sp.dirs[d2].cov.d[c]);
  }
  bool ok = false;
  for (int bits = 0; bits < (1 << n) && !ok; ++bits) {
    if (std::popcount(static_cast<unsigned>(bits)) != n - 2) continue;
    int r = 0;
    for (int c = 0; c < n; ++c)
      if (bits & (1 << c)) {
        for (int k = 0; k < n; ++k) m.put(r, k, k == c ? 1 : 0);
        ++r;
      }
    ok = det(m) != 0;
  }
  require(ok, "pair_flats: no invertible frame");
  Mask img = apply_map(AffineMap(m, 0), s);
  std::array<std::array<Mask, 3>, 3> out;
  for (int i = 0; i < 3; ++i) {
    Mask level = restrict_layer(n, standard_dir(n), i, img);
    for (int j = 0; j < 3; ++j)
      out[i][j] = restrict_layer(n - 1, standard_dir(n - 1), j, level);
  }
  return out;
}

/* every completion of s has this size; caller guarantees few addable points */
int max_completion_size(int n, const Mask& s) {
  Mask add = addable_points(n, s);
  if (add.empty()) return s.count();
  int best = 0;
  add.for_each([&](int p) {
    Mask t = s;
    t.set(p);
    best = std::max(best, max_completion_size(n, t));
  });
  return best;
}

/* ---------- claim plumbing ---------- */

using Result = std::pair<bool, std::string>; /* (pass, detail) */

struct ClaimSpec {
  std::string id;
  std::string statement;
  std::function<Result()> run;
  bool skip = false;
  std::string skip_reason;

  ClaimSpec() = default;
  ClaimSpec(std::string i, std::string st, std::function<Result()> r)
      : id(std::move(i)), statement(std::move(st)), run(std::move(r)) {}
};

VerificationReport run_claims(const std::string& suite,
                              std::vector<ClaimSpec> specs, int threads) {
  VerificationReport rep;
  rep.suite = suite;
  rep.claims.resize(specs.size());
  int nt = resolve_threads(threads);
  nt = std::max(1, std::min<int>(nt, static_cast<int>(specs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      Claim& c = rep.claims[i];
      c.id = suite + "/" + specs[i].id;
      c.statement = specs[i].statement;
      if (specs[i].skip) {
        c.status = ClaimStatus::skip;
        c.detail = specs[i].skip_reason;
        continue;
      }
      try {
        auto [ok, detail] = specs[i].run();
        c.status = ok ? ClaimStatus::pass : ClaimStatus::fail;
        c.detail = detail;
      } catch (const std::exception& e) {
        c.status = ClaimStatus::fail;
        c.detail = std::string("error: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::sort(rep.claims.begin(), rep.claims.end(),
            [](const Claim& a, const Claim& b) { return a.id < b.id; });
  return rep;
}

/* dim-4 catalog entries of size >= 18 */
std::vector<const CatalogEntry*> big_dim4(const Catalog& cat) {
  std::vector<const CatalogEntry*> v;
  for (auto& l : cat.labels_in_dim(4)) {
    auto& e = cat.at(l);
    if (e.size >= 18) v.push_back(&e);
  }
  return v;
}

/* ---------- suite: structure-lemmas ---------- */

VerificationReport suite_structure(const Catalog& cat, int threads) {
  std::vector<ClaimSpec> specs;

  specs.push_back(
      {"01-shape-cube-family",
       "the cube and its point/long-diagonal/face-diagonal/edge removals are "
       "caps with symmetry orders 48/6/48/4/12, and the three two-point "
       "removals are exactly the three classes of 6-caps",
       [&]() -> Result {
         auto& sh = shapes();
         if (!is_cap(3, sh.cube) || !is_complete(3, sh.cube))
           return {false, "cube " + pts_str(sh.cube) + " not a complete cap"};
         struct Row {
           const Mask* m;
           const char* name;
           int size;
           long long sym;
         };
         Row rows[] = {{&sh.cube_c, "cube", 8, 48},
                       {&sh.cube_point, "cube minus point", 7, 6},
                       {&sh.cube_long, "cube minus long diagonal", 6, 48},
                       {&sh.cube_face, "cube minus face diagonal", 6, 4},
                       {&sh.cube_edge, "cube minus edge", 6, 12}};
         for (auto& r : rows) {
           if (r.m->count() != r.size)
             return {false, std::string(r.name) + ": wrong size"};
           long long sym = symmetry_group(3, *r.m).order;
           if (sym != r.sym)
             return {false, std::string(r.name) + ": symmetry order " +
                                std::to_string(sym) + ", expected " +
                                std::to_string(r.sym)};
         }
         /* octahedron coincides with cube minus long diagonal */
         Mask octa = mkset({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                            {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
         if (!(canonical_mask(3, octa) == sh.cube_long))
           return {false, "octahedron not equivalent to cube minus long "
                          "diagonal"};
         /* centre: unique point that is a midpoint of three cap segments */
         Mask raw_long = Mask::andnot(sh.cube, mkset({{1, 1, 1}, {-1, -1, -1}}));
         int centres = 0;
         for (int p = 0; p < 27; ++p)
           if (!raw_long.test(p) && midpoint_multiplicity(3, raw_long, p) == 3)
             ++centres;
         if (centres != 1)
           return {false, "cube minus long diagonal: " +
                              std::to_string(centres) +
                              " multiplicity-3 points, expected 1"};
         std::set<Mask> sixes = {sh.cube_long, sh.cube_face, sh.cube_edge};
         if (sixes.size() != 3)
           return {false, "two 6-point removals are equivalent"};
         std::set<Mask> catsix;
         for (auto& [l, e] : cat.entries)
           if (e.dim == 3 && e.size == 6) catsix.insert(e.rep);
         if (catsix != sixes)
           return {false, "6-cap classes do not match the three removals"};
         return {true, "five shapes verified; 6-cap classes covered"};
       }});

  specs.push_back(
      {"02-shape-antiprism",
       "the 9-cap is complete with symmetry order 144, removing any point "
       "gives one class (the antiprism, order 16), and the 8-cap classes are "
       "exactly cube, saddled cube (complete, order 8), and antiprism",
       [&]() -> Result {
         auto& sh = shapes();
         if (!is_complete(3, sh.nine) ||
             symmetry_group(3, sh.nine).order != 144)
           return {false, "9-cap " + pts_str(sh.nine) + " wrong"};
         for (int p : sh.nine.to_points()) {
           Mask m = sh.nine;
           m.reset(p);
           if (!(canonical_mask(3, m) == sh.antiprism))
             return {false, "removal of " + std::to_string(p) +
                                " leaves a different class"};
         }
         if (symmetry_group(3, sh.antiprism).order != 16 ||
             is_complete(3, sh.antiprism))
           return {false, "antiprism " + pts_str(sh.antiprism) + " wrong"};
         if (symmetry_group(3, sh.saddled).order != 8)
           return {false, "saddled cube has symmetry order " +
                              std::to_string(symmetry_group(3, sh.saddled).order)};
         std::set<Mask> eights = {sh.cube_c, sh.saddled, sh.antiprism};
         std::set<Mask> cateight;
         for (auto& [l, e] : cat.entries)
           if (e.dim == 3 && e.size == 8) cateight.insert(e.rep);
         if (cateight != eights)
           return {false, "8-cap classes not {cube, saddled cube, antiprism}"};
         return {true, "antiprism and saddled cube pinned"};
       }});

  specs.push_back(
      {"03-shape-pyramid-tetra",
       "the square pyramid (order 8) and the tetrahedron plus centre (order "
       "24, three {2,2,1} directions meeting in the centre) are the two "
       "classes of 5-caps",
       [&]() -> Result {
         auto& sh = shapes();
         if (symmetry_group(3, sh.pyramid).order != 8)
           return {false, "square pyramid " + pts_str(sh.pyramid) + " wrong"};
         if (symmetry_group(3, sh.tetra_centre).order != 24)
           return {false, "tetrahedron plus centre wrong"};
         const Mask& raw = sh.tetra_centre_raw;
         const Pt centre = mkpt(0, 0, 0);
         int n221 = 0;
         for (int d = 0; d < static_cast<int>(space(3).dirs.size()); ++d) {
           if (sorted_triple(3, d, raw) != std::array<int, 3>{2, 2, 1})
             continue;
           ++n221;
           for (int v = 0; v < 3; ++v) {
             Mask layer = raw & space(3).dirs[d].layer[v];
             if (layer.count() == 1 && !layer.test(centre))
               return {false, "direction " + std::to_string(d) +
                                  ": 1-point layer is " + pts_str(layer) +
                                  ", not the centre"};
           }
         }
         if (n221 != 3)
           return {false, std::to_string(n221) + " {2,2,1} directions"};
         std::set<Mask> fives = {sh.pyramid, sh.tetra_centre};
         std::set<Mask> catfive;
         for (auto& [l, e] : cat.entries)
           if (e.dim == 3 && e.size == 5) catfive.insert(e.rep);
         if (catfive != fives)
           return {false, "5-cap classes not {pyramid, tetrahedron+centre}"};
         return {true, "both 5-point shapes pinned; centre verified"};
       }});

  auto layer_claim = [&cat](std::vector<std::array<int, 3>> triples,
                            std::map<int, Mask> expect) {
    return [triples, expect, &cat]() -> Result {
      int checked = 0;
      for (auto* e : big_dim4(cat)) {
        for (int d = 0; d < static_cast<int>(space(4).dirs.size()); ++d) {
          auto t = sorted_triple(4, d, e->rep);
          if (std::find(triples.begin(), triples.end(), t) == triples.end())
            continue;
          for (int v = 0; v < 3; ++v) {
            Mask low = restrict_layer(4, d, v, e->rep);
            auto it = expect.find(low.count());
            if (it == expect.end()) continue;
            if (!(canonical_mask(3, low) == it->second))
              return {false, e->label + " direction " + std::to_string(d) +
                                 " value " + std::to_string(v) + " layer " +
                                 pts_str(low) + ": unexpected shape"};
            ++checked;
          }
        }
      }
      return {true, std::to_string(checked) + " layers matched"};
    };
  };

  auto& sh = shapes();
  specs.push_back({"04-layers-antiprism-family",
                   "in every catalogued cap of size 18..20, each layer of a "
                   "{9,9,2}, {9,9,1}, or {9,8,2} direction of size 9 is the "
                   "antiprism plus centre and of size 8 the antiprism",
                   layer_claim({{9, 9, 2}, {9, 9, 1}, {9, 8, 2}},
                               {{9, sh.nine}, {8, sh.antiprism}})});
  specs.push_back({"05-layers-cube-family",
                   "in every catalogued cap of size 18..20, the layers of "
                   "{8,6,6}, {8,6,5}, and {7,6,6} directions are cube (8), "
                   "cube minus point (7), cube minus long diagonal (6), and "
                   "square pyramid (5)",
                   layer_claim({{8, 6, 6}, {8, 6, 5}, {7, 6, 6}},
                               {{8, sh.cube_c},
                                {7, sh.cube_point},
                                {6, sh.cube_long},
                                {5, sh.pyramid}})});

  specs.push_back(
      {"06-layers-963",
       "in every catalogued cap of size 18..20 with a {9,6,3} direction, the "
       "9-layer is the antiprism plus centre and the 6-layer is a cube minus "
       "face diagonal for 963A and a cube minus edge otherwise",
       [&cat]() -> Result {
         auto& shp = shapes();
         int checked = 0;
         for (auto* e : big_dim4(cat)) {
           Mask want6 =
               e->label == "963A" ? shp.cube_face : shp.cube_edge;
           for (int d = 0; d < static_cast<int>(space(4).dirs.size()); ++d) {
             if (sorted_triple(4, d, e->rep) != std::array<int, 3>{9, 6, 3})
               continue;
             for (int v = 0; v < 3; ++v) {
               Mask low = restrict_layer(4, d, v, e->rep);
               if (low.count() == 9 &&
                   !(canonical_mask(3, low) == shp.nine))
                 return {false, e->label + " direction " + std::to_string(d) +
                                    ": 9-layer " + pts_str(low) +
                                    " is not the antiprism plus centre"};
               if (low.count() == 6 && !(canonical_mask(3, low) == want6))
                 return {false, e->label + " direction " + std::to_string(d) +
                                    ": 6-layer " + pts_str(low) +
                                    " has the wrong shape"};
               if (low.count() == 9 || low.count() == 6) ++checked;
             }
           }
         }
         return {true, std::to_string(checked) + " layers matched"};
       }});

  specs.push_back(
      {"07-large-cap-directions",
       "the 20-cap and the 19-cap have at least one {9,9,2} or {9,9,1} "
       "direction",
       [&cat]() -> Result {
         for (auto& label : {"20cap", "19cap"}) {
           auto& e = cat.at(label);
           auto spec4 = spectrum(4, e.rep);
           if (!spec4.count({9, 9, 2}) && !spec4.count({9, 9, 1}))
             return {false, e.label + ": spectrum " + e.spectrum};
         }
         return {true, "both present"};
       }});

  specs.push_back(
      {"08-18cap-saddled-882",
       "every size-18 class without {9,9,0} and {9,8,1} directions has an "
       "{8,8,2} direction in which some 8-layer is a saddled cube",
       [&cat]() -> Result {
         auto& shp = shapes();
         std::string applied;
         for (auto* e : big_dim4(cat)) {
           if (e->size != 18) continue;
           auto spec4 = spectrum(4, e->rep);
           if (spec4.count({9, 9, 0}) || spec4.count({9, 8, 1})) continue;
           bool found = false;
           for (int d = 0;
                d < static_cast<int>(space(4).dirs.size()) && !found; ++d) {
             if (sorted_triple(4, d, e->rep) != std::array<int, 3>{8, 8, 2})
               continue;
             for (int v = 0; v < 3 && !found; ++v) {
               Mask low = restrict_layer(4, d, v, e->rep);
               if (low.count() == 8 &&
                   canonical_mask(3, low) == shp.saddled)
                 found = true;
             }
           }
           if (!found)
             return {false,
                     e->label + ": no {8,8,2} direction with a saddled cube"};
           applied += (applied.empty() ? "" : ",") + e->label;
         }
         return {true, "holds for " + (applied.empty() ? "(none)" : applied)};
       }});

  return run_claims("structure-lemmas", std::move(specs), threads);
}

/* ---------- suite: point-count-caps ---------- */

Grid pattern(std::initializer_list<std::initializer_list<int>> rows) {
  Grid g{};
  int r = 0;
  for (auto& row : rows) {
    int c = 0;
    for (int v : row) g[r][c++] = v;
    ++r;
  }
  return g;
}

VerificationReport suite_point_counts(const Catalog& cat, int threads) {
  std::vector<ClaimSpec> specs;

  auto bound_claim = [&cat](std::vector<std::pair<int, int>> pairs, int cmax) {
    return [pairs, cmax, &cat]() -> Result {
      long long checked = 0;
      for (auto* e : big_dim4(cat)) {
        for (int d = 0; d < static_cast<int>(space(4).dirs.size()); ++d) {
          auto t = dir_counts(4, d, e->rep);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              if (i == j) continue;
              int k = 3 - i - j;
              for (auto& [a, b] : pairs)
                if (t[i] == a && t[j] == b) {
                  ++checked;
                  if (t[k] > cmax)
                    return {false,
                            e->label + " direction " + std::to_string(d) +
                                ": counts " + triple_str({t[0], t[1], t[2]})};
                }
            }
        }
      }
      return {true, std::to_string(checked) + " pairs within the bound"};
    };
  };
  specs.push_back({"01-pair-bound-2",
                   "layer pairs (9,9), (9,8), (9,7), (8,8) force a third "
                   "layer of at most 2 in every catalogued dim-4 cap",
                   bound_claim({{9, 9}, {9, 8}, {9, 7}, {8, 8}}, 2)});
  specs.push_back({"02-pair-bound-3",
                   "layer pairs (9,6) and (8,7) force a third layer of at "
                   "most 3",
                   bound_claim({{9, 6}, {8, 7}}, 3)});
  specs.push_back({"03-pair-bound-4",
                   "layer pairs (9,5) and (7,7) force a third layer of at "
                   "most 4",
                   bound_claim({{9, 5}, {7, 7}}, 4)});
  specs.push_back({"04-pair-bound-5",
                   "layer pair (9,4) forces a third layer of at most 5",
                   bound_claim({{9, 4}}, 5)});

  specs.push_back(
      {"05-20cap-direction-census",
       "every direction of the 20-cap has counts {9,9,2} or {8,6,6}",
       [&cat]() -> Result {
         for (auto& [t, k] : spectrum(4, cat.at("20cap").rep))
           if (t != std::array<int, 3>{9, 9, 2} &&
               t != std::array<int, 3>{8, 6, 6})
             return {false, "triple " + triple_str(t)};
         return {true, cat.at("20cap").spectrum};
       }});
  specs.push_back(
      {"06-19cap-direction-census",
       "every direction of the 19-cap has counts {9,9,1}, {9,8,2}, {8,6,5}, "
       "or {7,6,6}",
       [&cat]() -> Result {
         for (auto& [t, k] : spectrum(4, cat.at("19cap").rep))
           if (t != std::array<int, 3>{9, 9, 1} &&
               t != std::array<int, 3>{9, 8, 2} &&
               t != std::array<int, 3>{8, 6, 5} &&
               t != std::array<int, 3>{7, 6, 6})
             return {false, "triple " + triple_str(t)};
         return {true, cat.at("19cap").spectrum};
       }});

  struct Clash {
    const char* id;
    const char* what;
    Grid g;
  };
  const Clash clashes[] = {
      {"07-clash-982-866", "a {9,8,2} column with two 6-layers",
       pattern({{9, 8, 2}, {-1, 6, -1}, {-1, 6, -1}})},
      {"08-clash-982-865", "a {9,8,2} column with a 6- and a 5-layer",
       pattern({{9, 8, 2}, {-1, 6, -1}, {-1, 5, -1}})},
      {"09-clash-963-866", "a {9,6,3} row crossing 8- and 6-columns",
       pattern({{-1, 8, -1}, {9, 6, 3}, {-1, 6, -1}})},
      {"10-clash-963-865", "a {9,6,3} row crossing an 8- and a 5-column",
       pattern({{-1, 8, -1}, {9, 6, 3}, {-1, 5, -1}})},
      {"11-clash-963-766", "a {9,6,3} row crossing a 7- and a 6-column",
       pattern({{-1, 7, -1}, {9, 6, 3}, {-1, 6, -1}})},
      {"12-clash-865-865-cubes", "two (8,*,5) rows around a (1,6,*) row",
       pattern({{8, -1, 5}, {1, 6, -1}, {8, -1, 5}})},
      {"13-clash-865-865-alt", "two (8,*,6) rows around a (1,5,*) row",
       pattern({{8, -1, 6}, {1, 5, -1}, {8, -1, 6}})},
      {"14-clash-919-triangle", "a triangle of three 9-9 edges",
       pattern({{9, 1, 9}, {1, 1, -1}, {9, -1, -1}})},
      {"15-clash-919-928", "two 9-9 edges closed by an 8-layer",
       pattern({{9, 1, 9}, {2, 2, -1}, {8, -1, -1}})}};

  for (auto& cl : clashes) {
    specs.push_back(
        {cl.id,
         std::string("no pair of directions of any catalogued dim-5 cap "
                     "matches the forbidden pattern: ") +
             cl.what,
         [&cat, g = cl.g]() -> Result {
           int nd = static_cast<int>(space(5).dirs.size());
           for (auto& label : cat.labels_in_dim(5)) {
             auto& e = cat.at(label);
             for (int d1 = 0; d1 < nd; ++d1)
               for (int d2 = d1 + 1; d2 < nd; ++d2) {
                 Grid got = point_count_grid(5, e.rep, d1, d2);
                 if (grid_matches(got, g))
                   return {false, label + " directions " +
                                      std::to_string(d1) + "," +
                                      std::to_string(d2) + " counts " +
                                      std::to_string(got[0][0]) + "..."};
               }
           }
           return {true, "no match over all direction pairs"};
         }});
  }

  specs.push_back(
      {"16-table-ceilings",
       "the pinned pair-scan table cells match, and each stacking ceiling "
       "equals |A|+|B|+cell",
       [&cat, threads]() -> Result {
         struct Cell {
           const char* a;
           const char* b;
           int want;
         };
         const Cell cells[] = {
             {"20cap", "20cap", 1},   {"19cap", "19cap", 2},
             {"19cap", "20cap", 1},   {"882A1", "882A1", 9},
             {"882A2", "882A2", 9},   {"963B", "963B", 6},
             {"990A1", "990A1", 5},   {"981A", "981A", 5},
             {"972A", "972A", 5},     {"990A2", "882A2", 5},
             {"981I", "882A2", 5},    {"882A1", "954A", 5}};
         std::vector<std::pair<std::string, std::string>> sel;
         for (auto& c : cells) sel.push_back({c.a, c.b});
         auto got = table1_cells(cat, sel, threads);
         std::string detail;
         for (std::size_t i = 0; i < sel.size(); ++i) {
           if (got[i].value != cells[i].want)
             return {false, std::string(cells[i].a) + "," + cells[i].b +
                                " = " + std::to_string(got[i].value) +
                                ", expected " + std::to_string(cells[i].want)};
           int ceiling = cat.at(cells[i].a).size + cat.at(cells[i].b).size +
                         got[i].value;
           detail += std::string(i ? " " : "") + cells[i].a + "+" +
                     cells[i].b + "=" + std::to_string(got[i].value) + "(<=" +
                     std::to_string(ceiling) + ")";
         }
         return {true, detail};
       }});

  return run_claims("point-count-caps", std::move(specs), threads);
}

/* ---------- suite: reflection ---------- */

VerificationReport suite_reflection(const Catalog& cat, int threads) {
  std::vector<ClaimSpec> specs;
  const Mask nineteen = cat.at("19cap").rep;

  specs.push_back(
      {"01-991-reflection-pairs",
       "in every {9,9,1} direction of the 19-cap, the two 9-layers are point "
       "reflections of each other",
       [nineteen]() -> Result {
         int found = 0;
         for (int d = 0; d < static_cast<int>(space(4).dirs.size()); ++d) {
           if (sorted_triple(4, d, nineteen) != std::array<int, 3>{9, 9, 1})
             continue;
           ++found;
           std::vector<Mask> nines;
           for (int v = 0; v < 3; ++v) {
             Mask layer = nineteen & space(4).dirs[d].layer[v];
             if (layer.count() == 9) nines.push_back(layer);
           }
           if (nines.size() != 2)
             return {false,
                     "direction " + std::to_string(d) + ": not two 9-layers"};
           if (reflection_centers(4, nines[0], nines[1]).empty())
             return {false, "direction " + std::to_string(d) +
                                ": no reflection centre between " +
                                pts_str(nines[0]) + " and " +
                                pts_str(nines[1])};
         }
         if (found == 0) return {false, "no {9,9,1} direction found"};
         return {true, std::to_string(found) + " directions verified"};
       }});

  specs.push_back(
      {"02-982-unique-completion",
       "in every {9,8,2} direction of the 19-cap, the 8-layer has exactly "
       "one completion point inside its own flat, and the completed 9-cap is "
       "a point reflection of the 9-layer",
       [nineteen]() -> Result {
         int found = 0;
         for (int d = 0; d < static_cast<int>(space(4).dirs.size()); ++d) {
           if (sorted_triple(4, d, nineteen) != std::array<int, 3>{9, 8, 2})
             continue;
           ++found;
           int v8 = -1, v9 = -1;
           for (int v = 0; v < 3; ++v) {
             int c = (nineteen & space(4).dirs[d].layer[v]).count();
             if (c == 8) v8 = v;
             if (c == 9) v9 = v;
           }
           Mask eight3 = restrict_layer(4, d, v8, nineteen);
           Mask add = addable_points(3, eight3);
           if (add.count() != 1)
             return {false, "direction " + std::to_string(d) + ": 8-layer " +
                                pts_str(eight3) + " has " +
                                std::to_string(add.count()) +
                                " completion points"};
           Mask nine3 = eight3 | add;
           Mask nine_full = embed_layer(4, d, v8, nine3);
           Mask other = nineteen & space(4).dirs[d].layer[v9];
           if (reflection_centers(4, nine_full, other).empty())
             return {false, "direction " + std::to_string(d) +
                                ": completion not a reflection of the "
                                "9-layer"};
         }
         if (found == 0) return {false, "no {9,8,2} direction found"};
         return {true, std::to_string(found) + " directions verified"};
       }});

  specs.push_back(
      {"03-9cap-333-translates",
       "in every {3,3,3} direction of the dim-3 9-cap, the three 3-layers "
       "are translates of one another",
       [&cat]() -> Result {
         const Mask nine = cat.at("d3s09c01").rep;
         int found = 0;
         for (int d = 0; d < static_cast<int>(space(3).dirs.size()); ++d) {
           if (sorted_triple(3, d, nine) != std::array<int, 3>{3, 3, 3})
             continue;
           ++found;
           Mask l[3];
           for (int v = 0; v < 3; ++v) l[v] = restrict_layer(3, d, v, nine);
           auto translate = [](const Mask& a, const Mask& b) {
             for (int t = 0; t < 9; ++t) {
               Mask moved;
               a.for_each([&](int p) { moved.set(space(2).add(p, t)); });
               if (moved == b) return true;
             }
             return false;
           };
           if (!translate(l[0], l[1]) || !translate(l[1], l[2]))
             return {false, "direction " + std::to_string(d) +
                                ": layers are not translates"};
         }
         if (found == 0) return {false, "no {3,3,3} direction found"};
         return {true, std::to_string(found) + " directions verified"};
       }});

  specs.push_back(
      {"04-3cap-no-self-reflection",
       "no 3-point dim-2 cap is a point reflection of itself",
       [&cat]() -> Result {
         for (auto& [l, e] : cat.entries) {
           if (e.dim != 2 || e.size != 3) continue;
           auto centres = reflection_centers(2, e.rep, e.rep);
           if (!centres.empty())
             return {false, "3-cap " + pts_str(e.rep) +
                                " reflects onto itself through " +
                                std::to_string(centres[0])};
           return {true, "class " + l + " checked"};
         }
         return {false, "no dim-2 3-cap class in the catalog"};
       }});

  return run_claims("reflection", std::move(specs), threads);
}

/* ---------- suite: 45-cap ---------- */

VerificationReport suite_45cap(const Catalog& cat, int threads) {
  std::vector<ClaimSpec> specs;
  const Mask cap45 = cat.at("45").rep;

  specs.push_back({"01-symmetry-order",
                   "the 45-cap has symmetry order 720",
                   [cap45]() -> Result {
                     long long o = symmetry_group(5, cap45).order;
                     return {o == 720, "order " + std::to_string(o)};
                   }});
  specs.push_back({"02-point-transitive",
                   "the symmetry group acts transitively on the 45 points",
                   [cap45]() -> Result {
                     auto g = symmetry_group(5, cap45);
                     if (!g.transitive_on_points())
                       return {false,
                               std::to_string(g.orbits.size()) + " orbits"};
                     return {true, "one orbit of 45"};
                   }});
  specs.push_back(
      {"03-midpoint-multiplicity",
       "every non-cap point is the midpoint of exactly five cap segments, "
       "and 198*5 equals the number of cap point pairs",
       [cap45]() -> Result {
         int noncap = 0;
         for (int p = 0; p < 243; ++p) {
           if (cap45.test(p)) continue;
           ++noncap;
           int m = midpoint_multiplicity(5, cap45, p);
           if (m != 5)
             return {false, "point " + std::to_string(p) + " multiplicity " +
                                std::to_string(m)};
         }
         if (noncap * 5 != 45 * 44 / 2)
           return {false, "pair balance violated"};
         return {true, "198 points, multiplicity 5, 990 = C(45,2)"};
       }});
  specs.push_back(
      {"04-spectrum",
       "the direction counts are {18,18,9} for 55 directions and "
       "{15,15,15} for the other 66",
       [cap45]() -> Result {
         auto spec5 = spectrum(5, cap45);
         std::map<std::array<int, 3>, int, std::greater<std::array<int, 3>>>
             want = {{{18, 18, 9}, 55}, {{15, 15, 15}, 66}};
         if (spec5 != want) return {false, spectrum_digest(5, cap45)};
         return {true, spectrum_digest(5, cap45)};
       }});
  specs.push_back({"05-complete",
                   "the 45-cap is complete",
                   [cap45]() -> Result {
                     Mask add = addable_points(5, cap45);
                     return {add.empty(), add.empty() ? "no addable points"
                                                      : pts_str(add)};
                   }});

  specs.push_back(
      {"06-pyramid-tetra-direction",
       "some pair of directions splits the 45-cap into eight square "
       "pyramids and one tetrahedron plus centre",
       [cap45]() -> Result {
         auto& sh = shapes();
         int nd = static_cast<int>(space(5).dirs.size());
         int hits = 0;
         std::string first;
         for (int d1 = 0; d1 < nd; ++d1)
           for (int d2 = d1 + 1; d2 < nd; ++d2) {
             Grid g = point_count_grid(5, cap45, d1, d2);
             bool all5 = true;
             for (auto& row : g)
               for (int v : row) all5 = all5 && v == 5;
             if (!all5) continue;
             auto flats = pair_flats(5, cap45, d1, d2);
             int pyr = 0, tet = 0;
             for (auto& row : flats)
               for (auto& f : row) {
                 Mask c = canonical_mask(3, f);
                 if (c == sh.pyramid) ++pyr;
                 if (c == sh.tetra_centre) ++tet;
               }
             if (pyr == 8 && tet == 1) {
               ++hits;
               if (first.empty())
                 first = std::to_string(d1) + "," + std::to_string(d2);
             }
           }
         if (hits == 0) return {false, "no such pair of directions"};
         return {true, std::to_string(hits) + " pairs, first " + first};
       }});

  specs.push_back(
      {"07-layer-pairs-882",
       "in every {18,18,9} direction the two 18-layers are isomorphic and "
       "are 882A1 or 882A2 caps, and both kinds occur",
       [cap45, &cat]() -> Result {
         const Mask a1 = cat.at("882A1").rep, a2 = cat.at("882A2").rep;
         int n1 = 0, n2 = 0;
         for (int d = 0; d < static_cast<int>(space(5).dirs.size()); ++d) {
           if (sorted_triple(5, d, cap45) != std::array<int, 3>{18, 18, 9})
             continue;
           std::vector<Mask> eighteens;
           for (int v = 0; v < 3; ++v) {
             Mask low = restrict_layer(5, d, v, cap45);
             if (low.count() == 18) eighteens.push_back(low);
           }
           Mask ca = canonical_mask(4, eighteens[0]);
           Mask cb = canonical_mask(4, eighteens[1]);
           if (!(ca == cb))
             return {false, "direction " + std::to_string(d) +
                                ": 18-layers in different classes"};
           if (ca == a1)
             ++n1;
           else if (ca == a2)
             ++n2;
           else
             return {false, "direction " + std::to_string(d) +
                                ": 18-layers are neither 882A1 nor 882A2"};
         }
         if (n1 == 0 || n2 == 0)
           return {false, "882A1:" + std::to_string(n1) +
                              " 882A2:" + std::to_string(n2)};
         return {true, "882A1 pairs: " + std::to_string(n1) +
                           ", 882A2 pairs: " + std::to_string(n2)};
       }});

  specs.push_back(
      {"08-882A1-parallel-dirs",
       "for every {18,18,9} direction with 882A1 layers, the nine {8,8,2} "
       "directions of one layer are exactly the nine {8,5,5} directions of "
       "the other",
       [cap45, &cat]() -> Result {
         const Mask a1 = cat.at("882A1").rep;
         int verified = 0;
         for (int d = 0; d < static_cast<int>(space(5).dirs.size()); ++d) {
           if (sorted_triple(5, d, cap45) != std::array<int, 3>{18, 18, 9})
             continue;
           std::vector<Mask> eighteens;
           for (int v = 0; v < 3; ++v) {
             Mask low = restrict_layer(5, d, v, cap45);
             if (low.count() == 18) eighteens.push_back(low);
           }
           if (!(canonical_mask(4, eighteens[0]) == a1)) continue;
           for (int side = 0; side < 2; ++side) {
             const Mask &A = eighteens[side], &B = eighteens[1 - side];
             std::set<int> d882, d855;
             for (int e = 0; e < static_cast<int>(space(4).dirs.size());
                  ++e) {
               if (sorted_triple(4, e, A) == std::array<int, 3>{8, 8, 2})
                 d882.insert(e);
               if (sorted_triple(4, e, B) == std::array<int, 3>{8, 5, 5})
                 d855.insert(e);
             }
             if (d882.size() != 9 || d882 != d855)
               return {false, "direction " + std::to_string(d) + ": " +
                                  std::to_string(d882.size()) +
                                  " {8,8,2} directions vs " +
                                  std::to_string(d855.size()) + " {8,5,5}"};
           }
           ++verified;
         }
         if (verified == 0) return {false, "no 882A1-type direction"};
         return {true, std::to_string(verified) + " directions verified"};
       }});

  return run_claims("45-cap", std::move(specs), threads);
}

/* ---------- suite: delta686 ---------- */

VerificationReport suite_delta686(const Catalog& cat, int threads) {
  std::vector<ClaimSpec> specs;
  const Mask delta = cat.at("delta686").rep;

  specs.push_back(
      {"01-forced-construction",
       "prescribing the flat-count matrix 686/88*/6** -- two 20-cap "
       "hyperplanes crossing in a 6-flat plus one 8-cell -- forces a single "
       "class, the delta686 cap",
       [&cat, delta]() -> Result {
         ThreeLayerTask t;
         t.n = 5;
         int target[3][3] = {{8, -1, 8}, {-1, -1, 6}, {8, 6, 6}};
         for (int i = 0; i < 3; ++i)
           for (int j = 0; j < 3; ++j) t.target[i][j] = target[i][j];
         t.left_classes = {cat.at("20cap").rep};
         t.bottom_classes = {cat.at("20cap").rep};
         auto classes = scan_three_layer(t);
         if (classes.size() != 1)
           return {false, std::to_string(classes.size()) +
                              " classes realize the matrix"};
         if (!(classes[0] == delta))
           return {false, "forced cap " + pts_str(classes[0]) +
                              " differs from delta686"};
         return {true, "unique class, equal to delta686"};
       }});

  specs.push_back(
      {"02-midpoint-multiplicity",
       "every non-cap point is the midpoint of at least three cap segments",
       [delta]() -> Result {
         int worst = 1 << 30, at = -1;
         for (int p = 0; p < 243; ++p) {
           if (delta.test(p)) continue;
           int m = midpoint_multiplicity(5, delta, p);
           if (m < worst) {
             worst = m;
             at = p;
           }
         }
         if (worst < 3)
           return {false, "point " + std::to_string(at) + " multiplicity " +
                              std::to_string(worst)};
         return {true, "minimum multiplicity " + std::to_string(worst)};
       }});

  specs.push_back(
      {"03-delete-two-recomplete",
       "after deleting any one or two points, the only addable points are "
       "the deleted ones, so recompleting stays inside delta686",
       [delta]() -> Result {
         auto pts = delta.to_points();
         for (std::size_t i = 0; i < pts.size(); ++i)
           for (std::size_t j = i; j < pts.size(); ++j) {
             Mask cut = delta;
             cut.reset(pts[i]);
             cut.reset(pts[j]);
             Mask add = addable_points(5, cut);
             if (!add.subset_of(delta))
               return {false, "deleting " + std::to_string(pts[i]) + "," +
                                  std::to_string(pts[j]) +
                                  " allows outside points " +
                                  pts_str(Mask::andnot(add, delta))};
           }
         return {true, "all single and double deletions verified"};
       }});

  specs.push_back(
      {"04-42cap-partition",
       "every middle-6 stack over two 963B layers is either a delta686 or "
       "extends to a 45-cap",
       [&cat, delta, threads]() -> Result {
         ScanTask t;
         t.n = 5;
         t.left = cat.at("963B").rep;
         t.right0 = cat.at("963B").rep;
         t.collect_size = 6;
         t.witness_limit = std::size_t{1} << 22;
         t.threads = threads;
         auto r = scan_pair(t);
         if (r.witnesses_truncated) return {false, "witness set truncated"};
         int ndelta = 0, ngrow = 0;
         std::set<Mask> complete_classes;
         for (auto& w : r.witnesses) {
           if (is_complete(5, w)) {
             complete_classes.insert(translate_canonical(5, w));
             ++ndelta;
           } else {
             if (max_completion_size(5, w) != 45)
               return {false,
                       "incomplete 42-stack not inside a 45-cap: " +
                           pts_str(w)};
             ++ngrow;
           }
         }
         for (auto& c : complete_classes)
           if (!(canonical_mask(5, c) == delta))
             return {false, "complete 42-stack not a delta686: " + pts_str(c)};
         return {true, std::to_string(r.witnesses.size()) + " stacks: " +
                           std::to_string(ndelta) + " delta686, " +
                           std::to_string(ngrow) + " inside 45-caps"};
       }});

  return run_claims("delta686", std::move(specs), threads);
}

/* ---------- suite: table2 ---------- */

VerificationReport suite_table2(const Catalog& cat, int threads) {
  std::vector<ClaimSpec> specs;
  struct Col {
    const char* label;
    int c185, c176, c167;
    bool have;
  };
  const Col cols[] = {{"41A", 4, 0, 4, true},  {"41B", 2, 7, 2, true},
                      {"41C", 2, 4, 6, true},  {"41D", 1, 1, 8, true},
                      {"41E", 1, 1, 6, true},  {"41F", 0, 8, 3, false},
                      {"41G", 0, 5, 5, false}, {"41H", 0, 4, 5, false},
                      {"41I", 0, 2, 10, false}};
  int idx = 0;
  for (auto& col : cols) {
    ++idx;
    char nn[8];
    std::snprintf(nn, sizeof nn, "%02d-", idx);
    ClaimSpec spec;
    spec.id = nn + std::string(col.label) + "-column";
    spec.statement = std::string("the ") + col.label +
                     " cap is complete, has no layer above 18, and has "
                     "{18,18,5}/{18,17,6}/{18,16,7} direction counts " +
                     std::to_string(col.c185) + "/" + std::to_string(col.c176) +
                     "/" + std::to_string(col.c167);
    if (!col.have) {
      spec.skip = true;
      spec.skip_reason = "no derived representative (optional searches not run)";
      specs.push_back(std::move(spec));
      continue;
    }
    spec.run = [&cat, col]() -> Result {
      auto& e = cat.at(col.label);
      if (!e.complete) return {false, std::string(col.label) + " incomplete"};
      auto spec5 = spectrum(5, e.rep);
      int top = spec5.begin()->first[0];
      if (top > 18)
        return {false, std::string(col.label) + " has an " +
                           std::to_string(top) + "-point layer"};
      auto count = [&](std::array<int, 3> t) {
        auto it = spec5.find(t);
        return it == spec5.end() ? 0 : it->second;
      };
      int c185 = count({18, 18, 5}), c176 = count({18, 17, 6}),
          c167 = count({18, 16, 7});
      if (c185 != col.c185 || c176 != col.c176 || c167 != col.c167)
        return {false, std::string(col.label) + " counts " +
                           std::to_string(c185) + "/" + std::to_string(c176) +
                           "/" + std::to_string(c167)};
      return {true, "counts match: " + std::to_string(c185) + "/" +
                        std::to_string(c176) + "/" + std::to_string(c167)};
    };
    specs.push_back(std::move(spec));
  }

  specs.push_back({"10-pairwise-distinct",
                   "the five derived 41-caps are pairwise non-isomorphic",
                   [&cat]() -> Result {
                     std::set<Mask> reps;
                     for (auto& l : {"41A", "41B", "41C", "41D", "41E"})
                       reps.insert(cat.at(l).rep);
                     if (reps.size() != 5)
                       return {false, std::to_string(reps.size()) +
                                          " distinct canonical forms"};
                     return {true, "five distinct canonical forms"};
                   }});

  return run_claims("table2", std::move(specs), threads);
}

}  // namespace

bool VerificationReport::passed() const {
  for (auto& c : claims)
    if (c.status == ClaimStatus::fail) return false;
  return true;
}

std::string VerificationReport::summary() const {
  int p = 0, f = 0, s = 0;
  for (auto& c : claims) {
    if (c.status == ClaimStatus::pass) ++p;
    if (c.status == ClaimStatus::fail) ++f;
    if (c.status == ClaimStatus::skip) ++s;
  }
  return "pass=" + std::to_string(p) + " fail=" + std::to_string(f) +
         " skip=" + std::to_string(s);
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> v = {
      "structure-lemmas", "point-count-caps", "reflection",
      "45-cap",           "delta686",         "table2"};
  return v;
}

int suite_tier(const std::string& suite) {
  if (suite == "structure-lemmas" || suite == "reflection") return 1;
  if (suite == "point-count-caps" || suite == "45-cap" ||
      suite == "delta686" || suite == "table2")
    return 2;
  fail("unknown suite: " + suite);
}

VerificationReport run_suite(const std::string& suite, const Catalog& cat,
                             int threads) {
  int need = suite_tier(suite);
  require(cat.tier() >= need, "catalog tier " + std::to_string(need) +
                                  " required for suite " + suite);
  if (suite == "structure-lemmas") return suite_structure(cat, threads);
  if (suite == "point-count-caps") return suite_point_counts(cat, threads);
  if (suite == "reflection") return suite_reflection(cat, threads);
  if (suite == "45-cap") return suite_45cap(cat, threads);
  if (suite == "delta686") return suite_delta686(cat, threads);
  if (suite == "table2") return suite_table2(cat, threads);
  fail("unknown suite: " + suite);
}

static const char* status_str(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    default: return "skip";
  }
}

std::string report_tsv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "suite\tclaim\tstatus\tstatement\tdetail\n";
  for (auto& r : reports)
    for (auto& c : r.claims)
      os << r.suite << '\t' << c.id << '\t' << status_str(c.status) << '\t'
         << c.statement << '\t' << c.detail << '\n';
  return os.str();
}

std::string report_log(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  for (auto& r : reports) {
    os << "suite " << r.suite << ": " << r.summary() << '\n';
    for (auto& c : r.claims) {
      os << "  [" << status_str(c.status) << "] " << c.id << '\n';
      os << "      " << c.statement << '\n';
      if (!c.detail.empty()) os << "      -> " << c.detail << '\n';
    }
  }
  return os.str();
}

}  // namespace capkit
