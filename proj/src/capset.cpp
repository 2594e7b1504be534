#include "capkit/capset.hpp"

#include <algorithm>
#include <sstream>

namespace capkit {

Mask excluded_points(int n, const Mask& s) {
  const Space& sp = space(n);
  Mask ex;
  auto pts = s.to_points();
  for (size_t i = 0; i < pts.size(); ++i) {
    const std::uint8_t* row = sp.third_row(pts[i]);
    for (size_t j = i + 1; j < pts.size(); ++j) ex.set(row[pts[j]]);
  }
  return ex;
}

bool is_cap(int n, const Mask& s) {
  return !excluded_points(n, s).intersects(s);
}

Mask addable_points(int n, const Mask& s) {
  const Space& sp = space(n);
  return Mask::andnot(Mask::andnot(sp.all, s), excluded_points(n, s));
}

int midpoint_multiplicity(int n, const Mask& s, Pt p) {
  const Space& sp = space(n);
  auto pts = s.to_points();
  int count = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const std::uint8_t* row = sp.third_row(pts[i]);
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (row[pts[j]] == p) ++count;
  }
  return count;
}

std::array<int, 3> dir_counts(int n, int d, const Mask& s) {
  const Space& sp = space(n);
  std::array<int, 3> out;
  for (int t = 0; t < 3; ++t) out[t] = (s & sp.dirs[d].layer[t]).count();
  return out;
}

std::array<int, 3> sorted_triple(int n, int d, const Mask& s) {
  std::array<int, 3> c = dir_counts(n, d, s);
  std::sort(c.begin(), c.end(), std::greater<int>());
  return c;
}

std::map<std::array<int, 3>, int, std::greater<std::array<int, 3>>> spectrum(
    int n, const Mask& s) {
  std::map<std::array<int, 3>, int, std::greater<std::array<int, 3>>> out;
  for (size_t d = 0; d < space(n).dirs.size(); ++d)
    ++out[sorted_triple(n, (int)d, s)];
  return out;
}

std::string spectrum_digest(int n, const Mask& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [triple, k] : spectrum(n, s)) {
    if (!first) os << ' ';
    first = false;
    os << triple[0] << '.' << triple[1] << '.' << triple[2] << ':' << k;
  }
  return os.str();
}

Mask apply_perm(const std::vector<std::uint8_t>& tab, const Mask& s) {
  Mask out;
  s.for_each([&](int p) { out.set(tab[p]); });
  return out;
}

Mask apply_map(const AffineMap& f, const Mask& s) {
  Mask out;
  s.for_each([&](int p) { out.set(f.apply(p)); });
  return out;
}

Grid point_count_grid(int n, const Mask& s, int d1, int d2) {
  const Space& sp = space(n);
  /* column order -1,0,+1 reads field values 2,0,1; rows +1,0,-1 read 1,0,2 */
  static constexpr int colval[3] = {2, 0, 1};
  static constexpr int rowval[3] = {1, 0, 2};
  Grid g{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      g[r][c] =
          (s & sp.dirs[d1].layer[colval[c]] & sp.dirs[d2].layer[rowval[r]])
              .count();
  return g;
}

namespace {

bool grid_matches_exact(const Grid& g, const Grid& pat) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (pat[r][c] >= 0 && g[r][c] != pat[r][c]) return false;
  return true;
}

}  // namespace

bool grid_matches(const Grid& g, const Grid& pattern, PatternFlags flags) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  int nr = flags.row_perms ? 6 : 1;
  int nc = flags.col_perms ? 6 : 1;
  for (int tr = 0; tr < (flags.transpose ? 2 : 1); ++tr) {
    Grid base;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) base[r][c] = tr ? g[c][r] : g[r][c];
    for (int pr = 0; pr < nr; ++pr)
      for (int pc = 0; pc < nc; ++pc) {
        Grid h;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c)
            h[r][c] = base[perms[pr][r]][perms[pc][c]];
        if (grid_matches_exact(h, pattern)) return true;
      }
  }
  return false;
}

Pt point_reflect(int n, Pt center, Pt p) {
  /* 2c - p = 2c + 2p over GF(3) */
  Pt c2 = pt_add(n, center, center);
  return pt_add(n, c2, pt_neg(n, p));
}

Mask point_reflect_set(int n, Pt center, const Mask& s) {
  const Space& sp = space(n);
  Pt c2 = sp.add(center, center);
  Mask out;
  s.for_each([&](int p) { out.set(sp.add(c2, sp.neg(p))); });
  return out;
}

std::vector<Pt> reflection_centers(int n, const Mask& a, const Mask& b) {
  std::vector<Pt> out;
  for (Pt c = 0; c < space(n).N; ++c)
    if (point_reflect_set(n, c, a) == b) out.push_back(c);
  return out;
}

int dir_index_of(int n, int covector_code) {
  const Space& sp = space(n);
  for (size_t i = 0; i < sp.dirs.size(); ++i)
    if (sp.dirs[i].cov.index() == covector_code) return (int)i;
  fail("dir_index_of: not a normalized covector code");
}

namespace {

/* leading position of a direction covector: lowest i with nonzero digit */
int lead_pos(const Covector& cv) {
  for (int i = 0; i < cv.n; ++i)
    if (cv.d[i]) return i;
  fail("direction covector is zero");
}

}  // namespace

Mask restrict_layer(int n, int d, int t, const Mask& s) {
  const Space& sp = space(n);
  const Covector& cv = sp.dirs[d].cov;
  int k = lead_pos(cv);
  Mask low;
  (s & sp.dirs[d].layer[t]).for_each([&](int p) {
    int digits[6], q[6];
    pt_coords(n, p, digits);
    int j = 0;
    for (int i = 0; i < n; ++i)
      if (i != k) q[j++] = digits[i];
    low.set(pt_of_coords(n - 1, q));
  });
  return low;
}

Mask embed_layer(int n, int d, int t, const Mask& low) {
  const Space& sp = space(n);
  const Covector& cv = sp.dirs[d].cov;
  int k = lead_pos(cv);
  Mask out;
  low.for_each([&](int q) {
    int ql[6], digits[6];
    pt_coords(n - 1, q, ql);
    int j = 0, acc = 0;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      digits[i] = ql[j++];
      acc += cv.d[i] * digits[i];
    }
    /* solve digit k so the covector evaluates to t (lead coefficient is 1) */
    digits[k] = ((t - acc) % 3 + 3) % 3;
    out.set(pt_of_coords(n, digits));
  });
  return out;
}

}  // namespace capkit
