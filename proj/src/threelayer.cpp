#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "capkit/error.hpp"
#include "capkit/scan.hpp"

/* Three-layer fill and the scan-derived dim-5 representatives.  Flats are
 * indexed by the top two coordinates: F(i,j) = {p : digit_{n-1}(p) = i,
 * digit_{n-2}(p) = j}.  The third point of two points in one flat stays in
 * that flat, so a flat filling is compatible with the current cap exactly
 * when it is a cap inside the allowed mask. */
namespace capkit {

namespace {

/* psi(p) = alpha * cov(p) + beta; nonconstant affine functional on space(n) */
struct Functional {
  int dir = 0;
  int alpha = 1;
  int beta = 0;
};

int functional_code(const Functional& f) {
  return f.dir * 6 + (f.alpha - 1) * 3 + f.beta;
}

int fval(const Space& sp, const Functional& f, Pt p) {
  return (f.alpha * sp.dirs[f.dir].cov.eval(p) + f.beta) % 3;
}

/* f composed with the inverse of s, renormalized to (dir, alpha, beta) */
Functional act(int n, const Space& sp, const Functional& f, const AffineMap& sinv) {
  int v0 = fval(sp, f, sinv.apply(0));
  int digs[6] = {};
  int first = -1;
  for (int i = 0; i < n; ++i) {
    digs[i] = (fval(sp, f, sinv.apply(pow3(i))) - v0 + 3) % 3;
    if (first < 0 && digs[i]) first = i;
  }
  require(first >= 0, "functional action became constant");
  Functional out;
  out.alpha = digs[first];
  int code = 0;
  for (int i = 0; i < n; ++i) code += ((out.alpha * digs[i]) % 3) * pow3(i);
  out.dir = dir_index_of(n, code);
  out.beta = v0;
  return out;
}

/* all functionals giving the prescribed per-value counts on the cap */
std::vector<Functional> valid_functionals(int n, const Mask& cap,
                                          const std::array<int, 3>& want) {
  const Space& sp = space(n);
  std::vector<Functional> out;
  for (int d = 0; d < static_cast<int>(sp.dirs.size()); ++d)
    for (int alpha = 1; alpha <= 2; ++alpha)
      for (int beta = 0; beta < 3; ++beta) {
        Functional f{d, alpha, beta};
        int c[3] = {};
        cap.for_each([&](int p) { ++c[fval(sp, f, p)]; });
        if (c[0] == want[0] && c[1] == want[1] && c[2] == want[2])
          out.push_back(f);
      }
  return out;
}

/* one functional per orbit under the cap's symmetry group */
std::vector<Functional> reduce_functionals(int n, const Mask& cap,
                                           std::vector<Functional> valid) {
  if (valid.size() <= 1) return valid;
  SymmetryGroup g = symmetry_group(n, cap);
  if (!g.generators_complete) return valid; /* reduction is only a shortcut */
  std::vector<AffineMap> invs;
  for (const AffineMap& s : g.generators) invs.push_back(s.inverse());
  const Space& sp = space(n);
  std::set<int> pending;
  for (const Functional& f : valid) pending.insert(functional_code(f));
  std::vector<Functional> reps;
  while (!pending.empty()) {
    int code = *pending.begin();
    Functional rep{code / 6, (code % 6) / 3 + 1, code % 3};
    reps.push_back(rep);
    std::vector<Functional> queue{rep};
    pending.erase(code);
    while (!queue.empty()) {
      Functional cur = queue.back();
      queue.pop_back();
      for (const AffineMap& sinv : invs) {
        Functional nxt = act(n, sp, cur, sinv);
        auto it = pending.find(functional_code(nxt));
        if (it != pending.end()) {
          pending.erase(it);
          queue.push_back(nxt);
        }
      }
    }
  }
  return reps;
}

/* affine map whose digit_{n-1} output equals the functional: the functional's
 * linear digits become the last matrix row, completed by standard basis rows */
AffineMap placement_map(int n, const Functional& f) {
  const Space& sp = space(n);
  int lam[6] = {};
  for (int i = 0; i < n; ++i)
    lam[i] = (f.alpha * pt_digit(sp.dirs[f.dir].cov.index(), i)) % 3;
  int pivot = -1;
  for (int i = 0; i < n && pivot < 0; ++i)
    if (lam[i]) pivot = i;
  require(pivot >= 0, "placement_map: constant functional");
  Mat m;
  m.n = n;
  int slot = 0;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    m.put(slot++, i, 1); /* e_i rows, skipping the pivot coordinate */
  }
  for (int i = 0; i < n; ++i) m.put(n - 1, i, lam[i]);
  return AffineMap(m, f.beta * pow3(n - 1));
}

/* lift a permutation of space(n-1) to space(n), acting per top layer */
std::vector<std::uint8_t> lift_perm(int lowN, const std::vector<std::uint8_t>& base) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(lowN) * 3);
  for (int t = 0; t < 3; ++t)
    for (int z = 0; z < lowN; ++z)
      out[t * lowN + z] = static_cast<std::uint8_t>(base[z] + t * lowN);
  return out;
}

/* every affine map fixing the set, by brute force; corners live in
 * dimension n-2 <= 3 where the whole group is small */
std::vector<std::vector<std::uint8_t>> full_stabilizer(int n, const Mask& s) {
  const Space& sp = space(n);
  std::vector<std::vector<std::uint8_t>> out;
  for_each_invertible(n, [&](const std::array<Pt, 6>& cols) {
    Mat m = Mat::from_cols(n, cols.data());
    Mask lin;
    s.for_each([&](int p) { lin.set(mat_apply(m, p)); });
    for (int t = 0; t < sp.N; ++t) {
      Mask img;
      lin.for_each([&](int p) { img.set(sp.add(p, t)); });
      if (img == s) out.push_back(AffineMap(m, t).perm_table());
    }
  });
  require(out.size() <= 20000,
          "three-layer alignment: corner stabilizer too large");
  return out;
}

/* all cap subsets (every size) of the allowed mask */
void all_subcaps(const Space& sp, Mask cands, int* cur, int ncur,
                 std::vector<Mask>& out) {
  Mask m;
  for (int i = 0; i < ncur; ++i) m.set(cur[i]);
  out.push_back(m);
  while (true) {
    int p = cands.lowest();
    if (p < 0) return;
    cands.reset(p);
    Mask inc = cands;
    const std::uint8_t* row = sp.third_row(p);
    for (int i = 0; i < ncur; ++i) inc.reset(row[cur[i]]);
    cur[ncur] = p;
    all_subcaps(sp, inc, cur, ncur + 1, out);
  }
}

struct FillCtx {
  int n = 0;
  const Space* hi = nullptr;
  std::vector<std::pair<int, int>> flats; /* processing order */
  const int (*target)[3] = nullptr;
  std::array<std::array<Mask, 3>, 3> flat_mask;
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  std::vector<Mask>* out = nullptr;
};

void fill_rec(FillCtx& cx, std::size_t idx, const Mask& cap) {
  if (++cx.nodes > cx.budget) fail("three-layer fill budget exceeded");
  if (idx == cx.flats.size()) {
    cx.out->push_back(cap);
    return;
  }
  auto [i, j] = cx.flats[idx];
  Mask allowed = cx.flat_mask[i][j] & addable_points(cx.n, cap);
  int need = cx.target[i][j];
  std::vector<Mask> options;
  if (need >= 0) {
    options = caps_of_size_in(cx.n, allowed, need);
  } else {
    int cur[32];
    all_subcaps(*cx.hi, allowed, cur, 0, options);
  }
  for (const Mask& m : options) fill_rec(cx, idx + 1, cap | m);
}

/* raw results -> canonical class representatives */
std::vector<Mask> canonical_classes(int n, std::vector<Mask> raw) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  std::set<Mask> tc;
  for (const Mask& m : raw) tc.insert(translate_canonical(n, m));
  std::set<Mask> forms;
  for (const Mask& m : tc) forms.insert(canonical_mask(n, m));
  return std::vector<Mask>(forms.begin(), forms.end());
}

}  // namespace

std::vector<Mask> scan_three_layer(const ThreeLayerTask& task) {
  int n = task.n;
  require(n >= 3 && n <= kMaxDim, "scan_three_layer: dimension out of range");
  int nl = n - 1, nc = n - 2;
  const Space& hi = space(n);
  int d1 = dir_index_of(n, pow3(n - 1));
  int d2 = dir_index_of(n, pow3(n - 2));
  int dl = standard_dir(nl); /* digit n-2 inside either 4-flat */

  std::array<int, 3> want_left{}, want_bottom{};
  for (int j = 0; j < 3; ++j) {
    require(task.target[2][j] >= 0,
            "scan_three_layer: the left column must be fully prescribed");
    require(task.target[2][j] <= pow3(nc), "scan_three_layer: cell out of range");
    want_left[j] = task.target[2][j];
  }
  int left_size = want_left[0] + want_left[1] + want_left[2];
  require(!task.left_classes.empty(), "scan_three_layer: no left classes");
  for (const Mask& c : task.left_classes) {
    require(is_cap(nl, c), "scan_three_layer: left class is not a cap");
    require(c.count() == left_size,
            "scan_three_layer: left class size does not match the column");
  }
  bool with_bottom = !task.bottom_classes.empty();
  if (with_bottom) {
    for (int i = 0; i < 3; ++i) {
      require(task.target[i][2] >= 0,
              "scan_three_layer: the bottom row must be fully prescribed when "
              "bottom classes are given");
      want_bottom[i] = task.target[i][2];
    }
    int bottom_size = want_bottom[0] + want_bottom[1] + want_bottom[2];
    for (const Mask& c : task.bottom_classes) {
      require(is_cap(nl, c), "scan_three_layer: bottom class is not a cap");
      require(c.count() == bottom_size,
              "scan_three_layer: bottom class size does not match the row");
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      require(task.target[i][j] >= -1 && task.target[i][j] <= pow3(nc),
              "scan_three_layer: cell out of range");

  FillCtx cx;
  cx.n = n;
  cx.hi = &hi;
  cx.target = task.target;
  cx.budget = task.node_budget;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      cx.flat_mask[i][j] = hi.dirs[d1].layer[i] & hi.dirs[d2].layer[j];

  /* prescribed flats first, wildcards last, stable base order */
  const std::pair<int, int> base[6] = {{0, 0}, {1, 0}, {0, 1},
                                       {1, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : base)
    if (!(with_bottom && j == 2) && task.target[i][j] >= 0)
      cx.flats.push_back({i, j});
  for (auto [i, j] : base)
    if (!(with_bottom && j == 2) && task.target[i][j] < 0)
      cx.flats.push_back({i, j});

  std::vector<Mask> raw;
  cx.out = &raw;

  for (const Mask& lrep : task.left_classes) {
    auto lfun = reduce_functionals(nl, lrep,
                                   valid_functionals(nl, lrep, want_left));
    for (const Functional& lf : lfun) {
      Mask placed = apply_perm(placement_map(nl, lf).perm_table(), lrep);
      Mask left5 = embed_layer(n, d1, 2, placed);
      if (!with_bottom) {
        fill_rec(cx, 0, left5);
        continue;
      }
      Mask corner_left = restrict_layer(nl, dl, 2, placed);
      for (const Mask& brep : task.bottom_classes) {
        auto bfun = reduce_functionals(nl, brep,
                                       valid_functionals(nl, brep, want_bottom));
        for (const Functional& bf : bfun) {
          Mask bplaced = apply_perm(placement_map(nl, bf).perm_table(), brep);
          Mask corner_bottom = restrict_layer(nl, dl, 2, bplaced);
          auto h = isomorphism(nc, corner_left, corner_bottom);
          if (!h) continue;
          Mask aligned = apply_perm(lift_perm(space(nc).N, h->perm_table()), placed);
          Mask bottom5 = embed_layer(n, d2, 2, bplaced);
          /* the corner stabilizer gives every inequivalent relative
           * alignment of the two prescribed 4-flats */
          for (const auto& tperm : full_stabilizer(nc, corner_bottom)) {
            Mask leftT = apply_perm(lift_perm(space(nc).N, tperm), aligned);
            Mask start = embed_layer(n, d1, 2, leftT) | bottom5;
            if (restrict_layer(n, d1, 2, start) != leftT) continue;
            if (!is_cap(n, start)) continue;
            fill_rec(cx, 0, start);
          }
        }
      }
    }
  }

  return canonical_classes(n, std::move(raw));
}

namespace {

struct Route {
  const char* name;
  const char* left;
  const char* right;
  int middle;
  const char* cross_left;  /* nullptr: no cross route */
  const char* cross_right;
};

constexpr Route kRoutes[] = {
    {"45", "882A2", "882A2", 9, "882A1", "882A1"},
    {"delta686", "963B", "963B", 6, nullptr, nullptr},
    {"41A", "882A2", "882A2", 5, "990A1", "990A1"},
    {"41B", "981A", "981A", 5, nullptr, nullptr},
    {"41C", "990A2", "882A2", 5, "972A", "972A"},
    {"41D", "954A", "882A1", 5, nullptr, nullptr},
    {"41E", "981I", "882A2", 5, nullptr, nullptr},
};

Mask named_rep(const std::map<std::string, Mask>& named18, const char* key) {
  auto it = named18.find(key);
  require(it != named18.end(),
          std::string("derive_representatives: missing class ") + key);
  return it->second;
}

/* complete stacked caps with the given middle size, as canonical classes */
std::vector<Mask> stack_classes(const Mask& left, const Mask& right, int middle) {
  ScanTask t;
  t.n = 5;
  t.left = left;
  t.right0 = right;
  t.collect_size = middle;
  t.witness_limit = std::size_t{1} << 22;
  ScanResult r = scan_pair(t);
  require(!r.witnesses_truncated, "derive_representatives: witness overflow");
  std::vector<Mask> complete;
  for (const Mask& w : r.witnesses)
    if (is_complete(5, w)) complete.push_back(w);
  return canonical_classes(5, std::move(complete));
}

}  // namespace

std::vector<DerivedCap> derive_representatives(
    const std::map<std::string, Mask>& named18,
    const std::vector<std::string>& targets) {
  std::vector<DerivedCap> out;
  for (const std::string& want : targets) {
    const Route* route = nullptr;
    for (const Route& r : kRoutes)
      if (want == r.name) route = &r;
    require(route != nullptr,
            std::string("derive_representatives: unknown target ") + want);
    auto classes = stack_classes(named_rep(named18, route->left),
                                 named_rep(named18, route->right), route->middle);
    require(classes.size() == 1,
            std::string("derive_representatives: route for ") + want +
                " is not a single class");
    std::string prov = std::string("stack ") + route->left + "+" +
                       std::to_string(route->middle) + "+" + route->right +
                       ", complete middle-" + std::to_string(route->middle) +
                       " stacks over all embeddings";
    if (route->cross_left) {
      auto cross = stack_classes(named_rep(named18, route->cross_left),
                                 named_rep(named18, route->cross_right),
                                 route->middle);
      require(cross.size() == 1 && cross[0] == classes[0],
              std::string("derive_representatives: cross route disagrees for ") +
                  want);
      prov += std::string("; cross-checked via ") + route->cross_left + "+" +
              route->cross_right;
    }
    out.push_back({want, classes[0], prov});
  }
  return out;
}

}  // namespace capkit
