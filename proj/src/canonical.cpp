#include "capkit/canonical.hpp"

#include <algorithm>
#include <set>

namespace capkit {

namespace {

constexpr std::size_t kCollectLimit = 4096;

/* Backtracking over affine frames g = (c0; b_0..b_{n-1}), g(0) = c0 and
 * g(3^k) = b_k.  Indices are processed in nested-flat order: once b_k is
 * chosen, the images of all indices in [3^k, 3^{k+1}) follow from the add
 * table.  The membership prefix of g^-1(S) is compared against the best
 * complete image found so far and branches with a larger prefix are cut.
 * Frames achieving the minimum are in bijection with the stabilizer of S. */
struct FrameSearch {
  const Space& sp;
  int n, N;
  Mask target;
  int size;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool collect;

  std::array<std::uint8_t, 243> h{};   /* image table over [0, 3^depth) */
  std::array<std::uint8_t, 243> dv{};  /* h[q] - c0 */
  Mask chi;                            /* membership bits of the prefix */
  Mask best;
  bool have_best = false;
  long long count = 0;
  bool overflowed = false;
  std::vector<std::array<Pt, 7>> frames; /* c0, b_0..b_{n-1} of achievers */
  std::array<Pt, 7> cur{};
  std::array<Pt, 7> first_frame{};

  FrameSearch(int n_, const Mask& s, std::uint64_t budget_, bool collect_)
      : sp(space(n_)), n(n_), N(sp.N), target(s), size(s.count()),
        budget(budget_), collect(collect_) {}

  long long completions(int k) const {
    long long c = 1;
    for (int j = k; j < n; ++j) c *= N - pow3(j);
    return c;
  }

  /* extend cur[1+k..] greedily so a concrete achieving frame exists */
  std::array<Pt, 7> materialize(int k, Mask flat) const {
    std::array<Pt, 7> out = cur;
    Pt c0 = out[0];
    for (int j = k; j < n; ++j) {
      Pt b = Mask::andnot(sp.all, flat).lowest();
      out[1 + j] = b;
      Pt bd = sp.add(b, sp.neg(c0));
      Mask grown = flat;
      flat.for_each([&](int p) {
        Pt p1 = sp.add(p, bd);
        grown.set(p1);
        grown.set(sp.add(p1, bd));
      });
      flat = grown;
    }
    return out;
  }

  void record_leaf() {
    int c = have_best ? cmp_first_point(chi, best) : -1;
    if (c > 0) return;
    if (c < 0) {
      best = chi;
      have_best = true;
      count = 1;
      first_frame = cur;
      frames.clear();
      overflowed = false;
      if (collect) frames.push_back(cur);
      return;
    }
    ++count;
    if (collect) {
      if (frames.size() < kCollectLimit)
        frames.push_back(cur);
      else
        overflowed = true;
    }
  }

  void dfs(int k, int placed, const Mask& flat) {
    int L = pow3(k);
    if (have_best && cmp_first_point_below(chi, best, L) > 0) return;
    if (k == n) {
      record_leaf();
      return;
    }
    if (placed == size) {
      /* every point of S is inside the image flat: all extensions give the
       * same complete image, zero beyond the prefix */
      Mask cand = chi;  /* bits at or above L were never written on this path
                           or belong to dead siblings; clear them */
      for (int q = L; q < N; ++q) cand.reset(q);
      int c = have_best ? cmp_first_point(cand, best) : -1;
      if (c > 0) return;
      if (c < 0) {
        best = cand;
        have_best = true;
        count = completions(k);
        first_frame = materialize(k, flat);
        frames.clear();
        overflowed = collect;
      } else {
        count += completions(k);
        if (collect) overflowed = true;
      }
      return;
    }
    Pt c0 = cur[0];
    auto try_b = [&](Pt b) {
      if (++nodes > budget) fail("canonical search budget exceeded");
      cur[1 + k] = b;
      Pt bd = sp.add(b, sp.neg(c0));
      int placed2 = placed;
      Mask flat2 = flat;
      for (int q = L; q < 3 * L; ++q) {
        dv[q] = static_cast<std::uint8_t>(sp.add(dv[q - L], bd));
        Pt img = sp.add(h[q - L], bd);
        h[q] = static_cast<std::uint8_t>(img);
        flat2.set(img);
        if (target.test(img)) {
          chi.set(q);
          ++placed2;
        } else {
          chi.reset(q);
        }
      }
      dfs(k + 1, placed2, flat2);
    };
    Mask inS = Mask::andnot(target, flat);
    inS.for_each(try_b);
    Mask outS = Mask::andnot(Mask::andnot(sp.all, target), flat);
    outS.for_each(try_b);
  }

  void run() {
    require(size >= 1, "frame search needs a nonempty set");
    target.for_each([&](Pt c0) {
      cur[0] = c0;
      h[0] = static_cast<std::uint8_t>(c0);
      dv[0] = 0;
      chi.set(0);
      Mask flat = Mask::with_bit(c0);
      dfs(0, 1, flat);
    });
  }

  AffineMap frame_map(const std::array<Pt, 7>& fr) const {
    Pt cols[6];
    for (int k = 0; k < n; ++k) cols[k] = sp.add(fr[1 + k], sp.neg(fr[0]));
    return AffineMap(Mat::from_cols(n, cols), fr[0]);
  }
};

}  // namespace

CanonicalResult canonical_form(int n, const Mask& s, std::uint64_t node_budget) {
  if (s.empty())
    return {Mask{}, AffineMap::identity(n),
            static_cast<long long>(agl_order(n))};
  FrameSearch fs(n, s, node_budget, false);
  fs.run();
  AffineMap g = fs.frame_map(fs.first_frame);
  CanonicalResult out{fs.best, g.inverse(), fs.count};
  require(apply_map(out.to_form, s) == out.form, "canonical witness mismatch");
  return out;
}

Mask canonical_mask(int n, const Mask& s, std::uint64_t node_budget) {
  if (s.empty()) return Mask{};
  FrameSearch fs(n, s, node_budget, false);
  fs.run();
  return fs.best;
}

SymmetryGroup symmetry_group(int n, const Mask& s, std::uint64_t node_budget) {
  SymmetryGroup out;
  if (s.empty()) {
    out.order = agl_order(n);
    return out;
  }
  FrameSearch fs(n, s, node_budget, true);
  fs.run();
  out.order = fs.count;
  if (fs.overflowed) return out;
  require((long long)fs.frames.size() == fs.count,
          "achieving frame collection out of step with the count");

  AffineMap g0 = fs.frame_map(fs.frames[0]);
  AffineMap g0i = g0.inverse();
  std::vector<AffineMap> sym;
  sym.reserve(fs.frames.size());
  for (const auto& fr : fs.frames) sym.push_back(compose(fs.frame_map(fr), g0i));

  /* greedy generating subset, checked by regenerating the closure */
  std::set<std::vector<std::uint8_t>> closure;
  std::vector<std::vector<std::uint8_t>> gen_tabs;
  std::vector<std::uint8_t> id(pow3(n));
  for (int p = 0; p < pow3(n); ++p) id[p] = static_cast<std::uint8_t>(p);
  closure.insert(id);
  for (const AffineMap& m : sym) {
    auto tab = m.perm_table();
    if (closure.count(tab)) continue;
    out.generators.push_back(m);
    gen_tabs.push_back(tab);
    std::vector<std::vector<std::uint8_t>> queue(closure.begin(), closure.end());
    while (!queue.empty()) {
      auto curr = queue.back();
      queue.pop_back();
      for (const auto& gt : gen_tabs) {
        std::vector<std::uint8_t> nxt(curr.size());
        for (std::size_t p = 0; p < curr.size(); ++p) nxt[p] = gt[curr[p]];
        if (closure.insert(nxt).second) queue.push_back(nxt);
      }
    }
  }
  require((long long)closure.size() == out.order,
          "symmetry generators fail to regenerate the full stabilizer");
  out.generators_complete = true;

  /* orbits of the stabilizer on the points of s */
  Mask seen;
  s.for_each([&](Pt p) {
    if (seen.test(p)) return;
    std::vector<Pt> orbit{p};
    seen.set(p);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const auto& gt : gen_tabs) {
        Pt q = gt[orbit[i]];
        if (!seen.test(q)) {
          seen.set(q);
          orbit.push_back(q);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(orbit);
  });
  return out;
}

bool are_isomorphic(int n, const Mask& a, const Mask& b,
                    std::uint64_t node_budget) {
  if (a.count() != b.count()) return false;
  return canonical_mask(n, a, node_budget) == canonical_mask(n, b, node_budget);
}

std::optional<AffineMap> isomorphism(int n, const Mask& a, const Mask& b,
                                     std::uint64_t node_budget) {
  if (a.count() != b.count()) return std::nullopt;
  if (a.empty()) return AffineMap::identity(n);
  CanonicalResult ca = canonical_form(n, a, node_budget);
  CanonicalResult cb = canonical_form(n, b, node_budget);
  if (!(ca.form == cb.form)) return std::nullopt;
  AffineMap f = compose(cb.to_form.inverse(), ca.to_form);
  require(apply_map(f, a) == b, "isomorphism witness mismatch");
  return f;
}

Mask translate_canonical(int n, const Mask& s) {
  if (s.empty()) return s;
  const Space& sp = space(n);
  Mask best = s;
  for (Pt t = 1; t < sp.N; ++t) {
    Mask img;
    s.for_each([&](Pt p) { img.set(sp.add(p, t)); });
    if (cmp_first_point(img, best) < 0) best = img;
  }
  return best;
}

}  // namespace capkit
