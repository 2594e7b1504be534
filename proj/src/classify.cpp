#include "capkit/classify.hpp"

#include <algorithm>
#include <unordered_set>

namespace capkit {

int max_cap_size(int n) {
  static constexpr int k[6] = {1, 2, 4, 9, 20, 45};
  require(n >= 0 && n <= 5, "max_cap_size: dimension out of range");
  return k[n];
}

void sort_classes(std::vector<CapClass>& v) {
  std::sort(v.begin(), v.end(), [](const CapClass& a, const CapClass& b) {
    return cmp_first_point(a.rep, b.rep) < 0;
  });
}

namespace {

CapClass make_class(int n, const Mask& canon) {
  CapClass c;
  c.rep = canon;
  c.size = canon.count();
  c.sym_order = canonical_form(n, canon).sym_order;
  c.complete = is_complete(n, canon);
  return c;
}

}  // namespace

std::map<int, std::vector<CapClass>> classify_all_small(int n) {
  std::map<int, std::vector<CapClass>> out;
  out[0].push_back(make_class(n, Mask{}));
  std::vector<Mask> frontier{Mask{}};
  int size = 0;
  while (!frontier.empty()) {
    ++size;
    std::unordered_set<Mask, MaskHash> next;
    for (const Mask& rep : frontier)
      addable_points(n, rep).for_each([&](Pt p) {
        Mask grown = rep;
        grown.set(p);
        next.insert(canonical_mask(n, grown));
      });
    frontier.assign(next.begin(), next.end());
    std::vector<CapClass>& cls = out[size];
    for (const Mask& m : frontier) cls.push_back(make_class(n, m));
    sort_classes(cls);
    if (frontier.empty()) out.erase(size);
  }
  return out;
}

std::vector<CapClass> extend_classes(int n, const std::vector<CapClass>& from) {
  std::unordered_set<Mask, MaskHash> next;
  for (const CapClass& c : from)
    addable_points(n, c.rep).for_each([&](Pt p) {
      Mask grown = c.rep;
      grown.set(p);
      next.insert(canonical_mask(n, grown));
    });
  std::vector<CapClass> out;
  for (const Mask& m : next) out.push_back(make_class(n, m));
  sort_classes(out);
  return out;
}

std::vector<Mask> affine_orbit(int n, const Mask& s) {
  std::vector<std::vector<std::uint8_t>> gens;
  for (const AffineMap& g : agl_generators(n)) gens.push_back(g.perm_table());
  std::unordered_set<Mask, MaskHash> seen{s};
  std::vector<Mask> queue{s};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Mask cur = queue[i];
    for (const auto& gt : gens) {
      Mask img = apply_perm(gt, cur);
      if (seen.insert(img).second) queue.push_back(img);
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<Mask> affine_orbit_mod_translation(int n, const Mask& s) {
  std::unordered_set<Mask, MaskHash> keys;
  std::vector<Mask> out;
  for (const Mask& m : affine_orbit(n, s))
    if (keys.insert(translate_canonical(n, m)).second)
      out.push_back(translate_canonical(n, m));
  std::sort(out.begin(), out.end());
  return out;
}

long long count_caps_of_size(int n, int size) {
  const Space& sp = space(n);
  require(size >= 0 && size <= sp.N, "count_caps_of_size: bad size");
  if (size == 0) return 1;
  std::vector<Pt> chosen;
  long long total = 0;
  /* DFS over ascending points; excl carries thirds of chosen pairs */
  auto rec = [&](auto&& self, Pt from, Mask excl) -> void {
    if ((int)chosen.size() == size) {
      ++total;
      return;
    }
    int need = size - (int)chosen.size();
    for (Pt p = from; p + need <= sp.N; ++p) {
      if (excl.test(p)) continue;
      Mask e2 = excl;
      const std::uint8_t* row = sp.third_row(p);
      for (Pt q : chosen) e2.set(row[q]);
      chosen.push_back(p);
      self(self, p + 1, e2);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Mask{});
  return total;
}

namespace {

/* all caps of size c inside the allowed mask of a 27-point layer */
template <class F>
void for_each_middle(const Space& s3, const Mask& allowed, int c, F&& emit) {
  if (c == 0) {
    emit(Mask{});
    return;
  }
  std::vector<Pt> pts = allowed.to_points();
  std::vector<Pt> chosen;
  Mask cur;
  auto rec = [&](auto&& self, std::size_t idx, Mask excl) -> void {
    if ((int)chosen.size() == c) {
      emit(cur);
      return;
    }
    int need = c - (int)chosen.size();
    for (std::size_t i = idx; i + need <= pts.size(); ++i) {
      Pt p = pts[i];
      if (excl.test(p)) continue;
      Mask e2 = excl;
      const std::uint8_t* row = s3.third_row(p);
      for (Pt q : chosen) e2.set(row[q]);
      chosen.push_back(p);
      cur.set(p);
      self(self, i + 1, e2);
      chosen.pop_back();
      cur.reset(p);
    }
  };
  rec(rec, 0, Mask{});
}

/* offset embedding for the standard direction of dim 4 */
Mask stack_layers(const Mask& a, const Mask& b, const Mask& m) {
  Mask s;
  a.for_each([&](Pt p) { s.set(p); });
  b.for_each([&](Pt p) { s.set(p + 27); });
  m.for_each([&](Pt p) { s.set(p + 54); });
  return s;
}

std::array<int, 3> max_sorted_triple(int n, const Mask& s) {
  const Space& sp = space(n);
  std::array<int, 3> best{-1, -1, -1};
  for (int d = 0; d < (int)sp.dirs.size(); ++d)
    best = std::max(best, sorted_triple(n, d, s));
  return best;
}

}  // namespace

std::vector<CapClass> layer_method_dim4(int total) {
  require(total >= 13 && total <= 20, "layer_method_dim4: size out of range");
  const Space& s3 = space(3);
  auto small3 = classify_all_small(3);
  std::unordered_set<Mask, MaskHash> classes;

  for (int a = 9; a >= (total + 2) / 3; --a)
    for (int b = std::min(a, total - a); 2 * b >= total - a && b >= 0; --b) {
      int c = total - a - b;
      require(c >= 0 && c <= b, "layer triple enumeration out of order");
      const std::array<int, 3> triple{a, b, c};
      for (const CapClass& ca : small3[a]) {
        const Mask& A = ca.rep;
        for (const CapClass& cb : small3[b]) {
          for (const Mask& B : affine_orbit_mod_translation(3, cb.rep)) {
            /* cross lines through one point of A and one of B exclude their
             * third points in the middle layer; the diagonal of the third
             * table handles shared columns */
            Mask excl;
            A.for_each([&](Pt x) {
              const std::uint8_t* row = s3.third_row(x);
              B.for_each([&](Pt y) { excl.set(row[y]); });
            });
            Mask allowed = Mask::andnot(s3.all, excl);
            if (allowed.count() < c) continue;
            for_each_middle(s3, allowed, c, [&](const Mask& mid) {
              Mask s = stack_layers(A, B, mid);
              if (max_sorted_triple(4, s) != triple) return;
              classes.insert(canonical_mask(4, s));
            });
          }
        }
      }
    }

  std::vector<CapClass> out;
  for (const Mask& m : classes) out.push_back(make_class(4, m));
  sort_classes(out);
  return out;
}

std::map<int, std::vector<CapClass>> classify_dim4_large() {
  std::map<int, std::vector<CapClass>> out;
  out[18] = layer_method_dim4(18);
  out[19] = extend_classes(4, out[18]);
  out[20] = extend_classes(4, out[19]);
  require(extend_classes(4, out[20]).empty(), "a 21-cap in dim 4 would be new");
  return out;
}

}  // namespace capkit
