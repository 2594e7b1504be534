#include "capkit/gf3.hpp"

#include <memory>
#include <mutex>

namespace capkit {

Pt pt_of_coords(int n, const int* c) {
  Pt p = 0;
  for (int i = n - 1; i >= 0; --i) p = p * 3 + c[i] % 3;
  return p;
}

void pt_coords(int n, Pt p, int* out) {
  for (int i = 0; i < n; ++i) {
    out[i] = p % 3;
    p /= 3;
  }
}

Pt pt_add(int n, Pt a, Pt b) {
  Pt r = 0, m = 1;
  for (int i = 0; i < n; ++i) {
    r += ((a % 3) + (b % 3)) % 3 * m;
    a /= 3;
    b /= 3;
    m *= 3;
  }
  return r;
}

Pt pt_neg(int n, Pt a) {
  Pt r = 0, m = 1;
  for (int i = 0; i < n; ++i) {
    r += (3 - a % 3) % 3 * m;
    a /= 3;
    m *= 3;
  }
  return r;
}

Pt third_point(int n, Pt a, Pt b) {
  require(a != b, "third_point: degenerate segment (p = q)");
  return pt_neg(n, pt_add(n, a, b));
}

std::vector<Covector> enumerate_directions(int n) {
  require(n >= 0 && n <= kMaxGeomDim, "enumerate_directions: dimension out of range");
  std::vector<Covector> out;
  const int N = pow3(n);
  for (int v = 1; v < N; ++v) {
    Covector c;
    c.n = n;
    int x = v, first = -1;
    for (int i = 0; i < n; ++i) {
      c.d[i] = static_cast<std::uint8_t>(x % 3);
      if (c.d[i] && first < 0) first = i;
      x /= 3;
    }
    if (c.d[first] == 1) out.push_back(c);
  }
  return out;
}

std::vector<Line> enumerate_lines(int n) {
  require(n >= 0 && n <= kMaxGeomDim, "enumerate_lines: dimension out of range");
  std::vector<Line> out;
  const int N = pow3(n);
  for (Pt a = 0; a < N; ++a)
    for (Pt b = a + 1; b < N; ++b) {
      Pt c = pt_neg(n, pt_add(n, a, b));
      if (c > b) out.push_back({static_cast<std::uint16_t>(a),
                                static_cast<std::uint16_t>(b),
                                static_cast<std::uint16_t>(c)});
    }
  return out;
}

std::uint64_t gl_order(int n) {
  std::uint64_t r = 1, N = pow3(n);
  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    r *= N - q;
    q *= 3;
  }
  return r;
}

std::uint64_t agl_order(int n) { return gl_order(n) * pow3(n); }

static std::unique_ptr<Space> build_space(int n) {
  auto sp = std::make_unique<Space>();
  sp->n = n;
  const int N = sp->N = pow3(n);
  sp->add_tab.resize(static_cast<std::size_t>(N) * N);
  sp->third_tab.resize(static_cast<std::size_t>(N) * N);
  sp->neg_tab.resize(N);
  for (int p = 0; p < N; ++p) sp->neg_tab[p] = static_cast<std::uint8_t>(pt_neg(n, p));
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      int s = pt_add(n, p, q);
      sp->add_tab[p * N + q] = static_cast<std::uint8_t>(s);
      sp->third_tab[p * N + q] = sp->neg_tab[s];
    }
  sp->lines = enumerate_lines(n);
  for (const Covector& cov : enumerate_directions(n)) {
    Space::Dir d;
    d.cov = cov;
    for (int p = 0; p < N; ++p) d.layer[cov.eval(p)].set(p);
    sp->dirs.push_back(d);
  }
  for (int p = 0; p < N; ++p) sp->all.set(p);
  return sp;
}

const Space& space(int n) {
  require(n >= 0 && n <= kMaxDim, "space: dimension out of range");
  static std::unique_ptr<Space> cache[kMaxDim + 1];
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n] = build_space(n);
  return *cache[n];
}

}  // namespace capkit
