#include "capkit/affine.hpp"

namespace capkit {

Mat Mat::identity(int n) {
  Mat m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.put(i, i, 1);
  return m;
}

Pt Mat::col(int c) const {
  int digits[6] = {0};
  for (int r = 0; r < n; ++r) digits[r] = at(r, c);
  return pt_of_coords(n, digits);
}

Mat Mat::from_cols(int n, const Pt* cols) {
  Mat m;
  m.n = n;
  for (int c = 0; c < n; ++c) {
    int digits[6];
    pt_coords(n, cols[c], digits);
    for (int r = 0; r < n; ++r) m.put(r, c, digits[r]);
  }
  return m;
}

int det(const Mat& m) {
  int a[6][6];
  const int n = m.n;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[r][c] = m.at(r, c);
  int d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[piv][k], a[c][k]);
      d = d * 2 % 3;  // row swap negates
    }
    d = d * a[c][c] % 3;
    int inv = a[c][c];  // 1 and 2 are self-inverse mod 3
    for (int k = 0; k < n; ++k) a[c][k] = a[c][k] * inv % 3;
    for (int r = c + 1; r < n; ++r) {
      int f = a[r][c];
      if (f)
        for (int k = 0; k < n; ++k) a[r][k] = (a[r][k] + (3 - f) * a[c][k]) % 3;
    }
  }
  return d;
}

Mat mul(const Mat& a, const Mat& b) {
  Mat r;
  r.n = a.n;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      int s = 0;
      for (int k = 0; k < a.n; ++k) s += a.at(i, k) * b.at(k, j);
      r.put(i, j, s % 3);
    }
  return r;
}

Mat inverse(const Mat& m) {
  const int n = m.n;
  int a[6][12];
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      a[r][c] = m.at(r, c);
      a[r][n + c] = r == c;
    }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    require(piv >= 0, "inverse: singular matrix");
    if (piv != c)
      for (int k = 0; k < 2 * n; ++k) std::swap(a[piv][k], a[c][k]);
    int inv = a[c][c];
    for (int k = 0; k < 2 * n; ++k) a[c][k] = a[c][k] * inv % 3;
    for (int r = 0; r < n; ++r) {
      if (r == c || !a[r][c]) continue;
      int f = 3 - a[r][c];
      for (int k = 0; k < 2 * n; ++k) a[r][k] = (a[r][k] + f * a[c][k]) % 3;
    }
  }
  Mat out;
  out.n = n;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.put(r, c, a[r][n + c]);
  return out;
}

Pt mat_apply(const Mat& m, Pt p) {
  int in[6], out[6] = {0, 0, 0, 0, 0, 0};
  pt_coords(m.n, p, in);
  for (int r = 0; r < m.n; ++r) {
    int s = 0;
    for (int c = 0; c < m.n; ++c) s += m.at(r, c) * in[c];
    out[r] = s % 3;
  }
  return pt_of_coords(m.n, out);
}

AffineMap::AffineMap(const Mat& m, Pt trans) : a(m), n(m.n) {
  require(det(m) != 0, "AffineMap: singular linear part");
  int digits[6];
  pt_coords(n, trans, digits);
  for (int i = 0; i < n; ++i) t[i] = static_cast<std::uint8_t>(digits[i]);
}

AffineMap AffineMap::identity(int n) { return AffineMap(Mat::identity(n), 0); }

AffineMap AffineMap::translation(int n, Pt trans) {
  return AffineMap(Mat::identity(n), trans);
}

Pt AffineMap::trans_pt() const {
  int digits[6];
  for (int i = 0; i < n; ++i) digits[i] = t[i];
  return pt_of_coords(n, digits);
}

Pt AffineMap::apply(Pt p) const { return pt_add(n, mat_apply(a, p), trans_pt()); }

AffineMap AffineMap::inverse() const {
  Mat ai = capkit::inverse(a);
  return AffineMap(ai, pt_neg(n, mat_apply(ai, trans_pt())));
}

std::vector<std::uint8_t> AffineMap::perm_table() const {
  const int N = pow3(n);
  std::vector<std::uint8_t> tab(N);
  /* images of basis vectors let the table fill by dynamic programming:
   * index p+d*3^i maps to tab[p] + d*a(e_i). */
  const Space& sp = space(n);
  tab[0] = static_cast<std::uint8_t>(trans_pt());
  int block = 1;
  for (int i = 0; i < n; ++i) {
    Pt ci = a.col(i);
    Pt c2 = pt_add(n, ci, ci);
    for (int p = 0; p < block; ++p) {
      tab[block + p] = static_cast<std::uint8_t>(sp.add(tab[p], ci));
      tab[2 * block + p] = static_cast<std::uint8_t>(sp.add(tab[p], c2));
    }
    block *= 3;
  }
  return tab;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  return AffineMap(mul(f.a, g.a), pt_add(f.n, mat_apply(f.a, g.trans_pt()), f.trans_pt()));
}

bool affine_less(const AffineMap& x, const AffineMap& y) {
  if (x.n != y.n) return x.n < y.n;
  for (int r = 0; r < x.n; ++r)
    for (int c = 0; c < x.n; ++c)
      if (x.a.at(r, c) != y.a.at(r, c)) return x.a.at(r, c) < y.a.at(r, c);
  for (int i = 0; i < x.n; ++i)
    if (x.t[i] != y.t[i]) return x.t[i] < y.t[i];
  return false;
}

namespace {

void invertible_rec(const Space& sp, int n, int depth, std::array<Pt, 6>& cols,
                    const Mask& span,
                    const std::function<void(const std::array<Pt, 6>&)>& fn) {
  if (depth == n) {
    fn(cols);
    return;
  }
  for (Pt v = 1; v < sp.N; ++v) {
    if (span.test(v)) continue;
    cols[depth] = v;
    if (depth + 1 == n) {
      fn(cols);
      continue;
    }
    Mask next = span;
    Pt v2 = sp.add(v, v);
    span.for_each([&](int p) {
      next.set(sp.add(p, v));
      next.set(sp.add(p, v2));
    });
    invertible_rec(sp, n, depth + 1, cols, next, fn);
  }
}

}  // namespace

void for_each_invertible(int n, const std::function<void(const std::array<Pt, 6>&)>& fn) {
  require(n >= 1 && n <= kMaxDim, "for_each_invertible: dimension out of range");
  const Space& sp = space(n);
  std::array<Pt, 6> cols{};
  Mask span;
  span.set(0);
  invertible_rec(sp, n, 0, cols, span, fn);
}

std::vector<Mat> gl_generators(int n) {
  std::vector<Mat> out;
  if (n == 1) {
    Mat d = Mat::identity(1);
    d.put(0, 0, 2);
    out.push_back(d);
    return out;
  }
  Mat e12 = Mat::identity(n);
  e12.put(0, 1, 1);
  Mat e21 = Mat::identity(n);
  e21.put(1, 0, 1);
  Mat cyc;
  cyc.n = n;
  for (int c = 0; c < n; ++c) cyc.put((c + 1) % n, c, 1);
  Mat dia = Mat::identity(n);
  dia.put(0, 0, 2);
  out = {e12, e21, cyc, dia};
  return out;
}

std::vector<AffineMap> agl_generators(int n) {
  std::vector<AffineMap> out;
  for (const Mat& m : gl_generators(n)) out.emplace_back(m, 0);
  for (int i = 0; i < n; ++i) out.push_back(AffineMap::translation(n, pow3(i)));
  return out;
}

}  // namespace capkit
