#include "capkit/diagram.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "capkit/classify.hpp"
#include "capkit/gf3.hpp"

namespace capkit {

Rat::Rat(long long n, long long d) {
  require(d != 0, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rat operator+(const Rat& a, const Rat& b) {
  return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rat operator-(const Rat& a, const Rat& b) {
  return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rat operator*(const Rat& a, const Rat& b) {
  return Rat(a.num * b.num, a.den * b.den);
}
Rat operator/(const Rat& a, const Rat& b) {
  require(b.num != 0, "rational division by zero");
  return Rat(a.num * b.den, a.den * b.num);
}

long long choose2(long long m) { return m < 2 ? 0 : m * (m - 1) / 2; }
long long choose3(long long m) { return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6; }

Rat DiagramLine::signed_distance(long long x, long long y) const {
  require(alpha > 0, "line with nonpositive alpha");
  return Rat(alpha * y - beta * x - gamma, alpha);
}

Rat DiagramLine::signed_distance(const Rat& x, const Rat& y) const {
  require(alpha > 0, "line with nonpositive alpha");
  return y - (Rat(beta) * x + Rat(gamma)) / Rat(alpha);
}

DiagramLine line_through(const Triple& t1, const Triple& t2) {
  DiagramPoint p1 = diagram_point(t1), p2 = diagram_point(t2);
  long long a = p2.x - p1.x;
  long long b = p2.y - p1.y;
  require(a != 0, "line through two points with equal x");
  long long g = a * p1.y - b * p1.x; /* alpha*y1 = beta*x1 + gamma */
  if (a < 0) {
    a = -a;
    b = -b;
    g = -g;
  }
  long long d = std::gcd(std::gcd(a, b < 0 ? -b : b), g < 0 ? -g : g);
  if (d == 0) d = 1;
  return {a / d, b / d, g / d};
}

DiagramPoint diagram_point(const Triple& t, const DiagramLine& line) {
  DiagramPoint p;
  p.t = t;
  for (int v : t) {
    require(v >= 0, "triple entries must be nonnegative");
    p.x += choose2(v);
    p.y += choose3(v);
  }
  p.d = line.signed_distance(p.x, p.y);
  return p;
}

long long direction_count(int n) { return (pow3(n) - 1) / 2; }

std::pair<Rat, Rat> centroid(int n, int s) {
  require(n >= 2, "centroid needs dimension at least 2");
  long long dn = direction_count(n);
  Rat x(choose2(s) * (pow3(n - 1) - 1) / 2, dn);
  Rat y(choose3(s) * (pow3(n - 2) - 1) / 2, dn);
  return {x, y};
}

std::vector<DiagramPoint> DiagramSpec::points() const {
  std::vector<DiagramPoint> out;
  out.reserve(allowed.size());
  for (const Triple& t : allowed) out.push_back(diagram_point(t, line));
  return out;
}

DiagramSpec make_spec(int n, int s, const std::vector<Triple>& forbidden,
                      const DiagramLine& line) {
  require(n >= 2, "diagram spec needs dimension at least 2");
  require(s >= 0, "diagram spec needs nonnegative size");
  DiagramSpec spec;
  spec.n = n;
  spec.s = s;
  spec.line = line;
  std::vector<Triple> forb = forbidden;
  for (Triple& t : forb) std::sort(t.begin(), t.end(), std::greater<int>());
  int cap = max_cap_size(n - 1);
  for (int a = std::min(cap, s); 3 * a >= s; --a)
    for (int b = std::min(a, s - a); 2 * b >= s - a; --b) {
      Triple t{a, b, s - a - b};
      if (std::find(forb.begin(), forb.end(), t) != forb.end()) continue;
      spec.allowed.push_back(t);
    }
  return spec;
}

std::string LineCertificate::text() const {
  std::string head = infeasible ? "INFEASIBLE" : "inconclusive";
  return head + ": centroid d = " + centroid_d.str() +
         ", minimum allowed d = " + min_allowed_d.str() + " at {" +
         std::to_string(min_triple[0]) + "," + std::to_string(min_triple[1]) +
         "," + std::to_string(min_triple[2]) + "}";
}

LineCertificate infeasible_by_line(const DiagramSpec& spec) {
  require(!spec.allowed.empty(), "diagram spec has no allowed triples");
  LineCertificate cert;
  auto [cx, cy] = centroid(spec.n, spec.s);
  cert.centroid_d = spec.line.signed_distance(cx, cy);
  bool first = true;
  for (const DiagramPoint& p : spec.points()) {
    if (first || p.d < cert.min_allowed_d) {
      cert.min_allowed_d = p.d;
      cert.min_triple = p.t;
      first = false;
    }
  }
  cert.infeasible = cert.centroid_d.sign() < 0 && cert.min_allowed_d.sign() >= 0;
  return cert;
}

Rat total_signed_distance(const DiagramSpec& spec) {
  auto [cx, cy] = centroid(spec.n, spec.s);
  return Rat(direction_count(spec.n)) * spec.line.signed_distance(cx, cy);
}

std::vector<Triple> below_line_triples(const DiagramSpec& spec) {
  std::vector<Triple> out;
  for (const DiagramPoint& p : spec.points())
    if (p.d.sign() < 0) out.push_back(p.t);
  return out;
}

namespace {

/* half-plane A*px + B*py >= C */
struct Half {
  long long A, B, C;
};

/* inequalities cutting out the convex hull of a point set */
std::vector<Half> hull_halves(std::vector<std::array<long long, 2>> q) {
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  std::vector<Half> out;
  if (q.size() == 1) {
    out.push_back({1, 0, q[0][0]});
    out.push_back({-1, 0, -q[0][0]});
    out.push_back({0, 1, q[0][1]});
    out.push_back({0, -1, -q[0][1]});
    return out;
  }
  auto cross = [](const std::array<long long, 2>& o,
                  const std::array<long long, 2>& a,
                  const std::array<long long, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  /* monotone chain, strict turns only */
  std::vector<std::array<long long, 2>> h(2 * q.size());
  std::size_t t = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (t >= 2 && cross(h[t - 2], h[t - 1], q[i]) <= 0) --t;
    h[t++] = q[i];
  }
  for (std::size_t i = q.size() - 1, lo = t + 1; i-- > 0;) {
    while (t >= lo && cross(h[t - 2], h[t - 1], q[i]) <= 0) --t;
    h[t++] = q[i];
  }
  h.resize(t > 1 ? t - 1 : t);
  std::size_t edges = h.size() == 2 ? 1 : h.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const auto& p = h[i];
    const auto& n = h[(i + 1) % h.size()];
    long long A = p[1] - n[1], B = n[0] - p[0];
    out.push_back({A, B, A * p[0] + B * p[1]});
    /* collinear set: both sides of the single edge */
    if (h.size() == 2) out.push_back({-A, -B, -(A * p[0] + B * p[1])});
  }
  return out;
}

}  // namespace

std::vector<std::vector<long long>> solve_distribution(
    const DiagramSpec& spec, std::uint64_t node_budget) {
  const std::size_t m = spec.allowed.size();
  auto pts = spec.points();
  long long R = direction_count(spec.n);
  long long X = choose2(spec.s) * (pow3(spec.n - 1) - 1) / 2;
  long long Y = choose3(spec.s) * (pow3(spec.n - 2) - 1) / 2;

  /* suffix extremes for interval pruning */
  std::vector<long long> xmin(m + 1), xmax(m + 1), ymin(m + 1), ymax(m + 1);
  xmin[m] = ymin[m] = (long long)1 << 62;
  xmax[m] = ymax[m] = -((long long)1 << 62);
  for (int i = (int)m - 1; i >= 0; --i) {
    xmin[i] = std::min(xmin[i + 1], pts[i].x);
    xmax[i] = std::max(xmax[i + 1], pts[i].x);
    ymin[i] = std::min(ymin[i + 1], pts[i].y);
    ymax[i] = std::max(ymax[i + 1], pts[i].y);
  }

  /* (x,y) must be r times a convex combination of the suffix points */
  std::vector<std::vector<Half>> hulls(m);
  {
    std::vector<std::array<long long, 2>> tail;
    for (std::size_t i = m; i-- > 0;) {
      tail.push_back({pts[i].x, pts[i].y});
      hulls[i] = hull_halves(tail);
    }
  }

  std::vector<std::vector<long long>> solutions;
  std::vector<long long> k(m, 0);
  std::uint64_t nodes = 0;

  auto feasible = [&](std::size_t i, long long r, long long x, long long y) {
    if (r == 0) return x == 0 && y == 0;
    if (i == m) return false;
    if (x < r * xmin[i] || x > r * xmax[i] || y < r * ymin[i] ||
        y > r * ymax[i])
      return false;
    for (const Half& hp : hulls[i])
      if (hp.A * x + hp.B * y < r * hp.C) return false;
    return true;
  };

  auto rec = [&](auto&& self, std::size_t i, long long r, long long x,
                 long long y) -> void {
    if (++nodes > node_budget) fail("distribution search budget exceeded");
    if (r == 0 && x == 0 && y == 0) {
      solutions.push_back(k);
      return;
    }
    if (i == m) return;
    for (long long c = r; c >= 0; --c) {
      long long x2 = x - c * pts[i].x, y2 = y - c * pts[i].y;
      if (x2 < 0 || y2 < 0) continue;
      if (!feasible(i + 1, r - c, x2, y2)) continue;
      k[i] = c;
      self(self, i + 1, r - c, x2, y2);
      k[i] = 0;
    }
  };
  rec(rec, 0, R, X, Y);
  return solutions;
}

void render_tsv(const DiagramSpec& spec, std::ostream& os) {
  os << "a\tb\tc\tx\ty\td\n";
  for (const DiagramPoint& p : spec.points())
    os << p.t[0] << '\t' << p.t[1] << '\t' << p.t[2] << '\t' << p.x << '\t'
       << p.y << '\t' << p.d.str() << '\n';
}

namespace {

double rat_double(const Rat& r) { return (double)r.num / (double)r.den; }

}  // namespace

void render_svg(const DiagramSpec& spec, std::ostream& os) {
  auto pts = spec.points();
  auto [cx, cy] = centroid(spec.n, spec.s);
  double cxd = rat_double(cx), cyd = rat_double(cy);
  double xlo = cxd, xhi = cxd, ylo = cyd, yhi = cyd;
  for (const DiagramPoint& p : pts) {
    xlo = std::min(xlo, (double)p.x);
    xhi = std::max(xhi, (double)p.x);
    ylo = std::min(ylo, (double)p.y);
    yhi = std::max(yhi, (double)p.y);
  }
  /* include the line over the x range */
  auto line_y = [&](double x) {
    return (spec.line.beta * x + spec.line.gamma) / (double)spec.line.alpha;
  };
  ylo = std::min({ylo, line_y(xlo), line_y(xhi)});
  yhi = std::max({yhi, line_y(xlo), line_y(xhi)});
  if (xhi == xlo) xhi = xlo + 1;
  if (yhi == ylo) yhi = ylo + 1;

  const double W = 800, H = 560, M = 50;
  auto px = [&](double x) { return M + (x - xlo) / (xhi - xlo) * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - ylo) / (yhi - ylo) * (H - 2 * M); };
  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
        "viewBox=\"0 0 800 560\">\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                "stroke=\"black\"/>\n",
                px(xlo), py(line_y(xlo)), px(xhi), py(line_y(xhi)));
  os << buf;
  for (const DiagramPoint& p : pts) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"%s\">"
                  "<title>{%d,%d,%d} d=%s</title></circle>\n",
                  px((double)p.x), py((double)p.y),
                  p.d.sign() < 0 ? "crimson" : "steelblue", p.t[0], p.t[1],
                  p.t[2], p.d.str().c_str());
    os << buf;
  }
  /* centroid drawn as a plus sign */
  double cpx = px(cxd), cpy = py(cyd);
  std::snprintf(buf, sizeof buf,
                "<path d=\"M %.3f %.3f h 16 M %.3f %.3f v 16\" "
                "stroke=\"darkgreen\" stroke-width=\"2\" fill=\"none\"/>\n",
                cpx - 8, cpy, cpx, cpy - 8);
  os << buf;
  os << "</svg>\n";
}

}  // namespace capkit
