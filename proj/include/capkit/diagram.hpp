#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "capkit/error.hpp"

/* Counting arguments over direction point-count triples.  A triple {a,b,c}
 * maps to the plane point x = ΣC(·,2), y = ΣC(·,3); the triples of a real
 * cap average exactly to a centroid computable from (n,s) alone, so a line
 * separating the centroid from every admissible triple certifies that no
 * cap with those parameters exists.  All arithmetic is exact. */
namespace capkit {

struct Rat {
  long long num = 0, den = 1;
  Rat() = default;
  Rat(long long n) : num(n) {}
  Rat(long long n, long long d);
  int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
  std::string str() const;
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    return a.num * b.den < b.num * a.den;
  }
};

long long choose2(long long m);
long long choose3(long long m);

using Triple = std::array<int, 3>;

/* alpha*y = beta*x + gamma with alpha > 0 */
struct DiagramLine {
  long long alpha = 1, beta = 0, gamma = 0;
  Rat signed_distance(long long x, long long y) const;
  Rat signed_distance(const Rat& x, const Rat& y) const;
};

/* the unique line through the images of two triples */
DiagramLine line_through(const Triple& t1, const Triple& t2);

struct DiagramPoint {
  Triple t;
  long long x = 0, y = 0;
  Rat d;
};

DiagramPoint diagram_point(const Triple& t, const DiagramLine& line = {});

/* exact centre of mass of the direction points of any s-cap in dim n */
std::pair<Rat, Rat> centroid(int n, int s);

/* number of directions of AG(n,3) */
long long direction_count(int n);

struct DiagramSpec {
  int n = 0, s = 0;
  DiagramLine line;
  std::vector<Triple> allowed; /* descending triples, lex-descending order */
  std::vector<DiagramPoint> points() const;
};

DiagramSpec make_spec(int n, int s, const std::vector<Triple>& forbidden = {},
                      const DiagramLine& line = {});

struct LineCertificate {
  bool infeasible = false;
  Rat centroid_d;
  Rat min_allowed_d;
  Triple min_triple{};
  std::string text() const;
};

/* certificate iff every allowed point has d >= 0 while the centroid has
 * d < 0; otherwise inconclusive */
LineCertificate infeasible_by_line(const DiagramSpec&);

/* Σ k_t · d_t over any true distribution, = direction_count · centroid d */
Rat total_signed_distance(const DiagramSpec&);

std::vector<Triple> below_line_triples(const DiagramSpec&);

/* all nonnegative integer k per allowed triple with Σk = D_n and the two
 * moment sums matching the centroid */
std::vector<std::vector<long long>> solve_distribution(
    const DiagramSpec&, std::uint64_t node_budget = 1'000'000);

void render_tsv(const DiagramSpec&, std::ostream&);
void render_svg(const DiagramSpec&, std::ostream&);

}  // namespace capkit
