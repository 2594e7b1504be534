#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "capkit/affine.hpp"
#include "capkit/capset.hpp"

/* Equivalence of point sets under the full affine group.  The canonical form
 * of a set is the minimum of its orbit in first-point order (the image whose
 * points are packed into the smallest indices); two sets are equivalent
 * exactly when their canonical forms coincide. */
namespace capkit {

struct CanonicalResult {
  Mask form;
  AffineMap to_form;     /* maps the input set onto form */
  long long sym_order;   /* stabilizer order of the input set */
};

struct SymmetryGroup {
  long long order = 0;
  /* generators are present when the achieving-frame walk stayed within the
   * collection limit; order is exact either way */
  bool generators_complete = false;
  std::vector<AffineMap> generators;
  std::vector<std::vector<Pt>> orbits;  /* orbits on the set's own points */
  bool transitive_on_points() const { return orbits.size() == 1; }
};

inline constexpr std::uint64_t kCanonicalBudget = 400'000'000;

CanonicalResult canonical_form(int n, const Mask& s,
                               std::uint64_t node_budget = kCanonicalBudget);

Mask canonical_mask(int n, const Mask& s,
                    std::uint64_t node_budget = kCanonicalBudget);

SymmetryGroup symmetry_group(int n, const Mask& s,
                             std::uint64_t node_budget = kCanonicalBudget);

bool are_isomorphic(int n, const Mask& a, const Mask& b,
                    std::uint64_t node_budget = kCanonicalBudget);

/* witness f with f(a) = b, or nullopt when inequivalent */
std::optional<AffineMap> isomorphism(int n, const Mask& a, const Mask& b,
                                     std::uint64_t node_budget = kCanonicalBudget);

/* minimum of the translation suborbit only (used as a cheap orbit key when
 * the linear part is handled elsewhere) */
Mask translate_canonical(int n, const Mask& s);

}  // namespace capkit
