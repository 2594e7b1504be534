#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "capkit/canonical.hpp"
#include "capkit/capset.hpp"

/* Two-layer scans over embeddings of class representatives, middle-layer
 * maximization, and the three-layer fill for prescribed 3x3 point-count
 * matrices.  The scanned direction is always standard_dir(n): the left cap
 * sits in layer value 2, the right cap in layer value 1, and the contested
 * middle layer is value 0. */
namespace capkit {

/* full-space middle-layer points that are no third point of any (a,b) */
Mask middle_allowed(int n, const Mask& a, const Mask& b);

struct MiddleMax {
  int size = 0;
  std::vector<Mask> witnesses;  /* all maximum caps, full-space masks */
};

/* maximum cap inside middle_allowed(a,b); lines inside the middle layer
 * count */
MiddleMax max_middle(int n, const Mask& a, const Mask& b);

/* maximum cap inside an arbitrary candidate mask, with all witnesses */
MiddleMax max_cap_in(int n, const Mask& allowed);

/* all caps of exactly the given size inside the candidate mask */
std::vector<Mask> caps_of_size_in(int n, const Mask& allowed, int size);

enum class PruneMode { stream, quotient };

inline constexpr std::size_t kScanWitnessLimit = 512;

struct ScanTask {
  int n = 0;          /* full dimension; layers live in space(n-1) */
  Mask left;          /* fixed cap, space(n-1) coordinates */
  Mask right0;        /* class representative to range over, space(n-1) */
  PruneMode mode = PruneMode::stream;
  std::vector<int> thresholds;  /* tally embeddings with max >= t */
  /* collect all caps of this middle size over achieving embeddings
   * (-1: only maximum witnesses) */
  int collect_size = -1;
  std::size_t witness_limit = kScanWitnessLimit;
  int threads = 0;              /* 0 = resolve_threads() */
  std::string checkpoint;       /* append-only log; resumable */
  std::uint64_t wall_limit_ms = 0;  /* 0 = unlimited */
  /* stop once this many embeddings (translation cosets) are finished;
   * 0 = unlimited.  Like the wall limit, exhaustion throws after
   * checkpointing the completed ranges. */
  long long coset_limit = 0;
};

struct ScanResult {
  int max_middle = -1;
  long long embeddings = 0;  /* linear maps T examined (counted, not stored) */
  /* threshold -> number of maps T whose middle maximum reaches it */
  std::map<int, long long> tallies;
  /* stacked n-dimensional caps achieving max_middle (or collect_size),
   * ascending, capped */
  std::vector<Mask> witnesses;
  /* embeddings with >= 7 allowed points where the allowed set is not a
   * 9-point cap */
  long long fastpath_violations = 0;
  bool witnesses_truncated = false;
  std::uint64_t digest = 0;
};

/* Ranges over B = T(right0) for T in GL(n-1,3); translations of B never
 * change the middle statistics, so each T stands for its whole translation
 * coset.  quotient mode walks one representative per left coset of the
 * symmetry group of right0 and scales tallies by the group order. */
ScanResult scan_pair(const ScanTask& task);

/* layers by standard_dir(n): a at value 2, m at 0, b at 1 */
Mask stack_standard(int n, const Mask& a, const Mask& m, const Mask& b);

/* Three-layer fill: prescribed 3x3 matrix of point counts for the flats
 * (d1,d2) = (i,j), entries indexed by field value, -1 wildcard.  The left
 * cap (d1 = 2 column) ranges over oriented placements of the given class
 * representatives; remaining flats are filled in ascending allowed order,
 * prescribed counts first. */
struct ThreeLayerTask {
  int n = 0;
  int target[3][3] = {{-1, -1, -1}, {-1, -1, -1}, {-1, -1, -1}};
  std::vector<Mask> left_classes;    /* space(n-1) representatives */
  std::vector<Mask> bottom_classes;  /* optional; empty = fill freely */
  std::uint64_t node_budget = 400'000'000;
};

/* all caps realizing the matrix, canonical forms, deduplicated */
std::vector<Mask> scan_three_layer(const ThreeLayerTask& task);

struct DerivedCap {
  std::string name;
  Mask points;  /* canonical form, dim 5 */
  std::string provenance;
};

/* Scan-derived dim-5 representatives over the named dim-4 classes.
 * Targets: "45", "delta686", "41A".."41E".  Requires named18 to contain
 * 882A1, 882A2, 963B, 981A, 981I, 990A1, 990A2, 954A, 972A (space(4)
 * representatives). */
std::vector<DerivedCap> derive_representatives(
    const std::map<std::string, Mask>& named18,
    const std::vector<std::string>& targets);

}  // namespace capkit
