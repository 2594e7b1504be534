#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "capkit/capset.hpp"

/* Persistent store of class representatives.  Tiers:
 *   0  every class in dimensions 1..3
 *   1  dim-4 classes of size >= 18, with the scan-pinned names
 *   2  scan-derived dim-5 representatives (45, delta686, 41A..41E)
 * Layout: <dir>/n<dim>/s<size>/<label>.cap + <label>.meta, the meta file
 * holding exactly the keys label, size, dim, symmetry_order, complete,
 * spectrum_digest, provenance. */
namespace capkit {

struct CatalogEntry {
  std::string label;
  int dim = 0;
  int size = 0;
  Mask rep; /* canonical form */
  long long symmetry_order = 0;
  bool complete = false;
  std::string spectrum; /* spectrum_digest of rep */
  std::string provenance;
};

struct Catalog {
  std::map<std::string, CatalogEntry> entries;

  const CatalogEntry& at(const std::string& label) const;
  bool has(const std::string& label) const { return entries.count(label) != 0; }
  /* labels in a dimension, sorted by (size desc, label) */
  std::vector<std::string> labels_in_dim(int dim) const;
  int tier() const; /* highest fully present tier, -1 when empty */
};

/* dim-4 size-18 classes by pinned name (plus 19cap/20cap); the input for
 * scan derivations */
std::map<std::string, Mask> named_dim4(const Catalog& cat);

Catalog catalog_build(int tier, int threads = 0);
void catalog_save(const Catalog& cat, const std::string& dir);
/* validates every entry: files parse, representatives are canonical caps,
 * stored metadata matches recomputation */
Catalog catalog_load(const std::string& dir);

/* label order of the pairwise-maximum table: the dim-4 classes of sizes
 * 18, 19, 20 in pinned-name order with internal ids in the unpinned slots */
std::vector<std::string> table1_labels(const Catalog& cat);

struct Table1Cell {
  std::string row, col;
  int value = 0;
};

/* maximum middle-layer sizes for the given label pairs; empty selection
 * means the full lower triangle.  checkpoint: one completed cell per line,
 * resumable.  A wall limit stops between cells; finished cells are still
 * returned (and checkpointed). */
std::vector<Table1Cell> table1_cells(const Catalog& cat,
                                     std::vector<std::pair<std::string, std::string>> cells,
                                     int threads = 0,
                                     const std::string& checkpoint = {},
                                     std::uint64_t wall_limit_ms = 0);

std::string render_table1_tsv(const Catalog& cat,
                              const std::vector<Table1Cell>& cells);

}  // namespace capkit
