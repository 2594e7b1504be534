#include "capkit/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "capkit/capfile.hpp"
#include "capkit/classify.hpp"
#include "capkit/error.hpp"
#include "capkit/scan.hpp"

namespace capkit {
namespace {

namespace fs = std::filesystem;

std::string internal_id(int dim, int size, int idx1) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "d%ds%02dc%02d", dim, size, idx1);
  return buf;
}

CatalogEntry entry_from_class(int dim, const CapClass& c, std::string label,
                              std::string provenance) {
  CatalogEntry e;
  e.label = std::move(label);
  e.dim = dim;
  e.size = c.size;
  e.rep = c.rep;
  e.symmetry_order = c.sym_order;
  e.complete = c.complete;
  e.spectrum = spectrum_digest(dim, c.rep);
  e.provenance = std::move(provenance);
  return e;
}

void insert_entry(Catalog& cat, CatalogEntry e) {
  require(cat.entries.emplace(e.label, e).second,
          "catalog: duplicate label " + e.label);
}

/* lex-max sorted direction triple, as a three-digit tag */
std::string prefix_of(const Mask& rep) {
  auto t = spectrum(4, rep).begin()->first;
  char buf[8];
  std::snprintf(buf, sizeof buf, "%d%d%d", t[0], t[1], t[2]);
  return buf;
}

int scan_max(const Mask& left, const Mask& right, int threads,
             std::map<int, long long>* tallies = nullptr) {
  ScanTask t;
  t.n = 5;
  t.left = left;
  t.right0 = right;
  if (tallies) t.thresholds = {5, 6};
  t.threads = threads;
  auto r = scan_pair(t);
  if (tallies) *tallies = r.tallies;
  return r.max_middle;
}

/* The size-18 naming pins.  Prefix census must be 990:4 981:10 972:1 963:2
 * 954:1 882:2; within a prefix group, classes are told apart by scan maxima
 * (self, against 882A2, against 990A1).  Unpinnable classes keep their
 * internal id. */
std::vector<std::string> name_dim4_18s(const std::vector<CapClass>& cls,
                                       int threads,
                                       std::vector<std::string>* basis) {
  const int m = static_cast<int>(cls.size());
  require(m == 20, "naming: expected 20 size-18 classes, found " +
                       std::to_string(m));
  std::vector<std::string> label(m);
  std::vector<std::string> why(m);
  std::map<std::string, std::vector<int>> group;
  for (int i = 0; i < m; ++i) group[prefix_of(cls[i].rep)].push_back(i);

  auto group_sizes = [&](const std::string& p, std::size_t want) {
    require(group.count(p) && group[p].size() == want,
            "naming: prefix " + p + " census mismatch");
  };
  group_sizes("990", 4);
  group_sizes("981", 10);
  group_sizes("972", 1);
  group_sizes("963", 2);
  group_sizes("954", 1);
  group_sizes("882", 2);
  require(group.size() == 6, "naming: unexpected direction-triple prefix");

  label[group["972"][0]] = "972A";
  why[group["972"][0]] = "unique class with direction triple 9.7.2";
  label[group["954"][0]] = "954A";
  why[group["954"][0]] = "unique class with direction triple 9.5.4";

  /* 882 pair: self-scan tallies separate them */
  int a1 = -1, a2 = -1;
  for (int i : group["882"]) {
    std::map<int, long long> tal;
    scan_max(cls[i].rep, cls[i].rep, threads, &tal);
    if (tal[5] == 144 && tal[6] == 144) {
      require(a1 < 0, "naming: two 882 classes with the A1 tally");
      a1 = i;
    } else if (tal[6] == 32 && tal[5] > 32) {
      require(a2 < 0, "naming: two 882 classes with the A2 tally");
      a2 = i;
    }
  }
  require(a1 >= 0 && a2 >= 0, "naming: 882 self-scan tallies unmatched");
  label[a1] = "882A1";
  why[a1] = "self-scan: 144 embeddings reach middle 5 and all of them 9";
  label[a2] = "882A2";
  why[a2] = "self-scan: 32 embeddings reach middle 6";
  const Mask rep882a2 = cls[a2].rep;

  /* 963 pair: self-scan maximum 6 vs 4 */
  {
    auto& g = group["963"];
    int s0 = scan_max(cls[g[0]].rep, cls[g[0]].rep, threads);
    int s1 = scan_max(cls[g[1]].rep, cls[g[1]].rep, threads);
    require((s0 == 6 && s1 == 4) || (s0 == 4 && s1 == 6),
            "naming: 963 self-scan maxima not {4,6}");
    int b = s0 == 6 ? g[0] : g[1], a = s0 == 6 ? g[1] : g[0];
    label[b] = "963B";
    why[b] = "self-scan maximum 6";
    label[a] = "963A";
    why[a] = "self-scan maximum 4";
  }

  /* 990 group: A1 by self-scan maximum 5; A2 by maximum 5 against 882A2;
   * A3 vs B by maximum 3 vs 4 against A1 */
  {
    auto& g = group["990"];
    std::vector<int> rest;
    int i990a1 = -1;
    for (int i : g) {
      if (scan_max(cls[i].rep, cls[i].rep, threads) == 5) {
        require(i990a1 < 0, "naming: several 990 classes with self-scan 5");
        i990a1 = i;
      } else {
        rest.push_back(i);
      }
    }
    require(i990a1 >= 0, "naming: no 990 class with self-scan maximum 5");
    label[i990a1] = "990A1";
    why[i990a1] = "unique triple-9.9.0 class with self-scan maximum 5";
    int i990a2 = -1;
    std::vector<int> rest2;
    for (int i : rest) {
      if (scan_max(cls[i].rep, rep882a2, threads) == 5) {
        require(i990a2 < 0, "naming: several 990 classes reach 5 over 882A2");
        i990a2 = i;
      } else {
        rest2.push_back(i);
      }
    }
    require(i990a2 >= 0 && rest2.size() == 2,
            "naming: 990A2 pin failed");
    label[i990a2] = "990A2";
    why[i990a2] = "unique remaining triple-9.9.0 class with scan maximum 5 over 882A2";
    int v0 = scan_max(cls[i990a1].rep, cls[rest2[0]].rep, threads);
    int v1 = scan_max(cls[i990a1].rep, cls[rest2[1]].rep, threads);
    require((v0 == 3 && v1 == 4) || (v0 == 4 && v1 == 3),
            "naming: 990A3/990B scan maxima over 990A1 not {3,4}");
    int ia3 = v0 == 3 ? rest2[0] : rest2[1];
    int ib = v0 == 3 ? rest2[1] : rest2[0];
    label[ia3] = "990A3";
    why[ia3] = "scan maximum 3 over 990A1";
    label[ib] = "990B";
    why[ib] = "scan maximum 4 over 990A1";
  }

  /* 981 group: A by self-scan maximum 5; I and J by maxima 5 and 3 against
   * 882A2; the seven others are indistinguishable here */
  {
    auto& g = group["981"];
    std::vector<int> rest;
    int i981a = -1;
    for (int i : g) {
      if (scan_max(cls[i].rep, cls[i].rep, threads) == 5) {
        require(i981a < 0, "naming: several 981 classes with self-scan 5");
        i981a = i;
      } else {
        rest.push_back(i);
      }
    }
    require(i981a >= 0, "naming: no 981 class with self-scan maximum 5");
    label[i981a] = "981A";
    why[i981a] = "unique triple-9.8.1 class with self-scan maximum 5";
    int ii = -1, ij = -1;
    for (int i : rest) {
      int v = scan_max(cls[i].rep, rep882a2, threads);
      if (v == 5) {
        require(ii < 0, "naming: several 981 classes reach 5 over 882A2");
        ii = i;
      } else if (v == 3) {
        require(ij < 0, "naming: several 981 classes reach only 3 over 882A2");
        ij = i;
      } else {
        require(v == 4, "naming: unexpected 981 scan maximum over 882A2");
      }
    }
    require(ii >= 0 && ij >= 0, "naming: 981I/981J pins failed");
    label[ii] = "981I";
    why[ii] = "unique remaining triple-9.8.1 class with scan maximum 5 over 882A2";
    label[ij] = "981J";
    why[ij] = "unique remaining triple-9.8.1 class with scan maximum 3 over 882A2";
  }

  for (int i = 0; i < m; ++i)
    if (label[i].empty()) {
      label[i] = internal_id(4, 18, i + 1);
      why[i] = "not pinned by scans; stable internal id";
    }
  if (basis) *basis = why;
  return label;
}

std::uint64_t now_ms() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

std::string meta_text(const CatalogEntry& e) {
  std::ostringstream os;
  os << "label=" << e.label << '\n';
  os << "size=" << e.size << '\n';
  os << "dim=" << e.dim << '\n';
  os << "symmetry_order=" << e.symmetry_order << '\n';
  os << "complete=" << (e.complete ? "true" : "false") << '\n';
  os << "spectrum_digest=" << e.spectrum << '\n';
  os << "provenance=" << e.provenance << '\n';
  return os.str();
}

long long parse_ll(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    long long r = std::stoll(v, &pos);
    require(pos == v.size(), where);
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(where);
  }
}

CatalogEntry load_entry(const fs::path& meta_path) {
  std::ifstream in(meta_path);
  require(in.good(), "catalog: cannot open " + meta_path.string());
  static const char* kKeys[] = {"label",    "size",
                                "dim",      "symmetry_order",
                                "complete", "spectrum_digest",
                                "provenance"};
  std::string vals[7];
  std::string line;
  int lineno = 0;
  auto where = [&](const std::string& what) {
    return "catalog meta " + meta_path.string() + ":" +
           std::to_string(lineno) + ": " + what;
  };
  for (int k = 0; k < 7; ++k) {
    ++lineno;
    require(static_cast<bool>(std::getline(in, line)),
            where("missing key " + std::string(kKeys[k])));
    auto eq = line.find('=');
    require(eq != std::string::npos, where("expected key=value"));
    require(line.substr(0, eq) == kKeys[k],
            where("expected key " + std::string(kKeys[k])));
    vals[k] = line.substr(eq + 1);
  }
  ++lineno;
  require(!std::getline(in, line), where("trailing content"));

  CatalogEntry e;
  e.label = vals[0];
  lineno = 2;
  e.size = static_cast<int>(parse_ll(vals[1], where("size not an integer")));
  lineno = 3;
  e.dim = static_cast<int>(parse_ll(vals[2], where("dim not an integer")));
  lineno = 4;
  e.symmetry_order = parse_ll(vals[3], where("symmetry_order not an integer"));
  lineno = 5;
  require(vals[4] == "true" || vals[4] == "false",
          where("complete must be true or false"));
  e.complete = vals[4] == "true";
  e.spectrum = vals[5];
  e.provenance = vals[6];

  require(e.label == meta_path.stem().string(),
          "catalog meta " + meta_path.string() + ":1: label " + e.label +
              " does not match the file name");
  require(e.dim >= 1 && e.dim <= 5,
          "catalog meta " + meta_path.string() + ":3: dim out of range");

  fs::path cap_path = meta_path;
  cap_path.replace_extension(".cap");
  CapFile cf;
  try {
    cf = load_cap(cap_path.string());
  } catch (const Error& err) {
    fail("catalog entry " + e.label + ": " + err.what());
  }
  require(cf.n == e.dim, "catalog entry " + e.label +
                             ": cap file dimension " + std::to_string(cf.n) +
                             " does not match meta dim " +
                             std::to_string(e.dim));
  e.rep = cf.points;

  /* stale checks: everything derivable must match recomputation */
  auto stale = [&](const std::string& key, const std::string& stored,
                   const std::string& recomputed) {
    fail("catalog entry " + e.label + ": stale " + key + ": stored " +
         stored + ", recomputed " + recomputed);
  };
  int size = static_cast<int>(e.rep.count());
  if (size != e.size)
    stale("size", std::to_string(e.size), std::to_string(size));
  if (canonical_mask(e.dim, e.rep) != e.rep)
    fail("catalog entry " + e.label +
         ": representative is not in canonical form");
  long long sym = symmetry_group(e.dim, e.rep).order;
  if (sym != e.symmetry_order)
    stale("symmetry_order", std::to_string(e.symmetry_order),
          std::to_string(sym));
  bool comp = is_complete(e.dim, e.rep);
  if (comp != e.complete)
    stale("complete", e.complete ? "true" : "false", comp ? "true" : "false");
  std::string dig = spectrum_digest(e.dim, e.rep);
  if (dig != e.spectrum) stale("spectrum_digest", e.spectrum, dig);
  return e;
}

const std::vector<std::string>& pinned_names() {
  static const std::vector<std::string> v = {
      "990A1", "990A2", "990A3", "990B", "981A", "981I", "981J",
      "972A",  "963A",  "963B",  "954A", "882A1", "882A2"};
  return v;
}

}  // namespace

const CatalogEntry& Catalog::at(const std::string& label) const {
  auto it = entries.find(label);
  require(it != entries.end(), "catalog: no entry named " + label);
  return it->second;
}

std::vector<std::string> Catalog::labels_in_dim(int dim) const {
  std::vector<const CatalogEntry*> v;
  for (auto& [_, e] : entries)
    if (e.dim == dim) v.push_back(&e);
  std::sort(v.begin(), v.end(), [](auto* a, auto* b) {
    return a->size != b->size ? a->size > b->size : a->label < b->label;
  });
  std::vector<std::string> out;
  for (auto* e : v) out.push_back(e->label);
  return out;
}

int Catalog::tier() const {
  if (!has("d3s09c01")) return -1;
  if (!has("20cap")) return 0;
  if (!has("45") || !has("delta686") || !has("41E")) return 1;
  return 2;
}

std::map<std::string, Mask> named_dim4(const Catalog& cat) {
  std::map<std::string, Mask> m;
  for (auto& [_, e] : cat.entries)
    if (e.dim == 4) m[e.label] = e.rep;
  return m;
}

Catalog catalog_build(int tier, int threads) {
  require(tier >= 0 && tier <= 2, "catalog: tier must be 0, 1, or 2");
  Catalog cat;

  for (int n = 1; n <= 3; ++n) {
    auto bysize = classify_all_small(n);
    for (auto& [size, cls] : bysize) {
      if (size == 0) continue;
      auto sorted = cls;
      sort_classes(sorted);
      for (std::size_t i = 0; i < sorted.size(); ++i)
        insert_entry(cat,
                     entry_from_class(
                         n, sorted[i], internal_id(n, size, static_cast<int>(i) + 1),
                         "exhaustive growth classification"));
    }
  }
  if (tier < 1) return cat;

  auto big = classify_dim4_large();
  {
    auto cls = big.at(18);
    sort_classes(cls);
    std::vector<std::string> why;
    auto labels = name_dim4_18s(cls, threads, &why);
    for (std::size_t i = 0; i < cls.size(); ++i)
      insert_entry(cat, entry_from_class(
                            4, cls[i], labels[i],
                            "dim-4 layer-triple classification; " + why[i]));
  }
  for (int size : {19, 20}) {
    auto it = big.find(size);
    auto cls = it == big.end() ? std::vector<CapClass>{} : it->second;
    sort_classes(cls);
    if (size == 20)
      require(cls.size() == 1, "catalog: expected a unique 20-cap class");
    for (std::size_t i = 0; i < cls.size(); ++i) {
      std::string label = std::to_string(size) + "cap";
      if (i > 0) label += static_cast<char>('B' + (i - 1));
      insert_entry(cat, entry_from_class(4, cls[i], label,
                                         "extension of the size-18 classes"));
    }
  }
  if (tier < 2) return cat;

  auto named = named_dim4(cat);
  auto derived = derive_representatives(
      named, {"45", "delta686", "41A", "41B", "41C", "41D", "41E"});
  for (auto& d : derived) {
    CapClass c;
    c.rep = d.points;
    c.size = static_cast<int>(d.points.count());
    c.sym_order = symmetry_group(5, d.points).order;
    c.complete = is_complete(5, d.points);
    insert_entry(cat, entry_from_class(5, c, d.name, d.provenance));
  }
  return cat;
}

void catalog_save(const Catalog& cat, const std::string& dir) {
  for (auto& [_, e] : cat.entries) {
    fs::path sub = fs::path(dir) / ("n" + std::to_string(e.dim)) /
                   ("s" + std::to_string(e.size));
    fs::create_directories(sub);
    save_cap((sub / (e.label + ".cap")).string(), e.dim, e.rep);
    std::ofstream out(sub / (e.label + ".meta"));
    require(out.good(), "catalog: cannot write under " + sub.string());
    out << meta_text(e);
    require(out.good(), "catalog: write failed under " + sub.string());
  }
}

Catalog catalog_load(const std::string& dir) {
  require(fs::is_directory(dir), "catalog: no directory " + dir);
  std::vector<fs::path> metas;
  for (auto& p : fs::recursive_directory_iterator(dir))
    if (p.is_regular_file() && p.path().extension() == ".meta")
      metas.push_back(p.path());
  std::sort(metas.begin(), metas.end());
  Catalog cat;
  for (auto& p : metas) {
    auto e = load_entry(p);
    /* placement must match the layout */
    fs::path want = fs::path(dir) / ("n" + std::to_string(e.dim)) /
                    ("s" + std::to_string(e.size)) / (e.label + ".meta");
    require(fs::weakly_canonical(p) == fs::weakly_canonical(want),
            "catalog entry " + e.label + ": misplaced at " + p.string());
    insert_entry(cat, e);
  }
  for (auto& p : fs::recursive_directory_iterator(dir))
    if (p.is_regular_file() && p.path().extension() == ".cap") {
      fs::path meta = p.path();
      meta.replace_extension(".meta");
      require(fs::exists(meta),
              "catalog: cap file without meta: " + p.path().string());
    }
  return cat;
}

std::vector<std::string> table1_labels(const Catalog& cat) {
  std::vector<std::string> out = {"990A1", "990A2", "990A3", "990B", "981A"};
  std::set<std::string> pinned(pinned_names().begin(), pinned_names().end());
  for (auto& l : cat.labels_in_dim(4))
    if (!pinned.count(l) && cat.at(l).size == 18) out.push_back(l);
  for (auto& l : {"981I", "981J", "972A", "963A", "963B", "954A", "882A1",
                  "882A2", "19cap", "20cap"})
    out.push_back(l);
  for (auto& l : out) (void)cat.at(l); /* all must exist */
  return out;
}

std::vector<Table1Cell> table1_cells(
    const Catalog& cat, std::vector<std::pair<std::string, std::string>> cells,
    int threads, const std::string& checkpoint, std::uint64_t wall_limit_ms) {
  if (cells.empty()) {
    auto labels = table1_labels(cat);
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        cells.push_back({labels[i], labels[j]});
  }
  std::map<std::pair<std::string, std::string>, int> done;
  if (!checkpoint.empty() && fs::exists(checkpoint)) {
    std::ifstream in(checkpoint);
    std::string word, row, col;
    int value;
    int lineno = 0;
    while (in >> word) {
      ++lineno;
      require(word == "cell" && static_cast<bool>(in >> row >> col >> value),
              "table checkpoint " + checkpoint + ":" + std::to_string(lineno) +
                  ": expected 'cell <row> <col> <value>'");
      done[{row, col}] = value;
    }
  }
  const std::uint64_t start = now_ms();
  std::vector<Table1Cell> out;
  bool budget_out = false;
  for (auto& [row, col] : cells) {
    auto it = done.find({row, col});
    if (it == done.end()) it = done.find({col, row});
    if (it != done.end()) {
      out.push_back({row, col, it->second});
      continue;
    }
    if (budget_out || (wall_limit_ms && now_ms() - start > wall_limit_ms)) {
      budget_out = true; /* known cells above still flow through */
      continue;
    }
    ScanTask t;
    t.n = 5;
    t.left = cat.at(row).rep;
    t.right0 = cat.at(col).rep;
    t.threads = threads;
    int v = scan_pair(t).max_middle;
    out.push_back({row, col, v});
    if (!checkpoint.empty()) {
      std::ofstream ck(checkpoint, std::ios::app);
      ck << "cell " << row << ' ' << col << ' ' << v << '\n';
    }
  }
  return out;
}

std::string render_table1_tsv(const Catalog& cat,
                              const std::vector<Table1Cell>& cells) {
  auto labels = table1_labels(cat);
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < labels.size(); ++i) pos[labels[i]] = i;
  std::map<std::pair<std::size_t, std::size_t>, int> val;
  for (auto& c : cells) {
    auto r = pos.find(c.row), q = pos.find(c.col);
    require(r != pos.end() && q != pos.end(),
            "table: unknown label " + (r == pos.end() ? c.row : c.col));
    auto key = std::minmax(r->second, q->second);
    val[{key.second, key.first}] = c.value;
  }
  std::ostringstream os;
  os << "class";
  for (auto& l : labels) os << '\t' << l;
  os << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << labels[i];
    for (std::size_t j = 0; j <= i; ++j) {
      auto it = val.find({i, j});
      os << '\t';
      if (it != val.end())
        os << it->second;
      else
        os << '?';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace capkit
