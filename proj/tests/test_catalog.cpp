#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "capkit/capfile.hpp"
#include "capkit/catalog.hpp"
#include "capkit/classify.hpp"
#include "capkit/error.hpp"
#include "helpers.hpp"

using namespace capkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("capkit-cat-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter() {
    static int c = 0;
    return c++;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string catch_error(const std::string& dir) {
  try {
    catalog_load(dir);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("tier-0 catalog lists every small-dimension class") {
  auto cat = catalog_build(0);
  CHECK(cat.tier() == 0);

  /* dim 3 censuses: sizes 9, 8, 7 have 1, 3, 2 classes */
  CHECK(cat.has("d3s09c01"));
  CHECK_FALSE(cat.has("d3s09c02"));
  CHECK(cat.has("d3s08c03"));
  CHECK_FALSE(cat.has("d3s08c04"));
  CHECK(cat.has("d3s07c02"));
  CHECK_FALSE(cat.has("d3s07c03"));

  auto& nine = cat.at("d3s09c01");
  CHECK(nine.size == 9);
  CHECK(nine.symmetry_order == 144);
  CHECK(nine.complete);
  CHECK(nine.spectrum == spectrum_digest(3, nine.rep));

  for (auto& [label, e] : cat.entries) {
    CHECK(e.dim <= 3);
    CHECK(canonical_mask(e.dim, e.rep) == e.rep);
    CHECK(e.label == label);
    CHECK(e.size == static_cast<int>(e.rep.count()));
  }

  /* labels_in_dim sorts by size descending */
  auto d3 = cat.labels_in_dim(3);
  REQUIRE(!d3.empty());
  CHECK(d3.front() == "d3s09c01");
  for (std::size_t i = 1; i < d3.size(); ++i)
    CHECK(cat.at(d3[i - 1]).size >= cat.at(d3[i]).size);

  CHECK_THROWS_AS((void)cat.at("990A1"), Error);
}

TEST_CASE("catalog save and load round-trip") {
  auto cat = catalog_build(0);
  TempDir td;
  catalog_save(cat, td.path.string());

  /* layout: n<dim>/s<size>/<label>.{cap,meta} */
  CHECK(fs::exists(td.path / "n3" / "s9" / "d3s09c01.cap"));
  CHECK(fs::exists(td.path / "n3" / "s9" / "d3s09c01.meta"));

  auto meta = slurp(td.path / "n3" / "s9" / "d3s09c01.meta");
  CHECK(meta.find("label=d3s09c01\n") == 0);
  CHECK(meta.find("\nsize=9\n") != std::string::npos);
  CHECK(meta.find("\ndim=3\n") != std::string::npos);
  CHECK(meta.find("\nsymmetry_order=144\n") != std::string::npos);
  CHECK(meta.find("\ncomplete=true\n") != std::string::npos);
  CHECK(meta.find("\nspectrum_digest=") != std::string::npos);
  CHECK(meta.find("\nprovenance=") != std::string::npos);

  auto back = catalog_load(td.path.string());
  REQUIRE(back.entries.size() == cat.entries.size());
  for (auto& [label, e] : cat.entries) {
    auto& b = back.at(label);
    CHECK(b.rep == e.rep);
    CHECK(b.dim == e.dim);
    CHECK(b.size == e.size);
    CHECK(b.symmetry_order == e.symmetry_order);
    CHECK(b.complete == e.complete);
    CHECK(b.spectrum == e.spectrum);
    CHECK(b.provenance == e.provenance);
  }
}

TEST_CASE("catalog load reports corruption with line numbers") {
  auto cat = catalog_build(0);

  SUBCASE("bad key order") {
    TempDir td;
    catalog_save(cat, td.path.string());
    auto p = td.path / "n3" / "s9" / "d3s09c01.meta";
    auto text = slurp(p);
    spit(p, "size=9\n" + text.substr(text.find('\n') + 1));
    auto msg = catch_error(td.path.string());
    CHECK(msg.find(":1:") != std::string::npos);
    CHECK(msg.find("label") != std::string::npos);
  }

  SUBCASE("non-integer field") {
    TempDir td;
    catalog_save(cat, td.path.string());
    auto p = td.path / "n3" / "s9" / "d3s09c01.meta";
    auto text = slurp(p);
    auto pos = text.find("symmetry_order=144");
    REQUIRE(pos != std::string::npos);
    spit(p, text.substr(0, pos) + "symmetry_order=many" +
                text.substr(pos + 18));
    auto msg = catch_error(td.path.string());
    CHECK(msg.find(":4:") != std::string::npos);
    CHECK(msg.find("integer") != std::string::npos);
  }

  SUBCASE("trailing line") {
    TempDir td;
    catalog_save(cat, td.path.string());
    auto p = td.path / "n3" / "s9" / "d3s09c01.meta";
    spit(p, slurp(p) + "extra=1\n");
    auto msg = catch_error(td.path.string());
    CHECK(msg.find(":8:") != std::string::npos);
  }

  SUBCASE("corrupt cap file") {
    TempDir td;
    catalog_save(cat, td.path.string());
    auto p = td.path / "n3" / "s9" / "d3s09c01.cap";
    auto text = slurp(p);
    spit(p, text + "012\n012\n"); /* duplicate point */
    auto msg = catch_error(td.path.string());
    CHECK(msg.find("d3s09c01") != std::string::npos);
    CHECK(!msg.empty());
  }

  SUBCASE("cap without meta") {
    TempDir td;
    catalog_save(cat, td.path.string());
    fs::remove(td.path / "n3" / "s9" / "d3s09c01.meta");
    auto msg = catch_error(td.path.string());
    CHECK(msg.find("without meta") != std::string::npos);
  }
}

TEST_CASE("catalog load reports stale metadata with recomputed values") {
  auto cat = catalog_build(0);

  SUBCASE("wrong symmetry order") {
    TempDir td;
    catalog_save(cat, td.path.string());
    auto p = td.path / "n3" / "s9" / "d3s09c01.meta";
    auto text = slurp(p);
    auto pos = text.find("symmetry_order=144");
    spit(p, text.substr(0, pos) + "symmetry_order=143" +
                text.substr(pos + 18));
    auto msg = catch_error(td.path.string());
    CHECK(msg.find("stale symmetry_order") != std::string::npos);
    CHECK(msg.find("stored 143") != std::string::npos);
    CHECK(msg.find("recomputed 144") != std::string::npos);
  }

  SUBCASE("wrong completeness") {
    TempDir td;
    catalog_save(cat, td.path.string());
    auto p = td.path / "n3" / "s9" / "d3s09c01.meta";
    auto text = slurp(p);
    auto pos = text.find("complete=true");
    spit(p, text.substr(0, pos) + "complete=false" + text.substr(pos + 13));
    auto msg = catch_error(td.path.string());
    CHECK(msg.find("stale complete") != std::string::npos);
    CHECK(msg.find("recomputed true") != std::string::npos);
  }

  SUBCASE("representative not canonical") {
    TempDir td;
    catalog_save(cat, td.path.string());
    /* translate the 9-cap: still a cap of the right size, not canonical */
    auto& e = cat.at("d3s09c01");
    Mask moved;
    for (int p : e.rep.to_points()) moved.set(space(3).add(p, 1));
    save_cap((td.path / "n3" / "s9" / "d3s09c01.cap").string(), 3, moved);
    auto msg = catch_error(td.path.string());
    CHECK(msg.find("not in canonical form") != std::string::npos);
  }
}

TEST_CASE("misplaced entries are rejected") {
  auto cat = catalog_build(0);
  TempDir td;
  catalog_save(cat, td.path.string());
  fs::create_directories(td.path / "n3" / "s5");
  fs::rename(td.path / "n3" / "s9" / "d3s09c01.cap",
             td.path / "n3" / "s5" / "d3s09c01.cap");
  fs::rename(td.path / "n3" / "s9" / "d3s09c01.meta",
             td.path / "n3" / "s5" / "d3s09c01.meta");
  auto msg = catch_error(td.path.string());
  CHECK(msg.find("misplaced") != std::string::npos);
}

TEST_CASE("table rendering keeps the fixed label order") {
  /* a fake catalog with the dim-4 labels is enough for rendering */
  Catalog cat;
  auto add = [&](const std::string& label, int dim, int size) {
    CatalogEntry e;
    e.label = label;
    e.dim = dim;
    e.size = size;
    cat.entries[label] = e;
  };
  for (auto& l : {"990A1", "990A2", "990A3", "990B", "981A", "981I", "981J",
                  "972A", "963A", "963B", "954A", "882A1", "882A2"})
    add(l, 4, 18);
  for (int i = 1; i <= 7; ++i) add("d4s18c0" + std::to_string(i), 4, 18);
  add("19cap", 4, 19);
  add("20cap", 4, 20);

  auto labels = table1_labels(cat);
  REQUIRE(labels.size() == 22);
  CHECK(labels.front() == "990A1");
  CHECK(labels[4] == "981A");
  CHECK(labels[5] == "d4s18c01");
  CHECK(labels[12] == "981I");
  CHECK(labels.back() == "20cap");

  std::vector<Table1Cell> cells = {{"990A1", "990A1", 5},
                                   {"20cap", "990A1", 2},
                                   {"990A1", "20cap", 2}};
  auto tsv = render_table1_tsv(cat, cells);
  CHECK(tsv.find("class\t990A1\t") == 0);
  CHECK(tsv.find("\n990A1\t5\n") != std::string::npos);
  auto last = tsv.rfind("\n20cap\t");
  REQUIRE(last != std::string::npos);
  CHECK(tsv.substr(last + 7, 1) == "2");
  CHECK(tsv.find('?') != std::string::npos); /* uncomputed cells marked */
}
