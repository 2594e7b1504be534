#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "capkit/capfile.hpp"
#include "capkit/capset.hpp"
#include "capkit/catalog.hpp"

using namespace capkit;
namespace fs = std::filesystem;

namespace {

struct RunOut {
  int rc = -1;
  std::string out; /* stdout + stderr interleaved */
};

/* run the built binary with sh -c; argv must already be quoted as needed */
RunOut run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = (env.empty() ? "" : env + " ") + CAPKIT_CLI_PATH + " " +
                    args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunOut r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("capkit_cli_" + std::to_string(getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str(const std::string& sub = "") const {
    return (sub.empty() ? path : path / sub).string();
  }
};

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify writes class files and an index") {
  TempDir tmp;
  RunOut one = run_cli("classify --dim 1 --min-size 2 --out " + tmp.str("d1"));
  CHECK(one.rc == 0);
  CHECK(contains(one.out, "1 classes written"));

  RunOut two = run_cli("classify --dim 2 --min-size 1 --out " + tmp.str("d2"));
  CHECK(two.rc == 0);
  CHECK(contains(two.out, "4 classes written"));
  CapFile sq = load_cap(tmp.str("d2") + "/d2s04c01.cap");
  CHECK(sq.n == 2);
  CHECK(sq.points.count() == 4);
  CHECK(is_complete(2, sq.points));
  std::ifstream idx(tmp.str("d2") + "/index.tsv");
  std::string header;
  std::getline(idx, header);
  CHECK(header == "label\tsize\tsymmetry_order\tcomplete\tspectrum");

  CHECK(run_cli("classify --dim 5 --min-size 40 --out " + tmp.str("x")).rc == 2);
  CHECK(run_cli("classify --dim 4 --min-size 17 --out " + tmp.str("x")).rc == 2);
  CHECK(run_cli("classify --dim 3 --out " + tmp.str("x")).rc == 2);
}

TEST_CASE("diagram certifies, solves, and renders") {
  TempDir tmp;
  std::string forbids46 =
      " --forbid 20,20,6 --forbid 20,19,7 --forbid 19,19,8 --forbid 20,18,8";
  RunOut cert = run_cli("diagram --dim 5 --size 46" + forbids46 +
                        " --line 10,133,-29190 --certify --out " +
                        tmp.str("t46"));
  CHECK(cert.rc == 0);
  CHECK(contains(cert.out, "INFEASIBLE"));

  /* dropping the forbidden triples leaves points below the line */
  RunOut weak = run_cli("diagram --dim 5 --size 46 --line 10,133,-29190 "
                        "--certify --out " +
                        tmp.str("t46b"));
  CHECK(weak.rc == 1);
  CHECK(contains(weak.out, "NOT CERTIFIED"));

  std::string forbids45 =
      " --forbid 20,20,5 --forbid 20,19,6 --forbid 20,18,7 --forbid 19,19,7"
      " --forbid 19,18,8";
  RunOut dist = run_cli("diagram --dim 5 --size 45" + forbids45 + " --out " +
                        tmp.str("t45"));
  CHECK(dist.rc == 0);
  CHECK(contains(dist.out, "1 distribution"));
  CHECK(contains(dist.out, "18.18.9:55 15.15.15:66"));

  RunOut plain = run_cli("diagram --dim 2 --size 4 --out " + tmp.str("t4"));
  CHECK(plain.rc == 0);
  CHECK(!contains(plain.out, "INFEASIBLE"));
  std::ifstream tsv(tmp.str("t4") + "/diagram.tsv");
  std::string header;
  std::getline(tsv, header);
  CHECK(header == "a\tb\tc\tx\ty\td");
  CHECK(fs::file_size(tmp.str("t4") + "/diagram.svg") > 0);

  CHECK(run_cli("diagram --dim 5 --size 45 --forbid 1,2 --out " +
                tmp.str("bad")).rc == 2);
  CHECK(run_cli("diagram --dim 5 --size 45 --line 0,1,2 --out " +
                tmp.str("bad")).rc == 2);
}

TEST_CASE("scan runs on files and handles the empty edges") {
  TempDir tmp;
  Catalog t0 = catalog_build(0);
  save_cap(tmp.str("sq.cap"), 2, t0.at("d2s04c01").rep);

  RunOut files = run_cli("scan --left " + tmp.str("sq.cap") + " --right " +
                         tmp.str("sq.cap") + " --tally 1");
  CHECK(files.rc == 0);
  CHECK(contains(files.out, "max 1"));
  CHECK(contains(files.out, "embeddings 48"));
  CHECK(contains(files.out, "tally>=1 "));

  RunOut empty = run_cli("scan --left empty --right empty --dim 4");
  CHECK(empty.rc == 0);
  CHECK(contains(empty.out, "max 9"));

  CHECK(run_cli("scan --left empty --right empty").rc == 2);
  RunOut unpinned = run_cli("scan --left 981C --right 882A2");
  CHECK(unpinned.rc == 2);
  CHECK(contains(unpinned.out, "internal ids"));
  CHECK(run_cli("scan --left " + tmp.str("sq.cap") + " --right " +
                tmp.str("sq.cap") + " --dim 5").rc == 2);
}

TEST_CASE("catalog and verify surface tier requirements") {
  TempDir tmp;
  RunOut build = run_cli("catalog build --tier 0 --out " + tmp.str("cat"));
  CHECK(build.rc == 0);
  CHECK(contains(build.out, "catalog tier 0"));

  RunOut list = run_cli("catalog list --catalog " + tmp.str("cat"));
  CHECK(list.rc == 0);
  CHECK(contains(list.out, "d3s09c01\t3\t9\t144\tyes"));

  RunOut low = run_cli("verify --suite structure-lemmas --catalog " +
                       tmp.str("cat"));
  CHECK(low.rc == 1);
  CHECK(contains(low.out, "catalog tier"));

  CHECK(run_cli("verify --suite bogus --catalog " + tmp.str("cat")).rc == 2);
  CHECK(run_cli("verify --suite all --catalog " + tmp.str("missing")).rc == 1);

  RunOut t1low = run_cli("table1 --all --catalog " + tmp.str("cat"));
  CHECK(t1low.rc == 1);
  CHECK(contains(t1low.out, "tier 1 required"));
  CHECK(run_cli("table1 --catalog " + tmp.str("cat")).rc == 2);
}

TEST_CASE("usage errors and thread plumbing") {
  CHECK(run_cli("").rc == 2);
  CHECK(run_cli("frobnicate").rc == 2);
  CHECK(run_cli("classify --dim 2").rc == 2); /* missing required options */

  /* explicit --threads and the env var agree with the default */
  RunOut a = run_cli("scan --left empty --right empty --dim 3");
  RunOut b = run_cli("--threads 2 scan --left empty --right empty --dim 3");
  RunOut c = run_cli("scan --threads 2 --left empty --right empty --dim 3");
  RunOut d = run_cli("scan --left empty --right empty --dim 3",
                     "CAPKIT_THREADS=2");
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out == d.out);
}
