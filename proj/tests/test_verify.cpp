#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "capkit/catalog.hpp"
#include "capkit/verify.hpp"

using namespace capkit;

/* tier-1 catalog built once; several cases below reuse it */
static const Catalog& tier1() {
  static const Catalog cat = catalog_build(1);
  return cat;
}

TEST_CASE("suite registry and tier gating") {
  const auto& suites = verify_suites();
  REQUIRE(suites.size() == 6);
  CHECK(suites[0] == "structure-lemmas");
  CHECK(suites[1] == "point-count-caps");
  CHECK(suites[2] == "reflection");
  CHECK(suites[3] == "45-cap");
  CHECK(suites[4] == "delta686");
  CHECK(suites[5] == "table2");

  CHECK(suite_tier("structure-lemmas") == 1);
  CHECK(suite_tier("reflection") == 1);
  CHECK(suite_tier("point-count-caps") == 2);
  CHECK(suite_tier("45-cap") == 2);
  CHECK(suite_tier("delta686") == 2);
  CHECK(suite_tier("table2") == 2);
  CHECK_THROWS_AS(suite_tier("nope"), Error);

  Catalog t0 = catalog_build(0);
  REQUIRE(t0.tier() == 0);
  for (const auto& s : suites) {
    try {
      run_suite(s, t0);
      FAIL("suite " << s << " ran without its tier");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("catalog tier") != std::string::npos);
      CHECK(std::string(e.what()).find("required") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(run_suite("nope", t0), Error);
}

TEST_CASE("report rendering is stable") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.claims = {{"demo/01-first", "first statement", ClaimStatus::pass, "w1"},
                {"demo/02-second", "second statement", ClaimStatus::fail,
                 "counterexample here"},
                {"demo/03-third", "third statement", ClaimStatus::skip,
                 "not derived"}};
  CHECK(!rep.passed());
  CHECK(rep.summary() == "pass=1 fail=1 skip=1");

  std::string tsv = report_tsv({rep});
  CHECK(tsv ==
        "suite\tclaim\tstatus\tstatement\tdetail\n"
        "demo\tdemo/01-first\tpass\tfirst statement\tw1\n"
        "demo\tdemo/02-second\tfail\tsecond statement\tcounterexample here\n"
        "demo\tdemo/03-third\tskip\tthird statement\tnot derived\n");

  std::string log = report_log({rep});
  CHECK(log.find("suite demo: pass=1 fail=1 skip=1") != std::string::npos);
  CHECK(log.find("[fail] demo/02-second") != std::string::npos);
  CHECK(log.find("-> counterexample here") != std::string::npos);

  rep.claims[1].status = ClaimStatus::pass;
  CHECK(rep.passed()); /* skips do not block a pass */
}

TEST_CASE("tier-1 suites pass on a freshly built catalog") {
  const Catalog& cat = tier1();
  REQUIRE(cat.tier() == 1);

  VerificationReport structure = run_suite("structure-lemmas", cat);
  CHECK(structure.claims.size() == 8);
  CHECK(structure.passed());
  CHECK(std::is_sorted(structure.claims.begin(), structure.claims.end(),
                       [](const Claim& a, const Claim& b) {
                         return a.id < b.id;
                       }));
  for (const auto& c : structure.claims) {
    CHECK(c.status == ClaimStatus::pass);
    CHECK(c.id.rfind("structure-lemmas/", 0) == 0);
    CHECK(!c.statement.empty());
    CHECK(!c.detail.empty());
  }

  VerificationReport refl = run_suite("reflection", cat);
  CHECK(refl.claims.size() == 4);
  CHECK(refl.passed());
  CHECK(refl.summary() == "pass=4 fail=0 skip=0");

  /* two worker threads reach the same merged report */
  VerificationReport refl2 = run_suite("reflection", cat, 2);
  REQUIRE(refl2.claims.size() == refl.claims.size());
  for (std::size_t i = 0; i < refl.claims.size(); ++i) {
    CHECK(refl2.claims[i].id == refl.claims[i].id);
    CHECK(refl2.claims[i].status == refl.claims[i].status);
    CHECK(refl2.claims[i].detail == refl.claims[i].detail);
  }
}

TEST_CASE("a failing claim carries a concrete counterexample") {
  Catalog broken = tier1();
  /* hand the 19-cap slot a 20-cap: reflection facts about {9,9,1} and
   * {9,8,2} directions now have nothing to range over and must fail */
  broken.entries.at("19cap").rep = broken.at("20cap").rep;
  VerificationReport refl = run_suite("reflection", broken);
  CHECK(!refl.passed());
  int fails = 0;
  for (const auto& c : refl.claims)
    if (c.status == ClaimStatus::fail) {
      ++fails;
      CHECK(!c.detail.empty());
    }
  CHECK(fails == 2);
  const Claim& pairs = refl.claims[0];
  CHECK(pairs.id == "reflection/01-991-reflection-pairs");
  CHECK(pairs.status == ClaimStatus::fail);
  CHECK(pairs.detail.find("no {9,9,1} direction") != std::string::npos);
}
