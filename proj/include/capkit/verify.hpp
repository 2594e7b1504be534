#pragma once

#include <string>
#include <vector>

#include "capkit/catalog.hpp"

/* Mechanical re-verification of the desk-checkable facts behind the cap
 * classification: layer-shape structure, point-count bounds and forbidden
 * patterns, reflection facts, and the properties of the derived dim-5
 * representatives.  Each suite is a list of claims; a failing claim always
 * carries a concrete counterexample. */
namespace capkit {

enum class ClaimStatus { pass, fail, skip };

struct Claim {
  std::string id;        /* "<suite>/<nn>-<slug>", report order */
  std::string statement; /* what is being checked, in domain terms */
  ClaimStatus status = ClaimStatus::fail;
  std::string detail;    /* witness when passing, counterexample when not */
};

struct VerificationReport {
  std::string suite;
  std::vector<Claim> claims; /* merged in claim-id order */
  bool passed() const;       /* no failing claim (skips allowed) */
  std::string summary() const;
};

/* available suite names, in canonical run order */
const std::vector<std::string>& verify_suites();

/* tier the suite needs; run_suite fails with "catalog tier required" below it */
int suite_tier(const std::string& suite);

VerificationReport run_suite(const std::string& suite, const Catalog& cat,
                             int threads = 0);

/* one line per claim: suite, claim id, status, statement, detail */
std::string report_tsv(const std::vector<VerificationReport>& reports);
std::string report_log(const std::vector<VerificationReport>& reports);

}  // namespace capkit
