#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>

#include "capkit/error.hpp"

namespace capkit {

/* Run-wide knobs shared by the command-line tools.  Defaults: threads 0
 * (auto: CAPKIT_THREADS, then hardware), unlimited scan budget, catalog
 * directory "catalog", seed 1.  The seed fixes every randomized choice, so
 * equal configs give equal outputs at any thread count. */
struct RunConfig {
  int threads = 0;
  long long coset_limit = 0;        /* embeddings per scan, 0 = unlimited */
  std::uint64_t wall_limit_ms = 0;  /* per scan, 0 = unlimited */
  std::string catalog_dir = "catalog";
  std::uint64_t seed = 1;           /* randomized property tests only */
};

/* Thread count resolution: explicit request > CAPKIT_THREADS > hardware.
 * 0 means "auto" at every level. */
inline int resolve_threads(int requested = 0) {
  if (requested < 0) fail("threads must be >= 0");
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CAPKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace capkit
