// SPDX-License-Identifier: MIT
//
// Acceptance gate: runs every primary verification criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.  Exit code 0 iff
// all pass.  Environment overrides: STARWALK_SEED (default 42) and
// STARWALK_THREADS (default: hardware concurrency).

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "starwalk/verify.hpp"

int main() {
  starwalk::SuiteOptions opts;
  if (const char* s = std::getenv("STARWALK_SEED"))
    opts.seed = std::strtoull(s, nullptr, 10);

  std::printf("running primary verification suite (seed %" PRIu64 ")\n\n",
              static_cast<std::uint64_t>(opts.seed));
  std::fflush(stdout);

  const std::vector<starwalk::TestReport> reports =
      starwalk::run_primary_suite(opts);

  int failed = 0;
  for (const starwalk::TestReport& r : reports) {
    if (!r.pass) ++failed;
    std::printf("[%s] %s -- statistic=%.6g bound=%.6g (n=%" PRIu64 ")\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.statistic,
                r.bound, static_cast<std::uint64_t>(r.n_samples));
    if (!r.details.empty()) std::printf("       %s\n", r.details.c_str());
    std::fflush(stdout);
  }

  std::printf("\n%zu criteria, %d failed\n", reports.size(), failed);
  return failed == 0 ? 0 : 1;
}
