// Acceptance gate: runs every suite and prints one line per criterion.
// Exit status 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ordlab/suites.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = ordlab::kDefaultSuiteSeed;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
  }
  auto results = ordlab::run_all_suites(seed);
  bool all = true;
  int index = 0;
  for (const auto& r : results) {
    ++index;
    std::printf("[%2d] %-24s %s  (%.0f ms%s)  %s\n", index, r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.millis,
                r.budget_millis ? (" / budget " + std::to_string(static_cast<long>(*r.budget_millis)) + " ms").c_str()
                                : "",
                r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: failures present");
  return all ? 0 : 1;
}
