// Acceptance gate: runs the self-check suite and prints one PASS/FAIL line
// per criterion. Exits non-zero when any criterion fails.

#include <cstdio>
#include <cstring>
#include <map>
#include <vector>

#include "casimir/verification.hpp"

int main(int argc, char** argv) {
  using casimir::verify::Check;
  const bool thorough = argc > 1 && std::strcmp(argv[1], "--thorough") == 0;
  const auto checks =
      casimir::verify::run_all(thorough ? casimir::verify::Profile::thorough
                                        : casimir::verify::Profile::fast);

  std::map<int, std::vector<const Check*>> by_criterion;
  for (const auto& c : checks) by_criterion[c.criterion].push_back(&c);

  const auto& titles = casimir::verify::criterion_titles();
  int failed = 0;
  for (int k = 1; k <= 10; ++k) {
    const auto it = by_criterion.find(k);
    bool passed = it != by_criterion.end();
    double seconds = 0.0;
    if (passed) {
      for (const Check* c : it->second) {
        passed = passed && c->passed;
        seconds += c->runtime_s;
      }
    }
    failed += passed ? 0 : 1;
    std::printf("criterion %2d  %s  %-48s %8.3fs\n", k, passed ? "PASS" : "FAIL",
                titles.at(k).c_str(), seconds);
    if (it == by_criterion.end()) {
      std::printf("    no checks ran\n");
      continue;
    }
    for (const Check* c : it->second) {
      std::printf("    %-4s %-46s %-13.6g (limit %.3g, %s)\n", c->passed ? "ok" : "FAIL",
                  c->name.c_str(), c->measured, c->threshold, c->metric.c_str());
      if (!c->passed && !c->detail.empty()) std::printf("         %s\n", c->detail.c_str());
    }
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
