// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <string>

#include "horocorr/verification.hpp"

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const auto results = horocorr::run_acceptance(filter);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s  criterion %2d [%s] %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.tag.c_str(),
                r.title.c_str(), r.seconds);
    if (!r.passed) {
      ++failed;
      for (const auto& line : r.details) std::printf("%s\n", line.c_str());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
