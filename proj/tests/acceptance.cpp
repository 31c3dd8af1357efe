#include <cstdio>

#include "acgame/verify.hpp"

int main() {
  const auto results = acgame::run_acceptance();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d  %s  %s  (%.2f s)\n    %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.measured.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
