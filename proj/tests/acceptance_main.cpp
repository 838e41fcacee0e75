// Acceptance suite: runs every verification criterion at its pinned seed and
// threshold, one line per criterion.

#include <chrono>
#include <cstdio>

#include "cuttree/verify.hpp"

int main() {
  using namespace cuttree;
  const auto names = verify_suite_names();
  int failures = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = run_verify_suite(names[i], std::nullopt, 2);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] A%zu %-16s statistic=%-12.6g threshold=%-8g n=%-8ld seed=0x%llX (%.1fs)\n",
                v.pass ? "PASS" : "FAIL", i + 1, v.name.c_str(), v.statistic, v.threshold,
                v.n_samples, static_cast<unsigned long long>(v.seed), secs);
    if (!v.note.empty()) std::printf("       %s\n", v.note.c_str());
    if (!v.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
