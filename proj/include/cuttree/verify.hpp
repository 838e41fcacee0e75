#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuttree/io.hpp"

namespace cuttree {

// Named verification suites, one per acceptance criterion, in order.
std::vector<std::string> verify_suite_names();

// Runs one suite. Thresholds and sample counts are fixed; the seed defaults
// to the suite's pinned value so CI verdicts are reproducible, and the
// verdict records whichever seed was used. Unknown names throw
// std::invalid_argument.
Verdict run_verify_suite(const std::string& name, std::optional<std::uint64_t> seed,
                         int threads);

std::vector<Verdict> run_all_suites(std::optional<std::uint64_t> seed, int threads);

}  // namespace cuttree
