#pragma once

#include <functional>
#include <vector>

#include "cuttree/rng.hpp"
#include "cuttree/tree.hpp"
#include "cuttree/weights.hpp"

namespace cuttree {

// First m repeat times of an i.i.d. vertex walk X_0, X_1, ...
// times[m-1] is the index j of the m-th draw that duplicates an earlier
// element of the walk (the whole prefix X_0..X_{j-1} counts, so the smallest
// possible value of times[0] is 1).
struct RepeatTimes {
  std::vector<int> times;
  std::vector<int> walk;  // X_0 .. X_{last repeat}
};

// Weighted Aldous-Broder: walk i.i.d. p-vertices, keep first-entrance edges,
// root at the first vertex. Output is distributed as the p-tree law.
RootedTree sample_ptree(const ProbWeights& weights, Rng& rng);

// prod_u p_u^{children(u)}; computed in log space for large n.
double ptree_pmf(const ProbWeights& weights, const RootedTree& tree);

// Calls fn for each of the n^(n-1) rooted labeled trees exactly once.
// n must be at most 8.
void enumerate_rooted_trees(int n, const std::function<void(const RootedTree&)>& fn);

RepeatTimes repeat_times(const ProbWeights& weights, int m, Rng& rng);

}  // namespace cuttree
