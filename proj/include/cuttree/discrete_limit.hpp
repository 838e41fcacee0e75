#pragma once

#include <unordered_map>
#include <vector>

#include "cuttree/cutting.hpp"
#include "cuttree/rng.hpp"
#include "cuttree/tree.hpp"
#include "cuttree/weights.hpp"

namespace cuttree {

// One-cut run driven by a Poisson rain of intensity p/sigma_n in time,
// tracking for a set of marked vertices the first cut that lands on their
// path to the target: its time, its location, how many cuts the target's
// component had absorbed by then, and the original-tree distance from the
// mark to that location.
struct TimedOneCut {
  OneCutRecord record;
  double sigma_n = 0.0;
  std::vector<double> cut_times;    // one per cut, increasing
  std::vector<int> mark_vertices;   // as passed in
  std::vector<double> tau;          // separation time per mark
  std::vector<int> varsigma;        // separating cut vertex per mark
  std::vector<int> cuts_at_tau;     // cuts absorbed by the target component up to tau
  std::vector<int> dist_to_cut;     // d_T(mark, varsigma)
  std::vector<std::vector<int>> dist_between_marks;  // d_T over the marks
};

TimedOneCut poisson_cut_one(const RootedTree& tree, const ProbWeights& weights, int v,
                            const std::vector<int>& marked, Rng& rng);

// Distances in the cut tree between root(H), the target, and the marked
// vertices, computed from the trace counters alone (no tree traversal):
// index 0 is root(H), index 1 the target, then the marks. Equals the graph
// distance matrix of record.cut_tree exactly.
std::vector<std::vector<int>> cut_distance_bundle(const TimedOneCut& run);

// Attachment walks of the reverse one-path transformation: every vertex of
// the path from the root to the anchor carries an independently sampled
// reattachment point in the subtree hanging toward the anchor; each queried
// point hops along these attachments until it reaches the anchor. Distances
// between queried points in the rewired tree are read off the walks without
// building the tree.
struct WalkMatrices {
  std::vector<std::vector<int>> merge_steps;  // hops until the two walks meet
  std::vector<std::vector<int>> meet_index;   // hop count of walk i at the meeting vertex
  std::vector<std::vector<int>> distance;     // rewired-tree distance
  std::unordered_map<int, int> attach_marks;  // backbone successor -> sampled attachment
};

WalkMatrices shuffle_walk(const RootedTree& h, const ProbWeights& weights, int anchor,
                          const std::vector<int>& points, Rng& rng);

}  // namespace cuttree
