#pragma once

#include <unordered_map>
#include <vector>

#include "cuttree/alias.hpp"
#include "cuttree/rng.hpp"
#include "cuttree/tree.hpp"
#include "cuttree/weights.hpp"

namespace cuttree {

// Trace of the procedure isolating a single vertex: the cut tree H chains
// the discarded fragments along the path X_1 .. X_L = V. marks[i] is the
// vertex that used to be attached to cut_sequence[i] on the side of V; it
// always lies in the subtree of H above cut_sequence[i+1].
struct OneCutRecord {
  RootedTree cut_tree;
  std::vector<int> cut_sequence;
  std::vector<int> marks;
  int target = 0;
  int original_root = 0;  // root of the tree that was cut, kept for exact reversal

  int cut_count() const { return static_cast<int>(cut_sequence.size()); }
};

// Trace of the procedure isolating k (not necessarily distinct) vertices.
struct KCutRecord {
  RootedTree cut_tree;                           // fragments appended to the skeleton
  SubsetTree backbone;                           // skeleton on the effective cuts
  std::vector<int> targets;
  std::vector<int> cut_sequence;                 // X_1 .. X_{L^k}
  std::vector<std::vector<int>> mark_sets;       // neighbors detached at each cut
  std::unordered_map<int, int> mark_of;          // backbone successor w -> former neighbor in Sub(H, w)
  std::vector<std::vector<int>> effective_sets;  // per target, cuts that hit its component, in cut order
  std::vector<int> canonical_order;              // backbone vertices, canonically ordered
  int original_root = 0;

  int cut_count() const { return static_cast<int>(cut_sequence.size()); }
};

// Trace of the complete fragmentation: every component keeps being cut, and
// the cut tree G is the genealogy of the weighted random permutation.
struct CompleteCutRecord {
  RootedTree cut_tree;                      // G
  std::vector<int> permutation;             // X_1 .. X_n
  std::vector<std::vector<int>> mark_sets;  // neighbors of X_i when it was removed
  std::unordered_map<int, int> mark_of;     // G-edge successor w -> former neighbor in Sub(G, w)
  int original_root = 0;
};

OneCutRecord cut_one(const RootedTree& tree, const ProbWeights& weights, int v, Rng& rng);

KCutRecord cut_k(const RootedTree& tree, const ProbWeights& weights,
                 const std::vector<int>& targets, Rng& rng);

// All k-cut trees for k = 1..targets.size() driven by one shared i.i.d.
// vertex stream; each run consumes the subsequence of draws that land in its
// own surviving components. The skeletons are nested: S_k is the spanning
// subtree of S_{k+1} at the first k targets.
std::vector<KCutRecord> coupled_cut_family(const RootedTree& tree, const ProbWeights& weights,
                                           const std::vector<int>& targets, Rng& rng);

CompleteCutRecord cut_complete(const RootedTree& tree, const ProbWeights& weights, Rng& rng);

// Total order on the skeleton: ancestors first, then by the smallest prefix
// of targets whose spanning subtree contains the vertex, ties by depth.
std::vector<int> canonical_order(const SubsetTree& backbone, const std::vector<int>& targets);

// Spanning subtree of a subset tree (paths root -> target within it).
SubsetTree span_subset(const SubsetTree& t, const std::vector<int>& targets);

}  // namespace cuttree
