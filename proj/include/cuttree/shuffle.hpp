#pragma once

#include <unordered_map>
#include <vector>

#include "cuttree/cutting.hpp"
#include "cuttree/rng.hpp"
#include "cuttree/tree.hpp"
#include "cuttree/weights.hpp"

namespace cuttree {

// Mark vector keyed by backbone successor: for each backbone edge <x, w>,
// marks[w] is a vertex of Sub(h, w) that x gets reattached to.
using MarkMap = std::unordered_map<int, int>;

// Removes every backbone edge <x, w> of the spanning subtree of the targets
// and replaces it by {x, marks[w]}. The result is always a tree on the same
// vertex set, returned rooted at the root of h. Throws if a mark falls
// outside the subtree above its successor.
RootedTree rewire(const RootedTree& h, const std::vector<int>& targets, const MarkMap& marks);

// Independent draws, one per backbone successor w, from p restricted to
// Sub(h, w); sampled in canonical order so replays are reproducible.
MarkMap sample_marks(const RootedTree& h, const std::vector<int>& targets,
                     const ProbWeights& weights, Rng& rng);

// Law-level reversals: rewire with sampled marks, reroot at a fresh p-vertex.
RootedTree shuff_one(const RootedTree& h, const ProbWeights& weights, int v, Rng& rng);
RootedTree shuff_k(const RootedTree& h, const ProbWeights& weights,
                   const std::vector<int>& targets, Rng& rng);
RootedTree shuff_complete(const RootedTree& g, const ProbWeights& weights, Rng& rng);

// Exact reversals from recorded marks. The one- and k-records also recover
// the original root; the complete record cannot (only adjacency comes back).
RootedTree reverse_one(const OneCutRecord& rec);
RootedTree reverse_k(const KCutRecord& rec);
RootedTree reverse_complete(const CompleteCutRecord& rec);

// Single p-distributed vertex.
int draw_vertex(const ProbWeights& weights, Rng& rng);

}  // namespace cuttree
