#include "cuttree/shuffle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cuttree {

namespace {

// Inverse-CDF draw from p restricted to an Euler-contiguous subtree.
class SubtreeSampler {
 public:
  SubtreeSampler(const RootedTree& t, const ProbWeights& weights)
      : euler_(t), prefix_(t.n + 1, 0.0) {
    for (int i = 0; i < t.n; ++i) prefix_[i + 1] = prefix_[i] + weights.p(euler_.order[i]);
  }

  int draw_in_subtree(int w, Rng& rng) const {
    const int lo = euler_.tin[w], hi = euler_.tout[w];
    const double mass = prefix_[hi] - prefix_[lo];
    const double u = prefix_[lo] + rng.u01() * mass;
    const int i = static_cast<int>(std::upper_bound(prefix_.begin() + lo + 1,
                                                    prefix_.begin() + hi, u) -
                                   prefix_.begin()) - 1;
    return euler_.order[std::min(i, hi - 1)];
  }

  const EulerIndex& euler() const { return euler_; }

 private:
  EulerIndex euler_;
  std::vector<double> prefix_;
};

RootedTree rewire_with(const RootedTree& h, const SubsetTree& backbone, const MarkMap& marks,
                       const EulerIndex& euler) {
  std::vector<char> backbone_edge(h.n + 1, 0);  // indexed by successor w
  for (int w : backbone.vertices) {
    if (w == backbone.root) continue;
    auto it = marks.find(w);
    if (it == marks.end()) throw std::invalid_argument("missing mark for backbone successor");
    if (!euler.in_subtree(it->second, w))
      throw std::invalid_argument("mark outside admissible subtree");
    backbone_edge[w] = 1;
  }

  std::vector<std::vector<int>> adj(h.n + 1);
  auto add_edge = [&adj](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int v = 1; v <= h.n; ++v) {
    if (v == h.root) continue;
    if (!backbone_edge[v]) add_edge(v, h.parent[v]);
  }
  for (int w : backbone.vertices) {
    if (w == backbone.root) continue;
    add_edge(h.parent[w], marks.at(w));
  }

  // n-1 edges and connectivity from the old root make it a tree.
  RootedTree out(h.n, h.root);
  std::vector<char> seen(h.n + 1, 0);
  std::vector<int> queue{h.root};
  seen[h.root] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int u = queue[i];
    for (int w : adj[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      out.parent[w] = u;
      queue.push_back(w);
    }
  }
  if (static_cast<int>(queue.size()) != h.n)
    throw std::logic_error("rewired graph is not connected");
  return out;
}

}  // namespace

RootedTree rewire(const RootedTree& h, const std::vector<int>& targets, const MarkMap& marks) {
  SubsetTree backbone = span(h, targets);
  EulerIndex euler(h);
  return rewire_with(h, backbone, marks, euler);
}

MarkMap sample_marks(const RootedTree& h, const std::vector<int>& targets,
                     const ProbWeights& weights, Rng& rng) {
  if (weights.n() != h.n) throw std::invalid_argument("incompatible dimensions");
  SubsetTree backbone = span(h, targets);
  SubtreeSampler sampler(h, weights);
  MarkMap marks;
  for (int w : canonical_order(backbone, targets)) {
    if (w == backbone.root) continue;
    marks[w] = sampler.draw_in_subtree(w, rng);
  }
  return marks;
}

int draw_vertex(const ProbWeights& weights, Rng& rng) {
  const double u = rng.u01();
  double acc = 0.0;
  for (int v = 1; v < weights.n(); ++v) {
    acc += weights.p(v);
    if (u < acc) return v;
  }
  return weights.n();
}

RootedTree shuff_k(const RootedTree& h, const ProbWeights& weights,
                   const std::vector<int>& targets, Rng& rng) {
  // The new root is drawn first so that replays consume randomness in the
  // same layout regardless of backbone size.
  const int new_root = draw_vertex(weights, rng);
  MarkMap marks = sample_marks(h, targets, weights, rng);
  return reroot(rewire(h, targets, marks), new_root);
}

RootedTree shuff_one(const RootedTree& h, const ProbWeights& weights, int v, Rng& rng) {
  return shuff_k(h, weights, {v}, rng);
}

RootedTree shuff_complete(const RootedTree& g, const ProbWeights& weights, Rng& rng) {
  std::vector<int> all(g.n);
  std::iota(all.begin(), all.end(), 1);
  return shuff_k(g, weights, all, rng);
}

RootedTree reverse_one(const OneCutRecord& rec) {
  MarkMap marks;
  for (std::size_t i = 0; i + 1 < rec.cut_sequence.size(); ++i)
    marks[rec.cut_sequence[i + 1]] = rec.marks[i];
  return reroot(rewire(rec.cut_tree, {rec.target}, marks), rec.original_root);
}

RootedTree reverse_k(const KCutRecord& rec) {
  return reroot(rewire(rec.cut_tree, rec.targets, rec.mark_of), rec.original_root);
}

RootedTree reverse_complete(const CompleteCutRecord& rec) {
  std::vector<int> all(rec.cut_tree.n);
  std::iota(all.begin(), all.end(), 1);
  // Root placement is arbitrary: the complete trace does not determine it.
  return rewire(rec.cut_tree, all, rec.mark_of);
}

}  // namespace cuttree
