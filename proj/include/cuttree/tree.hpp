#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace cuttree {

// Labeled rooted tree on vertices 1..n, stored as a parent map.
// parent[v] == 0 exactly for v == root; index 0 is unused.
struct RootedTree {
  int n = 0;
  int root = 0;
  std::vector<int> parent;  // size n+1

  RootedTree() = default;
  RootedTree(int n_, int root_) : n(n_), root(root_), parent(n_ + 1, 0) {}

  bool operator==(const RootedTree& other) const {
    return n == other.n && root == other.root && parent == other.parent;
  }
};

// Rooted tree living on a subset of 1..n (spanning subtrees, skeletons,
// discarded fragments).
struct SubsetTree {
  int root = 0;
  std::vector<int> vertices;              // root included
  std::unordered_map<int, int> parent;    // non-root vertex -> parent

  bool same_shape(const SubsetTree& other) const;
};

// Throws std::invalid_argument when the parent map is not a tree on 1..n.
void validate(const RootedTree& t);

std::vector<std::vector<int>> children_lists(const RootedTree& t);

// Number of children of each vertex; sums to n-1.
std::vector<int> child_counts(const RootedTree& t);

// Depth in edges from the root.
std::vector<int> depths(const RootedTree& t);

// Vertices ordered parents-before-children.
std::vector<int> topological_order(const RootedTree& t);

// Same adjacency, new root: the parent chain root -> v is reversed.
RootedTree reroot(const RootedTree& t, int v);

// Union of the paths root -> target, as a tree on its own vertex set.
SubsetTree span(const RootedTree& t, const std::vector<int>& targets);

// All descendants of u, including u.
std::vector<int> subtree_above(const RootedTree& t, int u);

// Graph distance between two vertices.
int graph_distance(const RootedTree& t, int a, int b);

// All pairwise distances among `points` (BFS from each point).
std::vector<std::vector<int>> distance_matrix(const RootedTree& t,
                                              const std::vector<int>& points);

// Euler-tour intervals: u is in the subtree above v iff
// tin[v] <= tin[u] < tout[v]. Built once, O(1) membership tests after.
struct EulerIndex {
  std::vector<int> tin, tout, order;  // order[i] = vertex with tin == i

  explicit EulerIndex(const RootedTree& t);
  bool in_subtree(int u, int v) const { return tin[v] <= tin[u] && tin[u] < tout[v]; }
};

// Canonical byte key (root + parent map) for counting tree-valued outcomes.
std::string tree_key(const RootedTree& t);

}  // namespace cuttree
